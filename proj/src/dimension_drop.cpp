#include "rokhlin/dimension_drop.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace rokhlin {

namespace {

using cd = std::complex<double>;

CMatrix diag_projection(int n, int j)
{
    CMatrix e = CMatrix::Zero(n, n);
    e(j, j) = 1.0;
    return e;
}

}  // namespace

CMatrix cyclic_permutation(int n)
{
    CMatrix pm = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        pm((j + 1) % n, j) = 1.0;
    }
    return pm;
}

CMatrix permutation_path(int n, double s)
{
    if (n < 1) {
        throw std::invalid_argument("permutation size must be positive");
    }
    // eigenvectors v_k = (omega^{-jk})_j / sqrt(n) with eigenvalue omega^k
    const double two_pi = 2.0 * std::numbers::pi;
    CMatrix fourier(n, n);
    CMatrix phases = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const double angle = -two_pi * static_cast<double>((static_cast<long>(j) * k) % n) / n;
            fourier(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
        }
        double phi = two_pi * k / n;
        if (phi > std::numbers::pi) {
            phi -= two_pi;
        }
        phases(k, k) = std::polar(1.0, s * phi);
    }
    return fourier * phases * fourier.adjoint();
}

double plateau_ramp(double x)
{
    if (x <= 1.0 / 3.0) {
        return 1.0;
    }
    if (x >= 2.0 / 3.0) {
        return 0.0;
    }
    return 2.0 - 3.0 * x;
}

DimDropPath build_dimension_drop(int p, int M)
{
    if (p < 2) {
        throw std::invalid_argument("p must be at least 2");
    }
    if (M < 3 || M % 3 != 0) {
        throw std::invalid_argument("grid missing knots 1/3 and 2/3: M must be a positive multiple of 3");
    }
    const int q = p + 1;
    DimDropPath path;
    path.p = p;
    const CMatrix perm_p = cyclic_permutation(p);
    const CMatrix perm_q = cyclic_permutation(q);
    const CMatrix id_p = CMatrix::Identity(p, p);
    const CMatrix id_q = CMatrix::Identity(q, q);
    std::vector<CMatrix> left;
    std::vector<CMatrix> right;
    for (int j = 0; j < p; ++j) {
        left.push_back(kron(diag_projection(p, j), id_q));
    }
    for (int j = 0; j < q; ++j) {
        right.push_back(kron(id_p, diag_projection(q, j)));
    }
    for (int k = 0; k <= M; ++k) {
        // exact knots at k = M/3 and 2M/3
        const double x = static_cast<double>(k) / M;
        const double h = 3 * k <= M ? 1.0 : (3 * k >= 2 * M ? 0.0 : plateau_ramp(x));
        const CMatrix v = 3 * k <= 2 * M ? perm_p : permutation_path(p, 3.0 * (1.0 - x));
        const CMatrix w = 3 * k >= M ? perm_q : permutation_path(q, 3.0 * x);
        path.grid.push_back(x);
        path.h.push_back(h);
        path.u.push_back(kron(v, w));
        std::vector<CMatrix> fk;
        std::vector<CMatrix> gk;
        for (const auto& a : left) {
            fk.push_back(h * a);
        }
        for (const auto& b : right) {
            gk.push_back((1.0 - h) * b);
        }
        path.f.push_back(std::move(fk));
        path.g.push_back(std::move(gk));
    }
    return path;
}

double distance_to_left_factor(const CMatrix& x, int p, int q)
{
    CMatrix reduced = CMatrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            reduced(i, j) = x.block(i * q, j * q, q, q).trace() / static_cast<double>(q);
        }
    }
    return operator_norm(CMatrix(x - kron(reduced, CMatrix::Identity(q, q))));
}

double distance_to_right_factor(const CMatrix& x, int p, int q)
{
    CMatrix reduced = CMatrix::Zero(q, q);
    for (int i = 0; i < p; ++i) {
        reduced += x.block(i * q, i * q, q, q);
    }
    reduced /= static_cast<double>(p);
    return operator_norm(CMatrix(x - kron(CMatrix::Identity(p, p), reduced)));
}

DimDropReport verify_dimension_drop(const DimDropPath& path)
{
    const int p = path.p;
    const int q = p + 1;
    const std::size_t points = path.u.size();
    if (points < 2 || path.f.size() != points || path.g.size() != points || path.grid.size() != points) {
        throw std::invalid_argument("malformed dimension drop path");
    }
    const int dim = p * q;
    const CMatrix id = CMatrix::Identity(dim, dim);
    DimDropReport rep;
    auto nrm = [](const CMatrix& m) { return operator_norm(m); };
    for (std::size_t k = 0; k < points; ++k) {
        const auto& f = path.f[k];
        const auto& g = path.g[k];
        const CMatrix& u = path.u[k];
        if (static_cast<int>(f.size()) != p || static_cast<int>(g.size()) != q) {
            throw std::invalid_argument("dimension drop path has the wrong number of elements");
        }
        CMatrix total = CMatrix::Zero(dim, dim);
        for (int i = 0; i < p; ++i) {
            total += f[i];
            rep.positivity_defect = std::max(rep.positivity_defect, -min_hermitian_eigenvalue(f[i]));
            for (int j = i + 1; j < p; ++j) {
                rep.f_products = std::max(rep.f_products, nrm(f[i] * f[j]));
            }
            for (int j = 0; j < q; ++j) {
                rep.fg_commutators = std::max(rep.fg_commutators, nrm(f[i] * g[j] - g[j] * f[i]));
            }
            rep.f_conjugation = std::max(rep.f_conjugation, nrm(u * f[i] * u.adjoint() - f[(i + 1) % p]));
        }
        for (int i = 0; i < q; ++i) {
            total += g[i];
            rep.positivity_defect = std::max(rep.positivity_defect, -min_hermitian_eigenvalue(g[i]));
            for (int j = i + 1; j < q; ++j) {
                rep.g_products = std::max(rep.g_products, nrm(g[i] * g[j]));
            }
            rep.g_conjugation = std::max(rep.g_conjugation, nrm(u * g[i] * u.adjoint() - g[(i + 1) % q]));
        }
        rep.sum_deviation = std::max(rep.sum_deviation, nrm(total - id));
        rep.unitarity = std::max(rep.unitarity, nrm(u * u.adjoint() - id));
        rep.unitarity = std::max(rep.unitarity, nrm(u.adjoint() * u - id));
        if (k + 1 < points) {
            const double dt = path.grid[k + 1] - path.grid[k];
            if (dt > 0.0) {
                rep.continuity_constant = std::max(rep.continuity_constant, nrm(path.u[k + 1] - u) / dt);
            }
        }
    }
    // boundary conditions of Z_{p,p+1}
    auto boundary = [&](std::size_t k, bool left) {
        double e = left ? distance_to_left_factor(path.u[k], p, q) : distance_to_right_factor(path.u[k], p, q);
        for (const auto& m : path.f[k]) {
            e = std::max(e, left ? distance_to_left_factor(m, p, q) : distance_to_right_factor(m, p, q));
        }
        for (const auto& m : path.g[k]) {
            e = std::max(e, left ? distance_to_left_factor(m, p, q) : distance_to_right_factor(m, p, q));
        }
        return e;
    };
    rep.boundary = std::max(boundary(0, true), boundary(points - 1, false));

    const double tol = kDimDropTolerance;
    rep.pass = rep.f_products <= tol && rep.g_products <= tol && rep.fg_commutators <= tol &&
               rep.sum_deviation <= tol && rep.f_conjugation <= tol && rep.g_conjugation <= tol &&
               rep.unitarity <= kUnitarityTolerance && rep.boundary <= kBoundaryTolerance &&
               rep.positivity_defect <= tol;
    return rep;
}

}  // namespace rokhlin

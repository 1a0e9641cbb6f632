#include "rokhlin/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace rokhlin {

namespace {

double max_abs_diff(const DiagVector& a, const DiagVector& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double max_abs(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void require_projection(const DiagVector& q, std::size_t r, const char* what)
{
    if (q.size() != r) {
        throw std::invalid_argument(std::string(what) + " has the wrong length");
    }
    for (double v : q) {
        if (v != 0.0 && v != 1.0) {
            throw std::invalid_argument(std::string(what) + " is not a 0/1 diagonal projection");
        }
    }
}

}  // namespace

DiagVector truncated_shift(const DiagVector& e)
{
    DiagVector out(e.size(), 0.0);
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        out[i + 1] = e[i];
    }
    return out;
}

DiagVector partial_inverse_shift(const DiagVector& e)
{
    DiagVector out(e.size(), 0.0);
    for (std::size_t i = 1; i < e.size(); ++i) {
        out[i - 1] = e[i];
    }
    return out;
}

bool is_shiftable(const DiagVector& e) { return e.empty() || e.back() == 0.0; }

std::vector<double> cyclic_shift(std::span<const double> e)
{
    std::vector<double> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        out[(i + 1) % e.size()] = e[i];
    }
    return out;
}

DiagVector SpliceMap::apply(std::span<const double> e) const
{
    if (static_cast<int>(e.size()) != k) {
        throw std::invalid_argument("splice input must lie in C^k");
    }
    DiagVector out(r, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < r; ++j) {
            out[j] += e[i] * weights[i][j];
        }
    }
    return out;
}

DiagVector SpliceMap::unit_image() const
{
    std::vector<double> ones(k, 1.0);
    return apply(ones);
}

SpliceMap build_splice(int k, double delta, int r)
{
    if (k < 1) {
        throw std::invalid_argument("k must be positive");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("delta must lie in (0,1]");
    }
    SpliceMap mu;
    mu.k = k;
    mu.r = r;
    mu.delta = delta;
    mu.Lbar = static_cast<int>(std::ceil(1.0 / delta - 1e-12));
    mu.s = k * mu.Lbar;
    if (r < 4 * mu.s) {
        throw std::invalid_argument("r must be at least 4·k·⌈1/δ⌉ = " + std::to_string(4 * mu.s));
    }
    mu.L = (r - 2 * mu.s + k - 1) / k;
    const int lbar = mu.Lbar;
    const int big_l = mu.L;
    mu.weights.assign(k, std::vector<double>(r, 0.0));
    // 1-based: mu(e_i) puts weight w(j) on f_{kj+i}
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= big_l + 2 * lbar - 2; ++j) {
            double w = 0.0;
            if (j <= lbar - 1) {
                w = static_cast<double>(j) / lbar;
            } else if (j <= big_l + lbar - 1) {
                w = 1.0;
            } else {
                w = 1.0 - static_cast<double>(j - big_l - lbar + 1) / lbar;
            }
            const int pos = k * j + i;
            if (pos > r) {
                throw std::logic_error("splice weight index out of range");
            }
            mu.weights[i - 1][pos - 1] = w;
        }
    }
    return mu;
}

SpliceReport verify_splice(const SpliceMap& mu, double delta, std::uint64_t seed, int random_samples)
{
    SpliceReport rep;
    rep.delta = delta;
    const int k = mu.k;
    const int r = mu.r;

    rep.order_zero = true;
    for (int j = 0; j < r; ++j) {
        int nonzero = 0;
        for (int i = 0; i < k; ++i) {
            nonzero += mu.weights[i][j] != 0.0 ? 1 : 0;
        }
        rep.order_zero = rep.order_zero && nonzero <= 1;
    }
    rep.shiftable = true;
    for (int i = 0; i < k; ++i) {
        rep.shiftable = rep.shiftable && mu.weights[i][r - 1] == 0.0;
    }

    auto shift_error = [&](std::span<const double> e) {
        return max_abs_diff(truncated_shift(mu.apply(e)), mu.apply(cyclic_shift(e)));
    };
    for (int i = 0; i < k; ++i) {
        std::vector<double> e(k, 0.0);
        e[i] = 1.0;
        const double err = shift_error(e);
        rep.basis_shift_error = std::max(rep.basis_shift_error, err);
        if (i + 1 < k) {
            rep.interior_shift_error = std::max(rep.interior_shift_error, err);
        } else {
            rep.wrap_shift_error = err;
        }
    }
    const std::vector<double> ones(k, 1.0);
    rep.unit_ball_shift_error = shift_error(ones);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < random_samples; ++t) {
        std::vector<double> e(k);
        for (double& v : e) {
            v = unif(rng);
        }
        const double n = max_abs(e);
        if (n > 0.0) {
            rep.random_shift_ratio = std::max(rep.random_shift_ratio, shift_error(e) / n);
        }
    }

    DiagVector up = mu.unit_image();
    DiagVector down = up;
    for (int t = 0; t < mu.s; ++t) {
        up = truncated_shift(up);
        down = partial_inverse_shift(down);
    }
    rep.coverage.resize(r);
    for (int j = 0; j < r; ++j) {
        rep.coverage[j] = up[j] + down[j];
    }
    rep.coverage_min = *std::min_element(rep.coverage.begin(), rep.coverage.end());

    const double tol = 1e-12;
    rep.pass = rep.order_zero && rep.shiftable && rep.basis_shift_error <= delta + tol &&
               rep.unit_ball_shift_error <= delta + tol && rep.random_shift_ratio <= delta + tol &&
               rep.coverage_min >= 1.0 - tol;
    return rep;
}

std::vector<DiagVector> generated_atoms(const std::vector<DiagVector>& qs)
{
    if (qs.empty()) {
        throw std::invalid_argument("need at least one projection");
    }
    const std::size_t r = qs[0].size();
    for (const auto& q : qs) {
        require_projection(q, r, "generator");
    }
    std::map<std::vector<bool>, DiagVector> classes;
    for (std::size_t x = 0; x < r; ++x) {
        std::vector<bool> sig(qs.size());
        bool any = false;
        for (std::size_t j = 0; j < qs.size(); ++j) {
            sig[j] = qs[j][x] == 1.0;
            any = any || sig[j];
        }
        if (!any) {
            continue;  // killed by every generator, outside the algebra
        }
        auto [it, fresh] = classes.try_emplace(sig, DiagVector(r, 0.0));
        it->second[x] = 1.0;
    }
    std::vector<DiagVector> atoms;
    for (auto& [sig, atom] : classes) {
        atoms.push_back(std::move(atom));
    }
    return atoms;
}

ElementaryPolynomial elementary_decompose(const std::vector<DiagVector>& qs, const DiagVector& p)
{
    if (qs.empty()) {
        throw std::invalid_argument("need at least one projection");
    }
    const std::size_t r = qs[0].size();
    require_projection(p, r, "target");
    const std::vector<DiagVector> atoms = generated_atoms(qs);

    ElementaryPolynomial out;
    DiagVector covered(r, 0.0);
    for (const auto& atom : atoms) {
        const std::size_t x0 = static_cast<std::size_t>(std::find(atom.begin(), atom.end(), 1.0) - atom.begin());
        if (p[x0] == 0.0) {
            continue;
        }
        for (std::size_t x = 0; x < r; ++x) {
            if (atom[x] == 1.0 && p[x] != 1.0) {
                throw std::invalid_argument("projection is not in the generated algebra");
            }
        }
        // descend from a generator above the atom
        std::size_t j1 = 0;
        while (qs[j1][x0] != 1.0) {
            ++j1;
        }
        std::vector<Factor> term{{static_cast<int>(j1), false}};
        DiagVector d = qs[j1];
        while (d != atom) {
            bool refined = false;
            for (std::size_t j = 0; j < qs.size() && !refined; ++j) {
                const bool comp = qs[j][x0] == 0.0;
                DiagVector next(r);
                for (std::size_t x = 0; x < r; ++x) {
                    next[x] = d[x] * (comp ? 1.0 - qs[j][x] : qs[j][x]);
                }
                if (next != d) {
                    d = std::move(next);
                    term.push_back({static_cast<int>(j), comp});
                    refined = true;
                }
            }
            if (!refined) {
                throw std::logic_error("descent stalled above a minimal projection");
            }
        }
        while (term.size() < r) {
            term.push_back({static_cast<int>(j1), false});
        }
        out.terms.push_back(std::move(term));
        for (std::size_t x = 0; x < r; ++x) {
            covered[x] += atom[x];
        }
    }
    if (covered != p) {
        throw std::invalid_argument("projection is not in the generated algebra");
    }
    if (out.terms.empty()) {
        // 0 = q_1 (1 - q_1) q_1 ... q_1
        std::vector<Factor> zero{{0, false}, {0, true}};
        while (zero.size() < std::max<std::size_t>(r, 2)) {
            zero.push_back({0, false});
        }
        out.terms.push_back(std::move(zero));
    }
    return out;
}

DiagVector evaluate(const ElementaryPolynomial& e, const std::vector<DiagVector>& qs)
{
    if (qs.empty()) {
        throw std::invalid_argument("need at least one projection");
    }
    const std::size_t r = qs[0].size();
    DiagVector out(r, 0.0);
    for (const auto& term : e.terms) {
        DiagVector prod(r, 1.0);
        for (const Factor& f : term) {
            if (f.index < 0 || f.index >= static_cast<int>(qs.size())) {
                throw std::invalid_argument("factor index out of range");
            }
            for (std::size_t x = 0; x < r; ++x) {
                prod[x] *= f.complement ? 1.0 - qs[f.index][x] : qs[f.index][x];
            }
        }
        for (std::size_t x = 0; x < r; ++x) {
            out[x] += prod[x];
        }
    }
    return out;
}

std::vector<double> decay_weights(int p)
{
    if (p < 2) {
        throw std::invalid_argument("decay weights need p >= 2");
    }
    const double mid = 0.5 * (p - 1);
    std::vector<double> d(p);
    for (int n = 0; n < p; ++n) {
        d[n] = 1.0 - std::abs(mid - n) / mid;
    }
    return d;
}

DecayCommutatorReport decay_commutator_check(int p, int q, const CMatrix& x, int block_size)
{
    if (q < 0 || block_size < 1) {
        throw std::invalid_argument("bandwidth must be nonnegative and block size positive");
    }
    const int dim = p * block_size;
    if (x.rows() != dim || x.cols() != dim) {
        throw std::invalid_argument("x must be " + std::to_string(dim) + " x " + std::to_string(dim));
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (std::abs(i / block_size - j / block_size) > q && x(i, j) != 0.0) {
                throw std::invalid_argument("x has entries beyond bandwidth " + std::to_string(q));
            }
        }
    }
    const std::vector<double> d = decay_weights(p);
    CMatrix x_scaled = x;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            x_scaled(i, j) *= std::sqrt(d[i / block_size]) - std::sqrt(d[j / block_size]);
        }
    }
    DecayCommutatorReport rep;
    rep.commutator_norm = operator_norm(x_scaled);
    rep.x_norm = operator_norm(x);
    rep.bound = std::sqrt(2.0 * q / (p - 1)) * rep.x_norm;
    rep.pass = rep.commutator_norm <= rep.bound + 1e-12;
    return rep;
}

}  // namespace rokhlin

#include "rokhlin/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace rokhlin {

namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 10000;

template <class Matrix>
double power_iteration_norm(const Matrix& a)
{
    using Vector = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, 1>;
    if (a.size() == 0) {
        return 0.0;
    }
    Vector v = Vector::Ones(a.cols());
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < kPowerMaxIterations; ++it) {
        Vector w = a.adjoint() * (a * v);
        const double next = w.norm();
        if (next == 0.0) {
            return 0.0;
        }
        v = w / next;
        if (std::abs(next - lambda) <= kPowerTolerance * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

template <class Matrix>
double svd_norm(const Matrix& a)
{
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    if (svd.info() != Eigen::Success) {
        return power_iteration_norm(a);
    }
    return svd.singularValues()(0);
}

}  // namespace

double operator_norm(const CMatrix& a) { return svd_norm(a); }

double operator_norm(const RMatrix& a) { return svd_norm(a); }

double min_hermitian_eigenvalue(const CMatrix& a)
{
    const CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_hermitian_eigenvalue(const CMatrix& a)
{
    const CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace rokhlin

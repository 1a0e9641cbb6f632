#include "rokhlin/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rokhlin {

namespace {

double max_abs_product(const FiniteFunction& a, const FiniteFunction& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("function lengths differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] * b[i]));
    }
    return m;
}

double max_abs_difference(const FiniteFunction& a, const FiniteFunction& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("function lengths differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double max_abs(const FiniteFunction& a)
{
    double m = 0.0;
    for (double v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool in_unit_interval(const FiniteFunction& a)
{
    return std::all_of(a.begin(), a.end(), [](double v) {
        return v >= -kPositivityTolerance && v <= 1.0 + kPositivityTolerance;
    });
}

}  // namespace

PLFunction combine(std::span<const double> coeffs, std::span<const PLFunction> elems)
{
    return linear_combine(coeffs, elems);
}

FiniteFunction combine(std::span<const double> coeffs, std::span<const FiniteFunction> elems)
{
    if (coeffs.empty() || coeffs.size() != elems.size()) {
        throw std::invalid_argument("combine needs equal-length nonempty lists");
    }
    FiniteFunction out(elems[0].size(), 0.0);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i].size() != out.size()) {
            throw std::invalid_argument("combine: function lengths differ");
        }
        for (std::size_t x = 0; x < out.size(); ++x) {
            out[x] += coeffs[i] * elems[i][x];
        }
    }
    return out;
}

CMatrix combine(std::span<const double> coeffs, std::span<const CMatrix> elems)
{
    if (coeffs.empty() || coeffs.size() != elems.size()) {
        throw std::invalid_argument("combine needs equal-length nonempty lists");
    }
    CMatrix out = CMatrix::Zero(elems[0].rows(), elems[0].cols());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        out += coeffs[i] * elems[i];
    }
    return out;
}

PLFunction zero_like(const PLFunction&) { return PLFunction::constant(0.0); }

FiniteFunction zero_like(const FiniteFunction& f) { return FiniteFunction(f.size(), 0.0); }

CMatrix zero_like(const CMatrix& f) { return CMatrix::Zero(f.rows(), f.cols()); }

CircleRotationModel::CircleRotationModel(double theta, double grid_step) : theta_(theta), grid_step_(grid_step)
{
    if (!std::isfinite(theta) || grid_step < 0.0) {
        throw std::invalid_argument("invalid circle rotation model parameters");
    }
}

double CircleRotationModel::distance(const PLFunction& a, const PLFunction& b) const
{
    if (grid_step_ > 0.0) {
        return certified_sup_distance(a, b, grid_step_).certified;
    }
    return sup_distance(a, b);
}

bool CircleRotationModel::is_positive_contraction(const PLFunction& a) const
{
    return a.min_value() >= -kPositivityTolerance && a.max_value() <= 1.0 + kPositivityTolerance;
}

PermutationModel::PermutationModel(std::vector<int> permutation) : perm_(std::move(permutation))
{
    std::vector<bool> hit(perm_.size(), false);
    for (int y : perm_) {
        if (y < 0 || y >= static_cast<int>(perm_.size()) || hit[y]) {
            throw std::invalid_argument("PermutationModel needs a permutation of 0..n-1");
        }
        hit[y] = true;
    }
}

PermutationModel PermutationModel::cyclic_shift(int n)
{
    if (n < 1) {
        throw std::invalid_argument("cyclic shift needs n >= 1");
    }
    std::vector<int> perm(n);
    for (int x = 0; x < n; ++x) {
        perm[x] = (x + 1) % n;
    }
    return PermutationModel(std::move(perm));
}

FiniteFunction PermutationModel::apply(const FiniteFunction& a) const
{
    if (a.size() != perm_.size()) {
        throw std::invalid_argument("function length does not match the permutation");
    }
    FiniteFunction out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        out[perm_[x]] = a[x];
    }
    return out;
}

double PermutationModel::pair_norm(const FiniteFunction& a, const FiniteFunction& b) const
{
    return max_abs_product(a, b);
}

double PermutationModel::distance(const FiniteFunction& a, const FiniteFunction& b) const
{
    return max_abs_difference(a, b);
}

double PermutationModel::spectrum_min(const FiniteFunction& a) const { return *std::min_element(a.begin(), a.end()); }

double PermutationModel::norm(const FiniteFunction& a) const { return max_abs(a); }

bool PermutationModel::is_positive_contraction(const FiniteFunction& a) const
{
    return a.size() == perm_.size() && in_unit_interval(a);
}

MatrixConjugationModel::MatrixConjugationModel(CMatrix unitary) : u_(std::move(unitary))
{
    if (u_.rows() != u_.cols() || u_.rows() == 0) {
        throw std::invalid_argument("MatrixConjugationModel needs a square matrix");
    }
    const CMatrix id = CMatrix::Identity(u_.rows(), u_.cols());
    if (operator_norm(CMatrix(u_ * u_.adjoint() - id)) > 1e-12) {
        throw std::invalid_argument("MatrixConjugationModel needs a unitary");
    }
}

bool MatrixConjugationModel::is_positive_contraction(const CMatrix& a) const
{
    if (a.rows() != u_.rows() || a.cols() != u_.cols()) {
        return false;
    }
    if (operator_norm(CMatrix(a - a.adjoint())) > kPositivityTolerance) {
        return false;
    }
    return min_hermitian_eigenvalue(a) >= -kPositivityTolerance &&
           max_hermitian_eigenvalue(a) <= 1.0 + kPositivityTolerance;
}

double GroupFunctionModel::pair_norm(const FiniteFunction& a, const FiniteFunction& b) const
{
    return max_abs_product(a, b);
}

double GroupFunctionModel::distance(const FiniteFunction& a, const FiniteFunction& b) const
{
    return max_abs_difference(a, b);
}

double GroupFunctionModel::spectrum_min(const FiniteFunction& a) const
{
    return *std::min_element(a.begin(), a.end());
}

double GroupFunctionModel::norm(const FiniteFunction& a) const { return max_abs(a); }

bool GroupFunctionModel::is_positive_contraction(const FiniteFunction& a) const
{
    return static_cast<int>(a.size()) == action_.size() && in_unit_interval(a);
}

}  // namespace rokhlin

#pragma once

#include <span>
#include <vector>

#include "rokhlin/circle_fn.hpp"
#include "rokhlin/finite_action.hpp"
#include "rokhlin/linalg.hpp"

namespace rokhlin {

/// Tolerance for "positive contraction" membership checks.
inline constexpr double kPositivityTolerance = 1e-9;

// Linear structure of the supported element kinds.  The tower transforms only
// need these, not the dynamics.

PLFunction combine(std::span<const double> coeffs, std::span<const PLFunction> elems);
FiniteFunction combine(std::span<const double> coeffs, std::span<const FiniteFunction> elems);
CMatrix combine(std::span<const double> coeffs, std::span<const CMatrix> elems);

PLFunction zero_like(const PLFunction& f);
FiniteFunction zero_like(const FiniteFunction& f);
CMatrix zero_like(const CMatrix& f);

/// Rotation by theta acting on C(T) through piecewise-linear functions,
/// alpha(f)(x) = f(x - theta).
class CircleRotationModel {
public:
    using element_type = PLFunction;
    static constexpr bool commutative = true;

    /// grid_step == 0 selects exact PL distances; otherwise distances are
    /// certified grid bounds with that step.
    explicit CircleRotationModel(double theta, double grid_step = 0.0);

    double theta() const { return theta_; }

    PLFunction apply(const PLFunction& f) const { return rotate(f, theta_); }
    PLFunction unit() const { return PLFunction::constant(1.0); }
    double pair_norm(const PLFunction& a, const PLFunction& b) const { return product_sup_norm(a, b); }
    double distance(const PLFunction& a, const PLFunction& b) const;
    double commutator_norm(const PLFunction&, const PLFunction&) const { return 0.0; }
    double spectrum_min(const PLFunction& a) const { return a.min_value(); }
    double norm(const PLFunction& a) const { return a.sup_norm(); }
    bool is_positive_contraction(const PLFunction& a) const;

private:
    double theta_;
    double grid_step_;
};

/// Z acting on C(X), X finite, through a permutation sigma of X:
/// alpha(a)(sigma(x)) = a(x).
class PermutationModel {
public:
    using element_type = FiniteFunction;
    static constexpr bool commutative = true;

    explicit PermutationModel(std::vector<int> permutation);

    /// x -> x + 1 mod n.
    static PermutationModel cyclic_shift(int n);

    int size() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& permutation() const { return perm_; }

    FiniteFunction apply(const FiniteFunction& a) const;
    FiniteFunction unit() const { return FiniteFunction(perm_.size(), 1.0); }
    double pair_norm(const FiniteFunction& a, const FiniteFunction& b) const;
    double distance(const FiniteFunction& a, const FiniteFunction& b) const;
    double commutator_norm(const FiniteFunction&, const FiniteFunction&) const { return 0.0; }
    double spectrum_min(const FiniteFunction& a) const;
    double norm(const FiniteFunction& a) const;
    bool is_positive_contraction(const FiniteFunction& a) const;

private:
    std::vector<int> perm_;
};

/// Inner automorphism Ad(U) of M_r.
class MatrixConjugationModel {
public:
    using element_type = CMatrix;
    static constexpr bool commutative = false;

    explicit MatrixConjugationModel(CMatrix unitary);

    CMatrix apply(const CMatrix& a) const { return u_ * a * u_.adjoint(); }
    CMatrix unit() const { return CMatrix::Identity(u_.rows(), u_.cols()); }
    double pair_norm(const CMatrix& a, const CMatrix& b) const { return operator_norm(CMatrix(a * b)); }
    double distance(const CMatrix& a, const CMatrix& b) const { return operator_norm(CMatrix(a - b)); }
    double commutator_norm(const CMatrix& a, const CMatrix& b) const { return operator_norm(CMatrix(a * b - b * a)); }
    double spectrum_min(const CMatrix& a) const { return min_hermitian_eigenvalue(a); }
    double norm(const CMatrix& a) const { return operator_norm(a); }
    bool is_positive_contraction(const CMatrix& a) const;

private:
    CMatrix u_;
};

/// Finite group G acting on C(X) through a FiniteAction.
class GroupFunctionModel {
public:
    using element_type = FiniteFunction;
    static constexpr bool commutative = true;

    explicit GroupFunctionModel(FiniteAction action) : action_(std::move(action)) {}

    const FiniteAction& action() const { return action_; }
    int group_order() const { return action_.group().order(); }
    int multiply(int h, int g) const { return action_.group().multiply(h, g); }

    FiniteFunction apply(int h, const FiniteFunction& a) const { return action_.apply(h, a); }
    FiniteFunction unit() const { return FiniteFunction(action_.size(), 1.0); }
    double pair_norm(const FiniteFunction& a, const FiniteFunction& b) const;
    double distance(const FiniteFunction& a, const FiniteFunction& b) const;
    double commutator_norm(const FiniteFunction&, const FiniteFunction&) const { return 0.0; }
    double spectrum_min(const FiniteFunction& a) const;
    double norm(const FiniteFunction& a) const;
    bool is_positive_contraction(const FiniteFunction& a) const;

private:
    FiniteAction action_;
};

}  // namespace rokhlin

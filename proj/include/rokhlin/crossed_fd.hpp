#pragma once

// C(X) x| G for finite G and X as |G| x |G| block matrices over C(X), exact
// Rokhlin towers for free actions, and the maps rho used to compare
// M_{|G|}(C(X)) with the crossed product.

#include <cstdint>
#include <vector>

#include "rokhlin/finite_action.hpp"
#include "rokhlin/linalg.hpp"
#include "rokhlin/towers.hpp"

namespace rokhlin {

/// Element of M_{|G|}(C(X)); blocks are real functions on X.
class CPBlockMatrix {
public:
    CPBlockMatrix(int order, int space_size);

    static CPBlockMatrix identity(int order, int space_size);

    int order() const { return order_; }
    int space_size() const { return size_; }

    FiniteFunction& block(int g, int h) { return blocks_[g * order_ + h]; }
    const FiniteFunction& block(int g, int h) const { return blocks_[g * order_ + h]; }

    /// Scalar |G| x |G| matrix of block values at the point x.
    RMatrix at(int x) const;

    CPBlockMatrix operator*(const CPBlockMatrix& o) const;
    CPBlockMatrix operator+(const CPBlockMatrix& o) const;
    CPBlockMatrix operator-(const CPBlockMatrix& o) const;
    CPBlockMatrix scaled(double c) const;
    CPBlockMatrix adjoint() const;

    /// max over x of the largest singular value of at(x).
    double op_norm() const;

    /// Smallest eigenvalue of the symmetric part over all points.
    double min_eigenvalue() const;

    /// Number of nonzero blocks in row g.
    int row_support(int g) const;

private:
    void check_shape(const CPBlockMatrix& o) const;

    int order_;
    int size_;
    std::vector<FiniteFunction> blocks_;
};

/// pi(a): block (g, g) = alpha_{g^{-1}}(a).
CPBlockMatrix embed_function(const FiniteAction& action, const FiniteFunction& a);

/// lambda_h: block (k, h^{-1} k) = 1.
CPBlockMatrix embed_unitary(const FiniteAction& action, int h);

/// pi(a) lambda_g.
CPBlockMatrix embed_product(const FiniteAction& action, const FiniteFunction& a, int g);

/// f_g = indicator of g D for a transversal D of the orbits.  Throws for
/// non-free actions.
TowerSystem<FiniteFunction> free_action_towers(const FiniteAction& action);

/// rho(x) = sum_l sum_{g,h} V_g pi(x_{gh}) V_h^* with V_g = pi(s_g) lambda_g
/// and s_g = f_g^{1/2}.
CPBlockMatrix rho_map(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers, const CPBlockMatrix& x);

/// Pointwise square root of every element.
TowerSystem<FiniteFunction> sqrt_towers(const TowerSystem<FiniteFunction>& towers);

/// Perturbs the square roots of the tower elements: s = clamp(f^{1/2} + eta
/// * noise, 0, 1) with noise uniform in [-1, 1], and returns f = s^2.
TowerSystem<FiniteFunction> perturb_towers(const TowerSystem<FiniteFunction>& towers, double eta, std::uint64_t seed);

/// Largest tower defect of both the towers and their square roots
/// (overlaps, sum deviation, equivariance).
double tower_tolerance(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers);

struct RhoReport {
    double identity_error = 0.0;  // max over a, g of |rho(pi(a) lambda_g) - pi(a) lambda_g| / |a|
    double eta = 0.0;             // tower_tolerance of the towers used
    double bound = 0.0;           // (2(d+1)n + 1) eta
    double unit_defect = 0.0;     // |rho(1) - sum_l sum_g pi(f_g)|
    double positivity_defect = 0.0;
    bool pass = false;
};

/// Evaluates rho on pi(a) lambda_g for the given functions and every g, and on
/// random positive matrices for the positivity check.
RhoReport rho_check(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers,
                    const std::vector<FiniteFunction>& test_functions, std::uint64_t seed = 0);

}  // namespace rokhlin

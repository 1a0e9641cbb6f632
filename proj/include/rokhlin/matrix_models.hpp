#pragma once

// Diagonal calculus in M_r: truncated shifts, the splice map C^k -> D_r,
// elementary polynomials in commuting projections, and the decay-matrix
// commutator estimate.

#include <cstdint>
#include <span>
#include <vector>

#include "rokhlin/linalg.hpp"

namespace rokhlin {

/// Diagonal of an element of D_r (index 0 is the (1,1) entry).
using DiagVector = std::vector<double>;

/// sigma(e)_0 = 0, sigma(e)_{i+1} = e_i; the last entry falls off.
DiagVector truncated_shift(const DiagVector& e);

/// Moves entry i to i-1; the first entry falls off.
DiagVector partial_inverse_shift(const DiagVector& e);

/// Last entry vanishes.
bool is_shiftable(const DiagVector& e);

/// Cyclic shift on C^k, e_i -> e_{i+1}, e_k -> e_1.
std::vector<double> cyclic_shift(std::span<const double> e);

struct SpliceMap {
    int k = 0;
    int r = 0;
    int Lbar = 0;
    int L = 0;
    int s = 0;
    double delta = 0.0;
    /// weights[i][j] is the coefficient of f_{j+1} in mu(e_{i+1}).
    std::vector<std::vector<double>> weights;

    DiagVector apply(std::span<const double> e) const;
    DiagVector unit_image() const;
};

/// Ramp-plateau-ramp splice with Lbar = ceil(1/delta), s = k Lbar and L
/// chosen by r - 2s <= kL < r - 2s + k.  Requires r >= 4s.
SpliceMap build_splice(int k, double delta, int r);

struct SpliceReport {
    bool order_zero = false;           // basis images have disjoint supports
    bool shiftable = false;            // weight of f_r is 0 for every e_i
    double basis_shift_error = 0.0;    // max_i |sigma(mu(e_i)) - mu(sigma~(e_i))|
    double interior_shift_error = 0.0; // same, over i < k only
    double wrap_shift_error = 0.0;     // i = k
    double unit_ball_shift_error = 0.0;  // attained at e = 1 since errors have disjoint supports
    double random_shift_ratio = 0.0;   // max error / |e| over random positive e
    double coverage_min = 0.0;
    std::vector<double> coverage;
    double delta = 0.0;
    bool pass = false;
};

SpliceReport verify_splice(const SpliceMap& mu, double delta, std::uint64_t seed = 0, int random_samples = 64);

/// y = q_index or 1 - q_index.
struct Factor {
    int index = 0;
    bool complement = false;
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Sum over terms of the product of their factors.
struct ElementaryPolynomial {
    std::vector<std::vector<Factor>> terms;
};

/// Writes a projection p in the algebra generated by commuting diagonal
/// projections qs as a sum of at most r products of r factors each.  Throws
/// std::invalid_argument if p is not in the generated algebra.
ElementaryPolynomial elementary_decompose(const std::vector<DiagVector>& qs, const DiagVector& p);

DiagVector evaluate(const ElementaryPolynomial& e, const std::vector<DiagVector>& qs);

/// Minimal projections (atoms) of the algebra generated by qs.
std::vector<DiagVector> generated_atoms(const std::vector<DiagVector>& qs);

/// d_n = 1 - |(p-1)/2 - n| / ((p-1)/2), n = 0..p-1.
std::vector<double> decay_weights(int p);

struct DecayCommutatorReport {
    double commutator_norm = 0.0;
    double x_norm = 0.0;
    double bound = 0.0;  // sqrt(2q/(p-1)) |x|
    bool pass = false;
};

/// x is a p x p block matrix with square blocks of size block_size whose
/// blocks vanish beyond bandwidth q.  Compares |[sqrt(D), x]| with
/// sqrt(2q/(p-1)) |x| where D = diag(d_n) (x) 1.
DecayCommutatorReport decay_commutator_check(int p, int q, const CMatrix& x, int block_size = 1);

}  // namespace rokhlin

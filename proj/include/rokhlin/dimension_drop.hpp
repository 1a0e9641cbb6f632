#pragma once

// A unitary path u in the dimension drop algebra Z_{p,p+1} together with
// positive elements f_0..f_{p-1}, g_0..g_p that u permutes cyclically,
// sampled on a uniform grid of [0,1].

#include <vector>

#include "rokhlin/linalg.hpp"

namespace rokhlin {

struct DimDropPath {
    int p = 0;
    std::vector<double> grid;
    std::vector<double> h;                 // plateau-ramp scalar function
    std::vector<CMatrix> u;                // in M_p (x) M_{p+1}
    std::vector<std::vector<CMatrix>> f;   // f[k][j] at grid point k, j < p
    std::vector<std::vector<CMatrix>> g;   // g[k][j], j <= p
};

/// Cyclic permutation matrix e_j -> e_{j+1 mod n}.
CMatrix cyclic_permutation(int n);

/// Spectral geodesic from 1 (s = 0) to the cyclic permutation (s = 1):
/// F diag(exp(i s phi_k)) F^* with phases phi_k in (-pi, pi].
CMatrix permutation_path(int n, double s);

/// 1 on [0,1/3], linear down to 0 on [1/3,2/3], 0 after.
double plateau_ramp(double x);

/// Samples the construction on t_k = k/M.  M must be a positive multiple of 3
/// so that 1/3 and 2/3 are grid points.
DimDropPath build_dimension_drop(int p, int M);

/// Distance of X from M_p (x) 1 and from 1 (x) M_{p+1}, via partial traces.
double distance_to_left_factor(const CMatrix& x, int p, int q);
double distance_to_right_factor(const CMatrix& x, int p, int q);

struct DimDropReport {
    double f_products = 0.0;      // max |f_i f_j|, i != j
    double g_products = 0.0;
    double fg_commutators = 0.0;  // max |[f_i, g_j]|
    double sum_deviation = 0.0;   // max |sum f + sum g - 1|
    double f_conjugation = 0.0;   // max |u f_j u^* - f_{j+1}|
    double g_conjugation = 0.0;
    double unitarity = 0.0;       // max |u u^* - 1|
    double boundary = 0.0;        // membership defect at t = 0 and t = 1
    double continuity_constant = 0.0;  // M * max |u(t_{k+1}) - u(t_k)|
    double positivity_defect = 0.0;    // most negative eigenvalue of any f_j, g_j (as a positive number)
    bool pass = false;
};

inline constexpr double kDimDropTolerance = 1e-9;
inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kBoundaryTolerance = 1e-10;

DimDropReport verify_dimension_drop(const DimDropPath& path);

}  // namespace rokhlin

#pragma once

#include <cstdint>

#include "rokhlin/cfrac.hpp"
#include "rokhlin/circle_fn.hpp"
#include "rokhlin/models.hpp"
#include "rokhlin/towers.hpp"

namespace rokhlin {

struct RotationCertificate {
    std::int64_t p = 0;
    std::int64_t m = 0;
    std::int64_t n = 0;
    double lipschitz_bound = 0.0;       // 2np
    double analytic_shift_bound = 0.0;  // 2/n
    double approximation_bound = 0.0;   // 2np |theta - m/(pn)|
    double exact_shift_error = 0.0;     // from exact PL differences
    double grid_step = 0.0;
    CertifiedBound measured_shift_bound;
    double tiling_error = 0.0;
    double max_overlap = 0.0;
    double gamma_equivariance_error = 0.0;
};

struct RotationTowers {
    TowerSystem<PLFunction> system;
    RotationCertificate certificate;
};

/// Single towers of prime height p for rotation by theta: two colors (the
/// f-family and the g-family), each cyclically permuted by rotation by m/(np)
/// and moved by at most 2/n under rotation by theta.
RotationTowers build_rotation_towers(double theta, int p, double eps);

/// Sum of the height-1 tents of width 1/N starting at s/N for each s in
/// `starts`, all moved by 1/(2N) when `half_shift` is set.
PLFunction tent_sum(const std::vector<std::int64_t>& starts, std::int64_t big_n, bool half_shift);

}  // namespace rokhlin

#pragma once

// First return times of a circle rotation to a half-open interval Z, the
// level sets Z_l of the return time, and the evaluation maps sigma_l.

#include <cstdint>
#include <vector>

#include "rokhlin/circle_fn.hpp"

namespace rokhlin {

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
    bool contains(double t) const { return a <= t && t < b; }
};

struct ReturnPiece {
    int m = 0;
    std::vector<Interval> intervals;
    double length() const;
};

struct ReturnDecomposition {
    double theta = 0.0;
    double z0 = 0.0;
    double z1 = 1.0;
    std::vector<ReturnPiece> pieces;  // sorted by m
};

/// min { j >= 1 : t + j theta mod 1 in [z0, z1) }, or 0 if there is none up
/// to max_time.
int first_return_time(double theta, double z0, double z1, double t, int max_time);

/// 10 * ceil(1 / (z1 - z0)).
int default_max_time(double z0, double z1);

/// Splits [z0, z1) at the backward orbit points z0 - j theta, z1 - j theta
/// (j <= max_time) and evaluates the return time on each piece.  max_time <= 0
/// selects the default.
ReturnDecomposition decompose_returns(double theta, double z0, double z1, int max_time = 0);

struct PartitionReport {
    double total_measure = 0.0;    // sum m_l |Z_l|
    double measure_error = 0.0;    // |total - 1|
    double length_deficit = 0.0;   // |Z| - sum |Z_l|
    bool times_increasing = false;
    bool pieces_disjoint = false;
    int samples = 0;
    int bad_samples = 0;           // points not covered exactly once by the translates
    bool pass = false;
};

/// Checks that the translates Z_l + j theta (1 <= j <= m_l) tile the circle:
/// total measure and multiplicity one at random points.
PartitionReport verify_partition(const ReturnDecomposition& dec, int samples, std::uint64_t seed = 0);

/// (f(t + theta), ..., f(t + m_l theta)) for t in Z_l.
std::vector<double> sigma_eval(const PLFunction& f, const ReturnDecomposition& dec, int l, double t);

}  // namespace rokhlin

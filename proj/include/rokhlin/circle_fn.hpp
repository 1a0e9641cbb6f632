#pragma once

#include <span>
#include <string>
#include <vector>

namespace rokhlin {

/// Breakpoints closer than this (after rotation or merging) are treated as one.
inline constexpr double kCoalesceTolerance = 1e-13;

/// Reduce a real number to the fundamental domain [0, 1) of the circle R/Z.
double wrap_unit(double x);

/// A continuous piecewise-linear function on the circle T = R/Z.
///
/// The function is stored as values at strictly increasing breakpoints in
/// [0, 1); between consecutive breakpoints it is affine, and the last segment
/// wraps from the final breakpoint to the first breakpoint + 1.  A single
/// breakpoint describes a constant function.
class PLFunction {
public:
    PLFunction(std::vector<double> breakpoints, std::vector<double> values);

    static PLFunction constant(double c);

    /// Tent rising linearly from 0 at `start` to `height` at `start + width/2`
    /// and back to 0 at `start + width` (all positions mod 1).
    static PLFunction tent(double start, double width, double height = 1.0);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return breakpoints_.size(); }

    /// Maximum absolute slope over all segments, including the wrap segment.
    double lipschitz() const { return lipschitz_; }

    double operator()(double x) const;

    double sup_norm() const;
    double min_value() const;
    double max_value() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    double lipschitz_ = 0.0;
};

/// Upper bound on a sup-norm obtained by sampling plus a Lipschitz correction.
struct CertifiedBound {
    double estimate = 0.0;
    double slack = 0.0;
    double certified = 0.0;
};

/// A real parsed from decimal text together with the rounding error incurred.
struct ParsedReal {
    double value = 0.0;
    double parse_error_bound = 0.0;
    std::string text;
};

ParsedReal parse_real(const std::string& text);

double eval(const PLFunction& f, double x);

/// g(x) = f(x - t mod 1).
PLFunction rotate(const PLFunction& f, double t);

PLFunction linear_combine(std::span<const double> coeffs, std::span<const PLFunction> fs);

/// Exact sup over T of |f g|.
double product_sup_norm(const PLFunction& f, const PLFunction& g);

/// Exact sup over T of |f - g|, computed from the PL difference.
double sup_distance(const PLFunction& f, const PLFunction& g);

/// Grid estimate of sup |f - g| with slack (Lip f + Lip g) * step / 2.
CertifiedBound certified_sup_distance(const PLFunction& f, const PLFunction& g, double step);

/// Merged, coalesced breakpoint set of several functions.
std::vector<double> merged_breakpoints(std::span<const PLFunction> fs);

}  // namespace rokhlin

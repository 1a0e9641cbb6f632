#pragma once

// Independent reference computations for the unit tests.  Nothing here calls
// into the library except to read PLFunction data.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rokhlin/circle_fn.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline big golden() { return (boost::multiprecision::sqrt(big(5)) - 1) / 2; }

inline double frac(double x) { return x - std::floor(x); }

// Direct interpolation from the stored data by a linear scan.
inline double interp(const rokhlin::PLFunction& f, double x)
{
    const auto& b = f.breakpoints();
    const auto& v = f.values();
    const std::size_t n = b.size();
    if (n == 1) {
        return v[0];
    }
    const double t = frac(x);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (b[i] <= t && t < b[i + 1]) {
            return v[i] + (v[i + 1] - v[i]) * (t - b[i]) / (b[i + 1] - b[i]);
        }
    }
    const double tt = t < b[0] ? t + 1.0 : t;
    return v[n - 1] + (v[0] - v[n - 1]) * (tt - b[n - 1]) / (b[0] + 1.0 - b[n - 1]);
}

// sup |f - g| from the union of both breakpoint sets: the difference is
// affine between consecutive union points.
inline double pl_distance(const rokhlin::PLFunction& f, const rokhlin::PLFunction& g)
{
    std::vector<double> pts = f.breakpoints();
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    double m = 0.0;
    for (double x : pts) {
        m = std::max(m, std::abs(interp(f, x) - interp(g, x)));
    }
    return m;
}

inline double grid_sup(const auto& fn, double step)
{
    double m = 0.0;
    const auto count = static_cast<long>(std::ceil(1.0 / step));
    for (long i = 0; i <= count; ++i) {
        m = std::max(m, std::abs(fn(static_cast<double>(i) / count)));
    }
    return m;
}

// Best approximation m/n for each denominator by exhaustive search.
inline std::pair<std::int64_t, double> best_numerator(const big& t, std::int64_t n)
{
    const big scaled = t * n;
    const auto m = static_cast<std::int64_t>(boost::multiprecision::round(scaled));
    return {m, static_cast<double>(boost::multiprecision::abs(t - big(m) / n))};
}

// Denominators at which the error strictly improves on every smaller one
// (the best approximations of the second kind are among these).
inline std::vector<std::pair<std::int64_t, std::int64_t>> record_approximants(const big& t, std::int64_t max_n)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    double best = 1e300;
    for (std::int64_t n = 1; n <= max_n; ++n) {
        const auto [m, err] = best_numerator(t, n);
        const double weighted = err * static_cast<double>(n);
        if (weighted < best) {
            best = weighted;
            out.emplace_back(m, n);
        }
    }
    return out;
}

// Random PL function with k breakpoints and values in [lo, hi].
inline rokhlin::PLFunction random_pl(std::mt19937_64& rng, int k, double lo = 0.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::uniform_real_distribution<double> val(lo, hi);
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < k) {
        const double x = pos(rng);
        if (std::none_of(xs.begin(), xs.end(), [x](double y) { return std::abs(x - y) < 1e-6; })) {
            xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> vs(k);
    for (double& v : vs) {
        v = val(rng);
    }
    return rokhlin::PLFunction(xs, vs);
}

}  // namespace oracle

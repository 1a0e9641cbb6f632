#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rokhlin {

/// Reduced fraction m/n with n > 0.
struct Convergent {
    std::int64_t m = 0;
    std::int64_t n = 1;

    double value() const { return static_cast<double>(m) / static_cast<double>(n); }
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

struct ConvergentList {
    std::vector<Convergent> terms;
    bool rational_input = false;  // expansion terminated before `count` terms
};

/// Thrown when the input behaves like a rational number at working precision.
class RationalInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fractional parts below this stop the expansion.
inline constexpr double kRationalThreshold = 1e-12;

/// First `count` continued-fraction convergents of t > 0 with nonzero numerator,
/// ordered by increasing denominator.
ConvergentList convergents(double t, int count);

/// First convergent m/n of t with n >= n_min and p not dividing m.  Scans at
/// most 1000 convergents.
Convergent find_approximant_avoiding(double t, std::int64_t p, std::int64_t n_min);

bool is_prime(std::int64_t p);

std::int64_t gcd(std::int64_t a, std::int64_t b);

}  // namespace rokhlin

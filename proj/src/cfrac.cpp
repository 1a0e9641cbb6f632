#include "rokhlin/cfrac.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace rokhlin {

namespace {

constexpr int kSearchCap = 1000;

std::int64_t checked_mul_add(std::int64_t a, std::int64_t b, std::int64_t c)
{
    std::int64_t prod = 0;
    std::int64_t sum = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(prod, c, &sum)) {
        throw std::overflow_error("continued-fraction convergent overflows 64-bit integers");
    }
    return sum;
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

bool is_prime(std::int64_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

namespace {

// Yields successive convergents of t with nonzero numerator.
class ConvergentStream {
public:
    explicit ConvergentStream(double t) : x_(t)
    {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument("convergents needs a positive finite input");
        }
    }

    // False once the expansion has terminated (rational at working precision).
    bool next(Convergent& out)
    {
        while (!done_) {
            const long double a_ld = std::floor(x_);
            if (a_ld > 9.0e18L) {
                throw std::overflow_error("continued-fraction partial quotient overflows");
            }
            const auto a = static_cast<std::int64_t>(a_ld);
            const std::int64_t h = checked_mul_add(a, h_prev_, h_prev2_);
            const std::int64_t k = checked_mul_add(a, k_prev_, k_prev2_);
            h_prev2_ = h_prev_;
            h_prev_ = h;
            k_prev2_ = k_prev_;
            k_prev_ = k;
            const long double frac = x_ - a_ld;
            if (frac < static_cast<long double>(kRationalThreshold)) {
                done_ = true;
            } else {
                x_ = 1.0L / frac;
            }
            if (h != 0) {
                out = {h, k};
                return true;
            }
        }
        return false;
    }

    bool terminated() const { return done_; }

private:
    long double x_;
    bool done_ = false;
    // h_k = a_k h_{k-1} + h_{k-2} with h_{-1} = 1, h_{-2} = 0; k likewise with 0, 1.
    std::int64_t h_prev_ = 1;
    std::int64_t h_prev2_ = 0;
    std::int64_t k_prev_ = 0;
    std::int64_t k_prev2_ = 1;
};

}  // namespace

ConvergentList convergents(double t, int count)
{
    if (count < 1) {
        throw std::invalid_argument("convergents needs count >= 1");
    }
    ConvergentStream stream(t);
    ConvergentList out;
    Convergent c;
    while (static_cast<int>(out.terms.size()) < count && stream.next(c)) {
        out.terms.push_back(c);
    }
    out.rational_input = static_cast<int>(out.terms.size()) < count;
    return out;
}

Convergent find_approximant_avoiding(double t, std::int64_t p, std::int64_t n_min)
{
    if (!is_prime(p)) {
        throw std::invalid_argument("find_approximant_avoiding needs a prime p, got " + std::to_string(p));
    }
    if (n_min < 1) {
        throw std::invalid_argument("find_approximant_avoiding needs n_min >= 1");
    }
    ConvergentStream stream(t);
    Convergent c;
    try {
        for (int scanned = 0; scanned < kSearchCap && stream.next(c); ++scanned) {
            if (c.n >= n_min && c.m % p != 0) {
                return c;
            }
        }
    } catch (const std::overflow_error&) {
        throw std::runtime_error("approximant search overflowed before finding a match");
    }
    if (stream.terminated()) {
        throw RationalInputError("input is rational at working precision; no qualifying approximant");
    }
    throw std::runtime_error("no qualifying approximant within the search cap");
}

}  // namespace rokhlin

#include "rokhlin/towers.hpp"

#include <cmath>
#include <string>

namespace rokhlin {

double decay_factor(int p, int r, int n)
{
    if (p < 1 || (r != 0 && r != 1)) {
        throw std::invalid_argument("decay_factor needs p >= 1 and r in {0, 1}");
    }
    if (r == 0 && n == p) {
        return 0.0;
    }
    const int top = p - 1 + r;
    if (n < 0 || n > top) {
        throw std::invalid_argument("decay_factor: index " + std::to_string(n) + " outside 0.." + std::to_string(top));
    }
    if (top == 0) {
        throw std::invalid_argument("decay_factor: height 1 tower has no decay profile");
    }
    const double mid = 0.5 * top;
    return 1.0 - std::abs(mid - n) / mid;
}

double decay_shift_bound(int p)
{
    double worst = 0.0;
    for (int r = 0; r <= 1; ++r) {
        if (p - 1 + r == 0) {
            continue;
        }
        // for r = 0 the last step runs into the sentinel mu_0(p)
        for (int n = 0; n < p; ++n) {
            worst = std::max(worst, std::abs(decay_factor(p, r, n + 1) - decay_factor(p, r, n)));
        }
    }
    return worst;
}

std::optional<HeightSplit> split_height(int height, int p)
{
    if (p < 2 || height < 0) {
        return std::nullopt;
    }
    for (int a = 0; a * (p - 1) <= height; ++a) {
        const int rest = height - a * (p - 1);
        if (rest % p == 0) {
            return HeightSplit{a, rest / p};
        }
    }
    return std::nullopt;
}

}  // namespace rokhlin

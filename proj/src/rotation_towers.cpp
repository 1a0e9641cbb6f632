#include "rokhlin/rotation_towers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace rokhlin {

namespace {

// At most 1e8 samples per certified distance.
constexpr double kMinGridStep = 1e-8;

}  // namespace

PLFunction tent_sum(const std::vector<std::int64_t>& starts, std::int64_t big_n, bool half_shift)
{
    if (big_n < 1 || starts.empty()) {
        throw std::invalid_argument("tent_sum needs N >= 1 and at least one tent");
    }
    // Positions on the grid of multiples of 1/(2N).
    const std::int64_t grid = 2 * big_n;
    std::map<std::int64_t, double> nodes;
    for (std::int64_t s : starts) {
        const std::int64_t a = ((2 * s + (half_shift ? 1 : 0)) % grid + grid) % grid;
        nodes.try_emplace(a, 0.0);
        nodes[(a + 1) % grid] = 1.0;
        nodes.try_emplace((a + 2) % grid, 0.0);
    }
    std::vector<double> xs;
    std::vector<double> vs;
    for (const auto& [k, v] : nodes) {
        xs.push_back(static_cast<double>(k) / static_cast<double>(grid));
        vs.push_back(v);
    }
    return PLFunction(std::move(xs), std::move(vs));
}

RotationTowers build_rotation_towers(double theta, int p, double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0,1)");
    }
    if (!is_prime(p)) {
        throw std::invalid_argument("p must be prime, got " + std::to_string(p));
    }
    const auto n_min = static_cast<std::int64_t>(std::ceil(2.0 / eps)) + 1;
    const Convergent c = find_approximant_avoiding(p * theta, p, n_min);
    const std::int64_t n = c.n;
    const std::int64_t m = c.m;
    const std::int64_t big_n = n * p;
    if (gcd(m, big_n) != 1) {
        throw std::runtime_error("approximant is not coprime to pn");
    }

    RotationTowers out;
    auto& sys = out.system;
    sys.mode = TowerMode::z;
    sys.epsilon = eps;
    Tower<PLFunction> f_family;
    Tower<PLFunction> g_family;
    for (int j = 0; j < p; ++j) {
        std::vector<std::int64_t> starts;
        for (std::int64_t k = 0; k < n; ++k) {
            // f_i = gamma^i f_0 starts at (i m mod N)/N
            __int128 idx = static_cast<__int128>(k * p + j) * m;
            idx %= big_n;
            starts.push_back(static_cast<std::int64_t>(idx));
        }
        f_family.push_back(tent_sum(starts, big_n, false));
        g_family.push_back(tent_sum(starts, big_n, true));
    }
    sys.colors.push_back({{f_family}});
    sys.colors.push_back({{g_family}});

    auto& cert = out.certificate;
    cert.p = p;
    cert.m = m;
    cert.n = n;
    cert.lipschitz_bound = 2.0 * static_cast<double>(big_n);
    cert.analytic_shift_bound = 2.0 / static_cast<double>(n);
    cert.approximation_bound =
        cert.lipschitz_bound * std::abs(theta - static_cast<double>(m) / static_cast<double>(big_n));

    std::vector<PLFunction> all(f_family.begin(), f_family.end());
    all.insert(all.end(), g_family.begin(), g_family.end());
    std::vector<double> ones(all.size(), 1.0);
    cert.tiling_error = sup_distance(linear_combine(ones, all), PLFunction::constant(1.0));
    if (!(cert.tiling_error < 1e-10)) {
        throw std::runtime_error("tents fail to tile the circle (error " + std::to_string(cert.tiling_error) + ")");
    }
    for (const auto* fam : {&f_family, &g_family}) {
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                cert.max_overlap = std::max(cert.max_overlap, product_sup_norm((*fam)[i], (*fam)[j]));
            }
        }
    }

    const double gamma = static_cast<double>(m % big_n) / static_cast<double>(big_n);
    for (const auto* fam : {&f_family, &g_family}) {
        for (int j = 0; j < p; ++j) {
            const PLFunction& next = (*fam)[(j + 1) % p];
            cert.gamma_equivariance_error =
                std::max(cert.gamma_equivariance_error, sup_distance(rotate((*fam)[j], gamma), next));
            cert.exact_shift_error = std::max(cert.exact_shift_error, sup_distance(rotate((*fam)[j], theta), next));
        }
    }
    // The grid slack is 2np * step.  Keep it within 0.2/n and within half the
    // room between the exact error and 2/n, so the certified value stays
    // below the analytic bound whenever the exact error does.
    const double nd = static_cast<double>(n);
    const double room = cert.analytic_shift_bound - cert.exact_shift_error;
    cert.grid_step = 0.1 / (nd * nd * p);
    if (room > 0.0) {
        cert.grid_step = std::max(std::min(cert.grid_step, 0.5 * room / cert.lipschitz_bound), kMinGridStep);
    }
    for (const auto* fam : {&f_family, &g_family}) {
        for (int j = 0; j < p; ++j) {
            const PLFunction& next = (*fam)[(j + 1) % p];
            const PLFunction moved = rotate((*fam)[j], theta);
            const CertifiedBound b = certified_sup_distance(moved, next, cert.grid_step);
            if (b.certified > cert.measured_shift_bound.certified) {
                cert.measured_shift_bound = b;
            }
        }
    }
    return out;
}

}  // namespace rokhlin

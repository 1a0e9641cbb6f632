#include "rokhlin/return_times.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace rokhlin {

double ReturnPiece::length() const
{
    double s = 0.0;
    for (const auto& iv : intervals) {
        s += iv.length();
    }
    return s;
}

int first_return_time(double theta, double z0, double z1, double t, int max_time)
{
    for (int j = 1; j <= max_time; ++j) {
        const double y = wrap_unit(t + j * theta);
        if (z0 <= y && y < z1) {
            return j;
        }
    }
    return 0;
}

int default_max_time(double z0, double z1) { return 10 * static_cast<int>(std::ceil(1.0 / (z1 - z0))); }

ReturnDecomposition decompose_returns(double theta, double z0, double z1, int max_time)
{
    if (!std::isfinite(theta) || !(0.0 <= z0 && z0 < z1 && z1 <= 1.0)) {
        throw std::invalid_argument("need 0 <= z0 < z1 <= 1 and finite theta");
    }
    if (max_time <= 0) {
        max_time = default_max_time(z0, z1);
    }
    std::vector<double> cuts = {z0, z1};
    for (int j = 1; j <= max_time; ++j) {
        for (double z : {z0, z1}) {
            const double c = wrap_unit(z - j * theta);
            if (z0 < c && c < z1) {
                cuts.push_back(c);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    ReturnDecomposition dec;
    dec.theta = theta;
    dec.z0 = z0;
    dec.z1 = z1;
    std::vector<std::pair<int, Interval>> runs;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Interval iv{cuts[i], cuts[i + 1]};
        const int m = first_return_time(theta, z0, z1, 0.5 * (iv.a + iv.b), max_time);
        if (m == 0) {
            throw std::runtime_error("no return to Z within max_time = " + std::to_string(max_time) + " from [" +
                                     std::to_string(iv.a) + ", " + std::to_string(iv.b) + ")");
        }
        if (!runs.empty() && runs.back().first == m && runs.back().second.b == iv.a) {
            runs.back().second.b = iv.b;
        } else {
            runs.emplace_back(m, iv);
        }
    }
    for (const auto& [m, iv] : runs) {
        auto it = std::find_if(dec.pieces.begin(), dec.pieces.end(), [m = m](const ReturnPiece& pc) { return pc.m == m; });
        if (it == dec.pieces.end()) {
            dec.pieces.push_back({m, {iv}});
        } else {
            it->intervals.push_back(iv);
        }
    }
    std::sort(dec.pieces.begin(), dec.pieces.end(), [](const ReturnPiece& a, const ReturnPiece& b) { return a.m < b.m; });
    return dec;
}

PartitionReport verify_partition(const ReturnDecomposition& dec, int samples, std::uint64_t seed)
{
    PartitionReport rep;
    rep.samples = samples;
    std::vector<Interval> all;
    rep.times_increasing = true;
    double covered = 0.0;
    for (std::size_t l = 0; l < dec.pieces.size(); ++l) {
        const auto& pc = dec.pieces[l];
        rep.total_measure += pc.m * pc.length();
        covered += pc.length();
        if (l > 0 && !(pc.m > dec.pieces[l - 1].m)) {
            rep.times_increasing = false;
        }
        all.insert(all.end(), pc.intervals.begin(), pc.intervals.end());
    }
    rep.measure_error = std::abs(rep.total_measure - 1.0);
    rep.length_deficit = std::abs((dec.z1 - dec.z0) - covered);
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.a < b.a; });
    rep.pieces_disjoint = true;
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        if (all[i].b > all[i + 1].a) {
            rep.pieces_disjoint = false;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        const double x = unif(rng);
        int hits = 0;
        for (const auto& pc : dec.pieces) {
            for (int j = 1; j <= pc.m; ++j) {
                const double back = wrap_unit(x - j * dec.theta);
                for (const auto& iv : pc.intervals) {
                    hits += iv.contains(back) ? 1 : 0;
                }
            }
        }
        rep.bad_samples += hits == 1 ? 0 : 1;
    }
    rep.pass = rep.measure_error <= 1e-9 && rep.length_deficit <= 1e-9 && rep.times_increasing &&
               rep.pieces_disjoint && rep.bad_samples == 0;
    return rep;
}

std::vector<double> sigma_eval(const PLFunction& f, const ReturnDecomposition& dec, int l, double t)
{
    if (l < 0 || l >= static_cast<int>(dec.pieces.size())) {
        throw std::invalid_argument("piece index out of range");
    }
    const auto& pc = dec.pieces[l];
    const bool inside = std::any_of(pc.intervals.begin(), pc.intervals.end(), [t](const Interval& iv) { return iv.contains(t); });
    if (!inside) {
        throw std::invalid_argument("point " + std::to_string(t) + " is not in Z_" + std::to_string(l));
    }
    std::vector<double> out(pc.m);
    for (int j = 1; j <= pc.m; ++j) {
        out[j - 1] = f(t + j * dec.theta);
    }
    return out;
}

}  // namespace rokhlin

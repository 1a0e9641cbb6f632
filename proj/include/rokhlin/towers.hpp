#pragma once

// Rokhlin tower systems for Z-actions and finite group actions, their
// verifiers, and the tower rearrangements (double towers to single towers,
// many towers to a double tower, folding).

#include <algorithm>
#include <concepts>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rokhlin/models.hpp"

namespace rokhlin {

enum class TowerMode { z, group };

/// Slack added to derived tolerances so that bounds attained with equality
/// still verify under the strict comparison.
inline constexpr double kBoundSlack = 1e-9;

template <class E>
using Tower = std::vector<E>;

/// One color of a tower system.  In Z mode a color holds a single tower or a
/// double tower (heights p and p+1, in that order); in group mode it holds one
/// tower indexed by the group elements.
template <class E>
struct TowerColor {
    std::vector<Tower<E>> towers;
};

template <class E>
struct TowerSystem {
    using element_type = E;

    TowerMode mode = TowerMode::z;
    double epsilon = 0.0;
    std::vector<TowerColor<E>> colors;

    std::size_t element_count() const
    {
        std::size_t n = 0;
        for (const auto& c : colors) {
            for (const auto& t : c.towers) {
                n += t.size();
            }
        }
        return n;
    }
};

/// Measured maxima of every tower condition.  In group mode the shift field
/// holds the equivariance error and the wrap field is unused (0).
struct RokhlinReport {
    double cond1_max_overlap = 0.0;
    double cond2_sum_deviation = 0.0;
    double cond2prime_min_value = 0.0;
    double cond3_max_shift_error = 0.0;
    double cond4_wrap_error = 0.0;
    double cond5_max_commutator = 0.0;
    double commuting_towers_max = 0.0;
    double epsilon = 0.0;
    bool pass = false;

    /// All measured conditions are strictly below eps.  (2') enters through
    /// (2), which implies it; the minimum itself is reported only.
    bool meets(double eps) const
    {
        return cond1_max_overlap < eps && cond2_sum_deviation < eps && cond3_max_shift_error < eps &&
               cond4_wrap_error < eps && cond5_max_commutator < eps && commuting_towers_max < eps;
    }

    /// The weaker covering condition (2'): sum >= (1 - eps).
    bool meets_weak_cover(double eps) const { return cond2prime_min_value >= 1.0 - eps; }

    double max_error() const
    {
        return std::max({cond1_max_overlap, cond2_sum_deviation, cond3_max_shift_error, cond4_wrap_error,
                         cond5_max_commutator, commuting_towers_max});
    }
};

template <class M>
concept ZActionModel = requires(const M& m, const typename M::element_type& a) {
    { m.apply(a) } -> std::convertible_to<typename M::element_type>;
    { m.unit() } -> std::convertible_to<typename M::element_type>;
    { m.pair_norm(a, a) } -> std::convertible_to<double>;
    { m.distance(a, a) } -> std::convertible_to<double>;
    { m.commutator_norm(a, a) } -> std::convertible_to<double>;
    { m.spectrum_min(a) } -> std::convertible_to<double>;
    { m.is_positive_contraction(a) } -> std::convertible_to<bool>;
    { M::commutative } -> std::convertible_to<bool>;
};

template <class M>
concept GroupActionModel = requires(const M& m, const typename M::element_type& a, int g) {
    { m.apply(g, a) } -> std::convertible_to<typename M::element_type>;
    { m.group_order() } -> std::convertible_to<int>;
    { m.multiply(g, g) } -> std::convertible_to<int>;
    { m.unit() } -> std::convertible_to<typename M::element_type>;
    { m.pair_norm(a, a) } -> std::convertible_to<double>;
    { m.distance(a, a) } -> std::convertible_to<double>;
    { m.commutator_norm(a, a) } -> std::convertible_to<double>;
    { m.spectrum_min(a) } -> std::convertible_to<double>;
    { m.is_positive_contraction(a) } -> std::convertible_to<bool>;
    { M::commutative } -> std::convertible_to<bool>;
};

namespace detail {

template <class E>
E sum_of(std::span<const E> elems)
{
    std::vector<double> ones(elems.size(), 1.0);
    return combine(ones, elems);
}

template <class E>
std::vector<E> flatten(const TowerSystem<E>& sys)
{
    std::vector<E> all;
    all.reserve(sys.element_count());
    for (const auto& c : sys.colors) {
        for (const auto& t : c.towers) {
            all.insert(all.end(), t.begin(), t.end());
        }
    }
    return all;
}

template <class E, class M>
void check_elements(const TowerSystem<E>& sys, const M& model)
{
    if (sys.colors.empty()) {
        throw std::invalid_argument("tower system has no colors");
    }
    for (const auto& c : sys.colors) {
        if (c.towers.empty()) {
            throw std::invalid_argument("tower system has a color without towers");
        }
        for (const auto& t : c.towers) {
            if (t.empty()) {
                throw std::invalid_argument("tower system has an empty tower");
            }
            for (const auto& e : t) {
                if (!model.is_positive_contraction(e)) {
                    throw std::invalid_argument("tower element is not a positive contraction");
                }
            }
        }
    }
}

template <class E, class M>
void fill_common(RokhlinReport& rep, const TowerSystem<E>& sys, const M& model, std::span<const E> test_set)
{
    for (const auto& c : sys.colors) {
        std::vector<const E*> elems;
        for (const auto& t : c.towers) {
            for (const auto& e : t) {
                elems.push_back(&e);
            }
        }
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                rep.cond1_max_overlap = std::max(rep.cond1_max_overlap, model.pair_norm(*elems[i], *elems[j]));
            }
        }
    }
    const std::vector<E> all = flatten(sys);
    const E total = sum_of<E>(all);
    rep.cond2_sum_deviation = model.distance(total, model.unit());
    rep.cond2prime_min_value = model.spectrum_min(total);
    if constexpr (!M::commutative) {
        for (const auto& e : all) {
            for (const auto& a : test_set) {
                rep.cond5_max_commutator = std::max(rep.cond5_max_commutator, model.commutator_norm(e, a));
            }
        }
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                rep.commuting_towers_max = std::max(rep.commuting_towers_max, model.commutator_norm(all[i], all[j]));
            }
        }
    } else {
        (void)test_set;
    }
}

}  // namespace detail

/// Measures the conditions of a Z-action tower system: overlaps within each
/// color, deviation of the total from the unit, shift errors along every
/// tower, the wrap-around error, commutators with the test set, and
/// commutators between towers.
template <ZActionModel M>
RokhlinReport verify_z_towers(const TowerSystem<typename M::element_type>& sys, const M& model,
                              std::span<const typename M::element_type> test_set = {})
{
    using E = typename M::element_type;
    if (sys.mode != TowerMode::z) {
        throw std::invalid_argument("verify_z_towers needs a Z-mode system");
    }
    detail::check_elements(sys, model);
    for (const auto& c : sys.colors) {
        if (c.towers.size() > 2) {
            throw std::invalid_argument("a Z-mode color holds one tower or a double tower");
        }
        if (c.towers.size() == 2 && c.towers[1].size() != c.towers[0].size() + 1) {
            throw std::invalid_argument("double tower heights must be p and p+1");
        }
    }
    RokhlinReport rep;
    rep.epsilon = sys.epsilon;
    detail::fill_common(rep, sys, model, test_set);
    for (const auto& c : sys.colors) {
        for (const auto& t : c.towers) {
            for (std::size_t j = 0; j + 1 < t.size(); ++j) {
                rep.cond3_max_shift_error = std::max(rep.cond3_max_shift_error, model.distance(model.apply(t[j]), t[j + 1]));
            }
        }
        if (c.towers.size() == 1) {
            const auto& t = c.towers[0];
            rep.cond4_wrap_error = std::max(rep.cond4_wrap_error, model.distance(model.apply(t.back()), t.front()));
        } else {
            const auto& t0 = c.towers[0];
            const auto& t1 = c.towers[1];
            const E top[] = {t0.back(), t1.back()};
            const E bottom[] = {t0.front(), t1.front()};
            const E top_sum = detail::sum_of<E>(top);
            const E bottom_sum = detail::sum_of<E>(bottom);
            rep.cond4_wrap_error = std::max(rep.cond4_wrap_error, model.distance(model.apply(top_sum), bottom_sum));
        }
    }
    rep.pass = rep.meets(sys.epsilon);
    return rep;
}

/// Measures the conditions for a finite group action: overlaps within each
/// color, deviation of the total from the unit, the equivariance error
/// max_{h,g} |alpha_h(f_g) - f_{hg}|, and commutators.
template <GroupActionModel M>
RokhlinReport verify_finite_group_towers(const TowerSystem<typename M::element_type>& sys, const M& model,
                                         std::span<const typename M::element_type> test_set = {})
{
    if (sys.mode != TowerMode::group) {
        throw std::invalid_argument("verify_finite_group_towers needs a group-mode system");
    }
    detail::check_elements(sys, model);
    const int n = model.group_order();
    for (const auto& c : sys.colors) {
        if (c.towers.size() != 1 || static_cast<int>(c.towers[0].size()) != n) {
            throw std::invalid_argument("each group-mode color needs one tower indexed by the group");
        }
    }
    RokhlinReport rep;
    rep.epsilon = sys.epsilon;
    detail::fill_common(rep, sys, model, test_set);
    for (const auto& c : sys.colors) {
        const auto& t = c.towers[0];
        for (int h = 0; h < n; ++h) {
            for (int g = 0; g < n; ++g) {
                rep.cond3_max_shift_error =
                    std::max(rep.cond3_max_shift_error, model.distance(model.apply(h, t[g]), t[model.multiply(h, g)]));
            }
        }
    }
    rep.pass = rep.meets(sys.epsilon);
    return rep;
}

/// Triangular weight mu_r(n) = 1 - |(p-1+r)/2 - n| / ((p-1+r)/2) on
/// n = 0..p-1+r, with the extra value mu_0(p) = 0.
double decay_factor(int p, int r, int n);

/// Largest jump |mu_r(n+1) - mu_r(n)| over r in {0,1}, the shift error the
/// weights add to exact towers.
double decay_shift_bound(int p);

/// Which original colors feed the second (1 - mu) family of double_to_single.
enum class SecondFamilyColors {
    all,          // l = 0..d, colors d+1..2d+1; the weights of both families add to 1
    skip_first,   // l = 1..d only, as the index range is printed
};

/// Splits a height into a blocks of p-1 and b blocks of p with a minimal.
struct HeightSplit {
    int a = 0;
    int b = 0;
};

std::optional<HeightSplit> split_height(int height, int p);

/// Turns every double tower (heights p, p+1) into single towers of height p+1
/// using the decay weights mu_0, mu_1 and their complements.  Output color l
/// carries the mu-weighted tower of input color l; the complementary towers
/// follow as colors d+1, ....  If target_epsilon is given, it must exceed
/// 1/(p - 1/2) for every color.  The output tolerance is 2 eps plus the
/// largest weight jump decay_shift_bound(p).
template <class E>
TowerSystem<E> double_to_single(const TowerSystem<E>& sys, SecondFamilyColors second = SecondFamilyColors::all,
                                std::optional<double> target_epsilon = std::nullopt)
{
    if (sys.mode != TowerMode::z || sys.colors.empty()) {
        throw std::invalid_argument("double_to_single needs a nonempty Z-mode system");
    }
    TowerSystem<E> out;
    out.mode = TowerMode::z;
    std::vector<TowerColor<E>> second_colors;
    double worst_seam = 0.0;
    for (std::size_t l = 0; l < sys.colors.size(); ++l) {
        const auto& c = sys.colors[l];
        if (c.towers.size() != 2 || c.towers[0].empty() || c.towers[1].size() != c.towers[0].size() + 1) {
            throw std::invalid_argument("double_to_single needs towers of heights (p, p+1) in every color");
        }
        const auto& f0 = c.towers[0];
        const auto& f1 = c.towers[1];
        const int p = static_cast<int>(f0.size());
        if (p < 2) {
            throw std::invalid_argument("double_to_single needs p >= 2");
        }
        if (target_epsilon && !(*target_epsilon > 1.0 / (p - 0.5))) {
            throw std::invalid_argument("double_to_single: height p = " + std::to_string(p) +
                                        " too small for the target tolerance; fold first");
        }
        worst_seam = std::max(worst_seam, decay_shift_bound(p));
        // f_{r,j} for j > p-1+r is read modulo p+r.
        auto at = [&](int r, int j) -> const E& { return r == 0 ? f0[j % p] : f1[j % (p + 1)]; };
        auto mix = [](double c0, const E& e0, double c1, const E& e1) {
            const double coeffs[] = {c0, c1};
            const E elems[] = {e0, e1};
            return combine(std::span<const double>(coeffs), std::span<const E>(elems));
        };
        auto scaled = [](double c, const E& e) {
            const double coeffs[] = {c};
            const E elems[] = {e};
            return combine(std::span<const double>(coeffs), std::span<const E>(elems));
        };

        Tower<E> first;
        for (int j = 0; j <= p; ++j) {
            first.push_back(mix(decay_factor(p, 0, j), at(0, j), decay_factor(p, 1, j), at(1, j)));
        }
        out.colors.push_back({{std::move(first)}});

        if (second == SecondFamilyColors::skip_first && l == 0) {
            continue;
        }
        const int seam = (p + 1) / 2;  // ceil(p/2)
        Tower<E> comp;
        for (int j = 0; j <= p; ++j) {
            if (j < seam) {
                comp.push_back(mix(1.0 - decay_factor(p, 0, j), at(0, j), 1.0 - decay_factor(p, 1, j), at(1, j)));
            } else if (j == seam) {
                comp.push_back(scaled(1.0 - decay_factor(p, 1, j), at(1, j)));
            } else {
                comp.push_back(mix(1.0 - decay_factor(p, 0, j - 1), at(0, j - 1), 1.0 - decay_factor(p, 1, j), at(1, j)));
            }
        }
        second_colors.push_back({{std::move(comp)}});
    }
    for (auto& c : second_colors) {
        out.colors.push_back(std::move(c));
    }
    out.epsilon = 2.0 * sys.epsilon + worst_seam + kBoundSlack;
    return out;
}

/// Views each single tower of height h as a double tower (h, h+1) whose second
/// tower vanishes, so single-tower systems can enter double_to_single.
template <class E>
TowerSystem<E> pad_to_double(const TowerSystem<E>& sys)
{
    TowerSystem<E> out = sys;
    for (auto& c : out.colors) {
        if (c.towers.size() == 1) {
            const auto& t = c.towers[0];
            if (t.empty()) {
                throw std::invalid_argument("pad_to_double: empty tower");
            }
            c.towers.push_back(Tower<E>(t.size() + 1, zero_like(t[0])));
        }
    }
    return out;
}

/// Rearranges each color's towers (heights H_r = a_r (p-1) + b_r p) into a
/// double tower of heights p-1 and p.  The output tolerance is epsilon times
/// the largest number of blocks in one color.
template <class E>
TowerSystem<E> multi_to_double(const std::vector<std::vector<Tower<E>>>& colors, int p, double epsilon = 0.0)
{
    if (p < 2) {
        throw std::invalid_argument("multi_to_double needs p >= 2");
    }
    if (colors.empty()) {
        throw std::invalid_argument("multi_to_double needs at least one color");
    }
    TowerSystem<E> out;
    out.mode = TowerMode::z;
    int worst_blocks = 1;
    for (const auto& towers : colors) {
        int blocks = 0;
        if (towers.empty() || towers[0].empty()) {
            throw std::invalid_argument("multi_to_double: empty color or tower");
        }
        const E zero = zero_like(towers[0][0]);
        std::vector<std::vector<const E*>> short_terms(p - 1);
        std::vector<std::vector<const E*>> long_terms(p);
        for (const auto& t : towers) {
            const int h = static_cast<int>(t.size());
            const auto split = split_height(h, p);
            if (!split) {
                throw std::invalid_argument("multi_to_double: height " + std::to_string(h) +
                                            " is not a nonnegative combination of " + std::to_string(p - 1) +
                                            " and " + std::to_string(p));
            }
            blocks += split->a + split->b;
            for (int m = 0; m < split->a; ++m) {
                for (int j = 0; j < p - 1; ++j) {
                    short_terms[j].push_back(&t[m * (p - 1) + j]);
                }
            }
            for (int m = 0; m < split->b; ++m) {
                for (int j = 0; j < p; ++j) {
                    long_terms[j].push_back(&t[split->a * (p - 1) + m * p + j]);
                }
            }
        }
        auto gather = [&](const std::vector<const E*>& terms) {
            if (terms.empty()) {
                return zero;
            }
            std::vector<E> elems;
            for (const E* e : terms) {
                elems.push_back(*e);
            }
            return detail::sum_of<E>(elems);
        };
        TowerColor<E> color;
        Tower<E> t0;
        Tower<E> t1;
        for (int j = 0; j < p - 1; ++j) {
            t0.push_back(gather(short_terms[j]));
        }
        for (int j = 0; j < p; ++j) {
            t1.push_back(gather(long_terms[j]));
        }
        color.towers = {std::move(t0), std::move(t1)};
        out.colors.push_back(std::move(color));
        worst_blocks = std::max(worst_blocks, blocks);
    }
    // the wrap condition sums one seam per block
    out.epsilon = epsilon * worst_blocks;
    return out;
}

/// Sums a tower of height k p down to height p: out_j = sum_n in_{j + n p}.
template <class E>
Tower<E> fold(const Tower<E>& tower, int p)
{
    if (p < 1 || tower.empty() || tower.size() % static_cast<std::size_t>(p) != 0) {
        throw std::invalid_argument("fold: tower height " + std::to_string(tower.size()) +
                                    " is not a positive multiple of " + std::to_string(p));
    }
    const std::size_t k = tower.size() / static_cast<std::size_t>(p);
    Tower<E> out;
    for (int j = 0; j < p; ++j) {
        std::vector<E> parts;
        for (std::size_t n = 0; n < k; ++n) {
            parts.push_back(tower[j + n * p]);
        }
        out.push_back(detail::sum_of<E>(parts));
    }
    return out;
}

/// Folds every tower of a single-tower system to height p.  The nominal
/// tolerance grows by the folding factor k.
template <class E>
TowerSystem<E> fold(const TowerSystem<E>& sys, int p)
{
    TowerSystem<E> out;
    out.mode = sys.mode;
    std::size_t worst_k = 1;
    for (const auto& c : sys.colors) {
        TowerColor<E> color;
        for (const auto& t : c.towers) {
            worst_k = std::max(worst_k, t.size() / static_cast<std::size_t>(std::max(p, 1)));
            color.towers.push_back(fold(t, p));
        }
        out.colors.push_back(std::move(color));
    }
    out.epsilon = sys.epsilon * static_cast<double>(worst_k);
    return out;
}

}  // namespace rokhlin

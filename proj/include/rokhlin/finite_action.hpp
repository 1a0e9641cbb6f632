#pragma once

#include <vector>

namespace rokhlin {

using FiniteFunction = std::vector<double>;

/// Finite group given by its multiplication table; elements are 0..order-1.
class FiniteGroup {
public:
    /// Z_q with element k standing for k mod q.
    static FiniteGroup cyclic(int q);

    /// Validates closure, associativity, identity and inverses.
    static FiniteGroup from_table(std::vector<std::vector<int>> table);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int multiply(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    /// q if the group was built by cyclic(q), otherwise 0.
    int cyclic_order() const { return cyclic_q_; }

private:
    FiniteGroup() = default;

    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
    int cyclic_q_ = 0;
};

/// Left action of a finite group on the points {0, ..., size-1}.
class FiniteAction {
public:
    /// act[g][x] is the image of x under g; the action laws are checked exhaustively.
    FiniteAction(FiniteGroup group, int size, std::vector<std::vector<int>> act);

    /// Z_n acting on n points by x -> x + g mod n.
    static FiniteAction cyclic_shift(int n);

    const FiniteGroup& group() const { return group_; }
    int size() const { return size_; }
    int act(int g, int x) const { return act_[g][x]; }
    const std::vector<std::vector<int>>& table() const { return act_; }

    /// (alpha_g a)(x) = a(g^{-1} x), so alpha_g maps the indicator of {x} to that of {g x}.
    FiniteFunction apply(int g, const FiniteFunction& a) const;

    /// Every non-identity element moves every point.
    bool is_free() const;

    /// Smallest point of each orbit.
    std::vector<int> orbit_transversal() const;

private:
    FiniteGroup group_;
    int size_;
    std::vector<std::vector<int>> act_;
};

}  // namespace rokhlin

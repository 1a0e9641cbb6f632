#include "rokhlin/finite_action.hpp"

#include <stdexcept>
#include <string>

namespace rokhlin {

FiniteGroup FiniteGroup::cyclic(int q)
{
    if (q < 1) {
        throw std::invalid_argument("cyclic group order must be positive");
    }
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            table[a][b] = (a + b) % q;
        }
    }
    FiniteGroup g = from_table(std::move(table));
    g.cyclic_q_ = q;
    return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table)
{
    const int n = static_cast<int>(table.size());
    if (n == 0) {
        throw std::invalid_argument("group table is empty");
    }
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("group table must be square");
        }
        for (int v : row) {
            if (v < 0 || v >= n) {
                throw std::invalid_argument("group table entry out of range");
            }
        }
    }
    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            ok = table[e][a] == a && table[a][e] == a;
        }
        if (ok) {
            identity = e;
        }
    }
    if (identity < 0) {
        throw std::invalid_argument("group table has no identity");
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    throw std::invalid_argument("group table is not associative");
                }
            }
        }
    }
    std::vector<int> inverse(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (table[a][b] == identity && table[b][a] == identity) {
                inverse[a] = b;
            }
        }
        if (inverse[a] < 0) {
            throw std::invalid_argument("group element " + std::to_string(a) + " has no inverse");
        }
    }
    FiniteGroup g;
    g.table_ = std::move(table);
    g.inverse_ = std::move(inverse);
    g.identity_ = identity;
    return g;
}

FiniteAction::FiniteAction(FiniteGroup group, int size, std::vector<std::vector<int>> act)
    : group_(std::move(group)), size_(size), act_(std::move(act))
{
    const int n = group_.order();
    if (size_ < 1) {
        throw std::invalid_argument("action needs a nonempty space");
    }
    if (static_cast<int>(act_.size()) != n) {
        throw std::invalid_argument("action table needs one row per group element");
    }
    for (const auto& row : act_) {
        if (static_cast<int>(row.size()) != size_) {
            throw std::invalid_argument("action table rows must have one entry per point");
        }
        std::vector<bool> hit(size_, false);
        for (int y : row) {
            if (y < 0 || y >= size_) {
                throw std::invalid_argument("action table entry out of range");
            }
            if (hit[y]) {
                throw std::invalid_argument("group element does not act bijectively");
            }
            hit[y] = true;
        }
    }
    for (int x = 0; x < size_; ++x) {
        if (act_[group_.identity()][x] != x) {
            throw std::invalid_argument("identity does not act trivially");
        }
    }
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            for (int x = 0; x < size_; ++x) {
                if (act_[g][act_[h][x]] != act_[group_.multiply(g, h)][x]) {
                    throw std::invalid_argument("action table violates g(h x) = (gh) x");
                }
            }
        }
    }
}

FiniteAction FiniteAction::cyclic_shift(int n)
{
    std::vector<std::vector<int>> act(n, std::vector<int>(n));
    for (int g = 0; g < n; ++g) {
        for (int x = 0; x < n; ++x) {
            act[g][x] = (x + g) % n;
        }
    }
    return FiniteAction(FiniteGroup::cyclic(n), n, std::move(act));
}

FiniteFunction FiniteAction::apply(int g, const FiniteFunction& a) const
{
    if (static_cast<int>(a.size()) != size_) {
        throw std::invalid_argument("function length does not match the space");
    }
    FiniteFunction out(a.size());
    for (int x = 0; x < size_; ++x) {
        out[act_[g][x]] = a[x];
    }
    return out;
}

bool FiniteAction::is_free() const
{
    for (int g = 0; g < group_.order(); ++g) {
        if (g == group_.identity()) {
            continue;
        }
        for (int x = 0; x < size_; ++x) {
            if (act_[g][x] == x) {
                return false;
            }
        }
    }
    return true;
}

std::vector<int> FiniteAction::orbit_transversal() const
{
    std::vector<bool> seen(size_, false);
    std::vector<int> reps;
    for (int x = 0; x < size_; ++x) {
        if (seen[x]) {
            continue;
        }
        reps.push_back(x);
        for (int g = 0; g < group_.order(); ++g) {
            seen[act_[g][x]] = true;
        }
    }
    return reps;
}

}  // namespace rokhlin

#pragma once

// Exact tower systems on Z_N under the shift, built point by point.

#include <vector>

#include "rokhlin/towers.hpp"

namespace fixture {

using rokhlin::FiniteFunction;
using rokhlin::Tower;
using rokhlin::TowerSystem;

inline FiniteFunction indicator(int n, std::vector<int> points)
{
    FiniteFunction f(n, 0.0);
    for (int x : points) {
        f[((x % n) + n) % n] = 1.0;
    }
    return f;
}

// Height-N tower of point masses delta_0, ..., delta_{N-1}.
inline Tower<FiniteFunction> cyclic_tower(int n)
{
    Tower<FiniteFunction> t;
    for (int j = 0; j < n; ++j) {
        t.push_back(indicator(n, {j}));
    }
    return t;
}

// N = a p + b (p+1): a blocks of height p then b blocks of height p+1, summed
// rung by rung into one double tower.
inline TowerSystem<FiniteFunction> exact_double_tower(int p, int a, int b)
{
    const int n = a * p + b * (p + 1);
    Tower<FiniteFunction> t0(p, FiniteFunction(n, 0.0));
    Tower<FiniteFunction> t1(p + 1, FiniteFunction(n, 0.0));
    int x = 0;
    for (int k = 0; k < a; ++k) {
        for (int j = 0; j < p; ++j) {
            t0[j][x++] = 1.0;
        }
    }
    for (int k = 0; k < b; ++k) {
        for (int j = 0; j <= p; ++j) {
            t1[j][x++] = 1.0;
        }
    }
    TowerSystem<FiniteFunction> sys;
    sys.colors.push_back({{t0, t1}});
    return sys;
}

}  // namespace fixture

#include "rokhlin/crossed_fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rokhlin/models.hpp"

namespace rokhlin {

CPBlockMatrix::CPBlockMatrix(int order, int space_size)
    : order_(order), size_(space_size), blocks_(static_cast<std::size_t>(order) * order, FiniteFunction(space_size, 0.0))
{
    if (order < 1 || space_size < 1) {
        throw std::invalid_argument("block matrix needs positive order and space size");
    }
}

CPBlockMatrix CPBlockMatrix::identity(int order, int space_size)
{
    CPBlockMatrix out(order, space_size);
    for (int g = 0; g < order; ++g) {
        std::fill(out.block(g, g).begin(), out.block(g, g).end(), 1.0);
    }
    return out;
}

void CPBlockMatrix::check_shape(const CPBlockMatrix& o) const
{
    if (o.order_ != order_ || o.size_ != size_) {
        throw std::invalid_argument("block matrix shapes differ");
    }
}

RMatrix CPBlockMatrix::at(int x) const
{
    RMatrix m(order_, order_);
    for (int g = 0; g < order_; ++g) {
        for (int h = 0; h < order_; ++h) {
            m(g, h) = block(g, h)[x];
        }
    }
    return m;
}

CPBlockMatrix CPBlockMatrix::operator*(const CPBlockMatrix& o) const
{
    check_shape(o);
    CPBlockMatrix out(order_, size_);
    for (int g = 0; g < order_; ++g) {
        for (int k = 0; k < order_; ++k) {
            auto& dst = out.block(g, k);
            for (int h = 0; h < order_; ++h) {
                const auto& a = block(g, h);
                const auto& b = o.block(h, k);
                for (int x = 0; x < size_; ++x) {
                    dst[x] += a[x] * b[x];
                }
            }
        }
    }
    return out;
}

CPBlockMatrix CPBlockMatrix::operator+(const CPBlockMatrix& o) const
{
    check_shape(o);
    CPBlockMatrix out = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        for (int x = 0; x < size_; ++x) {
            out.blocks_[i][x] += o.blocks_[i][x];
        }
    }
    return out;
}

CPBlockMatrix CPBlockMatrix::operator-(const CPBlockMatrix& o) const { return *this + o.scaled(-1.0); }

CPBlockMatrix CPBlockMatrix::scaled(double c) const
{
    CPBlockMatrix out = *this;
    for (auto& b : out.blocks_) {
        for (double& v : b) {
            v *= c;
        }
    }
    return out;
}

CPBlockMatrix CPBlockMatrix::adjoint() const
{
    CPBlockMatrix out(order_, size_);
    for (int g = 0; g < order_; ++g) {
        for (int h = 0; h < order_; ++h) {
            out.block(g, h) = block(h, g);
        }
    }
    return out;
}

double CPBlockMatrix::op_norm() const
{
    double m = 0.0;
    for (int x = 0; x < size_; ++x) {
        m = std::max(m, operator_norm(at(x)));
    }
    return m;
}

double CPBlockMatrix::min_eigenvalue() const
{
    double m = std::numeric_limits<double>::infinity();
    for (int x = 0; x < size_; ++x) {
        const RMatrix a = at(x);
        const RMatrix s = 0.5 * (a + a.transpose());
        Eigen::SelfAdjointEigenSolver<RMatrix> es(s, Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
}

int CPBlockMatrix::row_support(int g) const
{
    int count = 0;
    for (int h = 0; h < order_; ++h) {
        const auto& b = block(g, h);
        count += std::any_of(b.begin(), b.end(), [](double v) { return v != 0.0; }) ? 1 : 0;
    }
    return count;
}

CPBlockMatrix embed_function(const FiniteAction& action, const FiniteFunction& a)
{
    const auto& G = action.group();
    CPBlockMatrix out(G.order(), action.size());
    for (int g = 0; g < G.order(); ++g) {
        out.block(g, g) = action.apply(G.inverse(g), a);
    }
    return out;
}

CPBlockMatrix embed_unitary(const FiniteAction& action, int h)
{
    const auto& G = action.group();
    if (h < 0 || h >= G.order()) {
        throw std::invalid_argument("group element out of range");
    }
    CPBlockMatrix out(G.order(), action.size());
    for (int k = 0; k < G.order(); ++k) {
        auto& b = out.block(k, G.multiply(G.inverse(h), k));
        std::fill(b.begin(), b.end(), 1.0);
    }
    return out;
}

CPBlockMatrix embed_product(const FiniteAction& action, const FiniteFunction& a, int g)
{
    return embed_function(action, a) * embed_unitary(action, g);
}

TowerSystem<FiniteFunction> free_action_towers(const FiniteAction& action)
{
    if (!action.is_free()) {
        throw std::invalid_argument("action is not free: some group element fixes a point");
    }
    const auto& G = action.group();
    const std::vector<int> transversal = action.orbit_transversal();
    Tower<FiniteFunction> tower;
    for (int g = 0; g < G.order(); ++g) {
        FiniteFunction f(action.size(), 0.0);
        for (int x : transversal) {
            f[action.act(g, x)] = 1.0;
        }
        tower.push_back(std::move(f));
    }
    TowerSystem<FiniteFunction> sys;
    sys.mode = TowerMode::group;
    sys.epsilon = 0.0;
    sys.colors.push_back({{std::move(tower)}});
    return sys;
}

TowerSystem<FiniteFunction> sqrt_towers(const TowerSystem<FiniteFunction>& towers)
{
    TowerSystem<FiniteFunction> out = towers;
    for (auto& c : out.colors) {
        for (auto& t : c.towers) {
            for (auto& f : t) {
                for (double& v : f) {
                    v = std::sqrt(std::max(v, 0.0));
                }
            }
        }
    }
    return out;
}

TowerSystem<FiniteFunction> perturb_towers(const TowerSystem<FiniteFunction>& towers, double eta, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    TowerSystem<FiniteFunction> out = sqrt_towers(towers);
    for (auto& c : out.colors) {
        for (auto& t : c.towers) {
            for (auto& f : t) {
                for (double& v : f) {
                    const double s = std::clamp(v + eta * noise(rng), 0.0, 1.0);
                    v = s * s;
                }
            }
        }
    }
    return out;
}

double tower_tolerance(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers)
{
    const GroupFunctionModel model(action);
    const RokhlinReport rf = verify_finite_group_towers(towers, model);
    const RokhlinReport rs = verify_finite_group_towers(sqrt_towers(towers), model);
    return std::max({rf.cond1_max_overlap, rf.cond2_sum_deviation, rf.cond3_max_shift_error, rs.cond1_max_overlap,
                     rs.cond3_max_shift_error});
}

CPBlockMatrix rho_map(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers, const CPBlockMatrix& x)
{
    const int n = action.group().order();
    if (x.order() != n || x.space_size() != action.size()) {
        throw std::invalid_argument("rho_map: block matrix does not match the action");
    }
    if (towers.mode != TowerMode::group) {
        throw std::invalid_argument("rho_map needs group-mode towers");
    }
    const TowerSystem<FiniteFunction> roots = sqrt_towers(towers);
    CPBlockMatrix out(n, action.size());
    for (const auto& color : roots.colors) {
        if (color.towers.size() != 1 || static_cast<int>(color.towers[0].size()) != n) {
            throw std::invalid_argument("rho_map: each color needs one tower indexed by the group");
        }
        std::vector<CPBlockMatrix> v;
        for (int g = 0; g < n; ++g) {
            v.push_back(embed_function(action, color.towers[0][g]) * embed_unitary(action, g));
        }
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h) {
                out = out + v[g] * embed_function(action, x.block(g, h)) * v[h].adjoint();
            }
        }
    }
    return out;
}

RhoReport rho_check(const FiniteAction& action, const TowerSystem<FiniteFunction>& towers,
                    const std::vector<FiniteFunction>& test_functions, std::uint64_t seed)
{
    const int n = action.group().order();
    const int size = action.size();
    RhoReport rep;
    rep.eta = tower_tolerance(action, towers);
    const int d = static_cast<int>(towers.colors.size()) - 1;
    rep.bound = (2.0 * (d + 1) * n + 1.0) * rep.eta;

    for (const auto& a : test_functions) {
        double a_norm = 0.0;
        for (double v : a) {
            a_norm = std::max(a_norm, std::abs(v));
        }
        if (a_norm == 0.0) {
            continue;
        }
        for (int g = 0; g < n; ++g) {
            const CPBlockMatrix target = embed_product(action, a, g);
            const double err = (rho_map(action, towers, target) - target).op_norm() / a_norm;
            rep.identity_error = std::max(rep.identity_error, err);
        }
    }

    FiniteFunction total(size, 0.0);
    for (const auto& c : towers.colors) {
        for (const auto& f : c.towers[0]) {
            for (int x = 0; x < size; ++x) {
                total[x] += f[x];
            }
        }
    }
    rep.unit_defect =
        (rho_map(action, towers, CPBlockMatrix::identity(n, size)) - embed_function(action, total)).op_norm();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        CPBlockMatrix y(n, size);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h) {
                for (double& v : y.block(g, h)) {
                    v = unif(rng);
                }
            }
        }
        const CPBlockMatrix positive = y * y.adjoint();
        rep.positivity_defect = std::max(rep.positivity_defect, -rho_map(action, towers, positive).min_eigenvalue());
    }
    rep.pass = rep.identity_error <= rep.bound + 1e-12 && rep.unit_defect <= 1e-12 && rep.positivity_defect <= 1e-12;
    return rep;
}

}  // namespace rokhlin

#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <random>

#include "rokhlin/matrix_models.hpp"

using namespace rokhlin;

namespace {

// mu(e_i) as a length-r diagonal, straight from the three ramp sums
// (1-based f and e indices as in the construction).
DiagVector splice_oracle(int k, int lbar, int l, int r, int i)
{
    DiagVector d(r, 0.0);
    auto put = [&](int j, double w) { d.at(k * j + i - 1) += w; };
    for (int j = 1; j <= lbar - 1; ++j) {
        put(j, static_cast<double>(j) / lbar);
    }
    for (int j = lbar; j <= l + lbar - 1; ++j) {
        put(j, 1.0);
    }
    for (int j = l + lbar; j <= l + 2 * lbar - 2; ++j) {
        put(j, 1.0 - static_cast<double>(j - l - lbar + 1) / lbar);
    }
    return d;
}

DiagVector basis(int k, int i)
{
    DiagVector e(k, 0.0);
    e[i] = 1.0;
    return e;
}

double max_abs_diff(const DiagVector& a, const DiagVector& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

// Largest singular value by power iteration on A* A.
double power_norm(const CMatrix& a)
{
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(a.cols());
    for (int i = 0; i < a.cols(); ++i) {
        v[i] = {g(rng), g(rng)};
    }
    double sigma = 0.0;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXcd w = a.adjoint() * (a * v);
        const double nw = w.norm();
        if (nw == 0.0) {
            return 0.0;
        }
        v = w / nw;
        sigma = std::sqrt(nw);
    }
    return sigma;
}

}  // namespace

TEST_CASE("truncated shifts")
{
    CHECK(truncated_shift({1, 0, 0, 0}) == DiagVector{0, 1, 0, 0});
    CHECK(truncated_shift({0, 0, 0, 1}) == DiagVector{0, 0, 0, 0});
    CHECK(partial_inverse_shift({0, 1, 0, 0}) == DiagVector{1, 0, 0, 0});
    CHECK(partial_inverse_shift({1, 0, 0, 0}) == DiagVector{0, 0, 0, 0});
    CHECK(is_shiftable({0.5, 0.2, 0.0}));
    CHECK_FALSE(is_shiftable({0.5, 0.2, 0.1}));
    const double c[] = {1, 2, 3};
    CHECK(cyclic_shift(c) == std::vector<double>{3, 1, 2});

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        DiagVector e(7);
        for (double& x : e) {
            x = u(rng);
        }
        e.back() = 0.0;
        CHECK(partial_inverse_shift(truncated_shift(e)) == e);
    }
}

TEST_CASE("splice example k = 2, delta = 1/2, r = 16")
{
    const SpliceMap mu = build_splice(2, 0.5, 16);
    CHECK(mu.Lbar == 2);
    CHECK(mu.s == 4);
    CHECK(mu.L == 4);
    const double e1[] = {1.0, 0.0};
    const DiagVector img = mu.apply(e1);
    const DiagVector expect = {0, 0, 0.5, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0.5, 0, 0, 0};
    CHECK(img == expect);
    CHECK(img == splice_oracle(2, 2, 4, 16, 1));
    const DiagVector unit = {0, 0, 0.5, 0.5, 1, 1, 1, 1, 1, 1, 1, 1, 0.5, 0.5, 0, 0};
    CHECK(mu.unit_image() == unit);
    CHECK(mu.unit_image().back() == 0.0);

    const SpliceReport rep = verify_splice(mu, 0.5);
    CHECK(rep.order_zero);
    CHECK(rep.shiftable);
    CHECK(rep.basis_shift_error == 0.5);
    CHECK(rep.interior_shift_error == 0.0);
    CHECK(rep.wrap_shift_error == 0.5);
    CHECK(rep.unit_ball_shift_error == 0.5);
    CHECK(rep.coverage_min == 1.0);
    const DiagVector cov = {1, 1, 1, 1, 1, 1, 1.5, 1.5, 1.5, 1.5, 1, 1, 1, 1, 1, 1};
    CHECK(rep.coverage == cov);
    CHECK(rep.pass);
}

TEST_CASE("splice sweep against the direct loop")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 1; k <= 6; ++k) {
        for (double delta : {1.0, 0.5, 1.0 / 3.0, 0.25}) {
            const int lbar = static_cast<int>(std::ceil(1.0 / delta - 1e-12));
            const int s = k * lbar;
            for (int r : {4 * s, 4 * s + 1, 4 * s + k, 5 * s + 3, 9 * s}) {
                CAPTURE(k);
                CAPTURE(delta);
                CAPTURE(r);
                const SpliceMap mu = build_splice(k, delta, r);
                CHECK(mu.Lbar == lbar);
                CHECK(mu.s == s);
                CHECK(r - 2 * s <= k * mu.L);
                CHECK(k * mu.L < r - 2 * s + k);
                std::vector<DiagVector> images;
                for (int i = 0; i < k; ++i) {
                    const DiagVector img = mu.apply(basis(k, i));
                    CHECK(img == splice_oracle(k, lbar, mu.L, r, i + 1));
                    images.push_back(img);
                }
                // disjoint supports, shiftable, and shift errors from the oracle
                double basis_err = 0.0;
                for (int j = 0; j < r; ++j) {
                    int nonzero = 0;
                    for (const auto& img : images) {
                        nonzero += img[j] != 0.0;
                    }
                    CHECK(nonzero <= 1);
                }
                for (int i = 0; i < k; ++i) {
                    CHECK(images[i].back() == 0.0);
                    const DiagVector lhs = truncated_shift(images[i]);
                    const DiagVector& rhs = images[(i + 1) % k];
                    basis_err = std::max(basis_err, max_abs_diff(lhs, rhs));
                    if (i + 1 < k) {
                        CHECK(max_abs_diff(lhs, rhs) == 0.0);
                    }
                }
                CHECK(basis_err <= delta + 1e-12);

                // e = 1 attains the max over the positive unit ball
                const std::vector<double> ones(k, 1.0);
                const double unit_err = max_abs_diff(truncated_shift(mu.apply(ones)), mu.apply(cyclic_shift(ones)));
                CHECK(unit_err == doctest::Approx(basis_err));
                for (int t = 0; t < 20; ++t) {
                    std::vector<double> e(k);
                    double norm = 0.0;
                    for (double& x : e) {
                        x = u(rng);
                        norm = std::max(norm, x);
                    }
                    CHECK(max_abs_diff(truncated_shift(mu.apply(e)), mu.apply(cyclic_shift(e))) <= delta * norm + 1e-12);
                }

                DiagVector cover(r, 0.0);
                DiagVector down = mu.unit_image();
                DiagVector up = mu.unit_image();
                for (int t = 0; t < s; ++t) {
                    down = partial_inverse_shift(down);
                    up = truncated_shift(up);
                }
                for (int j = 0; j < r; ++j) {
                    CHECK(down[j] + up[j] >= 1.0 - 1e-12);
                }

                const SpliceReport rep = verify_splice(mu, delta, 3);
                CHECK(rep.pass);
                CHECK(rep.basis_shift_error == doctest::Approx(basis_err));
                CHECK(rep.unit_ball_shift_error == doctest::Approx(rep.basis_shift_error));
                CHECK(rep.random_shift_ratio <= delta + 1e-12);
            }
        }
    }
}

TEST_CASE("order zero: orthogonal inputs have orthogonal images")
{
    const SpliceMap mu = build_splice(3, 0.25, 60);
    const double a[] = {0.7, 0.0, 0.0};
    const double b[] = {0.0, 0.3, 0.9};
    const DiagVector ia = mu.apply(a);
    const DiagVector ib = mu.apply(b);
    for (int j = 0; j < 60; ++j) {
        CHECK(ia[j] * ib[j] == 0.0);
    }
}

TEST_CASE("splice errors")
{
    CHECK_THROWS_AS(build_splice(2, 0.5, 15), std::invalid_argument);
    CHECK_THROWS_AS(build_splice(0, 0.5, 100), std::invalid_argument);
    CHECK_THROWS_AS(build_splice(2, 0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(build_splice(2, 1.5, 100), std::invalid_argument);
    const SpliceMap mu = build_splice(2, 0.5, 16);
    const double wrong[] = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(mu.apply(wrong), std::invalid_argument);
    // a map built for 1/2 does not meet a tighter delta
    CHECK_FALSE(verify_splice(mu, 0.25).pass);
}

TEST_CASE("elementary decomposition, r = 4")
{
    const std::vector<DiagVector> qs = {{1, 1, 0, 0}, {1, 0, 1, 0}};
    const ElementaryPolynomial e = elementary_decompose(qs, {1, 0, 0, 0});
    CHECK(evaluate(e, qs) == DiagVector{1, 0, 0, 0});
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].size() <= 4);
    const ElementaryPolynomial f = elementary_decompose(qs, {0, 1, 0, 0});
    CHECK(evaluate(f, qs) == DiagVector{0, 1, 0, 0});
    REQUIRE(f.terms.size() == 1);
    bool has_q1 = false;
    bool has_not_q2 = false;
    for (const Factor& y : f.terms[0]) {
        has_q1 = has_q1 || y == Factor{0, false};
        has_not_q2 = has_not_q2 || y == Factor{1, true};
    }
    CHECK(has_q1);
    CHECK(has_not_q2);
    CHECK(evaluate(elementary_decompose(qs, {0, 0, 0, 0}), qs) == DiagVector{0, 0, 0, 0});
    CHECK(evaluate(elementary_decompose(qs, {1, 1, 1, 0}), qs) == DiagVector{1, 1, 1, 0});
    // the generated algebra is not unital here: index 3 lies under no q
    CHECK_THROWS_AS(elementary_decompose(qs, {1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("elementary decomposition, random commuting families in M_6")
{
    std::mt19937_64 rng(8);
    std::bernoulli_distribution coin(0.5);
    const int r = 6;
    for (int trial = 0; trial < 200; ++trial) {
        const int count = 1 + trial % 4;
        std::vector<DiagVector> qs(count, DiagVector(r));
        for (auto& q : qs) {
            for (double& x : q) {
                x = coin(rng) ? 1.0 : 0.0;
            }
        }
        // atoms: group indices by their 0/1 pattern across the family; the
        // all-zero pattern lies outside the algebra the q generate
        std::map<std::vector<int>, DiagVector> by_pattern;
        for (int i = 0; i < r; ++i) {
            std::vector<int> pattern;
            for (const auto& q : qs) {
                pattern.push_back(static_cast<int>(q[i]));
            }
            if (std::count(pattern.begin(), pattern.end(), 1) == 0) {
                continue;
            }
            auto [it, fresh] = by_pattern.try_emplace(pattern, DiagVector(r, 0.0));
            it->second[i] = 1.0;
        }
        std::vector<DiagVector> atoms;
        for (const auto& [pat, a] : by_pattern) {
            atoms.push_back(a);
        }
        auto sorted = [](std::vector<DiagVector> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(generated_atoms(qs)) == sorted(atoms));
        for (const auto& a : atoms) {
            const ElementaryPolynomial e = elementary_decompose(qs, a);
            CHECK(evaluate(e, qs) == a);
            CHECK(e.terms.size() <= static_cast<std::size_t>(r));
            for (const auto& term : e.terms) {
                CHECK(term.size() <= static_cast<std::size_t>(r));
            }
        }
        // any union of atoms is in the algebra
        DiagVector p(r, 0.0);
        for (const auto& a : atoms) {
            if (coin(rng)) {
                for (int i = 0; i < r; ++i) {
                    p[i] += a[i];
                }
            }
        }
        const ElementaryPolynomial e = elementary_decompose(qs, p);
        CHECK(evaluate(e, qs) == p);
        CHECK(e.terms.size() <= static_cast<std::size_t>(r));
        // splitting an atom of size >= 2 leaves the algebra
        for (const auto& a : atoms) {
            if (std::count(a.begin(), a.end(), 1.0) >= 2) {
                DiagVector half = a;
                *std::find(half.begin(), half.end(), 1.0) = 0.0;
                CHECK_THROWS_AS(elementary_decompose(qs, half), std::invalid_argument);
                break;
            }
        }
    }
}

TEST_CASE("elementary decomposition input checks")
{
    CHECK_THROWS_AS(elementary_decompose({}, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(elementary_decompose({{1, 0}}, {0.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(elementary_decompose({{1, 0}}, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(elementary_decompose({{0.5, 0}}, {1, 0}), std::invalid_argument);
}

TEST_CASE("decay weights")
{
    const std::vector<double> d = decay_weights(5);
    CHECK(d == std::vector<double>{0.0, 0.5, 1.0, 0.5, 0.0});
    CHECK_THROWS_AS(decay_weights(1), std::invalid_argument);
}

TEST_CASE("decay commutator: diagonal and single entries")
{
    const int p = 21;
    CMatrix x = CMatrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        x(i, i) = static_cast<double>(i) - 3.0;
    }
    const DecayCommutatorReport diag = decay_commutator_check(p, 0, x);
    CHECK(diag.commutator_norm <= 1e-12);
    CHECK(diag.pass);

    const std::vector<double> d = decay_weights(p);
    for (int q = 1; q <= 3; ++q) {
        for (int i = q; i < p; ++i) {
            for (int m = 1; m <= q; ++m) {
                CMatrix y = CMatrix::Zero(p, p);
                y(i, i - m) = 1.0;
                const DecayCommutatorReport rep = decay_commutator_check(p, q, y);
                const double expect = std::abs(std::sqrt(d[i]) - std::sqrt(d[i - m]));
                CHECK(rep.commutator_norm == doctest::Approx(expect).epsilon(1e-10));
                CHECK(expect <= std::sqrt(2.0 * m / (p - 1)) + 1e-15);
                CHECK(rep.pass);
            }
        }
    }
    CMatrix wide = CMatrix::Zero(p, p);
    wide(5, 0) = 1.0;
    CHECK_THROWS_AS(decay_commutator_check(p, 3, wide), std::invalid_argument);
    CHECK_THROWS_AS(decay_commutator_check(p, 3, CMatrix::Zero(p + 1, p + 1)), std::invalid_argument);
}

TEST_CASE("decay commutator: random banded matrices")
{
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 30; ++trial) {
        const int p = 50;
        const int q = 3;
        CMatrix x = CMatrix::Zero(p, p);
        for (int i = 0; i < p; ++i) {
            for (int j = std::max(0, i - q); j <= std::min(p - 1, i + q); ++j) {
                x(i, j) = {g(rng), g(rng)};
            }
        }
        x /= Eigen::JacobiSVD<CMatrix>(x).singularValues()(0);
        const DecayCommutatorReport rep = decay_commutator_check(p, q, x);
        CHECK(rep.x_norm == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rep.x_norm == doctest::Approx(power_norm(x)).epsilon(1e-4));

        const std::vector<double> d = decay_weights(p);
        CMatrix sq = CMatrix::Zero(p, p);
        for (int i = 0; i < p; ++i) {
            sq(i, i) = std::sqrt(d[i]);
        }
        const CMatrix comm = sq * x - x * sq;
        CHECK(rep.commutator_norm == doctest::Approx(power_norm(comm)).epsilon(1e-4));
        CHECK(rep.bound == doctest::Approx(std::sqrt(2.0 * q / (p - 1))));
        CHECK(rep.commutator_norm <= rep.bound);
        CHECK(rep.pass);
    }
}

TEST_CASE("decay commutator with 2x2 blocks")
{
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    const int p = 30;
    const int b = 2;
    CMatrix x = CMatrix::Zero(p * b, p * b);
    for (int i = 0; i < p; ++i) {
        for (int j = std::max(0, i - 1); j <= std::min(p - 1, i + 1); ++j) {
            for (int s = 0; s < b; ++s) {
                for (int t = 0; t < b; ++t) {
                    x(i * b + s, j * b + t) = g(rng);
                }
            }
        }
    }
    const DecayCommutatorReport rep = decay_commutator_check(p, 1, x, b);
    CHECK(rep.pass);
    CHECK(rep.commutator_norm > 0.0);
    CMatrix wide = x;
    wide(0, 5 * b) = 1.0;
    CHECK_THROWS_AS(decay_commutator_check(p, 1, wide, b), std::invalid_argument);
}

TEST_CASE("square roots of decay weights are not 2/(p-1)-Lipschitz at the ends")
{
    for (int p = 5; p < 40; ++p) {
        const std::vector<double> d = decay_weights(p);
        const double jump = std::sqrt(d[1]) - std::sqrt(d[0]);
        CHECK(jump > 2.0 / (p - 1));
        CHECK(jump <= std::sqrt(2.0 / (p - 1)) + 1e-15);
    }
}

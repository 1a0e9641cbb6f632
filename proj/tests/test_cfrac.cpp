#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rokhlin/cfrac.hpp"

using namespace rokhlin;
using oracle::big;

namespace {

void check_against_records(const big& t, int count)
{
    const ConvergentList list = convergents(static_cast<double>(t), count);
    REQUIRE(list.terms.size() == static_cast<std::size_t>(count));
    CHECK_FALSE(list.rational_input);
    auto records = oracle::record_approximants(t, list.terms.back().n);
    std::erase_if(records, [](const auto& r) { return r.first == 0; });
    REQUIRE(records.size() == list.terms.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(list.terms[i].m == records[i].first);
        CHECK(list.terms[i].n == records[i].second);
    }
}

}  // namespace

TEST_CASE("golden mean convergents")
{
    const ConvergentList list = convergents(0.6180339887498949, 5);
    const std::vector<Convergent> expect = {{1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}};
    CHECK(list.terms == expect);
    CHECK_FALSE(list.rational_input);
    check_against_records(oracle::golden(), 12);
}

TEST_CASE("convergents agree with the best-approximation oracle")
{
    check_against_records(boost::multiprecision::sqrt(big(2)) - 1, 10);
    check_against_records(boost::multiprecision::sqrt(big(2)), 10);
    check_against_records(boost::multiprecision::sqrt(big(5)) - 1, 10);
    check_against_records(boost::multiprecision::cbrt(big(2)), 10);
}

TEST_CASE("rational input is flagged")
{
    const ConvergentList half = convergents(0.5, 3);
    CHECK(half.terms == std::vector<Convergent>{{1, 2}});
    CHECK(half.rational_input);
    const ConvergentList r = convergents(0.375, 10);
    CHECK(r.rational_input);
    CHECK(r.terms.back() == Convergent{3, 8});
    CHECK_THROWS_AS(find_approximant_avoiding(0.375, 2, 100), RationalInputError);
}

TEST_CASE("argument errors")
{
    CHECK_THROWS_AS(convergents(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(convergents(-1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(convergents(0.3, 0), std::invalid_argument);
    CHECK_THROWS_AS(convergents(std::nan(""), 3), std::invalid_argument);
    CHECK_THROWS_AS(find_approximant_avoiding(0.3, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(find_approximant_avoiding(0.3, 2, 0), std::invalid_argument);
}

TEST_CASE("expansions past double precision overflow with an error")
{
    CHECK_THROWS_AS(convergents(0.6180339887498949, 200), std::overflow_error);
    const ConvergentList ok = convergents(0.6180339887498949, 30);
    for (const Convergent& c : ok.terms) {
        CHECK(c.n > 0);
        CHECK(c.m > 0);
    }
}

TEST_CASE("first convergent can share its denominator with the second")
{
    // sqrt 3 = [1; 1, 2, ...] gives 1/1 then 2/1
    const ConvergentList list = convergents(std::sqrt(3.0), 3);
    CHECK(list.terms == std::vector<Convergent>{{1, 1}, {2, 1}, {5, 3}});
}

TEST_CASE("89/72 for sqrt(5) - 1 with p = 2")
{
    const Convergent c = find_approximant_avoiding(1.2360679774997898, 2, 20);
    CHECK(c == Convergent{89, 72});
    // oracle: the numerators of earlier records with n >= 20 are even or absent
    const big t = boost::multiprecision::sqrt(big(5)) - 1;
    for (const auto& [m, n] : oracle::record_approximants(t, 72)) {
        if (n >= 20 && n < 72) {
            CHECK(m % 2 == 0);
        }
    }
}

TEST_CASE("sqrt 2 with p = 3")
{
    const big t = boost::multiprecision::sqrt(big(2));
    const Convergent c = find_approximant_avoiding(static_cast<double>(t), 3, 1);
    auto records = oracle::record_approximants(t, 100);
    std::erase_if(records, [](const auto& r) { return r.first == 0; });
    std::pair<std::int64_t, std::int64_t> first{0, 0};
    for (const auto& r : records) {
        if (r.first % 3 != 0) {
            first = r;
            break;
        }
    }
    CHECK(c.m == first.first);
    CHECK(c.n == first.second);
    CHECK(c == Convergent{1, 1});
}

TEST_CASE("convergent invariants on random irrationals")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    const std::int64_t primes[] = {2, 3, 5, 7, 11, 13};
    int overflows = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const double t = u(rng);
        ConvergentList list;
        try {
            list = convergents(t, 12);
        } catch (const std::overflow_error&) {
            ++overflows;
            continue;
        }
        for (std::size_t i = 0; i < list.terms.size(); ++i) {
            const Convergent& c = list.terms[i];
            CHECK(gcd(c.m, c.n) == 1);
            const double n2 = static_cast<double>(c.n) * static_cast<double>(c.n);
            const big err = boost::multiprecision::abs(big(t) - big(c.m) / big(c.n));
            if (!(list.rational_input && i + 1 == list.terms.size())) {
                CHECK(err < big(1) / big(n2) + big(1e-15));
            }
            if (i + 1 < list.terms.size()) {
                const Convergent& d = list.terms[i + 1];
                CHECK((d.n > c.n || (i == 0 && d.n == 1)));
                // numerators: among any two consecutive at least one survives a prime filter
                CHECK(gcd(c.m, d.m) == 1);
                const big det = big(c.m) * big(d.n) - big(d.m) * big(c.n);
                CHECK(boost::multiprecision::abs(det) == 1);
            }
        }
        if (list.rational_input) {
            continue;
        }
        const std::int64_t p = primes[trial % 6];
        const Convergent found = find_approximant_avoiding(t, p, 10);
        CHECK(found.n >= 10);
        CHECK(found.m % p != 0);
        bool present = false;
        for (int k = 1; k <= 40 && !present; ++k) {
            present = convergents(t, k).terms.back() == found;
        }
        CHECK(present);
    }
    CHECK(overflows < 30);
}

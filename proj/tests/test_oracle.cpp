#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "congpart/oracle.hpp"

using namespace congpart;

namespace {

/* Independent brute force used to pin expected values: plain recursion over
 * multiplicities straight from the defining set, no DP, no generating
 * functions. d = 0 means the unrestricted denumerant. */
long brute_count(const std::vector<long>& a, long d, long n, std::size_t i = 0) {
    if (n < 0)
        return 0;
    if (i == a.size())
        return n == 0 ? 1 : 0;
    long total = 0;
    for (long x = 0; a[i] * x <= n; ++x) {
        if (d != 0 && x % d != 0 && x % d != 1)
            continue;
        total += brute_count(a, d, n - a[i] * x, i + 1);
    }
    return total;
}

void brute_profile_rec(const std::vector<long>& a, long d, long n, std::size_t i, long weight,
                       std::map<long, long>& prof) {
    if (n < 0)
        return;
    if (i == a.size()) {
        if (n == 0)
            prof[weight] += 1;
        return;
    }
    for (long x = 0; a[i] * x <= n; ++x) {
        if (x % d != 0 && x % d != 1)
            continue;
        brute_profile_rec(a, d, n - a[i] * x, i + 1, weight + x - (d - 2) * (x / d), prof);
    }
}

std::map<long, long> brute_profile(const std::vector<long>& a, long d, long n) {
    std::map<long, long> prof;
    brute_profile_rec(a, d, n, 0, 0, prof);
    return prof;
}

PartSeq seq(std::vector<long> parts) {
    std::vector<Int> v(parts.begin(), parts.end());
    return PartSeq(v);
}

}  // namespace

TEST_CASE("PartSeq and Modulus validation") {
    CHECK_THROWS_AS(PartSeq(std::vector<Int>{}), domain_error);
    CHECK_THROWS_AS(seq({1, 0, 3}), domain_error);
    CHECK_THROWS_AS(seq({-2}), domain_error);
    CHECK_THROWS_AS(Modulus(1), domain_error);
    CHECK_THROWS_AS(Modulus(0), domain_error);
    CHECK(PartSeq({3, 1, 2}).sorted() == PartSeq({1, 2, 3}));
    CHECK(PartSeq({1, 2, 4}).strictly_increasing());
    CHECK_FALSE(PartSeq({1, 2, 2}).strictly_increasing());
    CHECK(PartSeq({1, 3}).differences(3) == PartSeq({6}));
    CHECK(dary_parts(Modulus(3), 2) == PartSeq({1, 3, 9}));
}

TEST_CASE("denumerant: examples and edge cases") {
    CHECK(oracle::denumerant(PartSeq{1, 2}, 4) == 3);
    CHECK(oracle::denumerant(PartSeq{1, 2}, 0) == 1);
    CHECK(oracle::denumerant(PartSeq{2, 4}, 5) == 0);  // parity obstruction
    CHECK(oracle::denumerant(PartSeq{1, 2}, -3) == 0);
    CHECK(oracle::denumerant(PartSeq{5}, 15) == 1);
    CHECK(oracle::denumerant(PartSeq{5}, 13) == 0);
}

TEST_CASE("denumerant: matches brute force") {
    for (const auto& a : {std::vector<long>{1, 2}, {2, 3}, {1, 2, 3}, {2, 4, 7}, {3, 3, 5}})
        for (long n = 0; n <= 40; ++n)
            CHECK(oracle::denumerant(seq(a), n) == brute_count(a, 0, n));
}

TEST_CASE("congruent_count: examples") {
    CHECK(oracle::congruent_count(PartSeq{1, 3}, Modulus(3), 10) == 3);
    CHECK(oracle::congruent_count(PartSeq{1, 3}, Modulus(3), 0) == 1);
    CHECK(oracle::congruent_count(PartSeq{1, 2}, Modulus(2), 4) == 3);
    CHECK(oracle::congruent_count(PartSeq{1, 2}, Modulus(2), -1) == 0);
}

TEST_CASE("congruent_count: brute force, d=2 reduction, divisibility, symmetry") {
    for (const auto& a : {std::vector<long>{1, 2}, {1, 3}, {2, 5}, {1, 2, 4}, {2, 3, 6}})
        for (long d = 2; d <= 5; ++d)
            for (long n = 0; n <= 30; ++n)
                CHECK(oracle::congruent_count(seq(a), Modulus(d), n) == brute_count(a, d, n));

    for (long n = 0; n <= 60; ++n) {
        PartSeq a{2, 3, 5};
        CHECK(oracle::congruent_count(a, Modulus(2), n) == oracle::denumerant(a, n));
        // d1 | d2 shrinks the admissible set
        CHECK(oracle::congruent_count(a, Modulus(2), n) >=
              oracle::congruent_count(a, Modulus(4), n));
        CHECK(oracle::congruent_count(a, Modulus(3), n) >=
              oracle::congruent_count(a, Modulus(6), n));
    }

    for (long n = 0; n <= 40; ++n) {
        CHECK(oracle::congruent_count(PartSeq{3, 1, 2}, Modulus(3), n) ==
              oracle::congruent_count(PartSeq{1, 2, 3}, Modulus(3), n));
        CHECK(oracle::weighted_profile(PartSeq{4, 1, 2}, Modulus(3), n) ==
              oracle::weighted_profile(PartSeq{1, 2, 4}, Modulus(3), n));
    }
}

TEST_CASE("weighted_profile: examples") {
    std::map<Int, Int> expected{{2, 1}, {3, 2}, {4, 1}, {5, 1}, {6, 1}};
    CHECK(oracle::weighted_profile(PartSeq{1, 2, 4}, Modulus(2), 6) == expected);

    std::map<Int, Int> expected39{{1, 1}, {2, 1}, {5, 1}, {6, 1}};
    CHECK(oracle::weighted_profile(PartSeq{1, 3, 9}, Modulus(3), 9) == expected39);

    std::map<Int, Int> zero{{0, 1}};
    CHECK(oracle::weighted_profile(PartSeq{1, 2, 4}, Modulus(2), 0) == zero);
    CHECK(oracle::weighted_profile(PartSeq{5, 7}, Modulus(4), 0) == zero);
}

TEST_CASE("weighted_profile: brute force, sum over j, d=2 weight is the coordinate sum") {
    for (const auto& a : {std::vector<long>{1, 2}, {1, 3}, {1, 2, 4}, {2, 3, 5}})
        for (long d = 2; d <= 4; ++d)
            for (long n = 0; n <= 25; ++n) {
                auto prof = oracle::weighted_profile(seq(a), Modulus(d), n);
                auto expect = brute_profile(a, d, n);
                REQUIRE(prof.size() == expect.size());
                Int sum = 0;
                for (const auto& [j, v] : prof) {
                    CHECK(v == expect.at(j.get_si()));
                    sum += v;
                }
                CHECK(sum == oracle::congruent_count(seq(a), Modulus(d), n));
            }

    // d = 2: the statistic degenerates to x_1 + ... + x_r
    for (long n = 0; n <= 25; ++n) {
        auto prof = oracle::weighted_profile(PartSeq{1, 2, 4}, Modulus(2), n);
        std::map<Int, Int> by_sum;
        for (const auto& x : oracle::enumerate_solutions(PartSeq{1, 2, 4}, Modulus(2), n)) {
            Int s = 0;
            for (const auto& xi : x)
                s += xi;
            by_sum[s] += 1;
        }
        CHECK(prof == by_sum);
    }
}

TEST_CASE("enumerate_solutions: listings in lexicographic order") {
    auto sols = oracle::enumerate_solutions(PartSeq{1, 3}, Modulus(3), 10);
    REQUIRE(sols.size() == 3);
    CHECK(sols[0] == oracle::SolutionVec{1, 3});
    CHECK(sols[1] == oracle::SolutionVec{7, 1});
    CHECK(sols[2] == oracle::SolutionVec{10, 0});

    auto sols39 = oracle::enumerate_solutions(PartSeq{1, 3, 9}, Modulus(3), 9);
    REQUIRE(sols39.size() == 4);
    CHECK(sols39[0] == oracle::SolutionVec{0, 0, 1});
    CHECK(sols39[1] == oracle::SolutionVec{0, 3, 0});
    CHECK(sols39[2] == oracle::SolutionVec{6, 1, 0});
    CHECK(sols39[3] == oracle::SolutionVec{9, 0, 0});

    CHECK(oracle::enumerate_solutions(PartSeq{1, 2}, Modulus(2), 0) ==
          std::vector<oracle::SolutionVec>{{0, 0}});
    CHECK_THROWS_AS(oracle::enumerate_solutions(PartSeq{1, 2}, Modulus(2), -1), domain_error);
}

TEST_CASE("enumerate_solutions: length equals the count, entries admissible") {
    for (const auto& a : {std::vector<long>{1, 2}, {1, 4}, {1, 2, 4}, {2, 3, 7}})
        for (long d = 2; d <= 4; ++d)
            for (long n = 0; n <= 25; ++n) {
                auto sols = oracle::enumerate_solutions(seq(a), Modulus(d), n);
                CHECK(Int(sols.size()) == oracle::congruent_count(seq(a), Modulus(d), n));
                for (std::size_t s = 1; s < sols.size(); ++s)
                    CHECK(sols[s - 1] < sols[s]);
                for (const auto& x : sols) {
                    Int total = 0;
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        Int res = x[i] % d;
                        CHECK((res == 0 || res == 1));
                        total += a[i] * x[i];
                    }
                    CHECK(total == n);
                }
            }
}

TEST_CASE("series_coeffs: examples and the rational-function route") {
    auto c = oracle::series_coeffs(PartSeq{1, 3}, Modulus(3), 10);
    REQUIRE(c.size() == 11);
    CHECK(c[10] == 3);
    CHECK(c == oracle::SeriesPrefix{1, 1, 0, 2, 2, 0, 2, 2, 0, 3, 3});

    CHECK(oracle::series_coeffs(PartSeq{5, 7}, Modulus(3), 0) == oracle::SeriesPrefix{1});
    CHECK(oracle::series_coeffs(PartSeq{1, 2}, Modulus(2), 4) ==
          oracle::SeriesPrefix{1, 1, 2, 2, 3});
    CHECK_THROWS_AS(oracle::series_coeffs(PartSeq{1, 2}, Modulus(2), -1), domain_error);

    // coefficient m equals the count at m, for every prefix position
    for (const auto& a : {std::vector<long>{1, 2}, {2, 5}, {1, 2, 4}, {3, 4, 6}})
        for (long d = 2; d <= 4; ++d) {
            auto series = oracle::series_coeffs(seq(a), Modulus(d), 40);
            CHECK(series[0] == 1);
            for (long m = 0; m <= 40; ++m)
                CHECK(series[m] == oracle::congruent_count(seq(a), Modulus(d), m));
        }
}

TEST_CASE("oracle rejects beyond-desk-scale targets instead of thrashing") {
    CHECK_THROWS_AS(oracle::denumerant(PartSeq{1, 2}, Int("10000000000")), domain_error);
    CHECK_THROWS_AS(oracle::weighted_profile(PartSeq{1, 2}, Modulus(2), 100000), domain_error);
}

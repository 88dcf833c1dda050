#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "expdio/equation.hpp"
#include "expdio/errors.hpp"
#include "oracles.hpp"

using namespace expdio;

TEST_CASE("Triple validates bases and coprimality") {
    CHECK_NOTHROW(Triple(Int(3), Int(5), Int(2)));
    CHECK_THROWS_AS(Triple(Int(4), Int(6), Int(5)), std::invalid_argument);
    CHECK_THROWS_AS(Triple(Int(2), Int(3), Int(4)), std::invalid_argument);
    CHECK_THROWS_AS(Triple(Int(3), Int(5), Int(10)), std::invalid_argument);
    CHECK_THROWS_AS(Triple(Int(1), Int(2), Int(3)), std::invalid_argument);
    CHECK(Triple(Int(3), Int(5), Int(2)).max_elem() == 5);
    CHECK(Triple(Int(9), Int(5), Int(11)).max_elem() == 11);
}

TEST_CASE("satisfies is exact substitution") {
    Triple t{Int(3), Int(5), Int(2)};
    CHECK(satisfies(t, {1, 1, 3}));    // 3 + 5 = 8
    CHECK(satisfies(t, {3, 1, 5}));    // 27 + 5 = 32
    CHECK(satisfies(t, {1, 3, 7}));    // 3 + 125 = 128
    CHECK_FALSE(satisfies(t, {2, 1, 3}));
    CHECK_FALSE(satisfies(t, {1, 1, 4}));
}

TEST_CASE("gelfond_bound is an outward-rounded cube of the log") {
    // 6500 * ln(5)^3 = 27097.93...; the ceiling may overshoot by the
    // directed-rounding slack but must never undershoot.
    Int g = gelfond_bound(Triple(Int(3), Int(5), Int(2)));
    CHECK(g >= 27098);
    CHECK(g <= 27100);

    // Monotone in the largest base.
    CHECK(gelfond_bound(Triple(Int(2), Int(3), Int(5))) <=
          gelfond_bound(Triple(Int(2), Int(3), Int(7))));

    // Large bases stay finite and sane: ln(2^40+1)^3 * 6500 ~ 1.4e8.
    Int big = gelfond_bound(family(40).triple);
    CHECK(big > 100000000);
    CHECK(big < 200000000);
}

TEST_CASE("enumerate_solutions returns the full capped solution list") {
    SolutionSet ss = enumerate_solutions(Triple(Int(3), Int(5), Int(2)), 50);
    CHECK(ss.cap == 50);
    CHECK_FALSE(ss.complete);  // the exponent bound exceeds the cap
    REQUIRE(ss.solutions.size() == 3);
    CHECK(ss.solutions[0] == Solution{1, 1, 3});
    CHECK(ss.solutions[1] == Solution{3, 1, 5});
    CHECK(ss.solutions[2] == Solution{1, 3, 7});

    SolutionSet eleven = enumerate_solutions(Triple(Int(2), Int(3), Int(11)), 30);
    REQUIRE(eleven.solutions.size() == 2);
    CHECK(eleven.solutions[0] == Solution{3, 1, 1});  // 8 + 3 = 11
    CHECK(eleven.solutions[1] == Solution{1, 2, 1});  // 2 + 9 = 11

    CHECK(enumerate_solutions(Triple(Int(7), Int(11), Int(13)), 40).solutions.empty());
    CHECK_THROWS_AS((void)enumerate_solutions(Triple(Int(2), Int(3), Int(5)), 0),
                    std::invalid_argument);
}

TEST_CASE("enumeration matches the brute-force oracle on a desk sample") {
    // Spot sample here; the acceptance run sweeps every coprime triple to 30.
    for (unsigned long a = 2; a <= 12; ++a)
        for (unsigned long b = 2; b <= 12; ++b)
            for (unsigned long c = 2; c <= 12; ++c) {
                if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1)
                    continue;
                SolutionSet ss = enumerate_solutions(Triple(Int(a), Int(b), Int(c)), 20);
                CHECK(ss.solutions == oracle::naive_enumerate(Int(a), Int(b), Int(c), 20));
            }
}

TEST_CASE("two-term solvers find every exponent pair") {
    std::vector<ExponentPair> sum = solve_sum(Int(2), Int(3), Int(11), 30);
    std::sort(sum.begin(), sum.end(),
              [](const ExponentPair& p, const ExponentPair& q) { return p.l < q.l; });
    REQUIRE(sum.size() == 2);
    CHECK(sum[0] == ExponentPair{1, 2});  // 2 + 9 = 11
    CHECK(sum[1] == ExponentPair{3, 1});  // 8 + 3 = 11

    std::vector<ExponentPair> diff = solve_diff(Int(2), Int(3), Int(5), 64);
    std::sort(diff.begin(), diff.end(),
              [](const ExponentPair& p, const ExponentPair& q) { return p.l < q.l; });
    REQUIRE(diff.size() == 2);
    CHECK(diff[0] == ExponentPair{3, 1});  // 8 - 3 = 5
    CHECK(diff[1] == ExponentPair{5, 3});  // 32 - 27 = 5

    CHECK(solve_sum(Int(6), Int(35), Int(11), 30).empty());
    CHECK(solve_diff(Int(7), Int(2), Int(3), 30).size() == 1);  // 7 - 4 = 3 only

    CHECK_THROWS_AS((void)solve_sum(Int(2), Int(4), Int(6), 10), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_sum(Int(2), Int(3), Int(1), 10), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_diff(Int(1), Int(3), Int(2), 10), std::invalid_argument);
}

TEST_CASE("the transform set rewrites the equation three ways") {
    Triple t{Int(2), Int(3), Int(5)};
    auto ps = p_set(t);

    CHECK(ps[0].role == Role::direct);
    CHECK(ps[0].A == 2);
    CHECK(ps[0].B == 3);
    CHECK(ps[0].C == 5);
    CHECK(ps[0].lambda == 1);

    CHECK(ps[1].role == Role::isolate_b);  // c^z - a^x = b^y
    CHECK(ps[1].A == 5);
    CHECK(ps[1].B == 2);
    CHECK(ps[1].C == 3);
    CHECK(ps[1].lambda == -1);

    CHECK(ps[2].role == Role::isolate_a);  // c^z - b^y = a^x
    CHECK(ps[2].A == 5);
    CHECK(ps[2].B == 3);
    CHECK(ps[2].C == 2);
    CHECK(ps[2].lambda == -1);

    for (const auto& inst : ps) CHECK(inst.origin == t);
}

TEST_CASE("map_solution rewrites and re-verifies solutions per role") {
    Triple t{Int(2), Int(3), Int(5)};
    auto ps = p_set(t);
    Solution s1{1, 1, 1}, s2{4, 2, 2};

    CHECK(map_solution(ps[0], s1) == TransformedSolution{1, 1, 1});
    CHECK(map_solution(ps[0], s2) == TransformedSolution{4, 2, 2});

    // isolate_b: (x, y, z) -> (z, x, y); 5^2 - 2^4 = 9 = 3^2.
    CHECK(map_solution(ps[1], s2) == TransformedSolution{2, 4, 2});
    CHECK(satisfies(ps[1], map_solution(ps[1], s2)));

    // isolate_a: (x, y, z) -> (z, y, x); 5^2 - 3^2 = 16 = 2^4.
    CHECK(map_solution(ps[2], s2) == TransformedSolution{2, 2, 4});
    CHECK(satisfies(ps[2], map_solution(ps[2], s2)));

    for (const auto& inst : ps) {
        CHECK(satisfies(inst, map_solution(inst, s1)));
        CHECK_THROWS_AS((void)map_solution(inst, Solution{9, 9, 9}), std::invalid_argument);
    }
}

TEST_CASE("the k-parameter family always carries its two solutions") {
    FamilyInstance f2 = family(2);
    CHECK(f2.triple == Triple(Int(2), Int(3), Int(5)));
    CHECK(f2.predicted[0] == Solution{1, 1, 1});
    CHECK(f2.predicted[1] == Solution{4, 2, 2});

    FamilyInstance f4 = family(4);
    CHECK(f4.triple == Triple(Int(2), Int(15), Int(17)));
    CHECK(f4.predicted[1] == Solution{6, 2, 2});

    for (unsigned long k = 2; k <= 12; ++k) {
        FamilyInstance fi = family(k);
        CHECK(fi.triple.a() == 2);
        CHECK(fi.triple.b() == pow_ui(Int(2), k) - 1);
        CHECK(fi.triple.c() == pow_ui(Int(2), k) + 1);
        for (const auto& s : fi.predicted) CHECK(satisfies(fi.triple, s));
    }

    // Far beyond enumeration range the algebraic identity still closes.
    FamilyInstance huge = family(200);
    for (const auto& s : huge.predicted) CHECK(satisfies(huge.triple, s));

    CHECK_THROWS_AS((void)family(1), std::invalid_argument);
}

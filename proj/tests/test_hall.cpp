#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "seatcouples/hall.hpp"

using namespace seatcouples;

namespace {

std::vector<Residue> residues(Int n, const std::vector<Int>& values) {
    std::vector<Residue> out;
    out.reserve(values.size());
    for (Int v : values) out.emplace_back(v, n);
    return out;
}

HalvedDifferences make_halved(Int n, std::vector<Int> values) {
    HalvedDifferences E;
    E.modulus = n;
    E.values = std::move(values);
    for (Int v : E.values) ++E.multiplicity[v];
    return E;
}

// Independent existence check: brute-force over all bijections.
bool realizable_by_permutation(const HalvedDifferences& E) {
    const Int n = E.modulus;
    std::vector<Int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<Int, Int> got;
        for (Int u = 0; u < n; ++u)
            ++got[canonicalize(u - perm[static_cast<std::size_t>(u)], n).value()];
        if (got == E.multiplicity) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// All zero-sum multisets over Z/n, as sorted value vectors of length n.
void for_each_zero_sum(Int n, const std::function<void(std::vector<Int>&)>& fn) {
    std::vector<Int> values(static_cast<std::size_t>(n), 0);
    while (true) {
        Int sum = std::accumulate(values.begin(), values.end(), Int{0}) % n;
        if (sum == 0) fn(values);
        // next nondecreasing vector over [0, n)^n
        std::size_t i = values.size();
        while (i > 0 && values[i - 1] == n - 1) --i;
        if (i == 0) break;
        const Int next = values[i - 1] + 1;
        for (std::size_t k = i - 1; k < values.size(); ++k) values[k] = next;
    }
}

std::vector<Int> random_zero_sum(Int n, std::mt19937& rng) {
    std::vector<Int> values(static_cast<std::size_t>(n));
    Int sum = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        values[i] = static_cast<Int>(rng() % n);
        sum = (sum + values[i]) % n;
    }
    values.back() = canonicalize(-sum, n).value();
    return values;
}

} // namespace

TEST_CASE("halved_differences on the canonical examples") {
    SUBCASE("single difference, N=2") {
        HalvedDifferences E = halved_differences(residues(2, {1}));
        CHECK(E.modulus == 1);
        CHECK(E.values == std::vector<Int>{0});
        CHECK(E.multiplicity == std::map<Int, Int>{{0, 1}});
    }
    SUBCASE("constant differences, N=6") {
        HalvedDifferences E = halved_differences(residues(6, {1, 1, 1}));
        CHECK(E.modulus == 3);
        CHECK(E.values == std::vector<Int>{1, 1, 1});
    }
    SUBCASE("N=4") {
        HalvedDifferences E = halved_differences(residues(4, {1, 1}));
        CHECK(E.modulus == 2);
        CHECK(E.values == std::vector<Int>{1, 1});
    }
    SUBCASE("mixed signs from the N=6 pipeline") {
        // signed ds for N=6, ds=[1,5,1], signs=[-1,+1,-1]: [5, 5, 5]
        HalvedDifferences E = halved_differences(residues(6, {5, 5, 5}));
        CHECK(E.modulus == 3);
        CHECK(E.values == std::vector<Int>{0, 0, 0});
    }
}

TEST_CASE("halved_differences rejects bad input") {
    CHECK_THROWS_AS(halved_differences(residues(6, {1, 2, 1})),
                    ContractViolation);
    CHECK_THROWS_AS(halved_differences(residues(3, {1})), ContractViolation);
    // odd values whose halved sum is nonzero: sign stage invariant broken
    CHECK_THROWS_AS(halved_differences(residues(6, {1, 1, 5})), InternalError);
}

TEST_CASE("hall_realize constant multisets take the rotation") {
    HalvedDifferences E = make_halved(3, {1, 1, 1});
    HallSolution sol = hall_realize(E);
    CHECK(sol.cmap == std::vector<Int>{2, 0, 1});
    CHECK(verify_hall(E, sol));

    HalvedDifferences E1 = make_halved(1, {0});
    HallSolution sol1 = hall_realize(E1);
    CHECK(sol1.cmap == std::vector<Int>{0});
    CHECK(sol1.sigma == std::vector<std::size_t>{0});
    CHECK(verify_hall(E1, sol1));
}

TEST_CASE("hall_realize on a mixed multiset") {
    HalvedDifferences E = make_halved(3, {0, 1, 2});
    HallSolution sol = hall_realize(E);
    CHECK(verify_hall(E, sol));
}

TEST_CASE("verify_hall rejects wrong witnesses") {
    HalvedDifferences E = make_halved(3, {1, 1, 1});
    SUBCASE("identity cmap has difference multiset {0,0,0}") {
        HallSolution sol;
        sol.cmap = {0, 1, 2};
        sol.sigma = {0, 1, 2};
        CHECK_FALSE(verify_hall(E, sol));
    }
    SUBCASE("cmap not a bijection") {
        HallSolution sol;
        sol.cmap = {2, 2, 1};
        sol.sigma = {0, 1, 2};
        CHECK_FALSE(verify_hall(E, sol));
    }
    SUBCASE("sigma not a permutation") {
        HallSolution sol = hall_realize(E);
        REQUIRE(verify_hall(E, sol));
        sol.sigma[0] = sol.sigma[1];
        CHECK_FALSE(verify_hall(E, sol));
    }
    SUBCASE("sigma permutes positions of unequal values") {
        HalvedDifferences mixed = make_halved(3, {0, 1, 2});
        HallSolution sol = hall_realize(mixed);
        REQUIRE(verify_hall(mixed, sol));
        std::swap(sol.sigma[0], sol.sigma[1]);
        CHECK_FALSE(verify_hall(mixed, sol));
    }
    SUBCASE("wrong sizes") {
        HallSolution sol;
        sol.cmap = {0, 1};
        sol.sigma = {0, 1};
        CHECK_FALSE(verify_hall(E, sol));
    }
}

TEST_CASE("hall_realize rejects contract violations") {
    SUBCASE("non-zero-sum multiset") {
        CHECK_THROWS_AS(hall_realize(make_halved(3, {1, 0, 0})),
                        ContractViolation);
    }
    SUBCASE("wrong number of values") {
        HalvedDifferences E;
        E.modulus = 3;
        E.values = {0, 0};
        E.multiplicity = {{0, 2}};
        CHECK_THROWS_AS(hall_realize(E), ContractViolation);
    }
    SUBCASE("value out of range") {
        HalvedDifferences E;
        E.modulus = 3;
        E.values = {0, 3, 0};
        E.multiplicity = {{0, 2}, {3, 1}};
        CHECK_THROWS_AS(hall_realize(E), ContractViolation);
    }
    SUBCASE("multiplicity map out of sync") {
        HalvedDifferences E;
        E.modulus = 3;
        E.values = {0, 1, 2};
        E.multiplicity = {{0, 3}};
        CHECK_THROWS_AS(hall_realize(E), ContractViolation);
    }
}

TEST_CASE("hall_realize solves every zero-sum multiset for n <= 6") {
    for (Int n = 1; n <= 6; ++n) {
        int checked = 0;
        for_each_zero_sum(n, [&](std::vector<Int>& values) {
            HalvedDifferences E = make_halved(n, values);
            HallSolution sol = hall_realize(E);
            REQUIRE(verify_hall(E, sol));
            // cross-check existence independently on the smallest sizes
            if (n <= 5) REQUIRE(realizable_by_permutation(E));
            ++checked;
        });
        CAPTURE(n);
        CHECK(checked > 0);
    }
}

TEST_CASE("hall_realize handles large random zero-sum multisets") {
    std::mt19937 rng(42u);
    for (Int n : {50, 257, 1000}) {
        for (int trial = 0; trial < 5; ++trial) {
            HalvedDifferences E = make_halved(n, random_zero_sum(n, rng));
            SearchConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(trial);
            HallSolution sol = hall_realize(E, cfg);
            REQUIRE(verify_hall(E, sol));
        }
    }
}

TEST_CASE("hall_realize handles adversarial two-block multisets") {
    // Half the values 1, half n-1: forces long repair chains at large n.
    for (Int n : {26, 128}) {
        std::vector<Int> values;
        for (Int i = 0; i < n / 2; ++i) values.push_back(1);
        for (Int i = n / 2; i < n; ++i) values.push_back(n - 1);
        HalvedDifferences E = make_halved(n, std::move(values));
        HallSolution sol = hall_realize(E);
        REQUIRE(verify_hall(E, sol));
    }
}

TEST_CASE("hall_realize is deterministic per seed") {
    std::mt19937 rng(99u);
    HalvedDifferences E = make_halved(40, random_zero_sum(40, rng));
    SearchConfig a;
    a.seed = 5;
    HallSolution first = hall_realize(E, a);
    HallSolution again = hall_realize(E, a);
    CHECK(first.cmap == again.cmap);
    CHECK(first.sigma == again.sigma);
}

TEST_CASE("sigma assigns positions to matching values in ascending order") {
    HalvedDifferences E = make_halved(4, {2, 1, 2, 3});
    HallSolution sol = hall_realize(E);
    REQUIRE(verify_hall(E, sol));
    // positions holding equal values appear in ascending input order
    std::map<Int, std::vector<std::size_t>> by_value;
    for (Int u = 0; u < E.modulus; ++u) {
        const Int diff =
            canonicalize(u - sol.cmap[static_cast<std::size_t>(u)], E.modulus)
                .value();
        by_value[diff].push_back(sol.sigma[static_cast<std::size_t>(u)]);
    }
    for (const auto& [value, positions] : by_value) {
        CAPTURE(value);
        CHECK(std::is_sorted(positions.begin(), positions.end()));
        for (std::size_t pos : positions)
            REQUIRE(E.values[pos] == value);
    }
}

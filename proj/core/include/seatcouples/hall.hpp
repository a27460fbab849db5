#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "seatcouples/zmod.hpp"

namespace seatcouples {

/// The halved differences e_i = (d_i + 1)/2 mod n of a signed even instance,
/// together with their multiplicities. Always zero-sum mod n.
struct HalvedDifferences {
    Int modulus = 1;                 // n
    std::vector<Int> values;         // size n, each in [0, n)
    std::map<Int, Int> multiplicity; // residue -> count, counts sum to n
};

/// Halves a list of signed odd residues mod 2n into residues mod n.
///
/// Requires every input odd (even values throw ContractViolation). The
/// zero-sum property follows from sum(d_i) = n (mod 2n); it is re-checked and
/// a violation throws InternalError, since it would mean the sign-selection
/// stage is broken.
HalvedDifferences halved_differences(const std::vector<Residue>& signed_ds);

/// A bijection cmap on {0..n-1} together with the assignment sigma of input
/// positions, satisfying (u - cmap[u]) mod n = values[sigma[u]] for every u.
struct HallSolution {
    std::vector<Int> cmap;           // size n, bijection on 0..n-1
    std::vector<std::size_t> sigma;  // size n, bijection on input positions
};

/// Search knobs for hall_realize. Defaults are instant at desk scale.
struct SearchConfig {
    std::uint64_t seed = 0;
    std::uint64_t restart_budget = 1'000'000; // search nodes per attempt
    std::uint32_t max_restarts = 8;           // attempts before budget doubles
};

/// Realizes a zero-sum multiset over Z/n as the difference multiset of a
/// bijection: finds cmap with {(u - cmap[u]) mod n} = E as multisets.
///
/// A solution always exists for zero-sum input, so the search never returns
/// "unsatisfiable": it backtracks over residue classes in decreasing
/// multiplicity order with forward checking, abandons an attempt once it
/// exceeds the node budget, reshuffles the position order with the seeded
/// generator, and doubles the budget every max_restarts attempts. A genuinely
/// exhausted search space throws InternalError with a diagnostic dump.
///
/// Constant multisets take the rotation fast path without any search.
/// Deterministic for a fixed seed.
HallSolution hall_realize(const HalvedDifferences& E, const SearchConfig& cfg = {});

/// True iff cmap and sigma are bijections and every position's difference
/// matches its assigned value.
bool verify_hall(const HalvedDifferences& E, const HallSolution& sol);

} // namespace seatcouples

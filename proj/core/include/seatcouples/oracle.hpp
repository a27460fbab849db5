#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "seatcouples/zmod.hpp"

namespace seatcouples {

/// Largest N the exhaustive per-instance oracle accepts by default.
inline constexpr Int kOracleSolveBound = 31;
/// Largest even / odd N the exhaustive multiset sweep accepts by default.
inline constexpr Int kEvenSweepBound = 24;
inline constexpr Int kOddSweepBound = 15;

/// Independent exhaustive backtracking solver. Shares no pairing logic with
/// the constructive pipeline; this is the ground truth the pipeline is tested
/// against.
///
/// Search order: take the smallest unpaired element a, try partners a + d_j
/// then a - d_j for each unused index j ascending, skipping duplicate
/// (partner, class) branches. Returns the first solution in that order, or
/// nothing once the space is exhausted. Throws TooLarge above the bound.
std::optional<PairPartition> oracle_solve(const Instance& inst,
                                          Int bound = kOracleSolveBound);

/// Number of distinct pair sets covering the target whose difference-class
/// multiset equals the instance's (d and N-d identified, input order and
/// duplicate d_j quotiented out). Throws TooLarge above the bound.
std::uint64_t oracle_count(const Instance& inst, Int bound = kOracleSolveBound);

/// Independent acceptance check used to cross-validate solver output: the
/// pairs must cover the target set exactly and their difference-class
/// multiset must equal the instance's. Ignores annotations entirely.
bool oracle_accepts(const Instance& inst, const std::vector<Pair>& pairs);

/// Calls fn for every multiset of size floor(N/2) over the units of Z/N, in
/// lexicographic order (combinations with repetition).
void for_each_unit_multiset(
    Int N, const std::function<void(const std::vector<Int>&)>& fn);

/// Number of such multisets: C(phi(N) + n - 1, n).
std::uint64_t unit_multiset_count(Int N);

struct ExploreOptions {
    Int from = 2;
    Int to = 12;
    std::optional<Parity> parity;      // absent = both parities
    Int even_bound = kEvenSweepBound;  // largest even N the sweep accepts
    Int odd_bound = kOddSweepBound;    // largest odd N the sweep accepts
    unsigned jobs = 0;                 // 0 = hardware concurrency
};

/// Evidence report from an exhaustive sweep. failures is empty iff every
/// examined instance admitted a partition; a non-empty failures list for odd N
/// would be a counterexample to the open conjecture and deserves loud
/// reporting.
struct ExplorationReport {
    struct PerModulus {
        Int N = 0;
        std::uint64_t instances = 0;
        std::uint64_t millis = 0;
    };
    struct Failure {
        Int N = 0;
        std::vector<Int> differences;
    };
    std::vector<PerModulus> examined;
    std::vector<Failure> failures;
    std::uint64_t total_instances = 0;
    std::uint64_t total_millis = 0;
};

/// Runs oracle_solve on every unit multiset for every N in range with the
/// requested parity. Instances are independent and processed by a worker
/// pool; the report merge is deterministic. Throws TooLarge when the range
/// end exceeds the sweep bound for its parity.
ExplorationReport explore(const ExploreOptions& opts);

} // namespace seatcouples

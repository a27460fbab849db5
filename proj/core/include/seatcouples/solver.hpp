#pragma once

#include <optional>
#include <vector>

#include "seatcouples/hall.hpp"
#include "seatcouples/oracle.hpp"
#include "seatcouples/signflip.hpp"
#include "seatcouples/zmod.hpp"

namespace seatcouples {

/// Per-stage summary kept for diagnostics.
struct StageTrace {
    Int target = 0;                        // subset-sum target mod n
    std::vector<std::size_t> witness;      // 0-based witness set
    std::vector<Int> halved;               // e-multiset values mod n
};

/// A verified partition together with the intermediate stages that built it.
/// hall and trace are absent when the pairs came from the exhaustive oracle
/// rather than the constructive pipeline.
struct AssignedPartition {
    PairPartition partition;
    SignVector signs;
    std::optional<HallSolution> hall;
    std::optional<StageTrace> trace;
};

/// Assembles pairs {2u, 2*cmap[u] + 1} for u = 0..n-1 from the upstream
/// stages, ordered by even element 2, 4, ..., 2n-2, 0. Pair u realizes the
/// difference at input position sigma[u]; its orientation is even-minus-odd
/// when that difference kept sign +1 and odd-minus-even otherwise.
///
/// The result is re-verified before returning; a failure means a pipeline bug
/// and throws InternalError.
AssignedPartition assemble(const Instance& inst, const SignVector& signs,
                           const HallSolution& sol);

/// The even-case pipeline: sign selection, halving, Hall realization, pair
/// assembly. Deterministic for a fixed cfg.seed. Throws WrongParity for odd
/// instances; those go through the exhaustive oracle instead.
AssignedPartition solve(const Instance& inst, const SearchConfig& cfg = {});

/// Wraps an oracle-found partition in the pipeline's output type, deriving
/// the per-index signs from the pair orientations.
AssignedPartition annotate_oracle_partition(PairPartition pairs);

/// Exhaustive search for an odd instance, delegated to the oracle module.
/// Empty result means no partition exists, which no known instance exhibits;
/// callers must report it loudly. Throws TooLarge above the oracle bound.
std::optional<AssignedPartition> solve_odd(const Instance& inst,
                                           const SearchConfig& cfg = {},
                                           Int oracle_bound = kOracleSolveBound);

} // namespace seatcouples

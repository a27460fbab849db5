#include "seatcouples/solver.hpp"

#include <sstream>

#include "seatcouples/oracle.hpp"

namespace seatcouples {

namespace {

std::string instance_dump(const Instance& inst, std::uint64_t seed) {
    std::ostringstream out;
    out << "reproduce: N=" << inst.modulus << " ds=[";
    for (std::size_t i = 0; i < inst.differences.size(); ++i) {
        out << (i ? "," : "") << inst.differences[i].value();
    }
    out << "] seed=" << seed;
    return out.str();
}

} // namespace

AssignedPartition assemble(const Instance& inst, const SignVector& signs,
                           const HallSolution& sol) {
    if (!inst.is_even()) {
        throw ContractViolation("assemble is defined for even instances only");
    }
    const Int n = inst.pair_count;
    const Int N = inst.modulus;

    AssignedPartition result;
    result.partition.instance = inst;
    result.partition.pairs.reserve(static_cast<std::size_t>(n));
    result.signs = signs;
    result.hall = sol;

    // Position u carries the pair {2u, 2*cmap[u] + 1}; emitting u = 1..n-1
    // then 0 orders pairs by even element 2, 4, ..., 2n-2, 0.
    for (Int step = 1; step <= n; ++step) {
        const Int u = step % n;
        const std::size_t su = static_cast<std::size_t>(u);
        const std::size_t j = sol.sigma[su];
        Pair pair;
        pair.a = Residue(2 * u, N);
        pair.b = Residue(2 * sol.cmap[su] + 1, N);
        pair.realized_index = j;
        pair.orientation = signs.signs[j] > 0 ? Orientation::AMinusB
                                              : Orientation::BMinusA;
        result.partition.pairs.push_back(pair);
    }

    VerificationReport report = verify_partition(result.partition);
    if (!report.valid) {
        std::ostringstream msg;
        msg << "assembled partition failed verification ("
            << report.failures.size() << " failure(s); first: "
            << report.failures.front().detail << ")";
        throw InternalError(msg.str());
    }
    return result;
}

AssignedPartition solve(const Instance& inst, const SearchConfig& cfg) {
    if (!inst.is_even()) {
        std::ostringstream msg;
        msg << "N=" << inst.modulus << " is odd: the constructive pipeline "
            << "covers even N only; use the exhaustive oracle (oracle-solve)";
        throw WrongParity(msg.str());
    }
    try {
        SignVector signs = choose_signs(inst);

        std::vector<Residue> signed_ds;
        signed_ds.reserve(inst.differences.size());
        for (std::size_t i = 0; i < inst.differences.size(); ++i) {
            const Residue& d = inst.differences[i];
            signed_ds.push_back(signs.signs[i] > 0 ? d : -d);
        }

        HalvedDifferences halved = halved_differences(signed_ds);
        HallSolution sol = hall_realize(halved, cfg);

        AssignedPartition result = assemble(inst, signs, sol);
        StageTrace trace;
        trace.target = inst.pair_count == 1 ? 0 : sign_target(inst);
        trace.witness = result.signs.witness_set;
        trace.halved = halved.values;
        result.trace = std::move(trace);
        return result;
    } catch (const InternalError& e) {
        throw InternalError(std::string(e.what()) + "; " +
                            instance_dump(inst, cfg.seed));
    }
}

AssignedPartition annotate_oracle_partition(PairPartition pairs) {
    AssignedPartition result;
    result.partition = std::move(pairs);
    const std::size_t n = result.partition.instance.differences.size();
    result.signs.signs.assign(n, -1);
    for (const Pair& pair : result.partition.pairs) {
        result.signs.signs[pair.realized_index] =
            pair.orientation == Orientation::AMinusB ? +1 : -1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (result.signs.signs[i] > 0) {
            result.signs.witness_set.push_back(i);
        }
    }
    return result;
}

std::optional<AssignedPartition> solve_odd(const Instance& inst,
                                           const SearchConfig& cfg,
                                           Int oracle_bound) {
    if (inst.is_even()) {
        std::ostringstream msg;
        msg << "N=" << inst.modulus
            << " is even: use the constructive pipeline (solve)";
        throw WrongParity(msg.str());
    }
    (void)cfg; // the oracle's search order is fixed; kept for interface parity
    std::optional<PairPartition> found = oracle_solve(inst, oracle_bound);
    if (!found) {
        return std::nullopt;
    }
    return annotate_oracle_partition(std::move(*found));
}

} // namespace seatcouples

#pragma once

#include <cstddef>
#include <vector>

#include "seatcouples/zmod.hpp"

namespace seatcouples {

/// Running sumset of A_1 + ... + A_k over Z/n with A_i = {d_i, 0}, stored as
/// dense arrays with back-pointers so any witness subset can be reconstructed.
///
/// The first witness discovered for a residue is kept forever, which makes
/// every derived quantity deterministic in the input order.
class WitnessTable {
public:
    WitnessTable(Int modulus, std::vector<Int> reached_at_step,
                 std::vector<Int> predecessor, std::vector<std::size_t> taken,
                 std::vector<Int> step_sizes);

    Int modulus() const { return modulus_; }

    bool contains(Int residue) const;

    /// Number of residues reached so far.
    Int reached_count() const;

    /// 0-based indices i with sum of d_i congruent to residue mod n, ascending.
    /// Reconstructed by walking back-pointers; the chain always terminates at
    /// the empty-sum witness of 0.
    std::vector<std::size_t> witness(Int residue) const;

    /// |A_1 + ... + A_k| after step k (1-based k, stored at [k-1]).
    const std::vector<Int>& step_sizes() const { return step_sizes_; }

private:
    Int modulus_;
    std::vector<Int> reached_at_step_; // step when first reached, -1 if never
    std::vector<Int> predecessor_;     // residue this one was reached from
    std::vector<std::size_t> taken_;   // 0-based index added at that step
    std::vector<Int> step_sizes_;
};

/// Builds the full witness table for d_1..d_n over Z/n, processing indices in
/// order. Each step is checked against the sumset growth bound
/// |A_1 + ... + A_k| >= min(n, k+1); a violation is impossible for unit steps
/// and throws InternalError.
///
/// Throws ContractViolation if some d_i is not a unit mod n.
WitnessTable reachable_sums(const std::vector<Residue>& ds_mod_n);

/// Witness subset I with sum of d_i over I congruent to target mod n.
/// Full coverage is guaranteed for unit steps, so a missing target signals a
/// bug and throws InternalError.
std::vector<std::size_t> subset_with_sum(const std::vector<Residue>& ds_mod_n,
                                         Int target);

/// Sign choice for an even instance: s_i = +1 exactly on the witness set.
struct SignVector {
    std::vector<int> signs;                  // size n, each +1 or -1
    std::vector<std::size_t> witness_set;    // 0-based indices with s_i = +1
};

/// The subset-sum target (sum(d_i) + n)/2 mod n of an even instance. The
/// numerator is always even because every unit mod 2n is odd.
Int sign_target(const Instance& inst);

/// Picks signs with s_1 d_1 + ... + s_n d_n = n (mod 2n) for an even instance.
/// Deterministic: first-found witnesses under index order. The congruence is
/// re-checked before returning; a violation throws InternalError.
SignVector choose_signs(const Instance& inst);

} // namespace seatcouples

#include "seatcouples/signflip.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace seatcouples {

namespace {

constexpr Int kNever = -1;
constexpr std::size_t kEmptySum = static_cast<std::size_t>(-1);

std::string format_indices(const std::vector<std::size_t>& indices) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out << (i ? "," : "") << indices[i] + 1;
    }
    out << "}";
    return out.str();
}

} // namespace

WitnessTable::WitnessTable(Int modulus, std::vector<Int> reached_at_step,
                           std::vector<Int> predecessor,
                           std::vector<std::size_t> taken,
                           std::vector<Int> step_sizes)
    : modulus_(modulus),
      reached_at_step_(std::move(reached_at_step)),
      predecessor_(std::move(predecessor)),
      taken_(std::move(taken)),
      step_sizes_(std::move(step_sizes)) {}

bool WitnessTable::contains(Int residue) const {
    return residue >= 0 && residue < modulus_ &&
           reached_at_step_[static_cast<std::size_t>(residue)] != kNever;
}

Int WitnessTable::reached_count() const {
    return static_cast<Int>(
        std::count_if(reached_at_step_.begin(), reached_at_step_.end(),
                      [](Int s) { return s != kNever; }));
}

std::vector<std::size_t> WitnessTable::witness(Int residue) const {
    if (!contains(residue)) {
        std::ostringstream msg;
        msg << "witness requested for unreached residue " << residue
            << " mod " << modulus_;
        throw InternalError(msg.str());
    }
    std::vector<std::size_t> indices;
    Int r = residue;
    while (taken_[static_cast<std::size_t>(r)] != kEmptySum) {
        indices.push_back(taken_[static_cast<std::size_t>(r)]);
        r = predecessor_[static_cast<std::size_t>(r)];
    }
    std::sort(indices.begin(), indices.end());
    return indices;
}

WitnessTable reachable_sums(const std::vector<Residue>& ds_mod_n) {
    const Int n = ds_mod_n.empty() ? 1 : ds_mod_n.front().modulus();
    for (std::size_t i = 0; i < ds_mod_n.size(); ++i) {
        const Residue& d = ds_mod_n[i];
        if (d.modulus() != n) {
            std::ostringstream msg;
            msg << "mixed moduli in step list: " << d.modulus() << " vs " << n;
            throw ContractViolation(msg.str());
        }
        if (!is_unit(d)) {
            std::ostringstream msg;
            msg << "step d" << (i + 1) << " = " << d.value()
                << " is not a unit mod " << n;
            throw ContractViolation(msg.str());
        }
    }

    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<Int> reached_at_step(un, kNever);
    std::vector<Int> predecessor(un, 0);
    std::vector<std::size_t> taken(un, kEmptySum);
    std::vector<Int> step_sizes;
    step_sizes.reserve(ds_mod_n.size());

    reached_at_step[0] = 0; // empty sum
    Int reached = 1;

    std::vector<Int> added;
    for (std::size_t k = 1; k <= ds_mod_n.size(); ++k) {
        if (reached < n) {
            const Int d = ds_mod_n[k - 1].value();
            added.clear();
            // Candidates come from the previous step's snapshot only; each new
            // residue has a unique source, so scan order does not matter.
            for (Int r = 0; r < n; ++r) {
                Int step = reached_at_step[static_cast<std::size_t>(r)];
                if (step == kNever || step >= static_cast<Int>(k)) {
                    continue;
                }
                Int cand = r + d;
                if (cand >= n) {
                    cand -= n;
                }
                if (reached_at_step[static_cast<std::size_t>(cand)] == kNever) {
                    reached_at_step[static_cast<std::size_t>(cand)] =
                        static_cast<Int>(k);
                    predecessor[static_cast<std::size_t>(cand)] = r;
                    taken[static_cast<std::size_t>(cand)] = k - 1;
                    added.push_back(cand);
                }
            }
            reached += static_cast<Int>(added.size());
        }
        step_sizes.push_back(reached);
        // Sumset growth bound: with unit steps, each step must reach at least
        // min(n, k+1) residues in total.
        const Int bound = std::min<Int>(n, static_cast<Int>(k) + 1);
        if (reached < bound) {
            std::ostringstream msg;
            msg << "sumset growth bound violated at step " << k << ": |R_" << k
                << "| = " << reached << " < " << bound << " (n = " << n << ")";
            throw InternalError(msg.str());
        }
    }

    WitnessTable table(n, std::move(reached_at_step), std::move(predecessor),
                       std::move(taken), std::move(step_sizes));

#ifndef NDEBUG
    // Witness soundness: re-summing each witness must reproduce its residue.
    for (Int r = 0; r < n; ++r) {
        if (!table.contains(r)) {
            continue;
        }
        Int sum = 0;
        for (std::size_t i : table.witness(r)) {
            sum = (sum + ds_mod_n[i].value()) % n;
        }
        assert(sum == r % n && "witness re-sum mismatch");
    }
#endif

    return table;
}

std::vector<std::size_t> subset_with_sum(const std::vector<Residue>& ds_mod_n,
                                         Int target) {
    WitnessTable table = reachable_sums(ds_mod_n);
    if (!table.contains(target)) {
        std::ostringstream msg;
        msg << "subset-sum target " << target << " mod " << table.modulus()
            << " unreached after " << ds_mod_n.size()
            << " unit steps; this contradicts the sumset growth bound";
        throw InternalError(msg.str());
    }
    return table.witness(target);
}

Int sign_target(const Instance& inst) {
    if (!inst.is_even()) {
        throw ContractViolation("sign selection is defined for even N only");
    }
    const Int n = inst.pair_count;
    Int sum = 0;
    for (const Residue& d : inst.differences) {
        sum += d.value(); // n terms < 2n each, far below int64 limits
    }
    Int numerator = sum % (2 * n) + n;
    if (numerator % 2 != 0) {
        std::ostringstream msg;
        msg << "sum(d_i) + n is odd for N = " << inst.modulus
            << "; some difference must be even, which validation excludes";
        throw InternalError(msg.str());
    }
    return (numerator / 2) % n;
}

SignVector choose_signs(const Instance& inst) {
    if (!inst.is_even()) {
        throw ContractViolation("sign selection is defined for even N only");
    }
    const Int n = inst.pair_count;
    const Int N = inst.modulus;

    SignVector result;
    if (n == 1) {
        // Z/1 has the single residue 0; any subset is a witness. Taking the
        // full set keeps the lone sign positive.
        result.signs = {+1};
        result.witness_set = {0};
    } else {
        std::vector<Residue> ds_mod_n;
        ds_mod_n.reserve(inst.differences.size());
        for (const Residue& d : inst.differences) {
            ds_mod_n.emplace_back(d.value(), n);
        }
        std::vector<std::size_t> witness =
            subset_with_sum(ds_mod_n, sign_target(inst));
        result.signs.assign(static_cast<std::size_t>(n), -1);
        for (std::size_t i : witness) {
            result.signs[i] = +1;
        }
        result.witness_set = std::move(witness);
    }

    Int signed_sum = 0;
    for (std::size_t i = 0; i < result.signs.size(); ++i) {
        signed_sum += result.signs[i] * inst.differences[i].value();
    }
    if (((signed_sum - n) % N + N) % N != 0) {
        std::ostringstream msg;
        msg << "sign selection congruence violated: sum(s_i d_i) = "
            << signed_sum << " != " << n << " (mod " << N << "), witness "
            << format_indices(result.witness_set);
        throw InternalError(msg.str());
    }
    return result;
}

} // namespace seatcouples

#include "seatcouples/hall.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace seatcouples {

namespace {

std::string dump_multiset(const HalvedDifferences& E) {
    std::ostringstream out;
    out << "n=" << E.modulus << " e=[";
    for (std::size_t i = 0; i < E.values.size(); ++i) {
        out << (i ? "," : "") << E.values[i];
    }
    out << "]";
    return out.str();
}

enum class AttemptOutcome { Found, Exhausted, BudgetExceeded };

// One backtracking attempt: fill residue classes (largest multiplicity first)
// with positions taken in the given preference order; a position u carrying
// residue r forces cmap[u] = (u - r) mod n, and the forced values must stay
// pairwise distinct.
class Attempt {
public:
    Attempt(Int n, const std::vector<std::pair<Int, Int>>& classes,
            const std::vector<Int>& position_order, std::uint64_t budget)
        : n_(n),
          classes_(classes),
          position_order_(position_order),
          budget_(budget),
          position_free_(static_cast<std::size_t>(n), 1),
          value_free_(static_cast<std::size_t>(n), 1),
          cmap_(static_cast<std::size_t>(n), -1) {}

    AttemptOutcome run() {
        return fill_class(0) ? AttemptOutcome::Found
               : budget_hit_ ? AttemptOutcome::BudgetExceeded
                             : AttemptOutcome::Exhausted;
    }

    const std::vector<Int>& cmap() const { return cmap_; }

private:
    bool fill_class(std::size_t ci) {
        if (ci == classes_.size()) {
            return true;
        }
        const auto [residue, mult] = classes_[ci];
        // Forward check: enough feasible positions must remain for this class.
        Int feasible = 0;
        for (Int rank = 0; rank < n_; ++rank) {
            Int u = position_order_[static_cast<std::size_t>(rank)];
            if (position_free_[static_cast<std::size_t>(u)] &&
                value_free_[static_cast<std::size_t>(value_for(u, residue))]) {
                ++feasible;
            }
        }
        if (feasible < mult) {
            return false;
        }
        return place(ci, residue, 0, mult);
    }

    bool place(std::size_t ci, Int residue, Int from_rank, Int remaining) {
        if (remaining == 0) {
            return fill_class(ci + 1);
        }
        for (Int rank = from_rank; rank <= n_ - remaining; ++rank) {
            Int u = position_order_[static_cast<std::size_t>(rank)];
            if (!position_free_[static_cast<std::size_t>(u)]) {
                continue;
            }
            Int v = value_for(u, residue);
            if (!value_free_[static_cast<std::size_t>(v)]) {
                continue;
            }
            if (++nodes_ > budget_) {
                budget_hit_ = true;
                return false;
            }
            position_free_[static_cast<std::size_t>(u)] = 0;
            value_free_[static_cast<std::size_t>(v)] = 0;
            cmap_[static_cast<std::size_t>(u)] = v;
            if (place(ci, residue, rank + 1, remaining - 1)) {
                return true;
            }
            position_free_[static_cast<std::size_t>(u)] = 1;
            value_free_[static_cast<std::size_t>(v)] = 1;
            cmap_[static_cast<std::size_t>(u)] = -1;
            if (budget_hit_) {
                return false;
            }
        }
        return false;
    }

    Int value_for(Int u, Int residue) const {
        Int v = u - residue;
        return v < 0 ? v + n_ : v;
    }

    Int n_;
    const std::vector<std::pair<Int, Int>>& classes_;
    const std::vector<Int>& position_order_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool budget_hit_ = false;
    std::vector<char> position_free_;
    std::vector<char> value_free_;
    std::vector<Int> cmap_;
};

// Repair attempt for large n, where class-major backtracking thrashes: start
// from a random permutation and hill-climb on the multiset deficit. Swapping
// cmap[u1] and cmap[u2] changes exactly the two differences at u1, u2 and
// preserves the permutation property, so every state is a valid bijection and
// the search only has to match the difference multiset. Moves that do not
// worsen the deficit are accepted; a move targets one surplus position and
// one deficient residue, which fixes at least one deficit most of the time.
class RepairAttempt {
public:
    RepairAttempt(Int n, const std::vector<Int>& need, std::mt19937_64& rng,
                  std::uint64_t move_budget)
        : n_(n), need_(need), rng_(rng), move_budget_(move_budget) {}

    bool run() {
        const std::size_t un = static_cast<std::size_t>(n_);
        cmap_.resize(un);
        std::iota(cmap_.begin(), cmap_.end(), 0);
        std::shuffle(cmap_.begin(), cmap_.end(), rng_);
        inv_.resize(un);
        have_.assign(un, 0);
        for (Int u = 0; u < n_; ++u) {
            inv_[static_cast<std::size_t>(cmap_[static_cast<std::size_t>(u)])] = u;
            have_[static_cast<std::size_t>(diff_at(u))] += 1;
        }
        Int deficit = 0;
        for (Int r = 0; r < n_; ++r) {
            deficit += std::max<Int>(0, need_[static_cast<std::size_t>(r)] -
                                            have_[static_cast<std::size_t>(r)]);
        }
        surplus_pos_.clear();
        deficit_val_.clear();
        for (Int u = 0; u < n_; ++u) {
            if (is_surplus(diff_at(u))) {
                surplus_pos_.push_back(u);
            }
        }
        for (Int r = 0; r < n_; ++r) {
            if (is_deficient(r)) {
                deficit_val_.push_back(r);
            }
        }

        const std::uint64_t stall_limit =
            std::min<std::uint64_t>(move_budget_, 30 * static_cast<std::uint64_t>(n_) + 1000);
        Int best = deficit;
        std::uint64_t since_improvement = 0;
        for (std::uint64_t moves = 0; deficit > 0 && moves < move_budget_;
             ++moves) {
            if (++since_improvement > stall_limit) {
                return false;
            }
            const Int u1 = pop_surplus_position();
            const Int r_want = pop_deficient_value();
            if (u1 < 0 || r_want < 0) {
                return false; // pools stale beyond repair; cannot happen with deficit > 0
            }
            Int v_need = u1 - r_want;
            if (v_need < 0) {
                v_need += n_;
            }
            const Int u2 = inv_[static_cast<std::size_t>(v_need)];
            if (u2 == u1) {
                continue;
            }
            const Int r1 = diff_at(u1);
            const Int r2 = diff_at(u2);
            Int r2p = u2 - cmap_[static_cast<std::size_t>(u1)];
            if (r2p < 0) {
                r2p += n_;
            }
            const Int delta = apply_counters(r1, r_want, r2, r2p);
            if (delta <= 0) {
                std::swap(cmap_[static_cast<std::size_t>(u1)],
                          cmap_[static_cast<std::size_t>(u2)]);
                inv_[static_cast<std::size_t>(cmap_[static_cast<std::size_t>(u1)])] = u1;
                inv_[static_cast<std::size_t>(cmap_[static_cast<std::size_t>(u2)])] = u2;
                deficit += delta;
                for (Int r : {r1, r2}) {
                    if (is_deficient(r)) {
                        deficit_val_.push_back(r);
                    }
                }
                for (Int u : {u1, u2}) {
                    if (is_surplus(diff_at(u))) {
                        surplus_pos_.push_back(u);
                    }
                }
                if (deficit < best) {
                    best = deficit;
                    since_improvement = 0;
                }
            } else {
                revert_counters(r1, r_want, r2, r2p);
            }
        }
        return deficit == 0;
    }

    const std::vector<Int>& cmap() const { return cmap_; }

private:
    Int diff_at(Int u) const {
        Int r = u - cmap_[static_cast<std::size_t>(u)];
        return r < 0 ? r + n_ : r;
    }
    bool is_surplus(Int r) const {
        return have_[static_cast<std::size_t>(r)] > need_[static_cast<std::size_t>(r)];
    }
    bool is_deficient(Int r) const {
        return need_[static_cast<std::size_t>(r)] > have_[static_cast<std::size_t>(r)];
    }

    // Swap-pop sampling with lazy invalidation: entries may be stale after
    // counter updates, so each draw is validated against the live counters.
    Int pop_surplus_position() {
        while (!surplus_pos_.empty()) {
            const std::size_t i = std::uniform_int_distribution<std::size_t>(
                0, surplus_pos_.size() - 1)(rng_);
            const Int u = surplus_pos_[i];
            if (is_surplus(diff_at(u))) {
                return u;
            }
            surplus_pos_[i] = surplus_pos_.back();
            surplus_pos_.pop_back();
        }
        return -1;
    }
    Int pop_deficient_value() {
        while (!deficit_val_.empty()) {
            const std::size_t i = std::uniform_int_distribution<std::size_t>(
                0, deficit_val_.size() - 1)(rng_);
            const Int r = deficit_val_[i];
            if (is_deficient(r)) {
                return r;
            }
            deficit_val_[i] = deficit_val_.back();
            deficit_val_.pop_back();
        }
        return -1;
    }

    // Applies the four difference-count changes of the candidate swap and
    // returns the deficit delta; revert undoes them.
    Int apply_counters(Int r1, Int r_want, Int r2, Int r2p) {
        Int delta = 0;
        const Int rs[4] = {r1, r_want, r2, r2p};
        const Int ch[4] = {-1, +1, -1, +1};
        for (int i = 0; i < 4; ++i) {
            const std::size_t r = static_cast<std::size_t>(rs[i]);
            const Int before = std::max<Int>(0, need_[r] - have_[r]);
            have_[r] += ch[i];
            delta += std::max<Int>(0, need_[r] - have_[r]) - before;
        }
        return delta;
    }
    void revert_counters(Int r1, Int r_want, Int r2, Int r2p) {
        have_[static_cast<std::size_t>(r1)] += 1;
        have_[static_cast<std::size_t>(r_want)] -= 1;
        have_[static_cast<std::size_t>(r2)] += 1;
        have_[static_cast<std::size_t>(r2p)] -= 1;
    }

    Int n_;
    const std::vector<Int>& need_;
    std::mt19937_64& rng_;
    std::uint64_t move_budget_;
    std::vector<Int> cmap_;
    std::vector<Int> inv_;
    std::vector<Int> have_;
    std::vector<Int> surplus_pos_;
    std::vector<Int> deficit_val_;
};

// Below this size the class-major complete search is instant and is used
// directly; above it, repair attempts run first and the complete search only
// participates in budget escalation rounds.
constexpr Int kCompleteFirstMax = 24;

// Stable assignment of input positions: ascending positions of each residue
// get the ascending input indices carrying that value.
std::vector<std::size_t> assign_sigma(const HalvedDifferences& E,
                                      const std::vector<Int>& cmap) {
    const Int n = E.modulus;
    std::vector<std::vector<std::size_t>> by_value(
        static_cast<std::size_t>(n));
    for (std::size_t j = E.values.size(); j-- > 0;) {
        by_value[static_cast<std::size_t>(E.values[j])].push_back(j);
    }
    std::vector<std::size_t> sigma(static_cast<std::size_t>(n));
    for (Int u = 0; u < n; ++u) {
        Int r = u - cmap[static_cast<std::size_t>(u)];
        if (r < 0) {
            r += n;
        }
        auto& bucket = by_value[static_cast<std::size_t>(r)];
        if (bucket.empty()) {
            throw InternalError(
                "difference multiset of the realized bijection does not match "
                "the input multiset: " +
                dump_multiset(E));
        }
        sigma[static_cast<std::size_t>(u)] = bucket.back();
        bucket.pop_back();
    }
    return sigma;
}

} // namespace

HalvedDifferences halved_differences(const std::vector<Residue>& signed_ds) {
    if (signed_ds.empty()) {
        throw ContractViolation("halved_differences requires at least one value");
    }
    const Int two_n = signed_ds.front().modulus();
    if (two_n % 2 != 0) {
        throw ContractViolation("halved_differences requires an even modulus");
    }
    const Int n = two_n / 2;

    HalvedDifferences result;
    result.modulus = n;
    result.values.reserve(signed_ds.size());
    Int sum = 0;
    for (std::size_t i = 0; i < signed_ds.size(); ++i) {
        const Residue& d = signed_ds[i];
        if (d.modulus() != two_n) {
            std::ostringstream msg;
            msg << "mixed moduli: value " << (i + 1) << " has modulus "
                << d.modulus() << ", expected " << two_n;
            throw ContractViolation(msg.str());
        }
        if (d.value() % 2 == 0) {
            std::ostringstream msg;
            msg << "value " << (i + 1) << " = " << d.value()
                << " is even; halving is defined for odd residues mod "
                << two_n;
            throw ContractViolation(msg.str());
        }
        Int e = ((d.value() + 1) % two_n) / 2 % n;
        result.values.push_back(e);
        result.multiplicity[e] += 1;
        sum += e;
    }
    if (sum % n != 0) {
        std::ostringstream msg;
        msg << "halved differences are not zero-sum: sum = " << sum
            << " != 0 (mod " << n << "); the signed input cannot have summed "
            << "to n mod 2n";
        throw InternalError(msg.str());
    }
    return result;
}

HallSolution hall_realize(const HalvedDifferences& E, const SearchConfig& cfg) {
    const Int n = E.modulus;
    if (n < 1 || static_cast<Int>(E.values.size()) != n) {
        std::ostringstream msg;
        msg << "expected exactly n=" << n << " values, got " << E.values.size();
        throw ContractViolation(msg.str());
    }
    Int sum = 0;
    for (Int e : E.values) {
        if (e < 0 || e >= n) {
            std::ostringstream msg;
            msg << "value " << e << " out of range [0, " << n << ")";
            throw ContractViolation(msg.str());
        }
        sum += e;
    }
    if (sum % n != 0) {
        std::ostringstream msg;
        msg << "zero-sum precondition violated: sum = " << sum << " (mod " << n
            << "), " << dump_multiset(E);
        throw ContractViolation(msg.str());
    }
    std::map<Int, Int> recounted;
    for (Int e : E.values) {
        ++recounted[e];
    }
    if (recounted != E.multiplicity) {
        throw ContractViolation(
            "multiplicity map does not match the values: " + dump_multiset(E));
    }

    // Classes by decreasing multiplicity, residue ascending on ties.
    std::vector<std::pair<Int, Int>> classes;
    classes.reserve(E.multiplicity.size());
    for (auto [residue, mult] : E.multiplicity) {
        classes.emplace_back(residue, mult);
    }
    std::stable_sort(classes.begin(), classes.end(),
                     [](const auto& a, const auto& b) {
                         return a.second > b.second;
                     });

    HallSolution sol;
    if (classes.size() == 1) {
        // Constant multiset: the rotation cmap[u] = (u - r) mod n works.
        const Int r = classes.front().first;
        sol.cmap.resize(static_cast<std::size_t>(n));
        for (Int u = 0; u < n; ++u) {
            sol.cmap[static_cast<std::size_t>(u)] = (u - r + n) % n;
        }
        sol.sigma = assign_sigma(E, sol.cmap);
        return sol;
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<Int> position_order(static_cast<std::size_t>(n));
    std::iota(position_order.begin(), position_order.end(), 0);

    std::vector<Int> need(static_cast<std::size_t>(n), 0);
    for (Int e : E.values) {
        need[static_cast<std::size_t>(e)] += 1;
    }

    std::uint64_t budget = std::max<std::uint64_t>(1, cfg.restart_budget);
    const std::uint32_t restarts_per_budget = std::max<std::uint32_t>(1, cfg.max_restarts);
    auto complete_round =
        [&](std::uint64_t attempt) -> std::optional<std::vector<Int>> {
        Attempt search(n, classes, position_order, budget);
        switch (search.run()) {
        case AttemptOutcome::Found:
            return search.cmap();
        case AttemptOutcome::Exhausted: {
            std::ostringstream msg;
            msg << "complete search found no realization of a zero-sum "
                << "multiset, contradicting its existence guarantee: "
                << dump_multiset(E) << " seed=" << cfg.seed
                << " attempt=" << attempt;
            throw InternalError(msg.str());
        }
        case AttemptOutcome::BudgetExceeded:
            break;
        }
        return std::nullopt;
    };
    auto finish = [&](std::vector<Int> cmap) {
        sol.cmap = std::move(cmap);
        sol.sigma = assign_sigma(E, sol.cmap);
        return sol;
    };

    for (std::uint64_t attempt = 0;; ++attempt) {
        if (n <= kCompleteFirstMax) {
            if (attempt > 0) {
                std::shuffle(position_order.begin(), position_order.end(), rng);
            }
            if (auto cmap = complete_round(attempt)) {
                return finish(std::move(*cmap));
            }
        } else {
            RepairAttempt repair(n, need, rng, budget);
            if (repair.run()) {
                return finish(repair.cmap());
            }
            // Escalation keeps the completeness guarantee: a full search round
            // runs before each budget doubling, so a genuinely unrealizable
            // multiset is eventually detected rather than looped on forever.
            if ((attempt + 1) % restarts_per_budget == 0) {
                std::shuffle(position_order.begin(), position_order.end(), rng);
                if (auto cmap = complete_round(attempt)) {
                    return finish(std::move(*cmap));
                }
            }
        }
        if ((attempt + 1) % restarts_per_budget == 0) {
            budget *= 2;
        }
    }
}

bool verify_hall(const HalvedDifferences& E, const HallSolution& sol) {
    const Int n = E.modulus;
    const std::size_t un = static_cast<std::size_t>(n);
    if (sol.cmap.size() != un || sol.sigma.size() != un ||
        E.values.size() != un) {
        return false;
    }
    std::vector<char> value_seen(un, 0);
    std::vector<char> index_seen(un, 0);
    for (Int u = 0; u < n; ++u) {
        Int v = sol.cmap[static_cast<std::size_t>(u)];
        std::size_t j = sol.sigma[static_cast<std::size_t>(u)];
        if (v < 0 || v >= n || value_seen[static_cast<std::size_t>(v)]) {
            return false;
        }
        if (j >= un || index_seen[j]) {
            return false;
        }
        value_seen[static_cast<std::size_t>(v)] = 1;
        index_seen[j] = 1;
        if (((u - v) % n + n) % n != E.values[j]) {
            return false;
        }
    }
    return true;
}

} // namespace seatcouples

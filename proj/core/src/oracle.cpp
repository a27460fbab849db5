#include "seatcouples/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace seatcouples {

namespace {

void check_bound(Int N, Int bound, const char* what) {
    if (N > bound) {
        std::ostringstream msg;
        msg << "N=" << N << " exceeds the " << what << " bound " << bound;
        throw TooLarge(msg.str());
    }
}

// Canonical class representative min(d, N-d), by plain integer arithmetic so
// this file stays independent of the solver-facing helpers.
Int class_of(Int d, Int N) {
    Int r = ((d % N) + N) % N;
    return std::min(r, N - r);
}

// Backtracking state for oracle_solve.
struct SolveSearch {
    const Instance& inst;
    Int N;
    std::vector<char> paired;   // by residue value
    std::vector<char> used;     // by difference index
    std::vector<Pair> pairs;

    explicit SolveSearch(const Instance& instance)
        : inst(instance),
          N(instance.modulus),
          paired(static_cast<std::size_t>(instance.modulus), 0),
          used(instance.differences.size(), 0) {
        if (!instance.is_even()) {
            paired[0] = 1; // 0 is outside the odd target set
        }
        pairs.reserve(instance.differences.size());
    }

    Int smallest_unpaired() const {
        for (Int v = inst.target_first(); v < N; ++v) {
            if (!paired[static_cast<std::size_t>(v)]) {
                return v;
            }
        }
        return -1;
    }

    bool run() {
        const Int a = smallest_unpaired();
        if (a < 0) {
            return true;
        }
        // (partner, class) pairs already branched at this node; duplicate
        // classes among the unused d_j would otherwise multiply the search.
        std::set<std::pair<Int, Int>> tried;
        for (std::size_t j = 0; j < inst.differences.size(); ++j) {
            if (used[j]) {
                continue;
            }
            const Int d = inst.differences[j].value();
            const Int cl = class_of(d, N);
            for (int dir = 0; dir < 2; ++dir) {
                const Int partner =
                    dir == 0 ? (a + d) % N : ((a - d) % N + N) % N;
                if (!inst.target_contains(partner) ||
                    paired[static_cast<std::size_t>(partner)] ||
                    partner == a) {
                    continue;
                }
                if (!tried.insert({partner, cl}).second) {
                    continue;
                }
                Pair pair;
                pair.a = Residue(a, N);
                pair.b = Residue(partner, N);
                pair.realized_index = j;
                // dir 0 pairs a with a + d, so b - a = d.
                pair.orientation =
                    dir == 0 ? Orientation::BMinusA : Orientation::AMinusB;
                paired[static_cast<std::size_t>(a)] = 1;
                paired[static_cast<std::size_t>(partner)] = 1;
                used[j] = 1;
                pairs.push_back(pair);
                if (run()) {
                    return true;
                }
                pairs.pop_back();
                used[j] = 0;
                paired[static_cast<std::size_t>(a)] = 0;
                paired[static_cast<std::size_t>(partner)] = 0;
            }
        }
        return false;
    }
};

// Backtracking state for oracle_count: branches over difference classes with
// remaining multiplicity, so duplicate d_j never multiply the count.
struct CountSearch {
    const Instance& inst;
    Int N;
    std::vector<char> paired;
    std::map<Int, Int> remaining; // class -> multiplicity left

    explicit CountSearch(const Instance& instance)
        : inst(instance),
          N(instance.modulus),
          paired(static_cast<std::size_t>(instance.modulus), 0) {
        if (!instance.is_even()) {
            paired[0] = 1;
        }
        for (const Residue& d : instance.differences) {
            remaining[class_of(d.value(), N)] += 1;
        }
    }

    Int smallest_unpaired() const {
        for (Int v = inst.target_first(); v < N; ++v) {
            if (!paired[static_cast<std::size_t>(v)]) {
                return v;
            }
        }
        return -1;
    }

    std::uint64_t run() {
        const Int a = smallest_unpaired();
        if (a < 0) {
            return 1;
        }
        std::uint64_t total = 0;
        for (auto& [cl, count] : remaining) {
            if (count == 0) {
                continue;
            }
            const Int up = (a + cl) % N;
            const Int down = ((a - cl) % N + N) % N;
            for (int dir = 0; dir < 2; ++dir) {
                if (dir == 1 && down == up) {
                    break; // 2*cl = 0 mod N: both directions coincide
                }
                const Int partner = dir == 0 ? up : down;
                if (!inst.target_contains(partner) ||
                    paired[static_cast<std::size_t>(partner)] ||
                    partner == a) {
                    continue;
                }
                paired[static_cast<std::size_t>(a)] = 1;
                paired[static_cast<std::size_t>(partner)] = 1;
                count -= 1;
                total += run();
                count += 1;
                paired[static_cast<std::size_t>(a)] = 0;
                paired[static_cast<std::size_t>(partner)] = 0;
            }
        }
        return total;
    }
};

} // namespace

std::optional<PairPartition> oracle_solve(const Instance& inst, Int bound) {
    check_bound(inst.modulus, bound, "oracle");
    SolveSearch search(inst);
    if (!search.run()) {
        return std::nullopt;
    }
    PairPartition result;
    result.instance = inst;
    result.pairs = std::move(search.pairs);
    return result;
}

std::uint64_t oracle_count(const Instance& inst, Int bound) {
    check_bound(inst.modulus, bound, "oracle");
    CountSearch search(inst);
    return search.run();
}

bool oracle_accepts(const Instance& inst, const std::vector<Pair>& pairs) {
    const Int N = inst.modulus;
    if (static_cast<Int>(pairs.size()) != inst.pair_count) {
        return false;
    }
    std::vector<Int> elements;
    std::vector<Int> classes;
    elements.reserve(pairs.size() * 2);
    classes.reserve(pairs.size());
    for (const Pair& pair : pairs) {
        if (pair.a.modulus() != N || pair.b.modulus() != N) {
            return false;
        }
        elements.push_back(pair.a.value());
        elements.push_back(pair.b.value());
        classes.push_back(class_of(pair.a.value() - pair.b.value(), N));
    }
    std::sort(elements.begin(), elements.end());
    Int expect = inst.target_first();
    for (Int v : elements) {
        if (v != expect) {
            return false;
        }
        ++expect;
    }
    if (expect != N) {
        return false;
    }
    std::vector<Int> want;
    want.reserve(inst.differences.size());
    for (const Residue& d : inst.differences) {
        want.push_back(class_of(d.value(), N));
    }
    std::sort(classes.begin(), classes.end());
    std::sort(want.begin(), want.end());
    return classes == want;
}

void for_each_unit_multiset(
    Int N, const std::function<void(const std::vector<Int>&)>& fn) {
    const std::vector<Int> units = units_of(N);
    const std::size_t n = static_cast<std::size_t>(N / 2);
    std::vector<std::size_t> pick(n, 0); // nondecreasing indices into units
    std::vector<Int> ds(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            ds[i] = units[pick[i]];
        }
        fn(ds);
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == units.size() - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        const std::size_t next = pick[i - 1] + 1;
        for (std::size_t k = i - 1; k < n; ++k) {
            pick[k] = next;
        }
    }
}

std::uint64_t unit_multiset_count(Int N) {
    const std::uint64_t k = units_of(N).size();
    const std::uint64_t n = static_cast<std::uint64_t>(N / 2);
    // C(k + n - 1, n), small inputs only
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= n; ++i) {
        result = result * (k - 1 + i) / i;
    }
    return result;
}

ExplorationReport explore(const ExploreOptions& opts) {
    if (opts.from < 2 || opts.to < opts.from) {
        std::ostringstream msg;
        msg << "bad range " << opts.from << ".." << opts.to;
        throw InvalidInput(msg.str());
    }
    const bool want_even = !opts.parity || *opts.parity == Parity::Even;
    const bool want_odd = !opts.parity || *opts.parity == Parity::Odd;
    for (Int N = opts.from; N <= opts.to; ++N) {
        if (N % 2 == 0 && want_even) {
            check_bound(N, opts.even_bound, "even sweep");
        }
        if (N % 2 == 1 && want_odd) {
            check_bound(N, opts.odd_bound, "odd sweep");
        }
    }

    unsigned jobs = opts.jobs != 0 ? opts.jobs
                                   : std::max(1u, std::thread::hardware_concurrency());

    ExplorationReport report;
    for (Int N = opts.from; N <= opts.to; ++N) {
        const bool even = N % 2 == 0;
        if ((even && !want_even) || (!even && !want_odd)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();

        std::vector<std::vector<Int>> instances;
        for_each_unit_multiset(
            N, [&instances](const std::vector<Int>& ds) { instances.push_back(ds); });

        std::vector<char> solved(instances.size(), 0);
        const std::size_t count = instances.size();
        const unsigned workers =
            static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
        auto work = [&](unsigned w) {
            for (std::size_t i = w; i < count; i += workers) {
                Instance inst = validate_instance(N, instances[i]);
                solved[i] = oracle_solve(inst, std::max(N, kOracleSolveBound))
                                .has_value();
            }
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back(work, w);
            }
            for (std::thread& t : pool) {
                t.join();
            }
        }

        for (std::size_t i = 0; i < count; ++i) {
            if (!solved[i]) {
                report.failures.push_back({N, instances[i]});
            }
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;
        const auto millis = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                .count());
        report.examined.push_back({N, count, millis});
        report.total_instances += count;
        report.total_millis += millis;
    }
    return report;
}

} // namespace seatcouples

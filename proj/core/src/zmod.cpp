#include "seatcouples/zmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace seatcouples {

namespace {

Int reduce(Int x, Int modulus) {
    Int r = x % modulus;
    return r < 0 ? r + modulus : r;
}

void require_same_modulus(const Residue& a, const Residue& b) {
    if (a.modulus() != b.modulus()) {
        std::ostringstream msg;
        msg << "modulus mismatch: " << a.modulus() << " vs " << b.modulus();
        throw ContractViolation(msg.str());
    }
}

} // namespace

Residue::Residue(Int value, Int modulus) {
    if (modulus < 1) {
        std::ostringstream msg;
        msg << "invalid modulus " << modulus << ": must be at least 1";
        throw InvalidInput(msg.str());
    }
    modulus_ = modulus;
    value_ = reduce(value, modulus);
}

Residue Residue::operator+(const Residue& other) const {
    require_same_modulus(*this, other);
    return Residue(value_ + other.value_, modulus_);
}

Residue Residue::operator-(const Residue& other) const {
    require_same_modulus(*this, other);
    return Residue(value_ - other.value_, modulus_);
}

Residue Residue::operator-() const {
    return Residue(-value_, modulus_);
}

Residue canonicalize(Int x, Int modulus) {
    return Residue(x, modulus);
}

bool is_unit(const Residue& d) {
    return std::gcd(d.value(), d.modulus()) == 1;
}

std::vector<Int> units_of(Int modulus) {
    std::vector<Int> out;
    for (Int d = 1; d < modulus; ++d) {
        if (std::gcd(d, modulus) == 1) {
            out.push_back(d);
        }
    }
    if (modulus == 1) {
        out.push_back(0); // Z/1 = {0}, and gcd(0,1) = 1
    }
    return out;
}

Instance validate_instance(Int N, const std::vector<Int>& ds) {
    if (N < 2) {
        std::ostringstream msg;
        msg << "invalid modulus N=" << N << ": must be at least 2";
        throw InvalidInput(msg.str());
    }
    if (N > kMaxModulus) {
        std::ostringstream msg;
        msg << "invalid modulus N=" << N << ": exceeds supported maximum 2^31";
        throw InvalidInput(msg.str());
    }
    Instance inst;
    inst.modulus = N;
    inst.pair_count = N / 2;
    inst.parity = (N % 2 == 0) ? Parity::Even : Parity::Odd;
    if (static_cast<Int>(ds.size()) != inst.pair_count) {
        std::ostringstream msg;
        msg << "wrong difference count: expected n=" << inst.pair_count
            << " for N=" << N << ", got " << ds.size();
        throw InvalidInput(msg.str());
    }
    inst.differences.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        Residue d = canonicalize(ds[i], N);
        if (!is_unit(d)) {
            std::ostringstream msg;
            msg << "non-unit difference at index " << (i + 1) << ": gcd("
                << d.value() << ", " << N << ") = " << std::gcd(d.value(), N);
            throw InvalidInput(msg.str());
        }
        inst.differences.push_back(d);
    }
    return inst;
}

Residue diff_class(const Residue& a, const Residue& b) {
    require_same_modulus(a, b);
    Residue fwd = a - b;
    Residue bwd = b - a;
    return fwd.value() <= bwd.value() ? fwd : bwd;
}

const char* to_string(VerificationFailure::Kind kind) {
    using Kind = VerificationFailure::Kind;
    switch (kind) {
    case Kind::WrongPairCount: return "wrong-pair-count";
    case Kind::ElementMissing: return "element-missing";
    case Kind::ElementRepeated: return "element-repeated";
    case Kind::ElementOutsideTarget: return "element-outside-target";
    case Kind::DifferenceMismatch: return "difference-mismatch";
    case Kind::IndexNotPermutation: return "index-not-permutation";
    }
    return "unknown";
}

VerificationReport verify_partition(const PairPartition& p) {
    const Instance& inst = p.instance;
    const Int N = inst.modulus;
    const std::size_t n = static_cast<std::size_t>(inst.pair_count);
    VerificationReport report;
    auto fail = [&report](VerificationFailure f) {
        report.failures.push_back(std::move(f));
    };

    if (p.pairs.size() != n) {
        std::ostringstream msg;
        msg << "expected " << n << " pairs, got " << p.pairs.size();
        fail({VerificationFailure::Kind::WrongPairCount, -1, 0, msg.str()});
    }

    // Coverage: the elements must be exactly the target set, each once.
    std::vector<Int> in_target;
    in_target.reserve(2 * p.pairs.size());
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
        for (const Residue* r : {&p.pairs[k].a, &p.pairs[k].b}) {
            if (r->modulus() != N) {
                std::ostringstream msg;
                msg << "element " << r->value() << " in pair " << (k + 1)
                    << " has modulus " << r->modulus() << ", expected " << N;
                fail({VerificationFailure::Kind::ElementOutsideTarget,
                      r->value(), k, msg.str()});
            } else if (!inst.target_contains(r->value())) {
                std::ostringstream msg;
                msg << "element " << r->value() << " in pair " << (k + 1)
                    << " is outside the target set";
                fail({VerificationFailure::Kind::ElementOutsideTarget,
                      r->value(), k, msg.str()});
            } else {
                in_target.push_back(r->value());
            }
        }
    }
    std::sort(in_target.begin(), in_target.end());
    std::size_t pos = 0;
    for (Int t = inst.target_first(); t < N; ++t) {
        std::size_t count = 0;
        while (pos < in_target.size() && in_target[pos] == t) {
            ++count;
            ++pos;
        }
        if (count == 0) {
            std::ostringstream msg;
            msg << "element " << t << " missing from the partition";
            fail({VerificationFailure::Kind::ElementMissing, t, 0, msg.str()});
        } else if (count > 1) {
            std::ostringstream msg;
            msg << "element " << t << " appears " << count << " times";
            fail({VerificationFailure::Kind::ElementRepeated, t, 0, msg.str()});
        }
    }

    // realized_index values must be a permutation of the difference positions.
    std::vector<char> index_seen(n, 0);
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
        std::size_t j = p.pairs[k].realized_index;
        if (j >= n) {
            std::ostringstream msg;
            msg << "pair " << (k + 1) << " realizes index " << (j + 1)
                << ", out of range 1.." << n;
            fail({VerificationFailure::Kind::IndexNotPermutation, -1, k,
                  msg.str()});
        } else if (index_seen[j]) {
            std::ostringstream msg;
            msg << "index " << (j + 1) << " realized more than once";
            fail({VerificationFailure::Kind::IndexNotPermutation, -1, k,
                  msg.str()});
        } else {
            index_seen[j] = 1;
        }
    }

    // Each pair's annotated difference must hold in the annotated orientation.
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
        const Pair& pr = p.pairs[k];
        if (pr.realized_index >= n || pr.a.modulus() != N ||
            pr.b.modulus() != N) {
            continue; // already reported above
        }
        const Residue& d = inst.differences[pr.realized_index];
        Residue got = pr.orientation == Orientation::AMinusB ? pr.a - pr.b
                                                             : pr.b - pr.a;
        if (got != d) {
            std::ostringstream msg;
            msg << "pair " << (k + 1) << " = {" << pr.a.value() << ", "
                << pr.b.value() << "} annotated with d" << (pr.realized_index + 1)
                << " = " << d.value() << " but realizes " << got.value();
            fail({VerificationFailure::Kind::DifferenceMismatch, got.value(), k,
                  msg.str()});
        }
    }

    report.valid = report.failures.empty();
    return report;
}

} // namespace seatcouples

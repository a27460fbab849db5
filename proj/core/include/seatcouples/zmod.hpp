#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "seatcouples/errors.hpp"

namespace seatcouples {

using Int = std::int64_t;

/// Largest modulus accepted anywhere. Keeps every intermediate sum well inside
/// the int64 range, so no big-integer machinery is needed.
inline constexpr Int kMaxModulus = Int{1} << 31;

/// An element of Z/N in canonical form: value in [0, N).
///
/// Arithmetic between residues of different moduli is a programming error and
/// throws ContractViolation.
class Residue {
public:
    Residue() = default;

    /// Canonicalizes any integer into [0, N). Throws InvalidInput if N < 1.
    Residue(Int value, Int modulus);

    Int value() const { return value_; }
    Int modulus() const { return modulus_; }

    Residue operator+(const Residue& other) const;
    Residue operator-(const Residue& other) const;
    Residue operator-() const;

    bool operator==(const Residue& other) const = default;
    auto operator<=>(const Residue& other) const = default;

private:
    Int value_ = 0;
    Int modulus_ = 1;
};

/// Canonical representative of x mod N. Throws InvalidInput if N < 1.
Residue canonicalize(Int x, Int modulus);

/// True iff gcd(d, N) = 1, i.e. d generates Z/N additively.
bool is_unit(const Residue& d);

/// All units of Z/N in ascending order.
std::vector<Int> units_of(Int modulus);

enum class Parity { Even, Odd };

/// A problem instance: modulus N, pair count n, and an ordered list of n unit
/// differences. For even N = 2n the partition target is all of Z/N; for odd
/// N = 2n+1 it is Z/N minus 0.
///
/// Construct through validate_instance; the fields are plain data after that.
struct Instance {
    Int modulus = 2;                   // N
    Int pair_count = 1;                // n = floor(N/2)
    Parity parity = Parity::Even;
    std::vector<Residue> differences;  // size n, each a unit mod N

    bool is_even() const { return parity == Parity::Even; }
    /// Number of elements the partition must cover (always 2n).
    Int target_size() const { return 2 * pair_count; }
    /// True iff v belongs to the partition target set.
    bool target_contains(Int v) const {
        return v >= 0 && v < modulus && (is_even() || v != 0);
    }
    /// Smallest element of the target set (0 for even N, 1 for odd N).
    Int target_first() const { return is_even() ? 0 : 1; }
};

/// Validates and canonicalizes raw input into an Instance.
///
/// Rejects N < 2 or N > 2^31 (invalid modulus), a difference list whose length
/// is not floor(N/2) (the message names the expected n), and any non-unit
/// difference (the message names the offending 1-based index).
Instance validate_instance(Int N, const std::vector<Int>& ds);

/// Which directed difference of the pair {a, b} equals the annotated d:
/// AMinusB means a - b = d, BMinusA means b - a = d (mod N).
enum class Orientation { AMinusB, BMinusA };

/// One pair of the partition, annotated with the input difference it realizes.
/// realized_index is a 0-based position into Instance::differences.
struct Pair {
    Residue a;
    Residue b;
    std::size_t realized_index = 0;
    Orientation orientation = Orientation::AMinusB;
};

struct PairPartition {
    Instance instance;
    std::vector<Pair> pairs;
};

/// Canonical representative of the difference class {d, N-d} of a pair:
/// min((a-b) mod N, (b-a) mod N). Symmetric in its arguments.
Residue diff_class(const Residue& a, const Residue& b);

struct VerificationFailure {
    enum class Kind {
        WrongPairCount,
        ElementMissing,
        ElementRepeated,
        ElementOutsideTarget,
        DifferenceMismatch,
        IndexNotPermutation,
    };
    Kind kind;
    Int element = -1;            // offending residue value, where applicable
    std::size_t pair_index = 0;  // 0-based pair position, where applicable
    std::string detail;
};

/// Outcome of verify_partition. valid holds iff failures is empty.
struct VerificationReport {
    bool valid = false;
    std::vector<VerificationFailure> failures;
};

const char* to_string(VerificationFailure::Kind kind);

/// The trust anchor: checks all structural conditions of a partition and
/// reports every violation instead of throwing.
///
///   - the elements of the pairs cover the target set exactly once each,
///   - realized_index values form a permutation of the difference positions,
///   - each pair's annotated difference holds in its annotated orientation.
///
/// Never mutates the input; total for every input.
VerificationReport verify_partition(const PairPartition& p);

} // namespace seatcouples

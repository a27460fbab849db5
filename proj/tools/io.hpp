#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "seatcouples/oracle.hpp"
#include "seatcouples/solver.hpp"

namespace seatcouples::io {

using Json = nlohmann::ordered_json;

/// Parses an instance from either whitespace-separated tokens "N d1 ... dn"
/// or a JSON document {"N": int, "differences": [int, ...]}; the input is
/// validated and canonicalized either way. Malformed input throws
/// InvalidInput naming the offending position or field.
Instance parse_instance(const std::string& text);

/// Parses the solve output schema back into an annotated partition so it can
/// be re-verified. The instance comes from the caller (the schema does not
/// repeat the differences); a contradicting "N" field is rejected.
AssignedPartition parse_partition(const Instance& inst, const std::string& text);

/// Solve output: {"N", "pairs", "realizes", "signs", "seed"}. Field order is
/// fixed and the serialization is byte-stable for a fixed seed. "realizes"
/// entries are 1-based positions into the input differences; "signs" is
/// indexed by those same positions (entry k is the sign of d_{k+1}).
Json solve_json(const AssignedPartition& result, std::uint64_t seed);

/// Verify output: {"valid", "failures": [{"kind", "element", "pair_index",
/// "detail"}]}. element is -1 and pair_index 0 where not applicable;
/// pair_index is 0-based into the "pairs" array.
Json verify_json(const VerificationReport& report);

Json count_json(std::uint64_t count);

/// Explore output: {"examined": [{"N", "instances", "millis"}], "failures":
/// [{"N", "differences"}], "total_instances", "total_millis"}.
Json explore_json(const ExplorationReport& report);

std::string solve_text(const AssignedPartition& result, std::uint64_t seed);
std::string verify_text(const VerificationReport& report);
std::string count_text(std::uint64_t count);
std::string explore_text(const ExplorationReport& report);

} // namespace seatcouples::io

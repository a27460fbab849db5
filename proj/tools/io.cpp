#include "io.hpp"

#include <cctype>
#include <sstream>

namespace seatcouples::io {

namespace {

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            return c == '{';
        }
    }
    return false;
}

Int int_field(const Json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw InvalidInput(std::string("missing field \"") + key + "\"");
    }
    const Json& field = doc.at(key);
    if (!field.is_number_integer()) {
        throw InvalidInput(std::string("field \"") + key +
                           "\" must be an integer");
    }
    return field.get<Int>();
}

Json parse_json(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw InvalidInput("malformed JSON document");
    }
    return doc;
}

} // namespace

Instance parse_instance(const std::string& text) {
    Int N = 0;
    std::vector<Int> ds;
    if (looks_like_json(text)) {
        Json doc = parse_json(text);
        N = int_field(doc, "N");
        if (!doc.contains("differences") || !doc.at("differences").is_array()) {
            throw InvalidInput("field \"differences\" must be an array");
        }
        for (const Json& entry : doc.at("differences")) {
            if (!entry.is_number_integer()) {
                throw InvalidInput("field \"differences\" must hold integers");
            }
            ds.push_back(entry.get<Int>());
        }
    } else {
        std::istringstream in(text);
        if (!(in >> N)) {
            throw InvalidInput("parse error at token 1: expected integer N");
        }
        Int d = 0;
        while (in >> d) {
            ds.push_back(d);
        }
        if (!in.eof()) {
            std::ostringstream msg;
            msg << "parse error at token " << (ds.size() + 2)
                << ": expected integer difference";
            throw InvalidInput(msg.str());
        }
    }
    return validate_instance(N, ds);
}

AssignedPartition parse_partition(const Instance& inst, const std::string& text) {
    Json doc = parse_json(text);
    if (doc.contains("N") && int_field(doc, "N") != inst.modulus) {
        std::ostringstream msg;
        msg << "partition N=" << int_field(doc, "N")
            << " does not match instance N=" << inst.modulus;
        throw InvalidInput(msg.str());
    }
    for (const char* key : {"pairs", "realizes", "signs"}) {
        if (!doc.contains(key) || !doc.at(key).is_array()) {
            throw InvalidInput(std::string("field \"") + key +
                               "\" must be an array");
        }
    }
    const Json& pairs = doc.at("pairs");
    const Json& realizes = doc.at("realizes");
    const Json& signs = doc.at("signs");
    if (realizes.size() != pairs.size()) {
        throw InvalidInput("\"realizes\" must be parallel to \"pairs\"");
    }

    std::vector<int> sign_of;
    sign_of.reserve(signs.size());
    for (const Json& s : signs) {
        if (!s.is_number_integer() ||
            (s.get<Int>() != 1 && s.get<Int>() != -1)) {
            throw InvalidInput("\"signs\" entries must be +1 or -1");
        }
        sign_of.push_back(static_cast<int>(s.get<Int>()));
    }

    AssignedPartition result;
    result.partition.instance = inst;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const Json& entry = pairs.at(k);
        if (!entry.is_array() || entry.size() != 2 ||
            !entry.at(0).is_number_integer() ||
            !entry.at(1).is_number_integer()) {
            std::ostringstream msg;
            msg << "pair " << (k + 1) << " must be a two-element integer array";
            throw InvalidInput(msg.str());
        }
        if (!realizes.at(k).is_number_integer() || realizes.at(k).get<Int>() < 1) {
            std::ostringstream msg;
            msg << "\"realizes\" entry " << (k + 1) << " must be a 1-based index";
            throw InvalidInput(msg.str());
        }
        Pair pair;
        pair.a = Residue(entry.at(0).get<Int>(), inst.modulus);
        pair.b = Residue(entry.at(1).get<Int>(), inst.modulus);
        pair.realized_index =
            static_cast<std::size_t>(realizes.at(k).get<Int>() - 1);
        // Orientation is carried by the sign of the realized difference; an
        // out-of-range index keeps the default and is reported by verify.
        if (pair.realized_index < sign_of.size()) {
            pair.orientation = sign_of[pair.realized_index] > 0
                                   ? Orientation::AMinusB
                                   : Orientation::BMinusA;
        }
        result.partition.pairs.push_back(pair);
    }
    result.signs.signs = sign_of;
    for (std::size_t j = 0; j < sign_of.size(); ++j) {
        if (sign_of[j] > 0) {
            result.signs.witness_set.push_back(j);
        }
    }
    return result;
}

Json solve_json(const AssignedPartition& result, std::uint64_t seed) {
    Json doc;
    doc["N"] = result.partition.instance.modulus;
    Json pairs = Json::array();
    Json realizes = Json::array();
    for (const Pair& pair : result.partition.pairs) {
        pairs.push_back({pair.a.value(), pair.b.value()});
        realizes.push_back(pair.realized_index + 1);
    }
    doc["pairs"] = std::move(pairs);
    doc["realizes"] = std::move(realizes);
    doc["signs"] = result.signs.signs;
    doc["seed"] = seed;
    return doc;
}

Json verify_json(const VerificationReport& report) {
    Json doc;
    doc["valid"] = report.valid;
    Json failures = Json::array();
    for (const VerificationFailure& f : report.failures) {
        Json entry;
        entry["kind"] = to_string(f.kind);
        entry["element"] = f.element;
        entry["pair_index"] = f.pair_index;
        entry["detail"] = f.detail;
        failures.push_back(std::move(entry));
    }
    doc["failures"] = std::move(failures);
    return doc;
}

Json count_json(std::uint64_t count) {
    Json doc;
    doc["count"] = count;
    return doc;
}

Json explore_json(const ExplorationReport& report) {
    Json doc;
    Json examined = Json::array();
    for (const auto& row : report.examined) {
        Json entry;
        entry["N"] = row.N;
        entry["instances"] = row.instances;
        entry["millis"] = row.millis;
        examined.push_back(std::move(entry));
    }
    doc["examined"] = std::move(examined);
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json entry;
        entry["N"] = f.N;
        entry["differences"] = f.differences;
        failures.push_back(std::move(entry));
    }
    doc["failures"] = std::move(failures);
    doc["total_instances"] = report.total_instances;
    doc["total_millis"] = report.total_millis;
    return doc;
}

std::string solve_text(const AssignedPartition& result, std::uint64_t seed) {
    const Instance& inst = result.partition.instance;
    std::ostringstream out;
    out << "N = " << inst.modulus << "\n";
    for (const Pair& pair : result.partition.pairs) {
        const std::size_t j = pair.realized_index;
        out << "  {" << pair.a.value() << ", " << pair.b.value() << "}"
            << "  d" << (j + 1);
        if (j < inst.differences.size()) {
            out << " = " << inst.differences[j].value();
        }
        out << "  ["
            << (pair.orientation == Orientation::AMinusB ? "a-b" : "b-a")
            << "]\n";
    }
    out << "seed = " << seed << "\n";
    return out.str();
}

std::string verify_text(const VerificationReport& report) {
    std::ostringstream out;
    if (report.valid) {
        out << "valid\n";
    } else {
        out << "invalid (" << report.failures.size() << " failure"
            << (report.failures.size() == 1 ? "" : "s") << ")\n";
        for (const VerificationFailure& f : report.failures) {
            out << "  - " << f.detail << "\n";
        }
    }
    return out.str();
}

std::string count_text(std::uint64_t count) {
    std::ostringstream out;
    out << count << "\n";
    return out.str();
}

std::string explore_text(const ExplorationReport& report) {
    std::ostringstream out;
    for (const auto& row : report.examined) {
        out << "N=" << row.N << "  instances=" << row.instances << "  ("
            << row.millis << " ms)\n";
    }
    for (const auto& f : report.failures) {
        out << "COUNTEREXAMPLE: N=" << f.N << " ds=[";
        for (std::size_t i = 0; i < f.differences.size(); ++i) {
            out << (i ? ", " : "") << f.differences[i];
        }
        out << "] admits no partition\n";
    }
    out << "total: " << report.total_instances << " instances, "
        << report.failures.size() << " failures, " << report.total_millis
        << " ms\n";
    return out.str();
}

} // namespace seatcouples::io

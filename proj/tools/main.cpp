#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"

namespace {

using namespace seatcouples;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitWrongParity = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitInternal = 4;
constexpr int kExitCounterexample = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_stdin() {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

/// Instance source shared by the instance-taking verbs: either inline
/// integers "N d1 ... dn" or -f FILE holding the text or JSON form.
struct InstanceArgs {
    std::vector<Int> tokens;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("instance", tokens,
                        "instance as integers: N d1 ... dn");
        cmd->add_option("-f,--file", file,
                        "read the instance from FILE (text or JSON form)");
    }

    Instance resolve() const {
        if (!file.empty()) {
            if (!tokens.empty()) {
                throw InvalidInput(
                    "give the instance inline or via --file, not both");
            }
            return io::parse_instance(read_file(file));
        }
        if (tokens.empty()) {
            throw InvalidInput("no instance given: pass N d1 ... dn or --file");
        }
        return validate_instance(
            tokens[0], std::vector<Int>(tokens.begin() + 1, tokens.end()));
    }
};

Int env_oracle_bound() {
    const char* env = std::getenv("SEATCOUPLES_ORACLE_BOUND");
    if (env == nullptr || *env == '\0') {
        return kOracleSolveBound;
    }
    std::istringstream in(env);
    Int bound = 0;
    char trailing = '\0';
    if (!(in >> bound) || in.get(trailing) || bound < 2) {
        throw InvalidInput(
            std::string("SEATCOUPLES_ORACLE_BOUND must be an integer >= 2, got \"") +
            env + "\"");
    }
    return bound;
}

void emit(const io::Json& doc, const std::string& text, bool json) {
    if (json) {
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << text;
    }
}

std::string instance_summary(const Instance& inst) {
    std::ostringstream out;
    out << "N=" << inst.modulus << " ds=[";
    for (std::size_t i = 0; i < inst.differences.size(); ++i) {
        out << (i ? "," : "") << inst.differences[i].value();
    }
    out << "]";
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "seatcouples: partition Z/N into pairs with prescribed unit "
        "differences"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::uint64_t seed = 0;
    InstanceArgs solve_args, verify_args, count_args, oracle_args;
    std::string partition_file;
    Int oracle_bound = -1; // -1 = env or built-in default
    ExploreOptions explore_opts;
    bool explore_even = false;
    bool explore_odd = false;

    CLI::App* solve_cmd = app.add_subcommand(
        "solve", "construct a verified partition (even N)");
    solve_args.attach(solve_cmd);
    solve_cmd->add_option("--seed", seed, "search seed")->capture_default_str();

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "check a partition (solve's JSON schema) against an instance");
    verify_args.attach(verify_cmd);
    verify_cmd->add_option("-p,--partition", partition_file,
                           "partition JSON file (default: stdin)");

    CLI::App* count_cmd = app.add_subcommand(
        "count", "count partitions by exhaustive enumeration");
    count_args.attach(count_cmd);
    count_cmd->add_option("--oracle-bound", oracle_bound,
                          "largest N the exhaustive search accepts");

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-solve", "find a partition by exhaustive search (any parity)");
    oracle_args.attach(oracle_cmd);
    oracle_cmd->add_option("--oracle-bound", oracle_bound,
                           "largest N the exhaustive search accepts");
    oracle_cmd->add_option("--seed", seed, "echoed in the output schema")
        ->capture_default_str();

    CLI::App* explore_cmd = app.add_subcommand(
        "explore", "exhaustively sweep all instances for a range of N");
    explore_cmd->add_option("from", explore_opts.from, "first N")
        ->capture_default_str();
    explore_cmd->add_option("to", explore_opts.to, "last N")
        ->capture_default_str();
    CLI::Option* even_flag =
        explore_cmd->add_flag("--even", explore_even, "even N only");
    CLI::Option* odd_flag =
        explore_cmd->add_flag("--odd", explore_odd, "odd N only");
    even_flag->excludes(odd_flag);
    explore_cmd->add_option("--even-bound", explore_opts.even_bound,
                            "largest even N the sweep accepts")
        ->capture_default_str();
    explore_cmd->add_option("--odd-bound", explore_opts.odd_bound,
                            "largest odd N the sweep accepts")
        ->capture_default_str();
    explore_cmd->add_option("-j,--jobs", explore_opts.jobs,
                            "worker threads (0 = all cores)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    const bool json = format == "json";
    try {
        if (oracle_bound < 0) {
            oracle_bound = env_oracle_bound();
        }

        if (*solve_cmd) {
            const Instance inst = solve_args.resolve();
            SearchConfig cfg;
            cfg.seed = seed;
            const AssignedPartition result = solve(inst, cfg);
            emit(io::solve_json(result, seed), io::solve_text(result, seed),
                 json);
            return kExitOk;
        }

        if (*verify_cmd) {
            const Instance inst = verify_args.resolve();
            const std::string text = partition_file.empty()
                                         ? read_stdin()
                                         : read_file(partition_file);
            const AssignedPartition parsed = io::parse_partition(inst, text);
            const VerificationReport report =
                verify_partition(parsed.partition);
            emit(io::verify_json(report), io::verify_text(report), json);
            return report.valid ? kExitOk : kExitInvalidInput;
        }

        if (*count_cmd) {
            const Instance inst = count_args.resolve();
            const std::uint64_t count = oracle_count(inst, oracle_bound);
            emit(io::count_json(count), io::count_text(count), json);
            return kExitOk;
        }

        if (*oracle_cmd) {
            const Instance inst = oracle_args.resolve();
            std::optional<PairPartition> found =
                oracle_solve(inst, oracle_bound);
            if (!found) {
                if (inst.is_even()) {
                    // Even instances always have a partition; an exhausted
                    // search means the oracle itself is broken.
                    throw InternalError(
                        "exhaustive search found no partition for even " +
                        instance_summary(inst));
                }
                std::cerr << "CONJECTURE COUNTEREXAMPLE: "
                          << instance_summary(inst)
                          << " admits no partition\n";
                return kExitCounterexample;
            }
            const AssignedPartition result =
                annotate_oracle_partition(std::move(*found));
            emit(io::solve_json(result, seed), io::solve_text(result, seed),
                 json);
            return kExitOk;
        }

        if (*explore_cmd) {
            if (explore_even) {
                explore_opts.parity = Parity::Even;
            }
            if (explore_odd) {
                explore_opts.parity = Parity::Odd;
            }
            const ExplorationReport report = explore(explore_opts);
            emit(io::explore_json(report), io::explore_text(report), json);
            return report.failures.empty() ? kExitOk : kExitCounterexample;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const WrongParity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitWrongParity;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const Error& e) {
        // ContractViolation and InternalError: theorem-contradicting events.
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

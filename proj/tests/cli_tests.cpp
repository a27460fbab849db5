// End-to-end tests driving the installed CLI binary through a shell.
// The binary path arrives via the SEATCOUPLES_CLI environment variable.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string g_cli;
int g_failures = 0;
int g_checks = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& command) {
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        std::cerr << "popen failed for: " << command << "\n";
        std::exit(2);
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        result.output.append(buf, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void check(bool ok, const std::string& label, const std::string& detail) {
    ++g_checks;
    if (ok) {
        std::cout << "ok - " << label << "\n";
    } else {
        ++g_failures;
        std::cout << "FAIL - " << label << "\n" << detail << "\n";
    }
}

void expect_exit(const std::string& label, const std::string& command,
                 int want_exit) {
    RunResult r = run(command);
    check(r.exit_code == want_exit, label,
          "  command: " + command + "\n  expected exit " +
              std::to_string(want_exit) + ", got " +
              std::to_string(r.exit_code) + "\n  output: " + r.output);
}

void expect_output(const std::string& label, const std::string& command,
                   const std::string& want_output, int want_exit = 0) {
    RunResult r = run(command);
    check(r.exit_code == want_exit && r.output == want_output, label,
          "  command: " + command + "\n  expected exit " +
              std::to_string(want_exit) + ", got " +
              std::to_string(r.exit_code) + "\n  expected output: <<<" +
              want_output + ">>>\n  actual output:   <<<" + r.output + ">>>");
}

void expect_contains(const std::string& label, const std::string& command,
                     const std::vector<std::string>& needles,
                     int want_exit = 0) {
    RunResult r = run(command);
    bool ok = r.exit_code == want_exit;
    std::string missing;
    for (const std::string& needle : needles) {
        if (r.output.find(needle) == std::string::npos) {
            ok = false;
            missing += "  missing: <<<" + needle + ">>>\n";
        }
    }
    check(ok, label,
          "  command: " + command + "\n  expected exit " +
              std::to_string(want_exit) + ", got " +
              std::to_string(r.exit_code) + "\n" + missing + "  output: " +
              r.output);
}

std::string temp_path(const std::string& name) {
    return "/tmp/seatcouples_cli_" + std::to_string(getpid()) + "_" + name;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(2);
    }
}

} // namespace

int main() {
    const char* cli = std::getenv("SEATCOUPLES_CLI");
    if (cli == nullptr || *cli == '\0') {
        std::cerr << "SEATCOUPLES_CLI must point at the CLI binary\n";
        return 2;
    }
    g_cli = std::string("\"") + cli + "\"";
    const std::string quiet = " 2>/dev/null";

    // --- frozen JSON outputs at seed 0 -----------------------------------
    expect_output("solve 6 1 5 1 frozen bytes", g_cli + " solve 6 1 5 1",
                  "{\"N\":6,\"pairs\":[[2,3],[4,5],[0,1]],\"realizes\":[2,3,1],"
                  "\"signs\":[-1,1,-1],\"seed\":0}\n");
    expect_output("solve 2 1 frozen bytes", g_cli + " solve 2 1",
                  "{\"N\":2,\"pairs\":[[0,1]],\"realizes\":[1],\"signs\":[1],"
                  "\"seed\":0}\n");
    expect_output("solve 4 1 3 frozen bytes", g_cli + " solve 4 1 3",
                  "{\"N\":4,\"pairs\":[[2,1],[0,3]],\"realizes\":[2,1],"
                  "\"signs\":[1,-1],\"seed\":0}\n");
    expect_output("solve 8 1 3 5 7 frozen bytes", g_cli + " solve 8 1 3 5 7",
                  "{\"N\":8,\"pairs\":[[2,5],[4,3],[6,1],[0,7]],"
                  "\"realizes\":[2,4,3,1],\"signs\":[1,-1,1,-1],\"seed\":0}\n");
    expect_output("oracle-solve 4 1 1 frozen bytes",
                  g_cli + " oracle-solve 4 1 1",
                  "{\"N\":4,\"pairs\":[[0,1],[2,3]],\"realizes\":[1,2],"
                  "\"signs\":[-1,-1],\"seed\":0}\n");
    expect_output("oracle-solve 3 1 frozen bytes", g_cli + " oracle-solve 3 1",
                  "{\"N\":3,\"pairs\":[[1,2]],\"realizes\":[1],\"signs\":[-1],"
                  "\"seed\":0}\n");
    expect_output("count 4 1 1 frozen bytes", g_cli + " count 4 1 1",
                  "{\"count\":2}\n");
    expect_output("count 13 1 2 3 4 5 6 frozen bytes",
                  g_cli + " count 13 1 2 3 4 5 6", "{\"count\":133}\n");

    // --- determinism -------------------------------------------------------
    {
        const std::string cmd =
            g_cli + " solve 50 1 3 7 9 11 13 17 19 21 23 27 29 31 33 37 39 41"
                    " 43 47 49 1 3 7 9 11";
        RunResult a = run(cmd);
        RunResult b = run(cmd);
        check(a.exit_code == 0 && b.exit_code == 0 && a.output == b.output,
              "repeated runs emit identical bytes",
              "  exits: " + std::to_string(a.exit_code) + ", " +
                  std::to_string(b.exit_code) + "\n  a: " + a.output +
                  "  b: " + b.output);
    }
    expect_contains("--seed is echoed in the schema",
                    g_cli + " solve 6 1 5 1 --seed 7", {"\"seed\":7"});

    // --- solve | verify round trips ---------------------------------------
    expect_contains("solve output verifies against its instance",
                    g_cli + " solve 6 1 5 1 | " + g_cli + " verify 6 1 5 1",
                    {"\"valid\":true", "\"failures\":[]"});
    expect_contains("seeded solve verifies too",
                    g_cli + " solve 30 1 7 11 13 17 19 23 29 1 7 11 13 17 19"
                            " 23 --seed 9 | " +
                        g_cli + " verify 30 1 7 11 13 17 19 23 29 1 7 11 13"
                                " 17 19 23",
                    {"\"valid\":true"});
    expect_contains("oracle-solve output verifies",
                    g_cli + " oracle-solve 8 1 3 5 7 | " + g_cli +
                        " verify 8 1 3 5 7",
                    {"\"valid\":true"});
    expect_contains(
        "broken partition is rejected with details",
        "printf '%s' "
        "'{\"N\":4,\"pairs\":[[0,1],[1,2]],\"realizes\":[1,2],\"signs\":[1,1]}'"
        " | " + g_cli + " verify 4 1 1",
        {"\"valid\":false", "element-repeated", "element-missing",
         "difference-mismatch"},
        1);
    expect_exit("partition against the wrong instance",
                g_cli + " solve 6 1 5 1 | " + g_cli + " verify 4 1 1" + quiet,
                1);
    expect_exit("malformed partition JSON",
                "printf 'not json' | " + g_cli + " verify 4 1 1" + quiet, 1);

    // --- verify from a file -------------------------------------------------
    {
        const std::string partition = temp_path("partition.json");
        RunResult solved = run(g_cli + " solve 6 1 5 1 > " + partition +
                               " && printf done");
        check(solved.exit_code == 0, "solve output lands in a file",
              "  output: " + solved.output);
        expect_contains("verify -p reads the file",
                        g_cli + " verify 6 1 5 1 -p " + partition,
                        {"\"valid\":true"});
        std::remove(partition.c_str());
    }

    // --- instance files -----------------------------------------------------
    {
        const std::string text_file = temp_path("instance.txt");
        const std::string json_file = temp_path("instance.json");
        write_file(text_file, "6 1 5 1\n");
        write_file(json_file, "{\"N\": 6, \"differences\": [1, 5, 1]}\n");
        RunResult inline_run = run(g_cli + " solve 6 1 5 1");
        RunResult text_run = run(g_cli + " solve -f " + text_file);
        RunResult json_run = run(g_cli + " solve -f " + json_file);
        check(text_run.exit_code == 0 && text_run.output == inline_run.output,
              "text instance file matches inline",
              "  inline: " + inline_run.output + "  file:   " +
                  text_run.output);
        check(json_run.exit_code == 0 && json_run.output == inline_run.output,
              "JSON instance file matches inline",
              "  inline: " + inline_run.output + "  file:   " +
                  json_run.output);
        expect_exit("inline and --file together are rejected",
                    g_cli + " solve 6 1 5 1 -f " + text_file + quiet, 1);
        std::remove(text_file.c_str());
        std::remove(json_file.c_str());
    }

    // --- explore ------------------------------------------------------------
    expect_contains("explore --odd 3 9 sweeps clean",
                    g_cli + " explore --odd 3 9",
                    {"\"failures\":[]", "\"total_instances\":194"});
    expect_contains("explore defaults cover 2..12",
                    g_cli + " explore --even 2 8 -j 2",
                    {"\"failures\":[]", "\"total_instances\":43"});
    expect_exit("explore --even and --odd conflict",
                g_cli + " explore --even --odd 3 9" + quiet, 1);
    expect_exit("explore beyond the even sweep bound",
                g_cli + " explore --even 2 26" + quiet, 3);
    expect_exit("explore beyond the odd sweep bound",
                g_cli + " explore --odd 3 17" + quiet, 3);
    expect_exit("explore with a backwards range",
                g_cli + " explore 9 4" + quiet, 1);

    // --- text format ----------------------------------------------------------
    expect_output("text solve output", g_cli + " --format text solve 6 1 5 1",
                  "N = 6\n"
                  "  {2, 3}  d2 = 5  [a-b]\n"
                  "  {4, 5}  d3 = 1  [b-a]\n"
                  "  {0, 1}  d1 = 1  [b-a]\n"
                  "seed = 0\n");
    expect_output("text count output", g_cli + " --format text count 4 1 1",
                  "2\n");
    expect_output("text verify output",
                  g_cli + " solve 6 1 5 1 | " + g_cli +
                      " --format text verify 6 1 5 1",
                  "valid\n");
    expect_contains("text explore output",
                    g_cli + " --format text explore --odd 3 5",
                    {"N=3  instances=2", "N=5  instances=10",
                     "total: 12 instances, 0 failures"});
    expect_exit("unknown format is rejected",
                g_cli + " --format yaml solve 6 1 5 1" + quiet, 1);

    // --- exit codes -----------------------------------------------------------
    expect_exit("solve on an odd instance", g_cli + " solve 9 1 2 4 8" + quiet,
                2);
    expect_exit("non-unit difference", g_cli + " solve 4 1 2" + quiet, 1);
    expect_exit("count beyond the oracle bound",
                g_cli + " count 40 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1" +
                    quiet,
                3);
    expect_exit("environment variable lowers the bound",
                "SEATCOUPLES_ORACLE_BOUND=8 " + g_cli + " count 10 1 1 1 1 1" +
                    quiet,
                3);
    expect_exit("garbage environment bound",
                "SEATCOUPLES_ORACLE_BOUND=abc " + g_cli + " count 4 1 1" +
                    quiet,
                1);
    expect_output("--oracle-bound overrides the environment",
                  "SEATCOUPLES_ORACLE_BOUND=8 " + g_cli +
                      " count --oracle-bound 31 10 1 1 1 1 1",
                  "{\"count\":2}\n");
    expect_exit("missing instance", g_cli + " solve" + quiet, 1);
    expect_exit("unknown flag", g_cli + " solve --bogus 6 1 5 1" + quiet, 1);
    expect_exit("unknown subcommand", g_cli + " frobnicate" + quiet, 1);
    expect_exit("no subcommand", g_cli + quiet, 1);
    expect_exit("--help exits cleanly", g_cli + " --help >/dev/null", 0);
    expect_exit("solve --help exits cleanly",
                g_cli + " solve --help >/dev/null", 0);

    std::cout << g_checks - g_failures << "/" << g_checks << " checks passed\n";
    return g_failures == 0 ? 0 : 1;
}

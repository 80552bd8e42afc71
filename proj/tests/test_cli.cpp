#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qcav/cli/commands.hpp"
#include "qcav/sig/signature.hpp"
#include "qcav/version.hpp"

namespace cli = qcav::cli;
namespace sig = qcav::sig;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  argv.push_back("qcav");
  for (const std::string &arg : args)
    argv.push_back(arg.c_str());
  std::ostringstream out, err;
  CliResult result;
  result.code =
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

// Scratch directory shared by the whole binary; fresh content per run.
fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("qcav_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string gen_file(const std::string &family, int k,
                     const std::string &qubits, const std::string &name) {
  fs::path path = scratch_dir() / name;
  CliResult r = run_cli({"gen", "--family", family, "--k", std::to_string(k),
                         "--delay", "1", "--qubits", qubits, "--out",
                         path.string()});
  REQUIRE(r.code == 0);
  return path.string();
}

std::string write_file(const std::string &name, const std::string &text) {
  fs::path path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string data_path(const std::string &rel) {
  return std::string(QCAV_DATA_DIR) + "/" + rel;
}

int count_lines(const std::string &text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n')
      ++lines;
  return lines;
}

} // namespace

TEST_CASE("scan exit codes follow the verdict ladder") {
  std::string k1 = gen_file("cx-delay", 1, "2,3", "k1.qasm");
  std::string k7 = gen_file("cx-delay", 7, "2,3", "k7.qasm");
  std::string k12 = gen_file("cx-delay", 12, "2,3", "k12.qasm");
  CHECK(run_cli({"scan", k1}).code == cli::exit_clean);
  CHECK(run_cli({"scan", k7}).code == cli::exit_suspicious);
  CHECK(run_cli({"scan", k12}).code == cli::exit_malicious);

  CliResult r = run_cli({"scan", k12});
  CHECK(r.out.find("MALICIOUS") != std::string::npos);
  CHECK(r.out.find("cx-delay") != std::string::npos);
  CHECK(r.out.find("a=q[2] b=q[3]") != std::string::npos);
  CHECK(r.out.find("k=12") != std::string::npos);
}

TEST_CASE("multi-file scan exits with the maximum severity in argv order") {
  std::string k1 = gen_file("cx-delay", 1, "2,3", "m_k1.qasm");
  std::string k7 = gen_file("cx-delay", 7, "2,3", "m_k7.qasm");
  std::string k12 = gen_file("cx-delay", 12, "2,3", "m_k12.qasm");
  CliResult r = run_cli({"scan", k12, k1, k7});
  CHECK(r.code == cli::exit_malicious);
  std::size_t p12 = r.out.find("m_k12.qasm");
  std::size_t p1 = r.out.find("m_k1.qasm");
  std::size_t p7 = r.out.find("m_k7.qasm");
  REQUIRE(p12 != std::string::npos);
  REQUIRE(p1 != std::string::npos);
  REQUIRE(p7 != std::string::npos);
  CHECK(p12 < p1);
  CHECK(p1 < p7);

  // a failing file dominates the verdict codes
  CliResult bad = run_cli({"scan", k12, (scratch_dir() / "nope.qasm").string()});
  CHECK(bad.code == cli::exit_input_error);
  CHECK(bad.out.find("error") != std::string::npos);
}

TEST_CASE("parse failures exit 3 with a located message") {
  std::string bad = write_file("bad.qasm", "OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n");
  CliResult r = run_cli({"scan", bad});
  CHECK(r.code == cli::exit_input_error);
  CHECK(r.out.find("3:1") != std::string::npos);

  std::string no_header = write_file("no_header.qasm", "qreg q[2];\n");
  CHECK(run_cli({"scan", no_header}).code == cli::exit_input_error);
}

TEST_CASE("json report carries the schema, tool version and full runs") {
  std::string k12 = gen_file("cx-delay", 12, "2,3", "j_k12.qasm");
  std::string clean = gen_file("cx-delay", 0, "2,3", "j_clean.qasm");
  CliResult r = run_cli({"scan", "--format", "json", k12, clean});
  CHECK(r.code == cli::exit_malicious);

  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == qcav::report_schema_version);
  CHECK(doc["tool_version"] == std::string(qcav::version_string));
  REQUIRE(doc["files"].size() == 2);

  const auto &first = doc["files"][0];
  CHECK(first["path"] == k12);
  CHECK(first["verdict"] == "MALICIOUS");
  REQUIRE(first["runs"].size() == 1);
  const auto &run = first["runs"][0];
  CHECK(run["signature_id"] == "cx-delay");
  CHECK(run["binding"]["a"] == 2);
  CHECK(run["binding"]["b"] == 3);
  CHECK(run["k"] == 12);
  REQUIRE(run["source_locations"].size() == 12);
  CHECK(run["source_locations"][0].contains("line"));
  CHECK(first["per_signature_counts"]["cx-delay"]["occurrences"] == 1);
  CHECK(first["per_signature_counts"]["cx-delay"]["max_k"] == 12);

  const auto &second = doc["files"][1];
  CHECK(second["verdict"] == "CLEAN");
  CHECK(second["runs"].empty());

  // key order is pinned
  std::size_t schema_pos = r.out.find("schema_version");
  std::size_t tool_pos = r.out.find("tool_version");
  std::size_t files_pos = r.out.find("\"files\"");
  CHECK(schema_pos < tool_pos);
  CHECK(tool_pos < files_pos);
}

TEST_CASE("failed files appear in json with an error entry") {
  CliResult r = run_cli({"scan", "--format", "json",
                         (scratch_dir() / "ghost.qasm").string()});
  CHECK(r.code == cli::exit_input_error);
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["files"].size() == 1);
  CHECK(doc["files"][0].contains("error"));
  CHECK(!doc["files"][0].contains("verdict"));
}

TEST_CASE("threshold overrides re-grade the same file") {
  std::string k3 = gen_file("cx-delay", 3, "2,3", "t_k3.qasm");
  CHECK(run_cli({"scan", k3}).code == cli::exit_clean);
  CHECK(run_cli({"scan", "--suspicious-at", "3", k3}).code ==
        cli::exit_suspicious);
  CHECK(run_cli({"scan", "--suspicious-at", "2", "--malicious-at", "3", k3})
            .code == cli::exit_malicious);
  // override that violates suspicious_at <= malicious_at
  CliResult bad = run_cli({"scan", "--malicious-at", "3", k3});
  CHECK(bad.code == cli::exit_input_error);
  CHECK(bad.err.find("BadThresholds") != std::string::npos);
}

TEST_CASE("explicit signature file matches the built-in database") {
  std::string k12 = gen_file("cx-delay", 12, "2,3", "s_k12.qasm");
  CliResult builtin = run_cli({"scan", k12});
  CliResult from_file =
      run_cli({"scan", "--signatures", data_path("signatures/default.sig"), k12});
  CHECK(builtin.code == from_file.code);
  // identical reports modulo nothing: same text
  CHECK(builtin.out == from_file.out);
}

TEST_CASE("shipped default.sig loads to exactly the built-in database") {
  CHECK(sig::load_database_file(data_path("signatures/default.sig")) ==
        sig::default_database());
}

TEST_CASE("no-canonicalize mode flags raw cx chains, default mode does not") {
  std::string chain = gen_file("cx-chain", 12, "2,3", "chain12.qasm");
  std::string diag = data_path("signatures/cx-chain.sig");
  CHECK(run_cli({"scan", "--signatures", diag, "--no-canonicalize", chain})
            .code == cli::exit_malicious);
  CHECK(run_cli({"scan", "--signatures", diag, chain}).code ==
        cli::exit_clean);
  // the default database stays quiet on chains either way
  CHECK(run_cli({"scan", chain}).code == cli::exit_clean);
  CHECK(run_cli({"scan", "--no-canonicalize", chain}).code == cli::exit_clean);
}

TEST_CASE("coupling map restricts bindings to device edges") {
  std::string on_edge = gen_file("cx-delay", 12, "2,3", "c_edge.qasm");
  std::string off_edge = gen_file("cx-delay", 12, "2,4", "c_far.qasm");
  std::string map = data_path("coupling/line5.map");
  CHECK(run_cli({"scan", "--coupling", map, on_edge}).code ==
        cli::exit_malicious);
  CHECK(run_cli({"scan", "--coupling", map, off_edge}).code ==
        cli::exit_clean);
  CHECK(run_cli({"scan", off_edge}).code == cli::exit_malicious);
  // map naming qubits outside the circuit's register is rejected
  std::string tiny = write_file("tiny.qasm",
                                "OPENQASM 2.0;\nqreg q[2];\nh q[0];\n");
  CHECK(run_cli({"scan", "--coupling", map, tiny}).code ==
        cli::exit_input_error);
}

TEST_CASE("sweep emits one line per k with the calibrated baseline first") {
  CliResult single = run_cli({"sweep", "--family", "cx-delay", "--k", "0..0"});
  CHECK(single.code == 0);
  CHECK(single.out == "0\t0.870000\n");

  CliResult range = run_cli({"sweep", "--family", "cx-delay", "--k", "0..300"});
  CHECK(range.code == 0);
  CHECK(count_lines(range.out) == 301);
  // last line sits in the saturation window
  std::size_t last_line = range.out.rfind("300\t");
  REQUIRE(last_line != std::string::npos);
  double last = std::stod(range.out.substr(last_line + 4));
  CHECK(last >= 0.18);
  CHECK(last <= 0.22);

  CliResult flat =
      run_cli({"sweep", "--family", "delay-only", "--k", "0..5"});
  CHECK(flat.code == 0);
  for (int k = 0; k <= 5; ++k)
    CHECK(flat.out.find(std::to_string(k) + "\t0.870000") != std::string::npos);
}

TEST_CASE("sweep --out writes the table to a file") {
  fs::path out = scratch_dir() / "sweep.tsv";
  CliResult r = run_cli({"sweep", "--family", "x-delay", "--k", "3..4",
                         "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(count_lines(buffer.str()) == 2);
}

TEST_CASE("sweep accepts noise overrides and rejects junk") {
  CliResult zeroed = run_cli({"sweep", "--family", "cx-delay", "--k", "0..0",
                              "--p-base", "0"});
  CHECK(zeroed.code == 0);
  CHECK(zeroed.out == "0\t1.000000\n");

  CHECK(run_cli({"sweep", "--family", "cx-delay", "--k", "0..0", "--gamma",
                 "1.5"})
            .code == cli::exit_input_error);
  CHECK(run_cli({"sweep", "--family", "warp", "--k", "0..0"}).code ==
        cli::exit_input_error);
  CHECK(run_cli({"sweep", "--family", "cx-delay", "--k", "5..1"}).code ==
        cli::exit_input_error);
  CHECK(run_cli({"sweep", "--family", "cx-delay", "--k", "abc"}).code ==
        cli::exit_input_error);
}

TEST_CASE("gen rejects bad placements with exit 3") {
  CHECK(run_cli({"gen", "--family", "cx-delay", "--k", "3", "--qubits", "1,2"})
            .code == cli::exit_input_error);
  CHECK(run_cli({"gen", "--family", "cx-delay", "--k", "3", "--qubits", "2"})
            .code == cli::exit_input_error);
  CHECK(run_cli({"gen", "--family", "x-delay", "--k", "3", "--qubits", "2,x"})
            .code == cli::exit_input_error);
  CHECK(run_cli({"gen", "--family", "nope", "--k", "3", "--qubits", "2"})
            .code == cli::exit_input_error);
}

TEST_CASE("gen to stdout equals gen --out file content") {
  CliResult direct = run_cli({"gen", "--family", "y-delay", "--k", "2",
                              "--delay", "9", "--qubits", "3"});
  CHECK(direct.code == 0);
  fs::path out = scratch_dir() / "y2.qasm";
  REQUIRE(run_cli({"gen", "--family", "y-delay", "--k", "2", "--delay", "9",
                   "--qubits", "3", "--out", out.string()})
              .code == 0);
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(direct.out == buffer.str());
  CHECK(direct.out.rfind("OPENQASM 2.0;\n", 0) == 0);
}

TEST_CASE("usage errors and help exit as documented") {
  CHECK(run_cli({}).code == cli::exit_input_error);
  CHECK(run_cli({"scan"}).code == cli::exit_input_error); // no files
  CHECK(run_cli({"frobnicate"}).code == cli::exit_input_error);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"scan", "--format", "yaml", "x.qasm"}).code ==
        cli::exit_input_error);
}

TEST_CASE("unreadable signature database exits 3 before any scanning") {
  std::string k1 = gen_file("cx-delay", 1, "2,3", "db_k1.qasm");
  CliResult r = run_cli({"scan", "--signatures",
                         (scratch_dir() / "ghost.sig").string(), k1});
  CHECK(r.code == cli::exit_input_error);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());

  std::string mangled = write_file("mangled.sig", "version x\nsignature s\nend\n");
  CHECK(run_cli({"scan", "--signatures", mangled, k1}).code ==
        cli::exit_input_error);
}

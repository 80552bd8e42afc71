#include "qcav/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcav/canon/canonicalizer.hpp"
#include "qcav/error.hpp"
#include "qcav/gen/fixture.hpp"
#include "qcav/ir/coupling_map.hpp"
#include "qcav/ir/lower.hpp"
#include "qcav/qasm/emitter.hpp"
#include "qcav/qasm/parser.hpp"
#include "qcav/report/render.hpp"
#include "qcav/scan/scanner.hpp"
#include "qcav/sig/signature.hpp"
#include "qcav/sim/crosstalk.hpp"

namespace qcav::cli {

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::FormatError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string &text, const std::string &out_path,
                  std::ostream &out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file)
    throw Error(ErrorKind::FormatError, "cannot write " + out_path);
  file << text;
}

int verdict_code(scan::Verdict verdict) {
  switch (verdict) {
  case scan::Verdict::CLEAN:
    return exit_clean;
  case scan::Verdict::SUSPICIOUS:
    return exit_suspicious;
  case scan::Verdict::MALICIOUS:
    return exit_malicious;
  }
  return exit_internal_error;
}

// "a..b" or a single "n"; both ends inclusive and bounded to keep sweeps sane.
std::pair<int, int> parse_k_range(const std::string &text) {
  auto bad = [&] {
    throw Error(ErrorKind::FormatError,
                "bad k range '" + text + "', expected N or A..B");
  };
  std::string lo = text, hi = text;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    lo = text.substr(0, dots);
    hi = text.substr(dots + 2);
  }
  int a = 0, b = 0;
  try {
    std::size_t used = 0;
    a = std::stoi(lo, &used);
    if (used != lo.size())
      bad();
    b = std::stoi(hi, &used);
    if (used != hi.size())
      bad();
  } catch (const std::exception &) {
    bad();
  }
  if (a < 0 || b < a || b > 100000)
    throw Error(ErrorKind::FormatError,
                "k range must satisfy 0 <= A <= B <= 100000");
  return {a, b};
}

std::vector<int> parse_qubit_list(const std::string &text) {
  std::vector<int> qubits;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      int q = std::stoi(item, &used);
      if (used != item.size())
        throw std::invalid_argument(item);
      qubits.push_back(q);
    } catch (const std::exception &) {
      throw Error(ErrorKind::FormatError,
                  "bad qubit list '" + text + "', expected e.g. 2,3");
    }
  }
  if (qubits.empty())
    throw Error(ErrorKind::FormatError, "qubit list is empty");
  return qubits;
}

sim::AttackFamily sweep_family(const std::string &token) {
  for (sim::AttackFamily f :
       {sim::AttackFamily::CX_DELAY, sim::AttackFamily::DELAY_ONLY,
        sim::AttackFamily::PAULI_X, sim::AttackFamily::PAULI_Y,
        sim::AttackFamily::PAULI_Z, sim::AttackFamily::PAULI_I})
    if (token == sim::family_name(f))
      return f;
  throw Error(ErrorKind::FormatError, "unknown family '" + token + "'");
}

struct ScanArgs {
  std::vector<std::string> files;
  std::string signatures_path;
  std::string coupling_path;
  std::string format = "text";
  int suspicious_at = 0; // 0 = keep the database's own thresholds
  int malicious_at = 0;
  bool no_canonicalize = false;
};

report::FileReport scan_one(const std::string &path,
                            const sig::SignatureDatabase &db,
                            const std::optional<ir::CouplingMap> &coupling,
                            bool no_canonicalize) {
  report::FileReport file;
  file.path = path;
  try {
    std::string source = read_file(path);
    ir::Circuit circuit = ir::lower(qasm::parse(source));
    canon::CanonicalCircuit canonical =
        no_canonicalize ? canon::CanonicalCircuit::assume_canonical(circuit)
                        : canon::canonicalize(circuit);
    file.report = scan::scan(canonical, db, coupling);
    file.ok = true;
  } catch (const Error &e) {
    file.error_message = e.what();
  }
  return file;
}

int cmd_scan(const ScanArgs &args, std::ostream &out, std::ostream &err) {
  sig::SignatureDatabase db;
  std::optional<ir::CouplingMap> coupling;
  try {
    db = args.signatures_path.empty()
             ? sig::default_database()
             : sig::load_database_file(args.signatures_path);
    for (sig::Signature &signature : db.signatures) {
      if (args.suspicious_at > 0)
        signature.suspicious_at = args.suspicious_at;
      if (args.malicious_at > 0)
        signature.malicious_at = args.malicious_at;
      if (signature.suspicious_at > signature.malicious_at)
        throw Error(ErrorKind::BadThresholds,
                    "threshold override leaves suspicious_at > malicious_at "
                    "for signature '" +
                        signature.id + "'");
    }
    if (!args.coupling_path.empty())
      coupling = ir::CouplingMap::load(args.coupling_path);
  } catch (const Error &e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  // Files scan concurrently; reports print in command-line order.
  std::vector<std::future<report::FileReport>> pending;
  pending.reserve(args.files.size());
  for (const std::string &path : args.files)
    pending.push_back(std::async(std::launch::async, scan_one, path,
                                 std::cref(db), std::cref(coupling),
                                 args.no_canonicalize));

  std::vector<report::FileReport> files;
  files.reserve(pending.size());
  for (auto &future : pending)
    files.push_back(future.get());

  if (args.format == "json") {
    out << report::render_json(files);
  } else {
    for (const report::FileReport &file : files)
      out << report::render_text(file);
  }

  int exit = exit_clean;
  for (const report::FileReport &file : files)
    exit = std::max(exit, file.ok ? verdict_code(file.report.verdict)
                                  : exit_input_error);
  return exit;
}

struct SweepArgs {
  std::string family;
  std::string k_range = "0..300";
  long long delay_dt = 0;
  std::string out_path;
  double p_base = -1.0; // negative = shipped default
  double lambda_cx = -1.0;
  double lambda_xy = -1.0;
  double gamma = -1.0;
};

int cmd_sweep(const SweepArgs &args, std::ostream &out) {
  sim::AttackFamily family = sweep_family(args.family);
  auto [k_lo, k_hi] = parse_k_range(args.k_range);
  if (args.delay_dt < 0)
    throw Error(ErrorKind::FormatError, "delay must be >= 0");

  sim::NoiseModel noise = sim::NoiseModel::defaults();
  auto override_param = [](double &slot, double value, const char *name) {
    if (value < 0.0)
      return;
    if (value > 1.0)
      throw Error(ErrorKind::FormatError,
                  std::string(name) + " must lie in [0, 1]");
    slot = value;
  };
  override_param(noise.p_base, args.p_base, "--p-base");
  override_param(noise.lambda_cx, args.lambda_cx, "--lambda-cx");
  override_param(noise.lambda_xy, args.lambda_xy, "--lambda-xy");
  override_param(noise.gamma, args.gamma, "--gamma");

  std::vector<int> k_values;
  k_values.reserve(static_cast<std::size_t>(k_hi - k_lo) + 1);
  for (int k = k_lo; k <= k_hi; ++k)
    k_values.push_back(k);

  std::string table =
      sim::format_sweep(sim::sweep_k(noise, family, args.delay_dt, k_values));
  write_output(table, args.out_path, out);
  return exit_clean;
}

struct GenArgs {
  std::string family;
  int k = 0;
  long long delay_dt = 1;
  std::string qubits;
  std::string out_path;
};

int cmd_gen(const GenArgs &args, std::ostream &out) {
  std::optional<gen::Family> family = gen::family_from_token(args.family);
  if (!family)
    throw Error(ErrorKind::FormatError, "unknown family '" + args.family + "'");
  gen::FixtureSpec spec;
  spec.family = *family;
  spec.k = args.k;
  spec.delay_dt = args.delay_dt;
  spec.attacker_qubits = parse_qubit_list(args.qubits);
  std::string text = qasm::emit(gen::attack_fixture(spec));
  write_output(text, args.out_path, out);
  return exit_clean;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"signature scanner for crosstalk-inducing circuit patterns"};
  app.require_subcommand(1);

  ScanArgs scan_args;
  CLI::App *scan_cmd = app.add_subcommand(
      "scan", "scan OpenQASM files against a signature database");
  scan_cmd->add_option("files", scan_args.files, "input .qasm files")
      ->required();
  scan_cmd->add_option("--signatures", scan_args.signatures_path,
                       "signature database file (default: built-in)");
  scan_cmd->add_option("--coupling", scan_args.coupling_path,
                       "device coupling map file");
  scan_cmd->add_option("--format", scan_args.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  scan_cmd
      ->add_option("--suspicious-at", scan_args.suspicious_at,
                   "override every signature's suspicious threshold")
      ->check(CLI::PositiveNumber);
  scan_cmd
      ->add_option("--malicious-at", scan_args.malicious_at,
                   "override every signature's malicious threshold")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_flag("--no-canonicalize", scan_args.no_canonicalize,
                     "diagnostic mode: match the raw circuit");

  SweepArgs sweep_args;
  CLI::App *sweep_cmd = app.add_subcommand(
      "sweep", "simulate victim output probability across repetition counts");
  sweep_cmd
      ->add_option("--family", sweep_args.family,
                   "cx-delay|delay-only|x-delay|y-delay|z-delay|i-delay")
      ->required();
  sweep_cmd->add_option("--k", sweep_args.k_range,
                        "repetition count or range A..B (default 0..300)");
  sweep_cmd->add_option("--delay", sweep_args.delay_dt,
                        "delay duration in dt for delay-bearing units");
  sweep_cmd->add_option("--out", sweep_args.out_path,
                        "write the table here instead of stdout");
  sweep_cmd->add_option("--p-base", sweep_args.p_base,
                        "override baseline depolarizing strength");
  sweep_cmd->add_option("--lambda-cx", sweep_args.lambda_cx,
                        "override cx-delay crosstalk strength");
  sweep_cmd->add_option("--lambda-xy", sweep_args.lambda_xy,
                        "override x/y crosstalk strength");
  sweep_cmd->add_option("--gamma", sweep_args.gamma,
                        "override amplitude damping strength");

  GenArgs gen_args;
  CLI::App *gen_cmd =
      app.add_subcommand("gen", "generate an attacker/victim fixture program");
  gen_cmd
      ->add_option("--family", gen_args.family,
                   "cx-chain|cx-delay|delay-only|x-delay|y-delay|z-delay|"
                   "i-delay")
      ->required();
  gen_cmd->add_option("--k", gen_args.k, "attacker unit repetitions")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--delay", gen_args.delay_dt,
                      "delay duration in dt (default 1)");
  gen_cmd->add_option("--qubits", gen_args.qubits,
                      "attacker qubits, e.g. 2,3 (two for cx families)")
      ->required();
  gen_cmd->add_option("--out", gen_args.out_path,
                      "write the program here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_clean : exit_input_error;
  }

  try {
    if (scan_cmd->parsed())
      return cmd_scan(scan_args, out, err);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_args, out);
    if (gen_cmd->parsed())
      return cmd_gen(gen_args, out);
    err << "no subcommand selected\n";
    return exit_input_error;
  } catch (const Error &e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::Internal ? exit_internal_error
                                           : exit_input_error;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal_error;
  }
}

} // namespace qcav::cli

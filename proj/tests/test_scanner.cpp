#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "qcav/canon/canonicalizer.hpp"
#include "qcav/error.hpp"
#include "qcav/ir/lower.hpp"
#include "qcav/qasm/parser.hpp"
#include "qcav/scan/scanner.hpp"
#include "support/random_circuit.hpp"

using namespace qcav::scan;
namespace ir = qcav::ir;
namespace sig = qcav::sig;
namespace canon = qcav::canon;
namespace qasm = qcav::qasm;
namespace test_support = qcav::test_support;
using canon::CanonicalCircuit;
using canon::canonicalize;
using qcav::Error;
using qcav::ErrorKind;

namespace {

CanonicalCircuit canonical_of(const std::string &source) {
  return canonicalize(ir::lower(qasm::parse(source)));
}

std::string cx_delay_attacker(int k, long long delay_dt = 160,
                              int qubits = 5) {
  std::string src =
      "OPENQASM 2.0;\nqreg q[" + std::to_string(qubits) + "];\n";
  for (int i = 0; i < k; ++i) {
    src += "cx q[2],q[3];\n";
    src += "delay(" + std::to_string(delay_dt) + ") q[2];\n";
  }
  return src;
}

std::string pauli_attacker(char gate, int k, int qubit = 2) {
  std::string src = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < k; ++i) {
    src += std::string(1, gate) + " q[" + std::to_string(qubit) + "];\n";
    src += "delay(160) q[" + std::to_string(qubit) + "];\n";
  }
  return src;
}

using Pair = std::pair<std::string, int>;

} // namespace

TEST_CASE("repeated cx+delay yields one malicious run") {
  ScanReport report = scan(canonical_of(cx_delay_attacker(10)),
                           sig::default_database());
  REQUIRE(report.runs.size() == 1);
  const MatchRun &run = report.runs[0];
  CHECK(run.signature_id == "cx-delay");
  CHECK(run.binding == std::vector<Pair>{{"a", 2}, {"b", 3}});
  CHECK(run.k == 10);
  CHECK(run.start_instruction_index == 0);
  CHECK(run.source_locations.size() == 10);
  CHECK(report.verdict == Verdict::MALICIOUS);
  CHECK(report.per_signature_counts.at("cx-delay") == SignatureStats{1, 10});
  CHECK(report.per_signature_counts.at("xy-delay") == SignatureStats{0, 0});
}

TEST_CASE("verdict thresholds at the documented boundaries") {
  auto verdict_at = [](int k) {
    return scan(canonical_of(cx_delay_attacker(k)), sig::default_database())
        .verdict;
  };
  CHECK(verdict_at(1) == Verdict::CLEAN);
  CHECK(verdict_at(4) == Verdict::CLEAN);
  CHECK(verdict_at(5) == Verdict::SUSPICIOUS);
  CHECK(verdict_at(9) == Verdict::SUSPICIOUS);
  CHECK(verdict_at(10) == Verdict::MALICIOUS);
}

TEST_CASE("pure cx chains scan clean after canonicalization") {
  std::string src = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 100; ++i)
    src += "cx q[2],q[3];\n";
  ScanReport report = scan(canonical_of(src), sig::default_database());
  CHECK(report.runs.empty());
  CHECK(report.verdict == Verdict::CLEAN);
}

TEST_CASE("gates on unbound qubits are invisible to a run") {
  std::string src = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 7; ++i) {
    src += "cx q[2],q[3];\n";
    src += "h q[0];\n"; // unbound noise inside the run
    src += "delay(1) q[2];\n";
    src += "z q[1];\n";
  }
  ScanReport report = scan(canonical_of(src), sig::default_database());
  REQUIRE(report.runs.size() == 1);
  CHECK(report.runs[0].k == 7);
  CHECK(report.verdict == Verdict::SUSPICIOUS);
}

TEST_CASE("gates on a bound qubit break the run") {
  std::string src = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 4; ++i) {
    src += "cx q[2],q[3];\n";
    src += "delay(1) q[2];\n";
  }
  src += "h q[3];\n"; // bound qubit interruption
  for (int i = 0; i < 3; ++i) {
    src += "cx q[2],q[3];\n";
    src += "delay(1) q[2];\n";
  }
  ScanReport report = scan(canonical_of(src), sig::default_database());
  REQUIRE(report.runs.size() == 2);
  CHECK(report.runs[0].k == 4);
  CHECK(report.runs[1].k == 3);
  CHECK(report.verdict == Verdict::CLEAN);
  CHECK(report.per_signature_counts.at("cx-delay") == SignatureStats{2, 4});
}

TEST_CASE("two disjoint attackers give two suspicious runs") {
  std::string src = "OPENQASM 2.0;\nqreg q[4];\n";
  for (int i = 0; i < 7; ++i) {
    src += "cx q[2],q[3];\ndelay(8) q[2];\n";
    src += "cx q[0],q[1];\ndelay(8) q[0];\n";
  }
  ScanReport report = scan(canonical_of(src), sig::default_database());
  REQUIRE(report.runs.size() == 2);
  CHECK(report.runs[0].binding == std::vector<Pair>{{"a", 0}, {"b", 1}});
  CHECK(report.runs[1].binding == std::vector<Pair>{{"a", 2}, {"b", 3}});
  CHECK(report.runs[0].k == 7);
  CHECK(report.runs[1].k == 7);
  CHECK(report.per_signature_counts.at("cx-delay") == SignatureStats{2, 7});
  CHECK(report.verdict == Verdict::SUSPICIOUS);
}

TEST_CASE("the delay may sit on either cx operand") {
  std::string on_target = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 6; ++i)
    on_target += "cx q[2],q[3];\ndelay(4) q[3];\n";
  ScanReport report = scan(canonical_of(on_target), sig::default_database());
  REQUIRE(report.runs.size() == 1);
  CHECK(report.runs[0].k == 6);
  CHECK(report.runs[0].binding == std::vector<Pair>{{"a", 2}, {"b", 3}});
}

TEST_CASE("x and y bursts with delays fire the xy family, mixed freely") {
  ScanReport x_report =
      scan(canonical_of(pauli_attacker('x', 12)), sig::default_database());
  REQUIRE(x_report.runs.size() == 1);
  CHECK(x_report.runs[0].signature_id == "xy-delay");
  CHECK(x_report.runs[0].binding == std::vector<Pair>{{"a", 2}});
  CHECK(x_report.runs[0].k == 12);
  CHECK(x_report.verdict == Verdict::MALICIOUS);

  // alternating x and y still counts as one run of the same family
  std::string mixed = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 6; ++i) {
    mixed += (i % 2 == 0) ? "x q[2];\n" : "y q[2];\n";
    mixed += "delay(16) q[2];\n";
  }
  ScanReport mixed_report =
      scan(canonical_of(mixed), sig::default_database());
  REQUIRE(mixed_report.runs.size() == 1);
  CHECK(mixed_report.runs[0].k == 6);
}

TEST_CASE("delay-only, z, and i chains scan clean by design") {
  std::string delays = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 300; ++i)
    delays += "delay(160) q[2];\n";
  CHECK(scan(canonical_of(delays), sig::default_database()).verdict ==
        Verdict::CLEAN);

  CHECK(scan(canonical_of(pauli_attacker('z', 300)),
             sig::default_database())
            .verdict == Verdict::CLEAN);

  std::string ids = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 300; ++i)
    ids += "id q[2];\ndelay(160) q[2];\n";
  CHECK(scan(canonical_of(ids), sig::default_database()).verdict ==
        Verdict::CLEAN);
}

TEST_CASE("no sub-run of a longer run is reported") {
  ScanReport report = scan(canonical_of(cx_delay_attacker(12)),
                           sig::default_database());
  REQUIRE(report.runs.size() == 1); // not 12 suffix runs
}

TEST_CASE("coupling map restricts which pairs can bind") {
  ir::CouplingMap line;
  line.add_edge(0, 1);
  line.add_edge(1, 2);
  line.add_edge(3, 4);
  // attacker on (2,3), which is NOT an edge of this map
  ScanReport report = scan(canonical_of(cx_delay_attacker(10)),
                           sig::default_database(), line);
  CHECK(report.runs.empty());
  CHECK(report.verdict == Verdict::CLEAN);

  ir::CouplingMap with_edge = line;
  with_edge.add_edge(2, 3);
  ScanReport hit = scan(canonical_of(cx_delay_attacker(10)),
                        sig::default_database(), with_edge);
  REQUIRE(hit.runs.size() == 1);
  CHECK(hit.runs[0].k == 10);
}

TEST_CASE("coupling map must fit the circuit") {
  ir::CouplingMap map;
  map.add_edge(0, 9);
  CHECK_THROWS_AS(scan(canonical_of(cx_delay_attacker(2)),
                       sig::default_database(), map),
                  Error);
}

TEST_CASE("binding explosion guards enormous circuits") {
  ir::Circuit wide;
  wide.qubit_count = 2000; // 2000*1999 pairs > 10^6
  try {
    scan(CanonicalCircuit::assume_canonical(wide), sig::default_database());
    FAIL("expected BindingExplosion");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::BindingExplosion);
  }

  // a sparse coupling map brings the count back under the bound
  ir::CouplingMap sparse;
  for (int i = 0; i + 1 < 2000; ++i)
    sparse.add_edge(i, i + 1);
  CHECK_NOTHROW(scan(CanonicalCircuit::assume_canonical(wide),
                     sig::default_database(), sparse));

  ScanOptions tight;
  tight.binding_bound = 10;
  CHECK_THROWS_AS(scan(canonical_of(cx_delay_attacker(1)),
                       sig::default_database(), std::nullopt, tight),
                  Error);
}

TEST_CASE("empty inputs are clean") {
  ScanReport no_db = scan(canonical_of(cx_delay_attacker(10)),
                          sig::SignatureDatabase{});
  CHECK(no_db.runs.empty());
  CHECK(no_db.verdict == Verdict::CLEAN);
  CHECK(no_db.per_signature_counts.empty());

  ScanReport no_instructions =
      scan(canonical_of("OPENQASM 2.0;\nqreg q[3];\n"),
           sig::default_database());
  CHECK(no_instructions.runs.empty());
  CHECK(no_instructions.verdict == Verdict::CLEAN);
  CHECK(no_instructions.per_signature_counts.size() == 2);
}

TEST_CASE("hoisted inert delays cannot fire any signature") {
  // q4 is delay-only; its merged delay is hoisted and must stay invisible
  std::string src = "OPENQASM 2.0;\nqreg q[5];\nx q[0];\n";
  for (int i = 0; i < 40; ++i)
    src += "delay(100) q[4];\n";
  sig::SignatureDatabase db = sig::load_database(
      "signature delay-only\n  vars: a\n  unit: DELAY any @ a\n"
      "  suspicious_at: 2\n  malicious_at: 4\nend\n");
  CanonicalCircuit canonical = canonical_of(src);
  ScanReport report = scan(canonical, db);
  CHECK(report.runs.empty());
  CHECK(report.verdict == Verdict::CLEAN);
  CHECK(brute_force_scan(canonical, db) == report);
}

TEST_CASE("monotonicity: one more repetition bumps k by one") {
  for (int k = 1; k < 15; ++k) {
    ScanReport a = scan(canonical_of(cx_delay_attacker(k)),
                        sig::default_database());
    ScanReport b = scan(canonical_of(cx_delay_attacker(k + 1)),
                        sig::default_database());
    REQUIRE(a.runs.size() == 1);
    REQUIRE(b.runs.size() == 1);
    CHECK(b.runs[0].k == a.runs[0].k + 1);
    CHECK(static_cast<int>(b.verdict) >= static_cast<int>(a.verdict));
  }
}

TEST_CASE("relabeling equivariance under a qubit permutation") {
  // same attacker, relabeled q2->q0, q3->q4
  std::string relabeled = "OPENQASM 2.0;\nqreg q[5];\n";
  for (int i = 0; i < 8; ++i)
    relabeled += "cx q[0],q[4];\ndelay(160) q[0];\n";
  ScanReport original = scan(canonical_of(cx_delay_attacker(8)),
                             sig::default_database());
  ScanReport mapped = scan(canonical_of(relabeled), sig::default_database());
  REQUIRE(original.runs.size() == 1);
  REQUIRE(mapped.runs.size() == 1);
  CHECK(mapped.runs[0].k == original.runs[0].k);
  CHECK(mapped.verdict == original.verdict);
  CHECK(mapped.runs[0].binding == std::vector<Pair>{{"a", 0}, {"b", 4}});
}

TEST_CASE("differential: scan equals brute_force_scan on random circuits") {
  std::mt19937_64 rng(0x5ca11ed);
  test_support::RandomCircuitOptions opt;
  opt.qubit_count = 5;
  opt.instruction_count = 60;
  opt.barriers = true;
  opt.measures = true;
  sig::SignatureDatabase db = sig::default_database();
  for (int trial = 0; trial < 150; ++trial) {
    ir::Circuit raw = test_support::random_circuit(rng, opt);
    CanonicalCircuit canonical = canonicalize(raw);
    CHECK(scan(canonical, db) == brute_force_scan(canonical, db));
    CanonicalCircuit as_is = CanonicalCircuit::assume_canonical(raw);
    CHECK(scan(as_is, db) == brute_force_scan(as_is, db));
  }
}

TEST_CASE("differential holds for exotic signatures too") {
  sig::SignatureDatabase db = sig::load_database(
      "signature hz\n  unit: H a ; PAULI_Z a ; DELAY >=2 @ a\n"
      "  suspicious_at: 2\n  malicious_at: 3\nend\n"
      "signature czpair\n  unit: CZ a b ; DELAY =0 @ a|b\n"
      "  suspicious_at: 1\n  malicious_at: 2\nend\n"
      "signature double-delay\n  vars: a\n  unit: DELAY any @ a ; DELAY any @ a\n"
      "  suspicious_at: 1\n  malicious_at: 9\nend\n");
  std::mt19937_64 rng(0xfeed);
  test_support::RandomCircuitOptions opt;
  opt.qubit_count = 4;
  opt.instruction_count = 50;
  for (int trial = 0; trial < 100; ++trial) {
    ir::Circuit raw = test_support::random_circuit(rng, opt);
    CanonicalCircuit as_is = canon::CanonicalCircuit::assume_canonical(raw);
    CHECK(scan(as_is, db) == brute_force_scan(as_is, db));
  }
}

TEST_CASE("cz templates bind either operand order") {
  sig::SignatureDatabase db = sig::load_database(
      "signature cz-delay\n  unit: CZ a b ; DELAY any @ a\n"
      "  suspicious_at: 1\n  malicious_at: 100\nend\n");
  std::string src = "OPENQASM 2.0;\nqreg q[3];\n"
                    "cz q[1],q[0];\ndelay(5) q[0];\n"
                    "cz q[0],q[1];\ndelay(5) q[0];\n";
  ScanReport report = scan(canonical_of(src), db);
  // binding {a->0, b->1} sees both cz gates despite the operand swap
  bool found = false;
  for (const MatchRun &run : report.runs)
    if (run.binding == std::vector<Pair>{{"a", 0}, {"b", 1}}) {
      CHECK(run.k == 2);
      found = true;
    }
  CHECK(found);
}

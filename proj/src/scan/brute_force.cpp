#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qcav/scan/scanner.hpp"

// Reference implementation used to cross-check scan(). Everything here is
// recomputed from scratch per start index on purpose — no tables, no early
// pruning — so a bug would have to be made twice to go unnoticed.

namespace qcav::scan {

namespace {

using VarMap = std::vector<std::pair<std::string, int>>;

int lookup(const VarMap &binding, const std::string &var) {
  for (const auto &entry : binding)
    if (entry.first == var)
      return entry.second;
  return -1;
}

bool naive_matches(const ir::Instruction &inst, const sig::GateTemplate &tmpl,
                   const VarMap &binding) {
  using ir::Kind;
  using sig::TemplateClass;
  switch (tmpl.kind_class) {
  case TemplateClass::CX:
    return inst.kind == Kind::CX &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]) &&
           inst.qubits[1] == lookup(binding, tmpl.qubit_vars[1]);
  case TemplateClass::CZ: {
    if (inst.kind != Kind::CZ)
      return false;
    int a = lookup(binding, tmpl.qubit_vars[0]);
    int b = lookup(binding, tmpl.qubit_vars[1]);
    return (inst.qubits[0] == a && inst.qubits[1] == b) ||
           (inst.qubits[0] == b && inst.qubits[1] == a);
  }
  case TemplateClass::PAULI_X:
    return inst.kind == Kind::X &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::PAULI_Y:
    return inst.kind == Kind::Y &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::PAULI_XY:
    return (inst.kind == Kind::X || inst.kind == Kind::Y) &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::PAULI_Z:
    return inst.kind == Kind::Z &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::IDENT:
    return inst.kind == Kind::ID &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::H:
    return inst.kind == Kind::H &&
           inst.qubits[0] == lookup(binding, tmpl.qubit_vars[0]);
  case TemplateClass::ANY_DELAY: {
    if (inst.kind != Kind::DELAY)
      return false;
    long long dt = *inst.duration_dt;
    if (tmpl.duration_rule == sig::DurationRule::EXACT &&
        dt != tmpl.duration_dt)
      return false;
    if (tmpl.duration_rule == sig::DurationRule::AT_LEAST &&
        dt < tmpl.duration_dt)
      return false;
    for (const std::string &var : tmpl.qubit_vars)
      if (inst.qubits[0] == lookup(binding, var))
        return true;
    return false;
  }
  }
  return false;
}

// how many consecutive templates match starting at timeline position s
std::size_t naive_matched_count(
    const std::vector<std::pair<std::size_t, const ir::Instruction *>> &tl,
    const sig::Signature &sig, const VarMap &binding, std::size_t s) {
  std::size_t count = 0;
  for (std::size_t p = s; p < tl.size(); ++p) {
    const sig::GateTemplate &expected = sig.unit[count % sig.unit.size()];
    if (!naive_matches(*tl[p].second, expected, binding))
      break;
    ++count;
  }
  return count;
}

void all_bindings(std::size_t position, const std::vector<std::string> &vars,
                  int qubit_count, VarMap &current,
                  std::vector<VarMap> &result) {
  if (position == vars.size()) {
    result.push_back(current);
    return;
  }
  for (int q = 0; q < qubit_count; ++q) {
    bool taken = false;
    for (const auto &entry : current)
      taken |= entry.second == q;
    if (taken)
      continue;
    current.emplace_back(vars[position], q);
    all_bindings(position + 1, vars, qubit_count, current, result);
    current.pop_back();
  }
}

} // namespace

ScanReport brute_force_scan(const canon::CanonicalCircuit &circuit,
                            const sig::SignatureDatabase &db) {
  ScanReport report;
  for (const sig::Signature &sig : db.signatures)
    report.per_signature_counts[sig.id] = SignatureStats{};

  for (const sig::Signature &sig : db.signatures) {
    const std::size_t unit_len = sig.unit.size();
    std::vector<std::string> vars = sig.variables();
    std::vector<VarMap> bindings;
    VarMap scratch;
    all_bindings(0, vars, circuit.circuit.qubit_count, scratch, bindings);

    for (const VarMap &binding : bindings) {
      std::vector<std::pair<std::size_t, const ir::Instruction *>> tl;
      for (std::size_t i = 0; i < circuit.circuit.instructions.size(); ++i) {
        if (circuit.inert[i])
          continue;
        const ir::Instruction &inst = circuit.circuit.instructions[i];
        bool touches_bound = false;
        for (const auto &entry : binding)
          for (int q : inst.qubits)
            touches_bound |= q == entry.second;
        if (touches_bound)
          tl.push_back({i, &inst});
      }

      for (std::size_t s = 0; s < tl.size(); ++s) {
        std::size_t matched = naive_matched_count(tl, sig, binding, s);
        std::size_t k = matched / unit_len;
        if (k == 0)
          continue;
        if (s >= unit_len) {
          // drop runs that are just the tail of an earlier repetition
          bool preceded = true;
          for (std::size_t j = 0; j < unit_len; ++j)
            preceded = preceded && naive_matches(*tl[s - unit_len + j].second,
                                                 sig.unit[j], binding);
          if (preceded)
            continue;
        }
        MatchRun run;
        run.signature_id = sig.id;
        run.binding = binding;
        run.start_instruction_index = tl[s].first;
        run.k = static_cast<int>(k);
        for (std::size_t rep = 0; rep < k; ++rep)
          run.source_locations.push_back(
              tl[s + rep * unit_len].second->location);
        report.runs.push_back(std::move(run));
      }
    }
  }

  std::sort(report.runs.begin(), report.runs.end(),
            [](const MatchRun &a, const MatchRun &b) {
              if (a.signature_id != b.signature_id)
                return a.signature_id < b.signature_id;
              if (a.binding != b.binding)
                return a.binding < b.binding;
              return a.start_instruction_index < b.start_instruction_index;
            });

  for (const MatchRun &run : report.runs) {
    SignatureStats &stats = report.per_signature_counts[run.signature_id];
    stats.occurrences += 1;
    if (run.k > stats.max_k)
      stats.max_k = run.k;
  }

  report.verdict = Verdict::CLEAN;
  for (const MatchRun &run : report.runs) {
    const sig::Signature *owner = db.find(run.signature_id);
    if (run.k >= owner->malicious_at)
      report.verdict = Verdict::MALICIOUS;
  }
  if (report.verdict != Verdict::MALICIOUS)
    for (const MatchRun &run : report.runs)
      if (run.k >= db.find(run.signature_id)->suspicious_at)
        report.verdict = Verdict::SUSPICIOUS;

  return report;
}

} // namespace qcav::scan

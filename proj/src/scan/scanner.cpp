#include "qcav/scan/scanner.hpp"

#include <algorithm>
#include <functional>

#include "qcav/error.hpp"

namespace qcav::scan {

using canon::CanonicalCircuit;
using ir::Instruction;
using ir::Kind;
using sig::DurationRule;
using sig::GateTemplate;
using sig::Signature;
using sig::TemplateClass;

namespace {

using Binding = std::vector<std::pair<std::string, int>>;

int bound_qubit(const Binding &binding, const std::string &var) {
  for (const auto &[name, qubit] : binding)
    if (name == var)
      return qubit;
  return -1;
}

// Does this instruction realize the template under the binding?
bool realizes(const Instruction &inst, const GateTemplate &tmpl,
              const Binding &binding) {
  if (!sig::class_matches_kind(tmpl.kind_class, inst.kind))
    return false;
  if (tmpl.kind_class == TemplateClass::ANY_DELAY) {
    switch (tmpl.duration_rule) {
    case DurationRule::ANY:
      break;
    case DurationRule::EXACT:
      if (*inst.duration_dt != tmpl.duration_dt)
        return false;
      break;
    case DurationRule::AT_LEAST:
      if (*inst.duration_dt < tmpl.duration_dt)
        return false;
      break;
    }
    int q = inst.qubits.front();
    for (const std::string &var : tmpl.qubit_vars)
      if (bound_qubit(binding, var) == q)
        return true;
    return false;
  }
  if (tmpl.kind_class == TemplateClass::CZ) {
    // symmetric gate: operand order is irrelevant
    int a = bound_qubit(binding, tmpl.qubit_vars[0]);
    int b = bound_qubit(binding, tmpl.qubit_vars[1]);
    return (inst.qubits[0] == a && inst.qubits[1] == b) ||
           (inst.qubits[0] == b && inst.qubits[1] == a);
  }
  for (std::size_t i = 0; i < tmpl.qubit_vars.size(); ++i)
    if (inst.qubits[i] != bound_qubit(binding, tmpl.qubit_vars[i]))
      return false;
  return true;
}

// Upper bound on the number of injective bindings, saturating at `cap`+1.
std::size_t estimate_bindings(std::size_t var_count, int qubit_count,
                              const Signature &sig,
                              const std::optional<ir::CouplingMap> &coupling,
                              std::size_t cap) {
  auto saturating_perm = [cap](std::size_t from, std::size_t take) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < take; ++i) {
      if (from <= i)
        return static_cast<std::size_t>(0);
      total *= from - i;
      if (total > cap)
        return cap + 1;
    }
    return total;
  };
  std::size_t n = static_cast<std::size_t>(std::max(qubit_count, 0));
  std::size_t estimate = saturating_perm(n, var_count);
  if (coupling && var_count >= 2) {
    bool has_pair = false;
    for (const GateTemplate &tmpl : sig.unit)
      has_pair |= tmpl.kind_class == TemplateClass::CX ||
                  tmpl.kind_class == TemplateClass::CZ;
    if (has_pair) {
      std::size_t via_edges = 2 * coupling->edge_count();
      if (via_edges > cap)
        via_edges = cap + 1;
      else
        via_edges *= saturating_perm(n >= 2 ? n - 2 : 0, var_count - 2);
      estimate = std::min(estimate, std::min(via_edges, cap + 1));
    }
  }
  return estimate;
}

struct TimelineEntry {
  std::size_t global_index;
  const Instruction *inst;
};

// Match positions for one (signature, binding): G[p][j] = consecutive
// template matches starting at timeline position p with unit index j.
void collect_runs(const Signature &sig, const Binding &binding,
                  const std::vector<TimelineEntry> &timeline,
                  std::vector<MatchRun> &out) {
  const std::size_t length = timeline.size();
  const std::size_t unit_len = sig.unit.size();
  if (length == 0)
    return;

  std::vector<std::vector<int>> consecutive(
      length + 1, std::vector<int>(unit_len, 0));
  for (std::size_t p = length; p-- > 0;)
    for (std::size_t j = 0; j < unit_len; ++j)
      consecutive[p][j] =
          realizes(*timeline[p].inst, sig.unit[j], binding)
              ? 1 + consecutive[p + 1][(j + 1) % unit_len]
              : 0;

  for (std::size_t s = 0; s < length; ++s) {
    int k = consecutive[s][0] / static_cast<int>(unit_len);
    if (k < 1)
      continue;
    // suppressed when a whole repetition immediately precedes this start
    if (s >= unit_len &&
        consecutive[s - unit_len][0] >= static_cast<int>(unit_len))
      continue;
    MatchRun run;
    run.signature_id = sig.id;
    run.binding = binding;
    run.start_instruction_index = timeline[s].global_index;
    run.k = k;
    run.source_locations.reserve(static_cast<std::size_t>(k));
    for (int rep = 0; rep < k; ++rep)
      run.source_locations.push_back(
          timeline[s + static_cast<std::size_t>(rep) * unit_len].inst->location);
    out.push_back(std::move(run));
  }
}

void enumerate_bindings(const Signature &sig,
                        const std::vector<std::string> &vars,
                        const std::optional<ir::CouplingMap> &coupling,
                        int qubit_count, std::size_t next, Binding &partial,
                        std::vector<char> &used,
                        const std::function<void(const Binding &)> &visit) {
  if (next == vars.size()) {
    visit(partial);
    return;
  }
  for (int q = 0; q < qubit_count; ++q) {
    if (used[static_cast<std::size_t>(q)])
      continue;
    partial.emplace_back(vars[next], q);
    used[static_cast<std::size_t>(q)] = 1;
    bool viable = true;
    if (coupling) {
      for (const GateTemplate &tmpl : sig.unit) {
        if (tmpl.kind_class != TemplateClass::CX &&
            tmpl.kind_class != TemplateClass::CZ)
          continue;
        int a = bound_qubit(partial, tmpl.qubit_vars[0]);
        int b = bound_qubit(partial, tmpl.qubit_vars[1]);
        if (a >= 0 && b >= 0 && !coupling->allows(a, b)) {
          viable = false;
          break;
        }
      }
    }
    if (viable)
      enumerate_bindings(sig, vars, coupling, qubit_count, next + 1, partial,
                         used, visit);
    used[static_cast<std::size_t>(q)] = 0;
    partial.pop_back();
  }
}

} // namespace

const char *verdict_name(Verdict verdict) {
  switch (verdict) {
  case Verdict::CLEAN:
    return "CLEAN";
  case Verdict::SUSPICIOUS:
    return "SUSPICIOUS";
  case Verdict::MALICIOUS:
    return "MALICIOUS";
  }
  return "?";
}

ScanReport scan(const CanonicalCircuit &circuit,
                const sig::SignatureDatabase &db,
                const std::optional<ir::CouplingMap> &coupling,
                const ScanOptions &options) {
  if (coupling)
    coupling->validate_for(circuit.circuit.qubit_count);

  ScanReport report;
  for (const Signature &sig : db.signatures)
    report.per_signature_counts[sig.id] = SignatureStats{};

  for (const Signature &sig : db.signatures) {
    std::vector<std::string> vars = sig.variables();
    if (estimate_bindings(vars.size(), circuit.circuit.qubit_count, sig,
                          coupling, options.binding_bound) >
        options.binding_bound)
      throw Error(ErrorKind::BindingExplosion,
                  "signature '" + sig.id + "' over " +
                      std::to_string(circuit.circuit.qubit_count) +
                      " qubits exceeds " +
                      std::to_string(options.binding_bound) +
                      " bindings; provide a coupling map");

    Binding partial;
    std::vector<char> used(
        static_cast<std::size_t>(std::max(circuit.circuit.qubit_count, 0)), 0);
    enumerate_bindings(
        sig, vars, coupling, circuit.circuit.qubit_count, 0, partial, used,
        [&](const Binding &binding) {
          std::vector<int> qubits;
          qubits.reserve(binding.size());
          for (const auto &[var, q] : binding)
            qubits.push_back(q);
          std::vector<TimelineEntry> timeline;
          for (std::size_t i = 0; i < circuit.circuit.instructions.size();
               ++i) {
            if (circuit.inert[i])
              continue;
            const Instruction &inst = circuit.circuit.instructions[i];
            bool hit = false;
            for (int q : qubits)
              hit |= inst.touches(q);
            if (hit)
              timeline.push_back(TimelineEntry{i, &inst});
          }
          collect_runs(sig, binding, timeline, report.runs);
        });
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
    stats.max_k = std::max(stats.max_k, run.k);
  }

  report.verdict = Verdict::CLEAN;
  for (const MatchRun &run : report.runs) {
    const Signature *sig = db.find(run.signature_id);
    if (run.k >= sig->malicious_at) {
      report.verdict = Verdict::MALICIOUS;
      break;
    }
    if (run.k >= sig->suspicious_at)
      report.verdict = Verdict::SUSPICIOUS;
  }
  return report;
}

} // namespace qcav::scan

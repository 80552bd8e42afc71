#include "qcav/sig/signature.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qcav/error.hpp"

namespace qcav::sig {

namespace {

const std::map<std::string, TemplateClass> &class_table() {
  static const std::map<std::string, TemplateClass> table = {
      {"CX", TemplateClass::CX},           {"CZ", TemplateClass::CZ},
      {"PAULI_X", TemplateClass::PAULI_X}, {"PAULI_Y", TemplateClass::PAULI_Y},
      {"PAULI_XY", TemplateClass::PAULI_XY},
      {"PAULI_Z", TemplateClass::PAULI_Z}, {"IDENT", TemplateClass::IDENT},
      {"H", TemplateClass::H},             {"DELAY", TemplateClass::ANY_DELAY},
  };
  return table;
}

std::string trim(std::string_view s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos)
    return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_tokens(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok)
    tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void fail(int line, const std::string &message,
                       ErrorKind kind = ErrorKind::FormatError) {
  throw Error(kind, message, SourceLocation{line, 1, 0});
}

long long parse_int(const std::string &text, int line, const char *what) {
  try {
    std::size_t used = 0;
    long long value = std::stoll(text, &used);
    if (used != text.size())
      fail(line, std::string("malformed ") + what + " '" + text + "'");
    return value;
  } catch (const Error &) {
    throw;
  } catch (...) {
    fail(line, std::string("malformed ") + what + " '" + text + "'");
  }
}

GateTemplate parse_template(const std::string &text, int line) {
  std::vector<std::string> tokens = split_tokens(text);
  if (tokens.empty())
    fail(line, "empty template in unit");
  auto cls = class_table().find(tokens[0]);
  if (cls == class_table().end())
    fail(line, "unknown gate class '" + tokens[0] + "'");

  GateTemplate tmpl;
  tmpl.kind_class = cls->second;

  if (tmpl.kind_class == TemplateClass::ANY_DELAY) {
    // DELAY <any|=n|>=n> @ <var>[|var...]
    if (tokens.size() != 4 || tokens[2] != "@")
      fail(line, "delay template must be 'DELAY <any|=n|>=n> @ <vars>'");
    const std::string &spec = tokens[1];
    if (spec == "any") {
      tmpl.duration_rule = DurationRule::ANY;
    } else if (spec.rfind(">=", 0) == 0) {
      tmpl.duration_rule = DurationRule::AT_LEAST;
      tmpl.duration_dt = parse_int(spec.substr(2), line, "delay bound");
    } else if (spec.rfind('=', 0) == 0) {
      tmpl.duration_rule = DurationRule::EXACT;
      tmpl.duration_dt = parse_int(spec.substr(1), line, "delay bound");
    } else {
      fail(line, "bad duration spec '" + spec + "'");
    }
    if (tmpl.duration_dt < 0)
      fail(line, "delay bound must be non-negative");
    std::stringstream vars(tokens[3]);
    std::string var;
    while (std::getline(vars, var, '|')) {
      if (var.empty())
        fail(line, "empty variable in delay alternatives");
      if (std::find(tmpl.qubit_vars.begin(), tmpl.qubit_vars.end(), var) !=
          tmpl.qubit_vars.end())
        fail(line, "duplicate variable '" + var + "' in delay alternatives");
      tmpl.qubit_vars.push_back(var);
    }
    if (tmpl.qubit_vars.empty())
      fail(line, "delay template needs at least one variable");
    return tmpl;
  }

  std::size_t arity =
      (tmpl.kind_class == TemplateClass::CX || tmpl.kind_class == TemplateClass::CZ)
          ? 2
          : 1;
  if (tokens.size() != 1 + arity)
    fail(line,
         "class " + tokens[0] + " takes " + std::to_string(arity) +
             " variable(s), got " + std::to_string(tokens.size() - 1),
         ErrorKind::BadArity);
  for (std::size_t i = 1; i < tokens.size(); ++i)
    tmpl.qubit_vars.push_back(tokens[i]);
  if (arity == 2 && tmpl.qubit_vars[0] == tmpl.qubit_vars[1])
    fail(line, "two-qubit template operands must be distinct variables",
         ErrorKind::BadArity);
  return tmpl;
}

void validate_signature(const Signature &sig, int line) {
  if (sig.unit.empty())
    fail(line, "signature '" + sig.id + "' has an empty unit");
  if (sig.suspicious_at < 1 || sig.malicious_at < 1)
    fail(line, "signature '" + sig.id + "' needs positive thresholds");
  if (sig.suspicious_at > sig.malicious_at)
    fail(line,
         "signature '" + sig.id + "': suspicious_at " +
             std::to_string(sig.suspicious_at) + " exceeds malicious_at " +
             std::to_string(sig.malicious_at),
         ErrorKind::BadThresholds);

  std::set<std::string> gate_bound;
  std::set<std::string> used;
  for (const GateTemplate &tmpl : sig.unit)
    for (const std::string &var : tmpl.qubit_vars) {
      used.insert(var);
      if (tmpl.kind_class != TemplateClass::ANY_DELAY)
        gate_bound.insert(var);
    }
  std::set<std::string> declared(sig.declared_vars.begin(),
                                 sig.declared_vars.end());
  if (declared.size() != sig.declared_vars.size())
    fail(line, "signature '" + sig.id + "' declares a variable twice");
  for (const std::string &var : used)
    if (!gate_bound.count(var) && !declared.count(var))
      fail(line, "signature '" + sig.id + "': variable '" + var +
                     "' appears only in delay templates; bind it with a gate "
                     "or declare it with vars:");
  for (const std::string &var : sig.declared_vars)
    if (!used.count(var))
      fail(line, "signature '" + sig.id + "': declared variable '" + var +
                     "' is never used");
}

} // namespace

const char *template_class_name(TemplateClass cls) {
  switch (cls) {
  case TemplateClass::CX:
    return "CX";
  case TemplateClass::CZ:
    return "CZ";
  case TemplateClass::PAULI_X:
    return "PAULI_X";
  case TemplateClass::PAULI_Y:
    return "PAULI_Y";
  case TemplateClass::PAULI_XY:
    return "PAULI_XY";
  case TemplateClass::PAULI_Z:
    return "PAULI_Z";
  case TemplateClass::IDENT:
    return "IDENT";
  case TemplateClass::H:
    return "H";
  case TemplateClass::ANY_DELAY:
    return "DELAY";
  }
  return "?";
}

std::vector<std::string> Signature::variables() const {
  if (!declared_vars.empty())
    return declared_vars;
  std::vector<std::string> order;
  for (const GateTemplate &tmpl : unit)
    for (const std::string &var : tmpl.qubit_vars)
      if (std::find(order.begin(), order.end(), var) == order.end())
        order.push_back(var);
  return order;
}

const Signature *SignatureDatabase::find(const std::string &id) const {
  for (const Signature &sig : signatures)
    if (sig.id == id)
      return &sig;
  return nullptr;
}

SignatureDatabase load_database(std::string_view source_text) {
  SignatureDatabase db;
  std::istringstream in{std::string(source_text)};
  std::string raw;
  int line_no = 0;
  std::optional<Signature> open;
  std::set<std::string> seen_keys;
  int open_line = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty())
      continue;

    if (!open) {
      if (line.rfind("version", 0) == 0 &&
          (line.size() == 7 || line[7] == ' ' || line[7] == '\t')) {
        db.version = trim(line.substr(7));
        if (db.version.empty())
          fail(line_no, "version line needs a value");
        continue;
      }
      std::vector<std::string> tokens = split_tokens(line);
      if (tokens.size() == 2 && tokens[0] == "signature") {
        for (const Signature &sig : db.signatures)
          if (sig.id == tokens[1])
            fail(line_no, "duplicate signature id '" + tokens[1] + "'",
                 ErrorKind::DuplicateId);
        open = Signature{};
        open->id = tokens[1];
        open_line = line_no;
        seen_keys.clear();
        continue;
      }
      fail(line_no, "expected 'signature <id>' or 'version <v>', got '" +
                        line + "'");
    }

    if (line == "end") {
      for (const char *required : {"unit", "suspicious_at", "malicious_at"})
        if (!seen_keys.count(required))
          fail(line_no, "signature '" + open->id + "' is missing '" +
                            required + "'");
      validate_signature(*open, line_no);
      db.signatures.push_back(std::move(*open));
      open.reset();
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string::npos)
      fail(line_no, "expected '<key>: <value>' or 'end', got '" + line + "'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (!seen_keys.insert(key).second)
      fail(line_no, "duplicate key '" + key + "' in signature '" + open->id +
                        "'");

    if (key == "unit") {
      std::stringstream parts(value);
      std::string part;
      while (std::getline(parts, part, ';'))
        open->unit.push_back(parse_template(trim(part), line_no));
      if (open->unit.empty())
        fail(line_no, "unit line has no templates");
    } else if (key == "suspicious_at" || key == "malicious_at") {
      long long n = parse_int(value, line_no, "threshold");
      if (n < 1 || n > 1'000'000'000)
        fail(line_no, "threshold '" + value + "' out of range");
      (key == "suspicious_at" ? open->suspicious_at : open->malicious_at) =
          static_cast<int>(n);
    } else if (key == "note") {
      open->severity_note = value;
    } else if (key == "vars") {
      open->declared_vars = split_tokens(value);
      if (open->declared_vars.empty())
        fail(line_no, "vars line needs at least one variable");
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  if (open)
    fail(open_line, "signature '" + open->id + "' is missing its 'end'");
  return db;
}

SignatureDatabase load_database_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::FormatError,
                "cannot open signature database: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_database(buffer.str());
}

std::string emit_database(const SignatureDatabase &db) {
  std::ostringstream os;
  if (!db.version.empty())
    os << "version " << db.version << "\n";
  for (const Signature &sig : db.signatures) {
    os << "\nsignature " << sig.id << "\n";
    if (!sig.declared_vars.empty()) {
      os << "  vars:";
      for (const std::string &var : sig.declared_vars)
        os << ' ' << var;
      os << "\n";
    }
    os << "  unit: ";
    for (std::size_t i = 0; i < sig.unit.size(); ++i) {
      const GateTemplate &tmpl = sig.unit[i];
      if (i > 0)
        os << " ; ";
      os << template_class_name(tmpl.kind_class);
      if (tmpl.kind_class == TemplateClass::ANY_DELAY) {
        switch (tmpl.duration_rule) {
        case DurationRule::ANY:
          os << " any";
          break;
        case DurationRule::EXACT:
          os << " =" << tmpl.duration_dt;
          break;
        case DurationRule::AT_LEAST:
          os << " >=" << tmpl.duration_dt;
          break;
        }
        os << " @ ";
        for (std::size_t v = 0; v < tmpl.qubit_vars.size(); ++v) {
          if (v > 0)
            os << '|';
          os << tmpl.qubit_vars[v];
        }
      } else {
        for (const std::string &var : tmpl.qubit_vars)
          os << ' ' << var;
      }
    }
    os << "\n";
    os << "  suspicious_at: " << sig.suspicious_at << "\n";
    os << "  malicious_at: " << sig.malicious_at << "\n";
    if (!sig.severity_note.empty())
      os << "  note: " << sig.severity_note << "\n";
    os << "end\n";
  }
  return os.str();
}

SignatureDatabase default_database() {
  SignatureDatabase db;
  db.version = "builtin-1";

  Signature cx;
  cx.id = "cx-delay";
  cx.unit = {
      GateTemplate{TemplateClass::CX, {"a", "b"}},
      GateTemplate{TemplateClass::ANY_DELAY, {"a", "b"}, DurationRule::ANY, 0},
  };
  cx.suspicious_at = 5;
  cx.malicious_at = 10;
  cx.severity_note = "high impact: repeated cx+delay on a coupled pair "
                     "degrades neighboring computations the most";
  db.signatures.push_back(std::move(cx));

  Signature xy;
  xy.id = "xy-delay";
  xy.unit = {
      GateTemplate{TemplateClass::PAULI_XY, {"a"}},
      GateTemplate{TemplateClass::ANY_DELAY, {"a"}, DurationRule::ANY, 0},
  };
  xy.suspicious_at = 5;
  xy.malicious_at = 10;
  xy.severity_note = "moderate impact: x/y pulse trains with delays disturb "
                     "neighbors, though less than cx-delay";
  db.signatures.push_back(std::move(xy));
  return db;
}

bool class_matches_kind(TemplateClass cls, ir::Kind kind) {
  switch (cls) {
  case TemplateClass::CX:
    return kind == ir::Kind::CX;
  case TemplateClass::CZ:
    return kind == ir::Kind::CZ;
  case TemplateClass::PAULI_X:
    return kind == ir::Kind::X;
  case TemplateClass::PAULI_Y:
    return kind == ir::Kind::Y;
  case TemplateClass::PAULI_XY:
    return kind == ir::Kind::X || kind == ir::Kind::Y;
  case TemplateClass::PAULI_Z:
    return kind == ir::Kind::Z;
  case TemplateClass::IDENT:
    return kind == ir::Kind::ID;
  case TemplateClass::H:
    return kind == ir::Kind::H;
  case TemplateClass::ANY_DELAY:
    return kind == ir::Kind::DELAY;
  }
  return false;
}

} // namespace qcav::sig

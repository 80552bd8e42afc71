#include "qcav/qasm/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcav/error.hpp"

namespace qcav::qasm {

namespace {

enum class Tok {
  Identifier,
  Integer,
  Real,
  String,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Arrow,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation location;
};

class Lexer {
public:
  explicit Lexer(std::string_view source) : src_(source) {
    // tolerate a UTF-8 BOM at the start of exported files
    if (src_.substr(0, 3) == "\xef\xbb\xbf")
      advance(3);
  }

  Token next() {
    skip_trivia();
    Token tok;
    tok.location = here();
    if (pos_ >= src_.size()) {
      tok.kind = Tok::End;
      return tok;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        advance(1);
      tok.kind = Tok::Identifier;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance(1);
      tok.kind = Tok::Integer;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        advance(1);
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance(1);
        tok.kind = Tok::Real;
      }
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '"') {
      advance(1);
      std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n')
        advance(1);
      if (pos_ >= src_.size() || src_[pos_] != '"')
        throw Error(ErrorKind::SyntaxError, "unterminated string literal",
                    tok.location);
      tok.kind = Tok::String;
      tok.text = std::string(src_.substr(start, pos_ - start));
      advance(1);
      return tok;
    }
    switch (c) {
    case '[':
      tok.kind = Tok::LBracket;
      break;
    case ']':
      tok.kind = Tok::RBracket;
      break;
    case '(':
      tok.kind = Tok::LParen;
      break;
    case ')':
      tok.kind = Tok::RParen;
      break;
    case ',':
      tok.kind = Tok::Comma;
      break;
    case ';':
      tok.kind = Tok::Semicolon;
      break;
    case '-':
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        tok.kind = Tok::Arrow;
        advance(2);
        return tok;
      }
      throw Error(ErrorKind::SyntaxError,
                  std::string("unexpected character '") + c + "'",
                  tok.location);
    default:
      throw Error(ErrorKind::SyntaxError,
                  std::string("unexpected character '") + c + "'",
                  tok.location);
    }
    tok.text = std::string(1, c);
    advance(1);
    return tok;
  }

private:
  SourceLocation here() const { return {line_, column_, pos_}; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::map<std::string, StmtKind> &gate_table() {
  static const std::map<std::string, StmtKind> table = {
      {"cx", StmtKind::CX}, {"x", StmtKind::X},   {"y", StmtKind::Y},
      {"z", StmtKind::Z},   {"id", StmtKind::ID}, {"h", StmtKind::H},
      {"cz", StmtKind::CZ},
  };
  return table;
}

bool reserved_word(const std::string &word) {
  static const std::set<std::string> words = {
      "OPENQASM", "qreg",    "creg", "include", "gate", "barrier",
      "measure",  "delay",   "cx",   "x",       "y",    "z",
      "id",       "h",       "cz",   "if",      "reset", "opaque",
      "pi",       "U",       "CX",
  };
  return words.count(word) > 0;
}

class Parser {
public:
  explicit Parser(std::string_view source) : lexer_(source) { bump(); }

  QasmAst run() {
    parse_header();
    while (current_.kind != Tok::End)
      parse_statement();
    return std::move(ast_);
  }

private:
  void bump() { current_ = lexer_.next(); }

  Token expect(Tok kind, const char *what) {
    if (current_.kind != kind)
      throw Error(ErrorKind::SyntaxError,
                  std::string("expected ") + what + describe_current(),
                  current_.location);
    Token tok = current_;
    bump();
    return tok;
  }

  std::string describe_current() const {
    if (current_.kind == Tok::End)
      return " before end of file";
    if (current_.text.empty())
      return "";
    return " before '" + current_.text + "'";
  }

  void parse_header() {
    if (current_.kind != Tok::Identifier || current_.text != "OPENQASM")
      throw Error(ErrorKind::MissingHeader,
                  "file must start with 'OPENQASM 2.0;'", current_.location);
    bump();
    if (current_.kind != Tok::Real && current_.kind != Tok::Integer)
      throw Error(ErrorKind::MissingHeader, "expected version after OPENQASM",
                  current_.location);
    if (current_.text != "2.0")
      throw Error(ErrorKind::MissingHeader,
                  "unsupported OPENQASM version '" + current_.text +
                      "' (only 2.0 is accepted)",
                  current_.location);
    bump();
    expect(Tok::Semicolon, "';'");
  }

  void parse_statement() {
    Token head = expect(Tok::Identifier, "a statement");
    const std::string &word = head.text;
    if (word == "include") {
      expect(Tok::String, "an include path");
      expect(Tok::Semicolon, "';'");
      return; // includes carry no information the scanner uses
    }
    if (word == "qreg" || word == "creg") {
      parse_register_decl(head, word == "qreg");
      return;
    }
    if (word == "delay") {
      parse_delay(head);
      return;
    }
    if (word == "measure") {
      parse_measure(head);
      return;
    }
    if (word == "barrier") {
      parse_barrier(head);
      return;
    }
    auto gate = gate_table().find(word);
    if (gate != gate_table().end()) {
      parse_gate(head, gate->second);
      return;
    }
    if (word == "gate")
      throw Error(ErrorKind::UnknownGate,
                  "user-defined gate definitions are not supported",
                  head.location);
    throw Error(ErrorKind::UnknownGate, "unknown gate '" + word + "'",
                head.location);
  }

  void parse_register_decl(const Token &head, bool quantum) {
    Token name = expect(Tok::Identifier, "a register name");
    if (reserved_word(name.text))
      throw Error(ErrorKind::SyntaxError,
                  "'" + name.text + "' cannot be used as a register name",
                  name.location);
    expect(Tok::LBracket, "'['");
    Token size = expect(Tok::Integer, "a register size");
    expect(Tok::RBracket, "']'");
    expect(Tok::Semicolon, "';'");
    long long n = std::stoll(size.text);
    if (n < 1)
      throw Error(ErrorKind::SyntaxError, "register size must be at least 1",
                  size.location);
    if (n > 1'000'000)
      throw Error(ErrorKind::SyntaxError, "register size too large",
                  size.location);
    if (registers_.count(name.text))
      throw Error(ErrorKind::DuplicateRegister,
                  "register '" + name.text + "' already declared",
                  name.location);
    RegisterDecl decl{name.text, static_cast<int>(n), quantum, head.location};
    registers_[name.text] = decl;
    ast_.registers.push_back(decl);
  }

  struct ParsedOperand {
    Operand operand;
    SourceLocation location;
  };

  // id '[' int ']', checked against the declarations seen so far
  ParsedOperand parse_operand(bool quantum) {
    Token name = expect(Tok::Identifier, "a register reference");
    const RegisterDecl &decl = lookup(name, quantum);
    expect(Tok::LBracket, "'['");
    Token index = expect(Tok::Integer, "an index");
    expect(Tok::RBracket, "']'");
    long long i = std::stoll(index.text);
    if (i >= decl.size)
      throw Error(ErrorKind::QubitOutOfRange,
                  "index " + index.text + " out of range for '" + name.text +
                      "[" + std::to_string(decl.size) + "]'",
                  name.location);
    return {Operand{name.text, static_cast<int>(i)}, name.location};
  }

  const RegisterDecl &lookup(const Token &name, bool quantum) {
    auto it = registers_.find(name.text);
    if (it == registers_.end())
      throw Error(ErrorKind::SyntaxError,
                  "use of undeclared register '" + name.text + "'",
                  name.location);
    if (it->second.quantum != quantum)
      throw Error(ErrorKind::SyntaxError,
                  quantum ? "expected a quantum register, '" + name.text +
                                "' is classical"
                          : "expected a classical register, '" + name.text +
                                "' is quantum",
                  name.location);
    return it->second;
  }

  void parse_gate(const Token &head, StmtKind kind) {
    Statement stmt;
    stmt.kind = kind;
    stmt.location = head.location;
    std::size_t arity = (kind == StmtKind::CX || kind == StmtKind::CZ) ? 2 : 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (i > 0)
        expect(Tok::Comma, "','");
      ParsedOperand op = parse_operand(/*quantum=*/true);
      for (const Operand &seen : stmt.qubits)
        if (seen == op.operand)
          throw Error(ErrorKind::SyntaxError,
                      "duplicate operand '" + op.operand.reg + "[" +
                          std::to_string(op.operand.index) + "]'",
                      op.location);
      stmt.qubits.push_back(op.operand);
    }
    expect(Tok::Semicolon, "';'");
    ast_.statements.push_back(std::move(stmt));
  }

  void parse_delay(const Token &head) {
    expect(Tok::LParen, "'('");
    Token duration = expect(Tok::Integer, "a delay duration in dt");
    expect(Tok::RParen, "')'");
    Statement stmt;
    stmt.kind = StmtKind::DELAY;
    stmt.location = head.location;
    stmt.duration_dt = std::stoll(duration.text);
    stmt.qubits.push_back(parse_operand(/*quantum=*/true).operand);
    expect(Tok::Semicolon, "';'");
    ast_.statements.push_back(std::move(stmt));
  }

  void parse_barrier(const Token &head) {
    Statement stmt;
    stmt.kind = StmtKind::BARRIER;
    stmt.location = head.location;
    while (true) {
      Token name = expect(Tok::Identifier, "a register reference");
      const RegisterDecl &decl = lookup(name, /*quantum=*/true);
      if (current_.kind == Tok::LBracket) {
        bump();
        Token index = expect(Tok::Integer, "an index");
        expect(Tok::RBracket, "']'");
        long long i = std::stoll(index.text);
        if (i >= decl.size)
          throw Error(ErrorKind::QubitOutOfRange,
                      "index " + index.text + " out of range for '" +
                          name.text + "[" + std::to_string(decl.size) + "]'",
                      name.location);
        stmt.qubits.push_back(Operand{name.text, static_cast<int>(i)});
      } else {
        // whole-register form: barrier q;
        for (int i = 0; i < decl.size; ++i)
          stmt.qubits.push_back(Operand{name.text, i});
      }
      if (current_.kind != Tok::Comma)
        break;
      bump();
    }
    expect(Tok::Semicolon, "';'");
    ast_.statements.push_back(std::move(stmt));
  }

  void parse_measure(const Token &head) {
    Token qname = expect(Tok::Identifier, "a quantum register");
    const RegisterDecl &qdecl = lookup(qname, /*quantum=*/true);
    std::optional<int> qindex;
    if (current_.kind == Tok::LBracket) {
      bump();
      Token index = expect(Tok::Integer, "an index");
      expect(Tok::RBracket, "']'");
      long long i = std::stoll(index.text);
      if (i >= qdecl.size)
        throw Error(ErrorKind::QubitOutOfRange,
                    "index " + index.text + " out of range for '" + qname.text +
                        "[" + std::to_string(qdecl.size) + "]'",
                    qname.location);
      qindex = static_cast<int>(i);
    }
    expect(Tok::Arrow, "'->'");
    Token cname = expect(Tok::Identifier, "a classical register");
    const RegisterDecl &cdecl = lookup(cname, /*quantum=*/false);
    std::optional<int> cindex;
    if (current_.kind == Tok::LBracket) {
      bump();
      Token index = expect(Tok::Integer, "an index");
      expect(Tok::RBracket, "']'");
      long long i = std::stoll(index.text);
      if (i >= cdecl.size)
        throw Error(ErrorKind::QubitOutOfRange,
                    "index " + index.text + " out of range for '" + cname.text +
                        "[" + std::to_string(cdecl.size) + "]'",
                    cname.location);
      cindex = static_cast<int>(i);
    }
    expect(Tok::Semicolon, "';'");

    if (qindex.has_value() != cindex.has_value())
      throw Error(ErrorKind::SyntaxError,
                  "measure must index both sides or neither", head.location);
    if (!qindex) {
      // whole-register form: measure q -> c; expands element-wise
      if (qdecl.size != cdecl.size)
        throw Error(ErrorKind::SyntaxError,
                    "register sizes differ in whole-register measure",
                    head.location);
      for (int i = 0; i < qdecl.size; ++i) {
        Statement stmt;
        stmt.kind = StmtKind::MEASURE;
        stmt.location = head.location;
        stmt.qubits.push_back(Operand{qname.text, i});
        stmt.classical = Operand{cname.text, i};
        ast_.statements.push_back(std::move(stmt));
      }
      return;
    }
    Statement stmt;
    stmt.kind = StmtKind::MEASURE;
    stmt.location = head.location;
    stmt.qubits.push_back(Operand{qname.text, *qindex});
    stmt.classical = Operand{cname.text, *cindex};
    ast_.statements.push_back(std::move(stmt));
  }

  Lexer lexer_;
  Token current_;
  QasmAst ast_;
  std::map<std::string, RegisterDecl> registers_;
};

} // namespace

const char *stmt_name(StmtKind kind) {
  switch (kind) {
  case StmtKind::CX:
    return "cx";
  case StmtKind::X:
    return "x";
  case StmtKind::Y:
    return "y";
  case StmtKind::Z:
    return "z";
  case StmtKind::ID:
    return "id";
  case StmtKind::H:
    return "h";
  case StmtKind::CZ:
    return "cz";
  case StmtKind::BARRIER:
    return "barrier";
  case StmtKind::MEASURE:
    return "measure";
  case StmtKind::DELAY:
    return "delay";
  }
  return "?";
}

QasmAst parse(std::string_view source) { return Parser(source).run(); }

bool structurally_equal(const QasmAst &a, const QasmAst &b) {
  if (a.registers.size() != b.registers.size() ||
      a.statements.size() != b.statements.size())
    return false;
  for (std::size_t i = 0; i < a.registers.size(); ++i) {
    const RegisterDecl &ra = a.registers[i];
    const RegisterDecl &rb = b.registers[i];
    if (ra.name != rb.name || ra.size != rb.size || ra.quantum != rb.quantum)
      return false;
  }
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    const Statement &sa = a.statements[i];
    const Statement &sb = b.statements[i];
    if (sa.kind != sb.kind || sa.qubits != sb.qubits ||
        sa.classical != sb.classical || sa.duration_dt != sb.duration_dt)
      return false;
  }
  return true;
}

} // namespace qcav::qasm

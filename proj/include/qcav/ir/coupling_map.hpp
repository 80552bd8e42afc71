#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace qcav::ir {

// Which qubit pairs support two-qubit gates. Edges are unordered; absence of
// a map means fully coupled (handled by callers via optional<CouplingMap>).
class CouplingMap {
public:
  void add_edge(int a, int b);
  bool allows(int a, int b) const;
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<std::pair<int, int>> &edges() const { return edges_; }

  // Throws QubitOutOfRange if an edge mentions a qubit the circuit lacks.
  void validate_for(int qubit_count) const;

  // One edge per line: two non-negative integers separated by whitespace.
  // Blank lines and '#' comments are skipped. Throws FormatError.
  static CouplingMap parse(std::string_view text);
  static CouplingMap load(const std::string &path);

private:
  std::set<std::pair<int, int>> edges_; // normalized (lo, hi)
};

} // namespace qcav::ir

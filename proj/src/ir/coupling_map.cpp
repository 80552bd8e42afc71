#include "qcav/ir/coupling_map.hpp"

#include <fstream>
#include <sstream>

#include "qcav/error.hpp"

namespace qcav::ir {

void CouplingMap::add_edge(int a, int b) {
  if (a == b)
    throw Error(ErrorKind::FormatError, "coupling edge cannot be a self-loop");
  if (a < 0 || b < 0)
    throw Error(ErrorKind::FormatError, "coupling edge qubits must be >= 0");
  edges_.emplace(std::min(a, b), std::max(a, b));
}

bool CouplingMap::allows(int a, int b) const {
  return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
}

void CouplingMap::validate_for(int qubit_count) const {
  for (const auto &[lo, hi] : edges_)
    if (hi >= qubit_count)
      throw Error(ErrorKind::QubitOutOfRange,
                  "coupling map mentions qubit " + std::to_string(hi) +
                      " but the circuit has " + std::to_string(qubit_count));
}

CouplingMap CouplingMap::parse(std::string_view text) {
  CouplingMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    std::string trailing;
    if (!(fields >> a >> b) || (fields >> trailing))
      throw Error(ErrorKind::FormatError,
                  "expected exactly two qubit indices",
                  SourceLocation{line_no, 1, 0});
    if (a < 0 || b < 0 || a == b || a > 1'000'000 || b > 1'000'000)
      throw Error(ErrorKind::FormatError,
                  "invalid coupling edge " + std::to_string(a) + " " +
                      std::to_string(b),
                  SourceLocation{line_no, 1, 0});
    map.add_edge(static_cast<int>(a), static_cast<int>(b));
  }
  return map;
}

CouplingMap CouplingMap::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::FormatError, "cannot open coupling map: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

} // namespace qcav::ir

#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>

namespace qcav {

// Position of a token in one source file. line/column are 1-based,
// byte_offset is 0-based and strictly increasing across the tokens of a file.
struct SourceLocation {
  int line = 1;
  int column = 1;
  std::size_t byte_offset = 0;

  auto operator<=>(const SourceLocation &) const = default;
};

std::ostream &operator<<(std::ostream &os, const SourceLocation &loc);

} // namespace qcav

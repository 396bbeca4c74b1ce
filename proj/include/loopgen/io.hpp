#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "loopgen/core.hpp"

namespace loopgen {

// Cayley table text format: first non-comment line is n, followed by n lines
// of n whitespace-separated element indices. Lines starting with '#' are
// comments.

inline std::vector<std::vector<int>> read_cayley(std::istream& in) {
  std::vector<long> numbers;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long v;
    while (ls >> v) numbers.push_back(v);
    if (!ls.eof()) {
      std::string tok;
      ls.clear();
      ls >> tok;
      fail(Errc::bad_input,
           "line " + std::to_string(lineno) + ": bad token '" + tok + "'");
    }
  }
  if (numbers.empty()) fail(Errc::bad_input, "empty table file");
  long n = numbers[0];
  if (n < 1) fail(Errc::bad_input, "declared order must be positive");
  if (long(numbers.size()) != 1 + n * n)
    fail(Errc::bad_input, "expected " + std::to_string(n * n) +
                              " entries for order " + std::to_string(n) +
                              ", got " + std::to_string(numbers.size() - 1));
  std::vector<std::vector<int>> grid(size_t(n), std::vector<int>(size_t(n), 0));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      grid[size_t(a)][size_t(b)] = int(numbers[size_t(1 + a * n + b)]);
  return grid;
}

inline void write_cayley(std::ostream& out, const LoopTable& loop) {
  out << loop.size() << "\n";
  for (int a = 0; a < loop.size(); ++a) {
    for (int b = 0; b < loop.size(); ++b) {
      if (b) out << ' ';
      out << loop.mul(a, b);
    }
    out << "\n";
  }
}

} // namespace loopgen

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

// Shared conventions for the whole library:
//  - vertices are identified by name tokens (printable, non-whitespace, non-empty);
//  - every ordering (serialization, tie-breaking, search order) is shortlex on
//    names: shorter first, ties broken lexicographically.

namespace extord {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed; indicates a defect in this library, not bad input.
class DefectError : public std::logic_error {
 public:
  explicit DefectError(const std::string& what) : std::logic_error(what) {}
};

inline bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct ShortlexLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return shortlex_less(a, b); }
};

// 7-bit printable, no whitespace, non-empty.
inline bool valid_vertex_token(std::string_view name) {
  if (name.empty()) return false;
  for (unsigned char c : name)
    if (c < 0x21 || c > 0x7e) return false;
  return true;
}

}  // namespace extord

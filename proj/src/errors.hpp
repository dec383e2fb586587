#ifndef COVGEN_ERRORS_HPP
#define COVGEN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covgen {

// Refusal to exceed a configured resource limit (bitmap size, verification
// budget, scan table size, tree node guard). Distinct from invalid_argument:
// the request is well-formed, just too big for the configured limits.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `line` is 1-based; 0 when no line applies. The
// message already contains line/column, the accessor exists for callers that
// want to jump to the spot.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A small-cover lookup failed for an intersection size the cache should hold.
class CacheMissError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covgen

#endif  // COVGEN_ERRORS_HPP

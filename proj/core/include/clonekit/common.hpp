#ifndef CLONEKIT_COMMON_HPP
#define CLONEKIT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clonekit {

// Elements of the base set A = {0, ..., k-1}.
using element_t = std::uint8_t;

constexpr int min_domain = 2;
constexpr int max_domain = 12;

// Resource limits for the exhaustive machinery. Exceeding a budget is an
// error, never a silently truncated answer.
struct Budgets {
  std::uint64_t max_tables = 20'000'000;       // candidate tables per enumeration call
  std::uint64_t max_assignments = 100'000'000; // pointwise assignments in a minor search
  std::uint64_t max_cells = std::uint64_t{1} << 24; // dense table cells (k^n, k^r)
};

// Malformed or mismatched inputs (wrong domain, arity, broken invariants).
class structural_error : public std::runtime_error {
public:
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget was exhausted before the computation finished.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A membership question that cannot be decided at the configured bound.
class undecided_error : public std::runtime_error {
public:
  explicit undecided_error(const std::string& what) : std::runtime_error(what) {}
};

// k^n with overflow check.
inline std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      throw structural_error("ipow: overflow");
    r *= base;
  }
  return r;
}

inline void check_domain(int k) {
  if (k < min_domain || k > max_domain)
    throw structural_error("domain size " + std::to_string(k) + " outside [" +
                           std::to_string(min_domain) + "," + std::to_string(max_domain) + "]");
}

// Operation tables additionally admit one-element domains, which arise as
// quotients by the full relation.
inline void check_value_domain(int k) {
  if (k < 1 || k > max_domain)
    throw structural_error("domain size " + std::to_string(k) + " outside [1," +
                           std::to_string(max_domain) + "]");
}

} // namespace clonekit

#endif

#ifndef CLONEKIT_OP_TABLE_HPP
#define CLONEKIT_OP_TABLE_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "clonekit/common.hpp"

namespace clonekit {

// Mixed-radix, big-endian tuple index: the first coordinate is the most
// significant digit. Fixed once; all file formats use this order.
std::uint64_t encode_tuple(std::span<const element_t> tuple, int k);
void decode_tuple(std::uint64_t index, int k, std::span<element_t> out);
std::vector<element_t> decode_tuple(std::uint64_t index, int k, int n);

// A finitary operation A^n -> A as a flat value table in tuple-index order.
// Arity 0 is not representable; constants are arity-1 tables.
struct OpTable {
  int k = 0;
  int arity = 0;
  std::vector<element_t> table;

  OpTable() = default;
  OpTable(int k, int arity, std::vector<element_t> table);

  std::uint64_t size() const { return table.size(); }
  element_t at(std::uint64_t index) const { return table[index]; }
  element_t operator()(std::span<const element_t> args) const;

  bool operator==(const OpTable&) const = default;
  std::strong_ordering operator<=>(const OpTable&) const = default;
};

// An m-tuple of operations sharing k and arity (a function A^n -> A^m).
struct OpVector {
  std::vector<OpTable> components;

  OpVector() = default;
  explicit OpVector(std::vector<OpTable> comps);

  int k() const { return components.front().k; }
  int arity() const { return components.front().arity; }
  std::size_t m() const { return components.size(); }
};

OpTable projection(int k, int n, int i); // 1 <= i <= n
OpTable constant_op(int k, int n, element_t c);

// result(x) = g(h_1(x), ..., h_m(x))
OpTable compose(const OpTable& g, const OpVector& hs);

std::vector<element_t> range_of(const OpTable& f); // sorted
std::uint32_t range_mask(const OpTable& f);

bool depends_on(const OpTable& f, int i); // 1 <= i <= arity
int essential_arity(const OpTable& f);

// The unary table x -> u(x_i) as an n-ary operation.
OpTable unary_as_nary(const OpTable& u, int n, int i);

// True iff f is p_i^(n) for some i.
bool is_projection(const OpTable& f, int* which = nullptr);

} // namespace clonekit

#endif

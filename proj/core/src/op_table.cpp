#include "clonekit/op_table.hpp"

#include <algorithm>

namespace clonekit {

std::uint64_t encode_tuple(std::span<const element_t> tuple, int k) {
  check_value_domain(k);
  if (tuple.empty())
    throw structural_error("encode_tuple: empty tuple");
  std::uint64_t index = 0;
  for (element_t a : tuple) {
    if (a >= k)
      throw structural_error("encode_tuple: entry " + std::to_string(a) +
                             " outside domain of size " + std::to_string(k));
    index = index * k + a;
  }
  return index;
}

void decode_tuple(std::uint64_t index, int k, std::span<element_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<element_t>(index % k);
    index /= k;
  }
}

std::vector<element_t> decode_tuple(std::uint64_t index, int k, int n) {
  std::vector<element_t> t(n);
  decode_tuple(index, k, t);
  return t;
}

OpTable::OpTable(int k_, int arity_, std::vector<element_t> table_)
    : k(k_), arity(arity_), table(std::move(table_)) {
  check_value_domain(k);
  if (arity < 1)
    throw structural_error("OpTable: arity must be >= 1");
  if (table.size() != ipow(k, arity))
    throw structural_error("OpTable: table length != k^arity");
  for (element_t v : table)
    if (v >= k)
      throw structural_error("OpTable: entry outside domain");
}

element_t OpTable::operator()(std::span<const element_t> args) const {
  if (static_cast<int>(args.size()) != arity)
    throw structural_error("OpTable: wrong argument count");
  return table[encode_tuple(args, k)];
}

OpVector::OpVector(std::vector<OpTable> comps) : components(std::move(comps)) {
  if (components.empty())
    throw structural_error("OpVector: must be nonempty");
  for (const OpTable& f : components)
    if (f.k != components.front().k || f.arity != components.front().arity)
      throw structural_error("OpVector: components disagree on (k, arity)");
}

OpTable projection(int k, int n, int i) {
  check_value_domain(k);
  if (i < 1 || i > n)
    throw structural_error("projection: position out of range");
  std::uint64_t sz = ipow(k, n);
  std::vector<element_t> t(sz);
  std::vector<element_t> args(n);
  for (std::uint64_t x = 0; x < sz; ++x) {
    decode_tuple(x, k, args);
    t[x] = args[i - 1];
  }
  return OpTable(k, n, std::move(t));
}

OpTable constant_op(int k, int n, element_t c) {
  check_value_domain(k);
  if (c >= k)
    throw structural_error("constant_op: value outside domain");
  return OpTable(k, n, std::vector<element_t>(ipow(k, n), c));
}

OpTable compose(const OpTable& g, const OpVector& hs) {
  if (g.k != hs.k())
    throw structural_error("compose: domain mismatch");
  if (static_cast<std::size_t>(g.arity) != hs.m())
    throw structural_error("compose: outer arity != number of inner components");
  const int k = g.k;
  const int n = hs.arity();
  std::uint64_t sz = ipow(k, n);
  std::vector<element_t> t(sz);
  std::vector<element_t> inner(g.arity);
  for (std::uint64_t x = 0; x < sz; ++x) {
    for (int j = 0; j < g.arity; ++j)
      inner[j] = hs.components[j].table[x];
    t[x] = g.table[encode_tuple(inner, k)];
  }
  return OpTable(k, n, std::move(t));
}

std::uint32_t range_mask(const OpTable& f) {
  std::uint32_t m = 0;
  for (element_t v : f.table)
    m |= (1u << v);
  return m;
}

std::vector<element_t> range_of(const OpTable& f) {
  std::uint32_t m = range_mask(f);
  std::vector<element_t> r;
  for (int a = 0; a < f.k; ++a)
    if (m & (1u << a))
      r.push_back(static_cast<element_t>(a));
  return r;
}

bool depends_on(const OpTable& f, int i) {
  if (i < 1 || i > f.arity)
    throw structural_error("depends_on: position out of range");
  // stride of coordinate i in the big-endian index
  std::uint64_t stride = ipow(f.k, f.arity - i);
  std::uint64_t sz = f.size();
  for (std::uint64_t x = 0; x < sz; ++x) {
    std::uint64_t digit = (x / stride) % f.k;
    if (digit + 1 < static_cast<std::uint64_t>(f.k)) {
      if (f.table[x] != f.table[x + stride])
        return true;
    }
  }
  return false;
}

int essential_arity(const OpTable& f) {
  int e = 0;
  for (int i = 1; i <= f.arity; ++i)
    if (depends_on(f, i))
      ++e;
  return e;
}

OpTable unary_as_nary(const OpTable& u, int n, int i) {
  if (u.arity != 1)
    throw structural_error("unary_as_nary: inner table must be unary");
  std::uint64_t sz = ipow(u.k, n);
  std::uint64_t stride = ipow(u.k, n - i);
  std::vector<element_t> t(sz);
  for (std::uint64_t x = 0; x < sz; ++x)
    t[x] = u.table[(x / stride) % u.k];
  return OpTable(u.k, n, std::move(t));
}

bool is_projection(const OpTable& f, int* which) {
  for (int i = 1; i <= f.arity; ++i) {
    std::uint64_t stride = ipow(f.k, f.arity - i);
    bool ok = true;
    for (std::uint64_t x = 0; x < f.size() && ok; ++x)
      ok = f.table[x] == static_cast<element_t>((x / stride) % f.k);
    if (ok) {
      if (which)
        *which = i;
      return true;
    }
  }
  return false;
}

} // namespace clonekit

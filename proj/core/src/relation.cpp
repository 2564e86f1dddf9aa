#include "clonekit/relation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace clonekit {

Relation::Relation(int k, int arity) : k_(k), arity_(arity) {
  check_domain(k);
  if (arity < 1)
    throw structural_error("Relation: arity must be >= 1");
  std::uint64_t sz = ipow(k, arity);
  if (sz > Budgets{}.max_cells)
    throw budget_error("Relation: k^arity exceeds dense table budget");
  member_.assign(sz, 0);
}

Relation Relation::from_tuples(int k, int arity,
                               const std::vector<std::vector<element_t>>& tuples) {
  Relation r(k, arity);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw structural_error("Relation: tuple of wrong arity");
    r.insert(t);
  }
  return r;
}

Relation Relation::full(int k, int arity) {
  Relation r(k, arity);
  std::fill(r.member_.begin(), r.member_.end(), 1);
  return r;
}

Relation Relation::equality(int k) {
  Relation r(k, 2);
  for (int a = 0; a < k; ++a)
    r.member_[static_cast<std::uint64_t>(a) * k + a] = 1;
  return r;
}

Relation Relation::all_pairs(int k) { return full(k, 2); }

Relation Relation::from_partition(int k, const std::vector<std::vector<element_t>>& blocks) {
  Relation r(k, 2);
  std::vector<bool> seen(k, false);
  for (const auto& b : blocks) {
    for (element_t a : b) {
      if (a >= k || seen[a])
        throw structural_error("Relation: blocks do not partition A");
      seen[a] = true;
    }
    for (element_t a : b)
      for (element_t c : b)
        r.member_[static_cast<std::uint64_t>(a) * k + c] = 1;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw structural_error("Relation: blocks do not cover A");
  return r;
}

Relation Relation::graph_of(const OpTable& unary) {
  if (unary.arity != 1)
    throw structural_error("graph_of: table must be unary");
  Relation r(unary.k, 2);
  for (int a = 0; a < unary.k; ++a)
    r.member_[static_cast<std::uint64_t>(a) * unary.k + unary.table[a]] = 1;
  return r;
}

Relation Relation::subset(int k, const std::vector<element_t>& members) {
  Relation r(k, 1);
  for (element_t a : members) {
    if (a >= k)
      throw structural_error("Relation: subset member outside domain");
    r.member_[a] = 1;
  }
  return r;
}

bool Relation::contains(std::span<const element_t> t) const {
  return member_[encode_tuple(t, k_)] != 0;
}

void Relation::insert(std::span<const element_t> t) { member_[encode_tuple(t, k_)] = 1; }

std::uint64_t Relation::count() const {
  return static_cast<std::uint64_t>(std::count(member_.begin(), member_.end(), 1));
}

std::vector<std::vector<element_t>> Relation::tuples() const {
  std::vector<std::vector<element_t>> out;
  for (std::uint64_t idx = 0; idx < member_.size(); ++idx)
    if (member_[idx])
      out.push_back(decode_tuple(idx, k_, arity_));
  return out;
}

bool Relation::subset_of(const Relation& o) const {
  if (k_ != o.k_ || arity_ != o.arity_)
    throw structural_error("Relation: comparing relations of different shape");
  for (std::uint64_t i = 0; i < member_.size(); ++i)
    if (member_[i] && !o.member_[i])
      return false;
  return true;
}

bool Relation::is_equivalence() const {
  if (arity_ != 2)
    return false;
  for (int a = 0; a < k_; ++a)
    if (!member_[static_cast<std::uint64_t>(a) * k_ + a])
      return false;
  for (int a = 0; a < k_; ++a)
    for (int b = 0; b < k_; ++b) {
      if (member_[static_cast<std::uint64_t>(a) * k_ + b] !=
          member_[static_cast<std::uint64_t>(b) * k_ + a])
        return false;
      if (!member_[static_cast<std::uint64_t>(a) * k_ + b])
        continue;
      for (int c = 0; c < k_; ++c)
        if (member_[static_cast<std::uint64_t>(b) * k_ + c] &&
            !member_[static_cast<std::uint64_t>(a) * k_ + c])
          return false;
    }
  return true;
}

std::vector<int> Relation::block_index() const {
  if (!is_equivalence())
    throw structural_error("Relation: block_index on a non-equivalence");
  std::vector<int> idx(k_, -1);
  int next = 0;
  for (int a = 0; a < k_; ++a) {
    if (idx[a] >= 0)
      continue;
    // a is the least element of its block
    for (int b = a; b < k_; ++b)
      if (member_[static_cast<std::uint64_t>(a) * k_ + b])
        idx[b] = next;
    ++next;
  }
  return idx;
}

std::vector<std::vector<element_t>> Relation::blocks() const {
  std::vector<int> idx = block_index();
  int count = *std::max_element(idx.begin(), idx.end()) + 1;
  std::vector<std::vector<element_t>> out(count);
  for (int a = 0; a < k_; ++a)
    out[idx[a]].push_back(static_cast<element_t>(a));
  return out;
}

bool preserves(const OpTable& f, const Relation& rho) {
  if (f.k != rho.k())
    throw structural_error("preserves: domain mismatch");
  const int n = f.arity;
  const int r = rho.arity();
  auto members = rho.tuples();
  if (members.empty())
    return true;
  const std::uint64_t m = members.size();
  // odometer over n member-columns
  std::vector<std::uint64_t> col(n, 0);
  std::vector<element_t> row(n);
  std::vector<element_t> image(r);
  while (true) {
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < n; ++i)
        row[i] = members[col[i]][j];
      image[j] = f(row);
    }
    if (!rho.contains(image))
      return false;
    int pos = n - 1;
    while (pos >= 0 && ++col[pos] == m) {
      col[pos] = 0;
      --pos;
    }
    if (pos < 0)
      break;
  }
  return true;
}

OpTable quotient_op(const OpTable& f, const Relation& theta) {
  if (f.k != theta.k())
    throw structural_error("quotient_op: domain mismatch");
  if (!theta.is_equivalence())
    throw structural_error("quotient_op: theta is not an equivalence");
  if (!preserves(f, theta))
    throw structural_error("quotient_op: f does not preserve theta");
  std::vector<int> bi = theta.block_index();
  auto blks = theta.blocks();
  const int b = static_cast<int>(blks.size());
  std::uint64_t sz = ipow(b, f.arity);
  std::vector<element_t> t(sz);
  std::vector<element_t> blockArgs(f.arity), reps(f.arity);
  for (std::uint64_t x = 0; x < sz; ++x) {
    decode_tuple(x, b, blockArgs);
    for (int i = 0; i < f.arity; ++i)
      reps[i] = blks[blockArgs[i]][0];
    t[x] = static_cast<element_t>(bi[f(reps)]);
  }
  return OpTable(b, f.arity, std::move(t));
}

bool power_related(const Relation& rho, const std::vector<std::vector<element_t>>& rows) {
  if (static_cast<int>(rows.size()) != rho.arity())
    throw structural_error("power_related: wrong number of rows");
  std::size_t n = rows.front().size();
  std::vector<element_t> col(rows.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      col[i] = rows[i][j];
    if (!rho.contains(col))
      return false;
  }
  return true;
}

bool totally_reflexive(const Relation& rho) {
  const int r = rho.arity();
  if (r == 1)
    return true;
  std::vector<element_t> t(r);
  for (std::uint64_t idx = 0; idx < rho.slots(); ++idx) {
    decode_tuple(idx, rho.k(), t);
    bool repeat = false;
    for (int i = 0; i < r && !repeat; ++i)
      for (int j = i + 1; j < r && !repeat; ++j)
        repeat = t[i] == t[j];
    if (repeat && !rho.contains_index(idx))
      return false;
  }
  return true;
}

bool totally_symmetric(const Relation& rho) {
  const int r = rho.arity();
  std::vector<element_t> t(r), s(r);
  std::vector<int> perm(r);
  for (std::uint64_t idx = 0; idx < rho.slots(); ++idx) {
    if (!rho.contains_index(idx))
      continue;
    decode_tuple(idx, rho.k(), t);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int i = 0; i < r; ++i)
        s[i] = t[perm[i]];
      if (!rho.contains(s))
        return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

Relation make_central_sigma(int k, element_t c) {
  if (k < 3)
    throw structural_error("make_central_sigma: needs k >= 3");
  check_domain(k);
  if (c >= k)
    throw structural_error("make_central_sigma: center outside domain");
  const int r = k - 1;
  Relation rho(k, r);
  std::vector<element_t> t(r);
  for (std::uint64_t idx = 0; idx < rho.slots(); ++idx) {
    decode_tuple(idx, k, t);
    bool in = false;
    for (int i = 0; i < r && !in; ++i) {
      if (t[i] == c)
        in = true;
      for (int j = i + 1; j < r && !in; ++j)
        in = t[i] == t[j];
    }
    if (in)
      rho.insert_index(idx);
  }
  return rho;
}

CentralityReport validate_central(const Relation& rho) {
  CentralityReport rep;
  if (rho.empty() || rho == Relation::full(rho.k(), rho.arity())) {
    rep.reason = CentralityReport::Reason::trivial;
    return rep;
  }
  if (!totally_reflexive(rho)) {
    rep.reason = CentralityReport::Reason::not_reflexive;
    return rep;
  }
  if (!totally_symmetric(rho)) {
    rep.reason = CentralityReport::Reason::not_symmetric;
    return rep;
  }
  const int r = rho.arity();
  for (int c = 0; c < rho.k(); ++c) {
    // {c} x A^{r-1} subseteq rho
    bool central = true;
    std::vector<element_t> t(r);
    t[0] = static_cast<element_t>(c);
    std::uint64_t rest = ipow(rho.k(), r - 1);
    for (std::uint64_t x = 0; x < rest && central; ++x) {
      decode_tuple(x, rho.k(), std::span<element_t>(t.data() + 1, r - 1));
      central = rho.contains(t);
    }
    if (central)
      rep.centers.push_back(static_cast<element_t>(c));
  }
  if (rep.centers.empty())
    rep.reason = CentralityReport::Reason::trivial; // reflexive+symmetric but no center
  return rep;
}

bool validate_h_regular(const HRegularFamily& fam, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why)
      *why = msg;
    return false;
  };
  if (fam.h < 3)
    return fail("h must be >= 3");
  if (fam.thetas.empty())
    return fail("family must be nonempty");
  std::vector<std::vector<int>> idx;
  for (const Relation& th : fam.thetas) {
    if (th.k() != fam.k)
      return fail("member on wrong domain");
    if (!th.is_equivalence())
      return fail("member is not an equivalence");
    auto bi = th.block_index();
    if (*std::max_element(bi.begin(), bi.end()) + 1 != fam.h)
      return fail("member does not have exactly h blocks");
    idx.push_back(std::move(bi));
  }
  // nonempty intersection of every block choice, brute force over h^r choices
  const int r = static_cast<int>(fam.thetas.size());
  std::vector<int> choice(r, 0);
  while (true) {
    bool hit = false;
    for (int a = 0; a < fam.k && !hit; ++a) {
      hit = true;
      for (int i = 0; i < r && hit; ++i)
        hit = idx[i][a] == choice[i];
    }
    if (!hit)
      return fail("some block choice has empty intersection");
    int pos = r - 1;
    while (pos >= 0 && ++choice[pos] == fam.h) {
      choice[pos] = 0;
      --pos;
    }
    if (pos < 0)
      break;
  }
  return true;
}

Relation make_h_regular(const HRegularFamily& fam) {
  std::string why;
  if (!validate_h_regular(fam, &why))
    throw structural_error("make_h_regular: invalid family: " + why);
  std::vector<std::vector<int>> idx;
  for (const Relation& th : fam.thetas)
    idx.push_back(th.block_index());
  Relation lambda(fam.k, fam.h);
  std::vector<element_t> t(fam.h);
  for (std::uint64_t x = 0; x < lambda.slots(); ++x) {
    decode_tuple(x, fam.k, t);
    bool transversal_somewhere = false;
    for (const auto& bi : idx) {
      std::uint32_t seen = 0;
      for (element_t a : t)
        seen |= (1u << bi[a]);
      if (static_cast<int>(std::popcount(seen)) == fam.h) {
        transversal_somewhere = true;
        break;
      }
    }
    if (!transversal_somewhere)
      lambda.insert_index(x);
  }
  return lambda;
}

Relation make_prime_affine(int k, const std::vector<std::vector<element_t>>& add) {
  check_domain(k);
  if (static_cast<int>(add.size()) != k)
    throw structural_error("make_prime_affine: addition table has wrong size");
  for (const auto& row : add) {
    if (static_cast<int>(row.size()) != k)
      throw structural_error("make_prime_affine: addition table has wrong size");
    for (element_t v : row)
      if (v >= k)
        throw structural_error("make_prime_affine: entry outside domain");
  }
  // validate elementary abelian group with neutral element found from the table
  int zero = -1;
  for (int e = 0; e < k; ++e) {
    bool neutral = true;
    for (int a = 0; a < k && neutral; ++a)
      neutral = add[e][a] == a && add[a][e] == a;
    if (neutral) {
      zero = e;
      break;
    }
  }
  if (zero < 0)
    throw structural_error("make_prime_affine: no neutral element");
  std::vector<int> neg(k, -1);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (add[a][b] == zero)
        neg[a] = b;
  for (int a = 0; a < k; ++a)
    if (neg[a] < 0)
      throw structural_error("make_prime_affine: missing inverse");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (add[a][b] != add[b][a])
        throw structural_error("make_prime_affine: not commutative");
      for (int c = 0; c < k; ++c)
        if (add[add[a][b]][c] != add[a][add[b][c]])
          throw structural_error("make_prime_affine: not associative");
    }
  // all nonzero elements must share the same prime order
  int p = 0;
  for (int a = 0; a < k; ++a) {
    if (a == zero)
      continue;
    int ord = 1, cur = a;
    while (cur != zero) {
      cur = add[cur][a];
      ++ord;
    }
    if (p == 0)
      p = ord;
    if (ord != p)
      throw structural_error("make_prime_affine: element orders differ");
  }
  for (int d = 2; d < p; ++d)
    if (p % d == 0)
      throw structural_error("make_prime_affine: exponent is not prime");

  Relation rho(k, 4);
  std::vector<element_t> t(4);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z) {
        t[0] = static_cast<element_t>(x);
        t[1] = static_cast<element_t>(y);
        t[2] = static_cast<element_t>(z);
        t[3] = add[add[x][neg[y]]][z];
        rho.insert(t);
      }
  return rho;
}

bool is_bounded_order(const Relation& rho, element_t* least, element_t* greatest) {
  if (rho.arity() != 2)
    return false;
  const int k = rho.k();
  auto rel = [&](int a, int b) {
    element_t t[2] = {static_cast<element_t>(a), static_cast<element_t>(b)};
    return rho.contains(t);
  };
  for (int a = 0; a < k; ++a)
    if (!rel(a, a))
      return false;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a != b && rel(a, b) && rel(b, a))
        return false;
      if (!rel(a, b))
        continue;
      for (int c = 0; c < k; ++c)
        if (rel(b, c) && !rel(a, c))
          return false;
    }
  int bottom = -1, top = -1;
  for (int a = 0; a < k; ++a) {
    bool isLeast = true, isGreatest = true;
    for (int b = 0; b < k; ++b) {
      isLeast = isLeast && rel(a, b);
      isGreatest = isGreatest && rel(b, a);
    }
    if (isLeast)
      bottom = a;
    if (isGreatest)
      top = a;
  }
  if (bottom < 0 || top < 0)
    return false;
  if (least)
    *least = static_cast<element_t>(bottom);
  if (greatest)
    *greatest = static_cast<element_t>(top);
  return true;
}

bool is_prime_permutation(const OpTable& unary) {
  if (unary.arity != 1)
    return false;
  const int k = unary.k;
  std::vector<bool> seen(k, false);
  for (element_t v : unary.table) {
    if (seen[v])
      return false;
    seen[v] = true;
  }
  int cycle_len = 0;
  std::vector<bool> visited(k, false);
  for (int a = 0; a < k; ++a) {
    if (visited[a])
      continue;
    int len = 0, cur = a;
    do {
      visited[cur] = true;
      cur = unary.table[cur];
      ++len;
    } while (cur != a);
    if (len == 1)
      return false; // fixed point
    if (cycle_len == 0)
      cycle_len = len;
    if (len != cycle_len)
      return false;
  }
  for (int d = 2; d < cycle_len; ++d)
    if (cycle_len % d == 0)
      return false;
  return cycle_len >= 2;
}

void validate_chain(const ChainE& chain) {
  check_domain(chain.k);
  const Relation eq = Relation::equality(chain.k);
  const Relation full = Relation::all_pairs(chain.k);
  for (std::size_t i = 0; i < chain.relations.size(); ++i) {
    const Relation& rho = chain.relations[i];
    if (rho.k() != chain.k)
      throw structural_error("ChainE: member on wrong domain");
    if (!rho.is_equivalence())
      throw structural_error("ChainE: member is not an equivalence");
    if (rho == eq || rho == full)
      throw structural_error("ChainE: member is trivial");
    if (i > 0) {
      if (!(chain.relations[i - 1].subset_of(rho)) || chain.relations[i - 1] == rho)
        throw structural_error("ChainE: members not strictly increasing");
    }
  }
}

ChainE make_chain(int k, const std::vector<std::vector<std::vector<element_t>>>& partitions) {
  ChainE chain;
  chain.k = k;
  for (const auto& p : partitions)
    chain.relations.push_back(Relation::from_partition(k, p));
  validate_chain(chain);
  return chain;
}

bool is_chain(const std::vector<Relation>& eqs) {
  for (const Relation& rho : eqs)
    if (!rho.is_equivalence())
      throw structural_error("is_chain: member is not an equivalence");
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t j = i + 1; j < eqs.size(); ++j)
      if (!eqs[i].subset_of(eqs[j]) && !eqs[j].subset_of(eqs[i]))
        return false;
  return true;
}

int chain_level(const ChainE& chain, element_t a, element_t b) {
  if (a == b)
    return 0;
  for (std::size_t i = 0; i < chain.relations.size(); ++i) {
    element_t t[2] = {a, b};
    if (chain.relations[i].contains(t))
      return static_cast<int>(i) + 1;
  }
  return static_cast<int>(chain.relations.size()) + 1;
}

PermGroup aut_of_chain(const ChainE& chain) {
  validate_chain(chain);
  const int k = chain.k;
  std::vector<std::vector<element_t>> elems;
  std::vector<element_t> p(k);
  std::iota(p.begin(), p.end(), element_t{0});
  do {
    bool ok = true;
    for (const Relation& rho : chain.relations) {
      for (int a = 0; a < k && ok; ++a)
        for (int b = 0; b < k && ok; ++b) {
          element_t ab[2] = {static_cast<element_t>(a), static_cast<element_t>(b)};
          element_t im[2] = {p[a], p[b]};
          if (rho.contains(ab) && !rho.contains(im))
            ok = false;
        }
      if (!ok)
        break;
    }
    if (ok)
      elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return PermGroup::from_elements(k, std::move(elems));
}

} // namespace clonekit

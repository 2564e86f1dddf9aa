#include "clonekit/clone_search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace clonekit {

std::shared_ptr<const std::vector<OpTable>> CloneCache::find_enum(const std::string& key, int n) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = enums_.find({key, n});
  return it == enums_.end() ? nullptr : it->second;
}

void CloneCache::store_enum(const std::string& key, int n, std::vector<OpTable> ops) {
  std::lock_guard<std::mutex> lock(mu_);
  enums_[{key, n}] = std::make_shared<const std::vector<OpTable>>(std::move(ops));
}

namespace {

std::string minor_key(const std::string& spec, const OpTable& f, const OpTable& g) {
  std::ostringstream os;
  os << spec << '#' << f.arity << ':';
  for (element_t v : f.table)
    os << static_cast<int>(v) << ',';
  os << '#' << g.arity << ':';
  for (element_t v : g.table)
    os << static_cast<int>(v) << ',';
  return os.str();
}

} // namespace

std::optional<bool> CloneCache::find_minor(const std::string& key, const OpTable& f,
                                           const OpTable& g) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = minors_.find(minor_key(key, f, g));
  if (it == minors_.end())
    return std::nullopt;
  return it->second;
}

void CloneCache::store_minor(const std::string& key, const OpTable& f, const OpTable& g,
                             bool value) {
  std::lock_guard<std::mutex> lock(mu_);
  minors_[minor_key(key, f, g)] = value;
}

std::vector<OpTable> close_generators(int k, const std::vector<OpTable>& gens, int n,
                                      const Budgets& budgets) {
  check_domain(k);
  if (n < 1)
    throw structural_error("close_generators: arity must be >= 1");
  for (const OpTable& g : gens)
    if (g.k != k)
      throw structural_error("close_generators: generator on wrong domain");

  std::set<OpTable> members;
  for (int i = 1; i <= n; ++i)
    members.insert(projection(k, n, i));

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<OpTable> current(members.begin(), members.end());
    const std::size_t cn = current.size();
    for (const OpTable& g : gens) {
      const int m = g.arity;
      std::uint64_t combos = 1;
      for (int i = 0; i < m; ++i) {
        combos *= cn;
        if (combos > budgets.max_tables)
          throw budget_error("close_generators: composition frontier exceeds table budget");
      }
      std::vector<std::size_t> idx(m, 0);
      std::vector<OpTable> comps(m, current[0]);
      while (true) {
        for (int i = 0; i < m; ++i)
          comps[i] = current[idx[i]];
        OpTable made = compose(g, OpVector(comps));
        if (members.insert(std::move(made)).second) {
          grew = true;
          if (members.size() > budgets.max_tables)
            throw budget_error("close_generators: member count exceeds table budget");
        }
        int pos = m - 1;
        while (pos >= 0 && ++idx[pos] == cn) {
          idx[pos] = 0;
          --pos;
        }
        if (pos < 0)
          break;
      }
    }
  }
  return {members.begin(), members.end()};
}

// ---------------------------------------------------------------------------
// Relational constraint checking over partially assigned tables
// ---------------------------------------------------------------------------

namespace {

// Enumerate all s-tuples over the assigned prefix [0..x] that contain x, with
// x placed at its first occurrence, and invoke check(points). check returns
// false on a constraint violation.
template <typename Check>
bool for_constraint_tuples(int s, std::uint64_t x, Check&& check) {
  std::vector<std::uint64_t> pts(s);
  for (int p = 0; p < s; ++p) {
    // positions before p take values < x, positions after take values <= x
    std::vector<std::uint64_t> idx(s, 0);
    bool viable = true;
    for (int i = 0; i < p; ++i)
      if (x == 0)
        viable = false; // no value < x available
    if (!viable)
      continue;
    while (true) {
      for (int i = 0; i < s; ++i)
        pts[i] = i == p ? x : idx[i];
      if (!check(pts))
        return false;
      int pos = s - 1;
      bool carry = true;
      while (carry && pos >= 0) {
        if (pos == p) {
          --pos;
          continue;
        }
        std::uint64_t limit = pos < p ? x : x + 1; // exclusive
        if (++idx[pos] < limit)
          carry = false;
        else {
          idx[pos] = 0;
          --pos;
        }
      }
      if (carry)
        break;
    }
  }
  return true;
}

struct TableSearch {
  int k = 0, n = 0;
  std::uint64_t points = 0;
  std::vector<Relation> constraints;
  std::vector<std::vector<element_t>> point_tuple;
  std::vector<std::uint32_t> alphabet; // per point, allowed value mask
  std::vector<element_t> value;        // current partial table
  std::uint64_t visited = 0;
  std::uint64_t budget = 0;

  TableSearch(int k_, int n_, const std::vector<Relation>& cons, const Budgets& budgets)
      : k(k_), n(n_), constraints(cons), budget(budgets.max_tables) {
    points = ipow(k, n);
    if (points > budgets.max_cells)
      throw budget_error("table search: k^n exceeds cell budget");
    point_tuple.resize(points);
    alphabet.assign(points, (1u << k) - 1);
    for (std::uint64_t x = 0; x < points; ++x)
      point_tuple[x] = decode_tuple(x, k, n);
    for (const Relation& rho : constraints) {
      if (rho.arity() != 1)
        continue;
      std::uint32_t mask = 0;
      for (int a = 0; a < k; ++a)
        if (rho.contains_index(a))
          mask |= (1u << a);
      for (std::uint64_t x = 0; x < points; ++x) {
        bool inside = true;
        for (element_t a : point_tuple[x])
          inside = inside && ((mask >> a) & 1u);
        if (inside)
          alphabet[x] &= mask;
      }
    }
    value.assign(points, 0);
  }

  bool consistent_at(std::uint64_t x) {
    std::vector<element_t> col;
    for (const Relation& rho : constraints) {
      const int s = rho.arity();
      if (s == 1)
        continue;
      col.assign(s, 0);
      bool ok = for_constraint_tuples(s, x, [&](const std::vector<std::uint64_t>& pts) {
        for (int j = 0; j < n; ++j) {
          for (int i = 0; i < s; ++i)
            col[i] = point_tuple[pts[i]][j];
          if (!rho.contains(col))
            return true; // points unrelated: no obligation
        }
        for (int i = 0; i < s; ++i)
          col[i] = value[pts[i]];
        return rho.contains(col);
      });
      if (!ok)
        return false;
    }
    return true;
  }

  // fixed[x] in [0,k) pins a value, -1 leaves it free; emit returns false to
  // stop the enumeration early
  template <typename Emit>
  bool run(const std::vector<int>& fixed, Emit&& emit) {
    return descend(0, fixed, emit);
  }

  template <typename Emit>
  bool descend(std::uint64_t x, const std::vector<int>& fixed, Emit& emit) {
    if (x == points)
      return emit(value);
    for (int v = 0; v < k; ++v) {
      if (fixed[x] >= 0 && fixed[x] != v)
        continue;
      if (!((alphabet[x] >> v) & 1u))
        continue;
      if (++visited > budget)
        throw budget_error("table search: candidate budget exceeded");
      value[x] = static_cast<element_t>(v);
      if (consistent_at(x)) {
        if (!descend(x + 1, fixed, emit))
          return false;
      }
    }
    return true;
  }
};

std::vector<Relation> spec_constraints_or_empty(const CloneSpec& spec) {
  if (const auto* rel = std::get_if<RelationalSpec>(&spec))
    return relational_constraints(*rel);
  if (const auto* named = std::get_if<NamedSpec>(&spec)) {
    if (named->tag == NamedTag::chain_clone)
      return relational_constraints(chain_clone_relational(*named->chain));
    if (named->tag == NamedTag::discriminator) {
      RelationalSpec rel;
      rel.k = named->k;
      PermGroup sym = PermGroup::symmetric(named->k);
      for (int g = 1; g < sym.order(); ++g)
        rel.permutations.emplace_back(named->k, 1, sym.perm(g));
      for (std::uint32_t mask = 1; mask < (1u << named->k); ++mask) {
        std::vector<element_t> s;
        for (int a = 0; a < named->k; ++a)
          if (mask & (1u << a))
            s.push_back(static_cast<element_t>(a));
        rel.subsets.push_back(std::move(s));
      }
      return relational_constraints(rel);
    }
  }
  throw structural_error("spec has no relational presentation");
}

bool has_relational_presentation(const CloneSpec& spec) {
  if (std::holds_alternative<RelationalSpec>(spec))
    return true;
  if (const auto* named = std::get_if<NamedSpec>(&spec))
    return named->tag == NamedTag::chain_clone || named->tag == NamedTag::discriminator;
  return false;
}

// All tables with range inside some subset of the given size.
std::vector<OpTable> range_bounded_tables(int k, int n, int bound, const Budgets& budgets) {
  std::set<OpTable> out;
  std::vector<std::vector<element_t>> subs;
  std::vector<element_t> pick;
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      subs.push_back(pick);
      return;
    }
    for (int a = from; a <= k - left; ++a) {
      pick.push_back(static_cast<element_t>(a));
      self(self, a + 1, left - 1);
      pick.pop_back();
    }
  };
  rec(rec, 0, std::min(bound, k));
  const std::uint64_t sz = ipow(k, n);
  for (const auto& s : subs) {
    std::vector<std::size_t> digit(sz, 0);
    while (true) {
      std::vector<element_t> t(sz);
      for (std::uint64_t x = 0; x < sz; ++x)
        t[x] = s[digit[x]];
      out.insert(OpTable(k, n, std::move(t)));
      if (out.size() > budgets.max_tables)
        throw budget_error("enum_clone_ops: table budget exceeded");
      std::uint64_t pos = sz;
      while (pos > 0 && ++digit[pos - 1] == s.size()) {
        digit[pos - 1] = 0;
        --pos;
      }
      if (pos == 0)
        break;
    }
  }
  return {out.begin(), out.end()};
}

std::vector<OpTable> all_unary_tables(int k) {
  std::vector<OpTable> out;
  std::uint64_t total = ipow(k, k);
  for (std::uint64_t x = 0; x < total; ++x)
    out.emplace_back(k, 1, decode_tuple(x, k, k));
  return out;
}

std::vector<OpTable> enum_named(const NamedSpec& spec, int n, const Budgets& budgets) {
  const int k = spec.k;
  std::set<OpTable> out;
  auto add = [&](OpTable f) {
    out.insert(std::move(f));
    if (out.size() > budgets.max_tables)
      throw budget_error("enum_clone_ops: table budget exceeded");
  };
  auto add_unary_family = [&](const std::vector<OpTable>& unaries) {
    for (const OpTable& u : unaries)
      for (int i = 1; i <= n; ++i)
        add(unary_as_nary(u, n, i));
  };

  switch (spec.tag) {
  case NamedTag::full_clone:
    for (const OpTable& f : range_bounded_tables(k, n, k, budgets))
      add(f);
    break;
  case NamedTag::projections:
    for (int i = 1; i <= n; ++i)
      add(projection(k, n, i));
    break;
  case NamedTag::slupecki_chain: {
    if (spec.index >= k)
      return enum_named(NamedSpec{NamedTag::full_clone, k}, n, budgets);
    add_unary_family(all_unary_tables(k));
    if (spec.index >= 2)
      for (const OpTable& f : range_bounded_tables(k, n, spec.index, budgets))
        add(f);
    if (spec.index == 1) // Burle: quasilinear operations have range <= 2
      for (const OpTable& f : range_bounded_tables(k, n, 2, budgets))
        if (is_quasilinear(f))
          add(f);
    break;
  }
  case NamedTag::slupecki_chain_m: {
    add_unary_family(monoid_closure(k, spec.monoid));
    if (spec.index >= 2) {
      for (const OpTable& f : range_bounded_tables(k, n, spec.index, budgets))
        if (essential_arity(f) >= 2)
          add(f);
    } else if (spec.index == 1) {
      for (const OpTable& f : range_bounded_tables(k, n, 2, budgets))
        if (essential_arity(f) >= 2 && is_quasilinear(f))
          add(f);
    }
    break;
  }
  case NamedTag::ta_minus:
    add_unary_family(ta_minus_monoid(k));
    break;
  default:
    throw structural_error("enum_named: unsupported tag");
  }
  return {out.begin(), out.end()};
}

} // namespace

std::vector<OpTable> enum_clone_ops(const CloneSpec& spec, int n, const Budgets& budgets,
                                    CloneCache* cache) {
  validate_spec(spec);
  if (n < 1)
    throw structural_error("enum_clone_ops: arity must be >= 1");
  std::string key = spec_key(spec);
  if (cache)
    if (auto hit = cache->find_enum(key, n))
      return *hit;

  std::vector<OpTable> result;
  const int k = spec_k(spec);
  if (const auto* gen = std::get_if<GeneratedSpec>(&spec)) {
    result = close_generators(k, gen->generators, n, budgets);
  } else if (has_relational_presentation(spec)) {
    TableSearch search(k, n, spec_constraints_or_empty(spec), budgets);
    std::vector<int> fixed(search.points, -1);
    search.run(fixed, [&](const std::vector<element_t>& table) {
      result.emplace_back(k, n, table);
      if (result.size() > budgets.max_tables)
        throw budget_error("enum_clone_ops: table budget exceeded");
      return true;
    });
  } else {
    result = enum_named(std::get<NamedSpec>(spec), n, budgets);
  }
  std::sort(result.begin(), result.end());
  if (cache)
    cache->store_enum(key, n, result);
  return result;
}

// ---------------------------------------------------------------------------
// Minor search: assign h(x) in g^{-1}(f(x)) pointwise with pruning
// ---------------------------------------------------------------------------

namespace {

enum class PruneMode { none, relational, allowed_set, b_chain };

struct MinorSearchEngine {
  const OpTable& f;
  const OpTable& g;
  const CloneSpec& spec;
  const Budgets& budgets;
  int k, n, m;
  std::uint64_t points;

  PruneMode mode = PruneMode::none;
  std::vector<Relation> constraints;
  std::vector<OpTable> allowed; // allowed-set mode: C^(n), sorted

  std::vector<std::vector<element_t>> point_tuple;
  std::vector<std::vector<std::uint64_t>> candidates;
  std::vector<std::vector<element_t>> tuple_pool; // decoded m-tuples, k^m slots
  std::vector<char> tuple_ready;
  std::vector<std::int64_t> chosen;

  std::uint64_t assignments = 0;

  // b-chain state: per component range mask, essential-coordinate mask, and
  // surviving (coordinate, monoid permutation) pairs
  int chain_index = 0;
  bool b_chain_b0 = false;
  std::vector<std::uint32_t> comp_range;
  std::vector<std::uint32_t> comp_essential;
  struct UnaryPair {
    int coord;
    OpTable u;
  };
  std::vector<UnaryPair> unary_pairs;
  std::vector<std::vector<char>> comp_pair_alive;

  MinorSearchEngine(const OpTable& f_, const OpTable& g_, const CloneSpec& spec_,
                    const Budgets& budgets_)
      : f(f_), g(g_), spec(spec_), budgets(budgets_) {
    k = f.k;
    n = f.arity;
    m = g.arity;
    points = ipow(k, n);
    std::uint64_t gsize = ipow(k, m);
    if (points > budgets.max_cells || gsize > budgets.max_cells)
      throw budget_error("is_minor: table sizes exceed cell budget");

    point_tuple.resize(points);
    for (std::uint64_t x = 0; x < points; ++x)
      point_tuple[x] = decode_tuple(x, k, n);
    tuple_pool.resize(gsize);
    tuple_ready.assign(gsize, 0);

    std::vector<std::vector<std::uint64_t>> preimage(k);
    for (std::uint64_t y = 0; y < gsize; ++y)
      preimage[g.table[y]].push_back(y);

    if (has_relational_presentation(spec)) {
      mode = PruneMode::relational;
      constraints = spec_constraints_or_empty(spec);
    } else if (const auto* named = std::get_if<NamedSpec>(&spec)) {
      switch (named->tag) {
      case NamedTag::full_clone:
        mode = PruneMode::none;
        break;
      case NamedTag::projections:
        mode = PruneMode::allowed_set;
        break;
      case NamedTag::slupecki_chain:
        mode = PruneMode::b_chain;
        chain_index = named->index;
        for (const OpTable& u : all_unary_tables(k))
          if (range_mask(u) == (1u << k) - 1)
            add_pairs(u);
        break;
      case NamedTag::slupecki_chain_m:
        mode = PruneMode::b_chain;
        chain_index = named->index;
        for (const OpTable& u : monoid_closure(k, named->monoid))
          if (range_mask(u) == (1u << k) - 1)
            add_pairs(u);
        break;
      case NamedTag::ta_minus: {
        mode = PruneMode::b_chain;
        chain_index = 0;
        b_chain_b0 = true;
        // the only permutation in T_A^- is the identity
        std::vector<element_t> id(k);
        std::iota(id.begin(), id.end(), element_t{0});
        add_pairs(OpTable(k, 1, id));
        break;
      }
      default:
        throw structural_error("is_minor: unsupported spec");
      }
      if (named->tag == NamedTag::slupecki_chain_m && named->index == 0)
        b_chain_b0 = true;
      if (named->tag == NamedTag::slupecki_chain && named->index == 0)
        b_chain_b0 = true;
    } else {
      mode = PruneMode::allowed_set;
    }

    if (mode == PruneMode::allowed_set)
      allowed = enum_clone_ops(spec, n, budgets, nullptr);

    candidates.resize(points);
    std::vector<std::uint32_t> alphabet(points, (1u << k) - 1);
    if (mode == PruneMode::relational) {
      for (const Relation& rho : constraints) {
        if (rho.arity() != 1)
          continue;
        std::uint32_t mask = 0;
        for (int a = 0; a < k; ++a)
          if (rho.contains_index(a))
            mask |= (1u << a);
        for (std::uint64_t x = 0; x < points; ++x) {
          bool inside = true;
          for (element_t a : point_tuple[x])
            inside = inside && ((mask >> a) & 1u);
          if (inside)
            alphabet[x] &= mask;
        }
      }
    }
    for (std::uint64_t x = 0; x < points; ++x) {
      for (std::uint64_t y : preimage[f.table[x]]) {
        const auto& yt = tuple_of(y);
        bool ok = true;
        for (element_t a : yt)
          ok = ok && ((alphabet[x] >> a) & 1u);
        if (ok)
          candidates[x].push_back(y);
      }
    }
    chosen.assign(points, -1);
  }

  void add_pairs(const OpTable& u) {
    for (int c = 0; c < n; ++c)
      unary_pairs.push_back({c, u});
  }

  const std::vector<element_t>& tuple_of(std::uint64_t y) {
    if (!tuple_ready[y]) {
      tuple_pool[y] = decode_tuple(y, k, m);
      tuple_ready[y] = 1;
    }
    return tuple_pool[y];
  }

  bool allowed_consistent(std::uint64_t x, std::uint64_t y) {
    const auto& yt = tuple_of(y);
    for (int j = 0; j < m; ++j) {
      bool any = false;
      for (const OpTable& t : allowed) {
        bool match = t.table[x] == yt[j];
        for (std::uint64_t z = 0; z < x && match; ++z)
          match = t.table[z] == tuple_of(static_cast<std::uint64_t>(chosen[z]))[j];
        if (match) {
          any = true;
          break;
        }
      }
      if (!any)
        return false;
    }
    return true;
  }

  bool b_chain_push(std::uint64_t x, std::uint64_t y) {
    const auto& yt = tuple_of(y);
    for (int j = 0; j < m; ++j) {
      comp_range[j] |= (1u << yt[j]);
      for (int c = 0; c < n; ++c) {
        std::int64_t stride = static_cast<std::int64_t>(ipow(k, n - 1 - c));
        int digit = point_tuple[x][c];
        for (int d = 0; d < k; ++d) {
          if (d == digit)
            continue;
          std::int64_t xn = static_cast<std::int64_t>(x) + (d - digit) * stride;
          if (xn >= 0 && xn < static_cast<std::int64_t>(x) && chosen[xn] >= 0 &&
              tuple_of(static_cast<std::uint64_t>(chosen[xn]))[j] != yt[j])
            comp_essential[j] |= (1u << c);
        }
      }
      for (std::size_t p = 0; p < unary_pairs.size(); ++p) {
        if (!comp_pair_alive[j][p])
          continue;
        if (unary_pairs[p].u.table[point_tuple[x][unary_pairs[p].coord]] != yt[j])
          comp_pair_alive[j][p] = 0;
      }
      bool surjective = static_cast<int>(std::popcount(comp_range[j])) == k;
      int ess = std::popcount(comp_essential[j]);
      bool range_ok;
      if (b_chain_b0)
        range_ok = false; // no non-unary members at level 0
      else if (chain_index == 1)
        range_ok = static_cast<int>(std::popcount(comp_range[j])) <= 2;
      else
        range_ok = static_cast<int>(std::popcount(comp_range[j])) <= chain_index;
      if (ess >= 2 && !range_ok)
        return false;
      if (surjective && chain_index < k) {
        bool any_pair = false;
        for (std::size_t p = 0; p < unary_pairs.size() && !any_pair; ++p)
          any_pair = comp_pair_alive[j][p] != 0;
        if (!any_pair)
          return false;
      }
    }
    return true;
  }

  // binary constraints between point pairs, for propagation
  struct Arc {
    const Relation* rho;
    std::uint64_t from, to; // constrains (img from, img to) in rho^m
  };
  std::vector<std::vector<Arc>> arcs_from; // indexed by the already-fixed point

  bool image_pair_ok(const Relation& rho, std::uint64_t y, std::uint64_t w) {
    const auto& yt = tuple_of(y);
    const auto& wt = tuple_of(w);
    element_t pair[2];
    for (int j = 0; j < m; ++j) {
      pair[0] = yt[j];
      pair[1] = wt[j];
      if (!rho.contains(std::span<const element_t>(pair, 2)))
        return false;
    }
    return true;
  }

  void build_arcs() {
    arcs_from.assign(points, {});
    for (const Relation& rho : constraints) {
      if (rho.arity() != 2)
        continue;
      for (std::uint64_t x = 0; x < points; ++x)
        for (std::uint64_t z = 0; z < points; ++z) {
          bool related = true;
          for (int j = 0; j < n && related; ++j) {
            element_t pair[2] = {point_tuple[x][j], point_tuple[z][j]};
            related = rho.contains(std::span<const element_t>(pair, 2));
          }
          if (related)
            arcs_from[x].push_back({&rho, x, z});
        }
    }
  }

  // triple check for a ternary relation: all placements of (z, x, q) and
  // (z, z, x) with q running over the given decided points
  template <typename Decided>
  bool ternary_value_ok(const Relation& rho, std::uint64_t z, std::uint64_t w, std::uint64_t x,
                        std::uint64_t y, Decided&& decided_value, std::uint64_t qmax) {
    std::array<std::uint64_t, 3> pts;
    std::array<std::uint64_t, 3> vals;
    element_t col[3];
    auto check = [&]() {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < 3; ++i)
          col[i] = point_tuple[pts[i]][j];
        if (!rho.contains(std::span<const element_t>(col, 3)))
          return true;
      }
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < 3; ++i)
          col[i] = tuple_of(vals[i])[j];
        if (!rho.contains(std::span<const element_t>(col, 3)))
          return false;
      }
      return true;
    };
    // (z, z, x) placements
    static constexpr int zz[3][3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    for (const auto& pat : zz) {
      for (int i = 0; i < 3; ++i) {
        pts[i] = pat[i] ? x : z;
        vals[i] = pat[i] ? y : w;
      }
      if (!check())
        return false;
    }
    // (z, x, q) placements, q decided
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (std::uint64_t q = 0; q <= qmax; ++q) {
      std::int64_t qv = decided_value(q);
      if (qv < 0)
        continue;
      for (const auto& pat : perms) {
        const std::uint64_t ppts[3] = {z, x, q};
        const std::uint64_t pvals[3] = {w, y, static_cast<std::uint64_t>(qv)};
        for (int i = 0; i < 3; ++i) {
          pts[i] = ppts[pat[i]];
          vals[i] = pvals[pat[i]];
        }
        if (!check())
          return false;
      }
    }
    return true;
  }

  // arc consistency over binary constraints plus singleton-driven ternary
  // filtering, iterated to a joint fixpoint
  bool initial_propagate(std::vector<std::vector<std::uint64_t>>& dom) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint64_t x = 0; x < points; ++x)
        for (const Arc& arc : arcs_from[x]) {
          auto& dz = dom[arc.to];
          std::size_t before = dz.size();
          dz.erase(std::remove_if(dz.begin(), dz.end(),
                                  [&](std::uint64_t w) {
                                    for (std::uint64_t y : dom[x])
                                      if (image_pair_ok(*arc.rho, y, w))
                                        return false;
                                    return true;
                                  }),
                   dz.end());
          if (dz.empty())
            return false;
          changed = changed || dz.size() != before;
        }
      auto decided = [&](std::uint64_t q) -> std::int64_t {
        return dom[q].size() == 1 ? static_cast<std::int64_t>(dom[q][0]) : -1;
      };
      for (const Relation& rho : constraints) {
        if (rho.arity() != 3)
          continue;
        for (std::uint64_t x = 0; x < points; ++x) {
          if (dom[x].size() != 1)
            continue;
          for (std::uint64_t z = 0; z < points; ++z) {
            if (z == x)
              continue;
            auto& dz = dom[z];
            std::size_t before = dz.size();
            dz.erase(std::remove_if(dz.begin(), dz.end(),
                                    [&](std::uint64_t w) {
                                      return !ternary_value_ok(rho, z, w, x, dom[x][0],
                                                               decided, points - 1);
                                    }),
                     dz.end());
            if (dz.empty())
              return false;
            changed = changed || dz.size() != before;
          }
        }
      }
    }
    return true;
  }

  std::optional<std::vector<std::int64_t>> search() {
    for (std::uint64_t x = 0; x < points; ++x)
      if (candidates[x].empty())
        return std::nullopt;
    if (mode == PruneMode::b_chain) {
      comp_range.assign(m, 0);
      comp_essential.assign(m, 0);
      comp_pair_alive.assign(m, std::vector<char>(unary_pairs.size(), 1));
    }
    if (mode == PruneMode::relational) {
      build_arcs();
      if (!initial_propagate(candidates))
        return std::nullopt;
      if (descend_relational(0, candidates))
        return chosen;
      return std::nullopt;
    }
    if (descend(0))
      return chosen;
    return std::nullopt;
  }

  // relational mode: forward-checked domains, higher-arity constraints
  // verified against the assigned prefix
  bool descend_relational(std::uint64_t x, const std::vector<std::vector<std::uint64_t>>& dom) {
    if (x == points)
      return true;
    for (std::uint64_t y : dom[x]) {
      if (++assignments > budgets.max_assignments)
        throw budget_error("is_minor: assignment budget exceeded");
      if (!higher_arity_consistent(x, y))
        continue;
      std::vector<std::vector<std::uint64_t>> next = dom;
      next[x] = {y};
      bool wiped = false;
      for (const Arc& arc : arcs_from[x]) {
        if (arc.to <= x)
          continue;
        auto& dz = next[arc.to];
        dz.erase(std::remove_if(dz.begin(), dz.end(),
                                [&](std::uint64_t w) { return !image_pair_ok(*arc.rho, y, w); }),
                 dz.end());
        if (dz.empty()) {
          wiped = true;
          break;
        }
      }
      if (!wiped) {
        auto assigned_value = [&](std::uint64_t q) -> std::int64_t {
          return q == x ? static_cast<std::int64_t>(y) : chosen[q];
        };
        for (const Relation& rho : constraints) {
          if (rho.arity() != 3)
            continue;
          for (std::uint64_t z = x + 1; z < points && !wiped; ++z) {
            auto& dz = next[z];
            dz.erase(std::remove_if(dz.begin(), dz.end(),
                                    [&](std::uint64_t w) {
                                      return !ternary_value_ok(rho, z, w, x, y,
                                                               assigned_value, x);
                                    }),
                     dz.end());
            wiped = dz.empty();
          }
          if (wiped)
            break;
        }
      }
      if (wiped)
        continue;
      chosen[x] = static_cast<std::int64_t>(y);
      if (descend_relational(x + 1, next))
        return true;
      chosen[x] = -1;
    }
    return false;
  }

  bool higher_arity_consistent(std::uint64_t x, std::uint64_t y) {
    std::vector<element_t> col;
    auto value_at = [&](std::uint64_t p) {
      return p == x ? y : static_cast<std::uint64_t>(chosen[p]);
    };
    for (const Relation& rho : constraints) {
      const int s = rho.arity();
      if (s <= 3)
        continue; // binary and ternary are handled by domain propagation
      col.assign(s, 0);
      bool ok = for_constraint_tuples(s, x, [&](const std::vector<std::uint64_t>& pts) {
        for (int j = 0; j < n; ++j) {
          for (int i = 0; i < s; ++i)
            col[i] = point_tuple[pts[i]][j];
          if (!rho.contains(col))
            return true;
        }
        for (int j = 0; j < m; ++j) {
          for (int i = 0; i < s; ++i)
            col[i] = tuple_of(value_at(pts[i]))[j];
          if (!rho.contains(col))
            return false;
        }
        return true;
      });
      if (!ok)
        return false;
    }
    return true;
  }

  bool descend(std::uint64_t x) {
    if (x == points)
      return final_check();
    std::vector<std::uint32_t> save_range, save_ess;
    std::vector<std::vector<char>> save_alive;
    for (std::uint64_t y : candidates[x]) {
      if (++assignments > budgets.max_assignments)
        throw budget_error("is_minor: assignment budget exceeded");
      bool ok = true;
      switch (mode) {
      case PruneMode::relational:
        break; // handled by descend_relational
      case PruneMode::allowed_set:
        ok = allowed_consistent(x, y);
        break;
      case PruneMode::b_chain:
        save_range = comp_range;
        save_ess = comp_essential;
        save_alive = comp_pair_alive;
        chosen[x] = static_cast<std::int64_t>(y);
        ok = b_chain_push(x, y);
        if (!ok) {
          chosen[x] = -1;
          comp_range = save_range;
          comp_essential = save_ess;
          comp_pair_alive = save_alive;
        }
        break;
      case PruneMode::none:
        break;
      }
      if (!ok)
        continue;
      chosen[x] = static_cast<std::int64_t>(y);
      if (descend(x + 1))
        return true;
      chosen[x] = -1;
      if (mode == PruneMode::b_chain) {
        comp_range = save_range;
        comp_essential = save_ess;
        comp_pair_alive = save_alive;
      }
    }
    return false;
  }

  bool final_check() {
    if (mode != PruneMode::b_chain)
      return true;
    for (int j = 0; j < m; ++j) {
      std::vector<element_t> t(points);
      for (std::uint64_t x = 0; x < points; ++x)
        t[x] = tuple_of(static_cast<std::uint64_t>(chosen[x]))[j];
      if (!clone_membership(OpTable(k, n, std::move(t)), spec, budgets))
        return false;
    }
    return true;
  }
};

} // namespace

std::optional<MinorWitness> is_minor(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                                     const Budgets& budgets, CloneCache* cache) {
  validate_spec(spec);
  if (f.k != g.k || f.k != spec_k(spec))
    throw structural_error("is_minor: domain mismatch");

  MinorSearchEngine engine(f, g, spec, budgets);
  auto chosen = engine.search();
  std::string key = cache ? spec_key(spec) : std::string();
  if (!chosen) {
    if (cache)
      cache->store_minor(key, f, g, false);
    return std::nullopt;
  }
  std::vector<OpTable> comps;
  for (int j = 0; j < g.arity; ++j) {
    std::vector<element_t> t(engine.points);
    for (std::uint64_t x = 0; x < engine.points; ++x)
      t[x] = engine.tuple_of(static_cast<std::uint64_t>((*chosen)[x]))[j];
    comps.emplace_back(f.k, f.arity, std::move(t));
  }
  MinorWitness witness{OpVector(std::move(comps))};
  if (compose(g, witness.hs) != f)
    throw structural_error("is_minor: internal error, witness fails composition");
  for (const OpTable& h : witness.hs.components)
    if (!clone_membership(h, spec, budgets))
      throw structural_error("is_minor: internal error, witness component outside clone");
  if (cache)
    cache->store_minor(key, f, g, true);
  return witness;
}

bool is_minor_decision(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                       const Budgets& budgets, CloneCache* cache) {
  if (cache) {
    if (auto hit = cache->find_minor(spec_key(spec), f, g))
      return *hit;
  }
  return is_minor(f, g, spec, budgets, cache).has_value();
}

bool are_equivalent(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                    const Budgets& budgets, CloneCache* cache) {
  return is_minor_decision(f, g, spec, budgets, cache) &&
         is_minor_decision(g, f, spec, budgets, cache);
}

ClassPartition partition_classes(const std::vector<OpTable>& ops, const CloneSpec& spec,
                                 const Budgets& budgets, CloneCache* cache) {
  ClassPartition part;
  part.items = ops;
  part.class_id.assign(ops.size(), -1);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    int assigned = -1;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (are_equivalent(ops[i], ops[reps[c]], spec, budgets, cache)) {
        assigned = static_cast<int>(c);
        break;
      }
    }
    if (assigned < 0) {
      assigned = static_cast<int>(reps.size());
      reps.push_back(i);
    }
    part.class_id[i] = assigned;
  }
  part.class_count = static_cast<int>(reps.size());
  return part;
}

RestrictedClone::RestrictedClone(CloneSpec spec, std::vector<element_t> b, Budgets budgets)
    : spec_(std::move(spec)), b_(std::move(b)), budgets_(budgets) {
  validate_spec(spec_);
  std::sort(b_.begin(), b_.end());
  b_.erase(std::unique(b_.begin(), b_.end()), b_.end());
  if (b_.empty())
    throw structural_error("restrict_clone: B must be nonempty");
  for (element_t a : b_)
    if (a >= spec_k(spec_))
      throw structural_error("restrict_clone: B not a subset of A");
}

bool RestrictedClone::contains(const OpTable& f_on_b) const {
  const int k = spec_k(spec_);
  const int kb = static_cast<int>(b_.size());
  if (f_on_b.k != kb)
    throw structural_error("restrict_clone: operation not on B");
  const int n = f_on_b.arity;

  if (std::holds_alternative<NamedSpec>(spec_) &&
      std::get<NamedSpec>(spec_).tag == NamedTag::full_clone)
    return true;

  std::uint64_t points = ipow(k, n);
  std::vector<int> fixed(points, -1);
  std::vector<element_t> args(n), bargs(n);
  for (std::uint64_t x = 0; x < points; ++x) {
    decode_tuple(x, k, args);
    bool in_b = true;
    for (int i = 0; i < n && in_b; ++i) {
      auto it = std::lower_bound(b_.begin(), b_.end(), args[i]);
      in_b = it != b_.end() && *it == args[i];
      if (in_b)
        bargs[i] = static_cast<element_t>(it - b_.begin());
    }
    if (in_b)
      fixed[x] = b_[f_on_b(bargs)];
  }

  if (has_relational_presentation(spec_)) {
    TableSearch search(k, n, spec_constraints_or_empty(spec_), budgets_);
    bool found = false;
    search.run(fixed, [&](const std::vector<element_t>&) {
      found = true;
      return false;
    });
    return found;
  }

  std::vector<element_t> table(points, 0);
  std::uint64_t visited = 0;
  auto rec = [&](auto&& self, std::uint64_t x) -> bool {
    if (x == points)
      return clone_membership(OpTable(k, n, table), spec_, budgets_);
    for (int v = 0; v < k; ++v) {
      if (fixed[x] >= 0 && fixed[x] != v)
        continue;
      if (++visited > budgets_.max_tables)
        throw budget_error("restrict_clone: extension budget exceeded");
      table[x] = static_cast<element_t>(v);
      if (self(self, x + 1))
        return true;
    }
    return false;
  };
  return rec(rec, 0);
}

std::vector<OpTable> RestrictedClone::enumerate(int n) const {
  const int kb = static_cast<int>(b_.size());
  std::vector<OpTable> out;
  const std::uint64_t sz = ipow(kb, n);
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < sz; ++i) {
    total *= kb;
    if (total > budgets_.max_tables)
      throw budget_error("restrict_clone: enumeration budget exceeded");
  }
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    std::vector<element_t> t(sz);
    for (std::uint64_t x = 0; x < sz; ++x) {
      t[x] = static_cast<element_t>(rest % kb);
      rest /= kb;
    }
    OpTable candidate(kb, n, std::move(t));
    if (contains(candidate))
      out.push_back(std::move(candidate));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RestrictedClone restrict_clone(const CloneSpec& spec, std::vector<element_t> b,
                               const Budgets& budgets) {
  return RestrictedClone(spec, std::move(b), budgets);
}

std::vector<GrowthRow> growth_report(const CloneSpec& spec, int n_max, const Budgets& budgets,
                                     CloneCache* cache) {
  const int k = spec_k(spec);
  std::optional<int> r_exp;
  for (int p = 2; p <= k; ++p) {
    bool prime = true;
    for (int d = 2; d < p; ++d)
      prime = prime && (p % d != 0);
    if (!prime)
      continue;
    int v = k, r = 0;
    while (v % p == 0) {
      v /= p;
      ++r;
    }
    if (v == 1) {
      r_exp = r;
      break;
    }
  }

  std::vector<GrowthRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.count = enum_clone_ops(spec, n, budgets, cache).size();
    row.kkn = std::pow(double(k), std::pow(double(k), n) / n);
    row.ratio = double(row.count) / row.kkn;
    std::uint64_t binom = 1;
    for (int i = 1; i <= n / 2; ++i)
      binom = binom * (n - i + 1) / i;
    row.gilbert_bound = std::pow(2.0, double(binom));
    row.gilbert_ok = double(row.count) >= *row.gilbert_bound;
    if (r_exp) {
      row.affine_bound = std::pow(double(k), double(*r_exp) * n + 1);
      row.affine_ok = double(row.count) <= *row.affine_bound;
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace clonekit

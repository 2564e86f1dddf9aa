#include "clonekit/clone_spec.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "clonekit/clone_search.hpp"

namespace clonekit {

int spec_k(const CloneSpec& spec) {
  return std::visit([](const auto& s) { return s.k; }, spec);
}

void validate_spec(const CloneSpec& spec) {
  if (const auto* rel = std::get_if<RelationalSpec>(&spec)) {
    check_domain(rel->k);
    for (const Relation& r : rel->relations)
      if (r.k() != rel->k)
        throw structural_error("spec: relation on wrong domain");
    for (const OpTable& p : rel->permutations) {
      if (p.k != rel->k || p.arity != 1)
        throw structural_error("spec: permutation must be unary on A");
      std::vector<bool> seen(rel->k, false);
      for (element_t v : p.table) {
        if (seen[v])
          throw structural_error("spec: permutation table is not bijective");
        seen[v] = true;
      }
    }
    for (const auto& s : rel->subsets) {
      if (s.empty())
        throw structural_error("spec: empty subset");
      for (element_t a : s)
        if (a >= rel->k)
          throw structural_error("spec: subset member outside domain");
    }
  } else if (const auto* named = std::get_if<NamedSpec>(&spec)) {
    check_domain(named->k);
    switch (named->tag) {
    case NamedTag::slupecki_chain:
      if (named->index < 0 || named->index > named->k)
        throw structural_error("spec: Slupecki chain index outside 0..k");
      break;
    case NamedTag::slupecki_chain_m:
      if (named->index < 0 || named->index >= named->k)
        throw structural_error("spec: B_i(M) needs 0 <= i < k");
      for (const OpTable& u : named->monoid)
        if (u.k != named->k || u.arity != 1)
          throw structural_error("spec: monoid member must be unary on A");
      break;
    case NamedTag::chain_clone:
      if (!named->chain)
        throw structural_error("spec: chain clone without chain");
      validate_chain(*named->chain);
      break;
    default:
      break;
    }
  } else {
    const auto& gen = std::get<GeneratedSpec>(spec);
    check_domain(gen.k);
    for (const OpTable& g : gen.generators)
      if (g.k != gen.k)
        throw structural_error("spec: generator on wrong domain");
  }
}

std::string spec_key(const CloneSpec& spec) {
  std::ostringstream os;
  auto dump_op = [&](const OpTable& f) {
    os << f.arity << ':';
    for (element_t v : f.table)
      os << static_cast<int>(v) << ',';
  };
  if (const auto* rel = std::get_if<RelationalSpec>(&spec)) {
    os << "R" << rel->k << '|';
    for (const Relation& r : rel->relations) {
      os << r.arity() << ':';
      for (std::uint64_t i = 0; i < r.slots(); ++i)
        os << (r.contains_index(i) ? '1' : '0');
      os << ';';
    }
    os << '|';
    for (const OpTable& p : rel->permutations)
      dump_op(p);
    os << '|';
    for (auto s : rel->subsets) {
      std::sort(s.begin(), s.end());
      for (element_t a : s)
        os << static_cast<int>(a) << ',';
      os << ';';
    }
  } else if (const auto* named = std::get_if<NamedSpec>(&spec)) {
    os << "N" << named->k << '|' << static_cast<int>(named->tag) << '|' << named->index << '|';
    for (const OpTable& u : named->monoid)
      dump_op(u);
    if (named->chain) {
      os << "E";
      for (const Relation& r : named->chain->relations) {
        for (std::uint64_t i = 0; i < r.slots(); ++i)
          os << (r.contains_index(i) ? '1' : '0');
        os << ';';
      }
    }
  } else {
    const auto& gen = std::get<GeneratedSpec>(spec);
    os << "G" << gen.k << '|';
    for (const OpTable& g : gen.generators)
      dump_op(g);
  }
  return os.str();
}

std::vector<Relation> relational_constraints(const RelationalSpec& spec) {
  std::vector<Relation> out = spec.relations;
  for (const OpTable& p : spec.permutations)
    out.push_back(Relation::graph_of(p));
  for (const auto& s : spec.subsets)
    out.push_back(Relation::subset(spec.k, s));
  return out;
}

RelationalSpec chain_clone_relational(const ChainE& chain) {
  RelationalSpec spec;
  spec.k = chain.k;
  spec.relations = chain.relations;
  PermGroup aut = aut_of_chain(chain);
  for (int g = 1; g < aut.order(); ++g)
    spec.permutations.emplace_back(chain.k, 1, aut.perm(g));
  for (std::uint32_t mask = 1; mask < (1u << chain.k); ++mask) {
    std::vector<element_t> s;
    for (int a = 0; a < chain.k; ++a)
      if (mask & (1u << a))
        s.push_back(static_cast<element_t>(a));
    spec.subsets.push_back(std::move(s));
  }
  return spec;
}

std::vector<OpTable> monoid_closure(int k, const std::vector<OpTable>& gens) {
  std::set<OpTable> closure;
  std::vector<element_t> id(k);
  for (int a = 0; a < k; ++a)
    id[a] = static_cast<element_t>(a);
  closure.insert(OpTable(k, 1, id));
  std::vector<OpTable> work(closure.begin(), closure.end());
  while (!work.empty()) {
    OpTable cur = work.back();
    work.pop_back();
    for (const OpTable& g : gens) {
      std::vector<element_t> t(k);
      for (int a = 0; a < k; ++a)
        t[a] = g.table[cur.table[a]];
      OpTable next(k, 1, std::move(t));
      if (closure.insert(next).second)
        work.push_back(next);
    }
  }
  return {closure.begin(), closure.end()};
}

std::vector<OpTable> ta_minus_monoid(int k) {
  std::vector<OpTable> out;
  std::uint64_t total = ipow(k, k);
  std::vector<element_t> t(k);
  for (std::uint64_t x = 0; x < total; ++x) {
    decode_tuple(x, k, t);
    std::vector<bool> seen(k, false);
    bool perm = true;
    for (element_t v : t) {
      if (seen[v])
        perm = false;
      seen[v] = true;
    }
    bool identity = true;
    for (int a = 0; a < k; ++a)
      identity = identity && t[a] == a;
    if (!perm || identity)
      out.emplace_back(k, 1, t);
  }
  return out;
}

bool is_quasilinear(const OpTable& f) {
  const int k = f.k;
  const int n = f.arity;
  // h_i : A -> {0,1} as bitmasks, g : {0,1} -> A as a pair
  const std::uint32_t hmax = 1u << k;
  std::vector<std::uint32_t> h(n, 0);
  std::vector<element_t> args(n);
  auto matches = [&](element_t g0, element_t g1) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      decode_tuple(x, k, args);
      int parity = 0;
      for (int i = 0; i < n; ++i)
        parity ^= (h[i] >> args[i]) & 1u;
      if (f.table[x] != (parity ? g1 : g0))
        return false;
    }
    return true;
  };
  while (true) {
    for (element_t g0 = 0; g0 < k; ++g0)
      for (element_t g1 = 0; g1 < k; ++g1)
        if (matches(g0, g1))
          return true;
    int pos = n - 1;
    while (pos >= 0 && ++h[pos] == hmax) {
      h[pos] = 0;
      --pos;
    }
    if (pos < 0)
      break;
  }
  return false;
}

namespace {

bool essentially_at_most_unary(const OpTable& f) { return essential_arity(f) <= 1; }

// The unary action of an essentially-at-most-unary operation.
OpTable unary_part(const OpTable& f) {
  for (int i = 1; i <= f.arity; ++i) {
    if (f.arity > 1 && !depends_on(f, i))
      continue;
    std::vector<element_t> t(f.k);
    std::vector<element_t> args(f.arity, 0);
    for (int a = 0; a < f.k; ++a) {
      args[i - 1] = static_cast<element_t>(a);
      t[a] = f(args);
    }
    return OpTable(f.k, 1, std::move(t));
  }
  // constant: unary part from any coordinate
  std::vector<element_t> t(f.k, f.table[0]);
  return OpTable(f.k, 1, std::move(t));
}

bool in_slupecki_level(const OpTable& f, int k, int i) {
  if (i >= k)
    return true; // B_k = O_A
  if (essentially_at_most_unary(f))
    return true;
  if (i == 0)
    return false;
  if (i == 1)
    return is_quasilinear(f); // Burle's clone
  return static_cast<int>(range_of(f).size()) <= i;
}

bool member_named(const OpTable& f, const NamedSpec& spec) {
  switch (spec.tag) {
  case NamedTag::full_clone:
    return true;
  case NamedTag::projections:
    return is_projection(f);
  case NamedTag::slupecki_chain:
    return in_slupecki_level(f, spec.k, spec.index);
  case NamedTag::slupecki_chain_m: {
    if (essentially_at_most_unary(f)) {
      if (is_projection(f))
        return true;
      auto closure = monoid_closure(spec.k, spec.monoid);
      return std::binary_search(closure.begin(), closure.end(), unary_part(f));
    }
    if (spec.index == 0)
      return false;
    if (spec.index == 1)
      return is_quasilinear(f);
    return static_cast<int>(range_of(f).size()) <= spec.index;
  }
  case NamedTag::ta_minus: {
    if (!essentially_at_most_unary(f))
      return false;
    if (is_projection(f))
      return true;
    auto u = unary_part(f);
    return range_of(u).size() < static_cast<std::size_t>(spec.k);
  }
  case NamedTag::discriminator: {
    // Pol(emptyset, Sym(A), P^+(A)): conservative and commuting with all
    // permutations
    std::vector<element_t> args(f.arity);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      decode_tuple(x, f.k, args);
      if (std::find(args.begin(), args.end(), f.table[x]) == args.end())
        return false;
    }
    PermGroup sym = PermGroup::symmetric(f.k);
    for (int g = 1; g < sym.order(); ++g) {
      OpTable graph(f.k, 1, sym.perm(g));
      if (!preserves(f, Relation::graph_of(graph)))
        return false;
    }
    return true;
  }
  case NamedTag::chain_clone: {
    RelationalSpec rel = chain_clone_relational(*spec.chain);
    for (const Relation& r : relational_constraints(rel))
      if (!preserves(f, r))
        return false;
    return true;
  }
  }
  return false;
}

} // namespace

bool clone_membership(const OpTable& f, const CloneSpec& spec, const Budgets& budgets) {
  validate_spec(spec);
  if (f.k != spec_k(spec))
    throw structural_error("clone_membership: domain mismatch");
  if (const auto* rel = std::get_if<RelationalSpec>(&spec)) {
    for (const Relation& r : relational_constraints(*rel))
      if (!preserves(f, r))
        return false;
    return true;
  }
  if (const auto* named = std::get_if<NamedSpec>(&spec))
    return member_named(f, *named);
  const auto& gen = std::get<GeneratedSpec>(spec);
  try {
    auto members = close_generators(gen.k, gen.generators, f.arity, budgets);
    return std::binary_search(members.begin(), members.end(), f);
  } catch (const budget_error& e) {
    throw undecided_error(std::string("membership undecided at configured closure bound: ") +
                          e.what());
  }
}

CloneSpec full_clone(int k) { return NamedSpec{NamedTag::full_clone, k}; }
CloneSpec projections_clone(int k) { return NamedSpec{NamedTag::projections, k}; }
CloneSpec slupecki_clone(int k, int i) { return NamedSpec{NamedTag::slupecki_chain, k, i}; }
CloneSpec slupecki_clone_m(int k, int i, std::vector<OpTable> monoid) {
  return NamedSpec{NamedTag::slupecki_chain_m, k, i, std::move(monoid)};
}
CloneSpec discriminator_clone(int k) { return NamedSpec{NamedTag::discriminator, k}; }
CloneSpec chain_clone(ChainE chain) {
  NamedSpec s{NamedTag::chain_clone, chain.k};
  s.chain = std::move(chain);
  return s;
}
CloneSpec pol_of(int k, std::vector<Relation> relations, std::vector<OpTable> permutations,
                 std::vector<std::vector<element_t>> subsets) {
  RelationalSpec s;
  s.k = k;
  s.relations = std::move(relations);
  s.permutations = std::move(permutations);
  s.subsets = std::move(subsets);
  return s;
}
CloneSpec generated_clone(int k, std::vector<OpTable> generators) {
  return GeneratedSpec{k, std::move(generators)};
}

} // namespace clonekit

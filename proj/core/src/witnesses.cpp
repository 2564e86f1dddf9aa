#include "clonekit/witnesses.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

namespace clonekit {

OpTable discriminator(int k) {
  check_domain(k);
  std::uint64_t sz = ipow(k, 3);
  std::vector<element_t> t(sz);
  std::vector<element_t> args(3);
  for (std::uint64_t x = 0; x < sz; ++x) {
    decode_tuple(x, k, args);
    t[x] = args[0] == args[1] ? args[2] : args[0];
  }
  return OpTable(k, 3, std::move(t));
}

OpTable minority_from_chain(const ChainE& chain) {
  validate_chain(chain);
  const int k = chain.k;
  std::uint64_t sz = ipow(k, 3);
  std::vector<element_t> t(sz);
  std::vector<element_t> a(3);
  for (std::uint64_t x = 0; x < sz; ++x) {
    decode_tuple(x, k, a);
    int xy = chain_level(chain, a[0], a[1]);
    int xz = chain_level(chain, a[0], a[2]);
    int yz = chain_level(chain, a[1], a[2]);
    bool c1 = xy == xz && xy == yz;            // x~y~z
    bool c2 = xy < xz && xz == yz;             // x~y!~z
    bool c3 = xz < xy && xy == yz;             // x~z!~y
    bool c4 = yz < xy && xy == xz;             // y~z!~x
    if (int(c1) + int(c2) + int(c3) + int(c4) != 1)
      throw structural_error("minority_from_chain: case split is not a partition");
    // the x~y~z case admits either endpoint; taking x makes the empty-chain
    // instance coincide with the ternary discriminator table
    t[x] = c2 ? a[2] : a[0];
  }
  return OpTable(k, 3, std::move(t));
}

PhiSignature phi_signature(const OpTable& f, element_t c, const Budgets& budgets) {
  if (f.k < 3)
    throw structural_error("phi_signature: needs k >= 3");
  if (c >= f.k)
    throw structural_error("phi_signature: center outside domain");
  PhiSignature sig;
  sig.range_mask = range_mask(f);
  std::vector<element_t> center(f.arity, c);
  sig.value_at_center = f(center);

  const int k = f.k;
  const int n = f.arity;
  const std::uint32_t full = (1u << k) - 1;
  // proper subsets containing c, per coordinate
  std::vector<std::uint32_t> boxes;
  for (std::uint32_t m = 0; m <= full; ++m)
    if ((m & (1u << c)) && m != full)
      boxes.push_back(m);

  std::vector<std::size_t> pick(n, 0);
  std::uint64_t tried = 0;
  sig.o_class = 1;
  std::vector<element_t> args(n);
  while (true) {
    if (++tried > budgets.max_assignments)
      throw budget_error("phi_signature: box budget exceeded");
    // does f map the box onto its range?
    std::uint32_t image = 0;
    std::function<void(int)> walk = [&](int pos) {
      if (image == sig.range_mask)
        return;
      if (pos == n) {
        image |= (1u << f(args));
        return;
      }
      for (int a = 0; a < k; ++a)
        if (boxes[pick[pos]] & (1u << a)) {
          args[pos] = static_cast<element_t>(a);
          walk(pos + 1);
        }
    };
    walk(0);
    if (image == sig.range_mask) {
      sig.o_class = 0;
      break;
    }
    int pos = n - 1;
    while (pos >= 0 && ++pick[pos] == boxes.size()) {
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0)
      break;
  }
  return sig;
}

std::optional<std::vector<std::vector<element_t>>> jablonskii_cover(const OpTable& f) {
  const int k = f.k;
  const int n = f.arity;
  const std::uint32_t target = range_mask(f);
  const int r = std::popcount(target);
  if (r < 2)
    return std::nullopt; // |D_i| < r leaves nothing to cover with

  std::vector<std::uint32_t> smalls; // nonempty subsets of size < r
  for (std::uint32_t m = 1; m < (1u << k); ++m)
    if (std::popcount(m) < r)
      smalls.push_back(m);

  std::vector<std::size_t> pick(n, 0);
  std::vector<element_t> args(n);
  while (true) {
    std::uint32_t image = 0;
    std::function<void(int)> walk = [&](int pos) {
      if (pos == n) {
        image |= (1u << f(args));
        return;
      }
      for (int a = 0; a < k; ++a)
        if (smalls[pick[pos]] & (1u << a)) {
          args[pos] = static_cast<element_t>(a);
          walk(pos + 1);
        }
    };
    walk(0);
    if (image == target) {
      std::vector<std::vector<element_t>> cover(n);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < k; ++a)
          if (smalls[pick[i]] & (1u << a))
            cover[i].push_back(static_cast<element_t>(a));
      return cover;
    }
    int pos = n - 1;
    while (pos >= 0 && ++pick[pos] == smalls.size()) {
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0)
      break;
  }
  return std::nullopt;
}

std::string family_name(Family family) {
  switch (family) {
  case Family::central_r: return "central-r";
  case Family::slupecki_bk2: return "slupecki-bk2";
  case Family::hreg_multi: return "hreg-multi";
  case Family::hreg_single: return "hreg-single";
  case Family::slup_central: return "slup-central";
  case Family::slup_subset: return "slup-subset";
  case Family::slup_eqrel: return "slup-eqrel";
  case Family::centralk1_subset1: return "centralk1-subset1";
  case Family::centralk1_subset2: return "centralk1-subset2";
  case Family::centralk1_eqrel: return "centralk1-eqrel";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::central_r, Family::slupecki_bk2, Family::hreg_multi,
                   Family::hreg_single, Family::slup_central, Family::slup_subset,
                   Family::slup_eqrel, Family::centralk1_subset1, Family::centralk1_subset2,
                   Family::centralk1_eqrel})
    if (family_name(f) == name)
      return f;
  return std::nullopt;
}

std::vector<element_t> e_tuple(int k, int n, int i) {
  if (k < 3)
    throw structural_error("e_tuple: needs k >= 3");
  if (n < 4 || i < 2 || i > n - 1)
    throw structural_error("e_tuple: needs n >= 4 and 2 <= i <= n-1");
  std::vector<element_t> t(n, 1);
  t[i - 2] = 0;
  t[i - 1] = 2;
  if (i < n)
    t[i] = 0;
  return t;
}

std::vector<element_t> rotation_tuple(int k, int n, element_t a) {
  if (n < k)
    throw structural_error("rotation_tuple: needs n >= k");
  std::vector<element_t> t(n);
  for (int j = 0; j < k; ++j)
    t[j] = static_cast<element_t>((a + j) % k);
  for (int j = k; j < n; ++j)
    t[j] = t[k - 1];
  return t;
}

std::vector<element_t> block_rotation_tuple(int k, int n, element_t a) {
  std::vector<element_t> t(static_cast<std::size_t>(k) * n);
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < n; ++l)
      t[static_cast<std::size_t>(j) * n + l] = static_cast<element_t>((a + j) % k);
  return t;
}

bool check_e_tuple_iff(int k, int n) {
  Relation sigma = make_central_sigma(k, 0);
  for (int i = 2; i <= n - 1; ++i)
    for (int j = i; j <= n - 1; ++j) {
      std::vector<std::vector<element_t>> rows;
      rows.push_back(e_tuple(k, n, i));
      rows.push_back(e_tuple(k, n, j));
      for (int b = 3; b <= k - 1; ++b)
        rows.push_back(std::vector<element_t>(n, static_cast<element_t>(b)));
      bool related = power_related(sigma, rows);
      if (related != (j - i <= 1))
        return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Family construction via ordered guarded cases with a disjointness audit
// ---------------------------------------------------------------------------

namespace {

struct Case {
  std::string name;
  std::function<bool(std::span<const element_t>)> guard;
  std::function<element_t(std::span<const element_t>)> value;
};

OpTable build_cases(int k, int arity, const std::vector<Case>& cases, element_t otherwise,
                    const std::string& which) {
  std::uint64_t sz = ipow(k, arity);
  if (sz > Budgets{}.max_cells)
    throw budget_error("witness_family: table exceeds cell budget");
  std::vector<element_t> table(sz);
  std::vector<element_t> args(arity);
  for (std::uint64_t x = 0; x < sz; ++x) {
    decode_tuple(x, k, args);
    int fired = -1;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      if (!cases[c].guard(args))
        continue;
      if (fired >= 0 &&
          cases[fired].value(args) != cases[c].value(args))
        throw structural_error("witness_family(" + which + "): cases '" + cases[fired].name +
                               "' and '" + cases[c].name + "' overlap inconsistently");
      if (fired < 0)
        fired = static_cast<int>(c);
    }
    table[x] = fired >= 0 ? cases[fired].value(args) : otherwise;
  }
  return OpTable(k, arity, std::move(table));
}

bool same_tuple(std::span<const element_t> a, const std::vector<element_t>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<element_t> constant_tuple(int len, element_t v) {
  return std::vector<element_t>(len, v);
}

void require(bool cond, const std::string& msg) {
  if (!cond)
    throw structural_error("witness_family: " + msg);
}

} // namespace

WitnessData witness_family(const FamilySpec& spec) {
  const int k = spec.k;
  const int n = spec.n;
  check_domain(k);
  WitnessData data;

  switch (spec.family) {
  case Family::central_r: {
    const int r = spec.r;
    require(k >= 4 && r >= 2 && r <= k - 2, "central-r needs 2 <= r <= k-2");
    require(n >= 2, "central-r needs n >= 2");
    const int arity = 2 * n;
    std::vector<std::vector<element_t>> as, bs, cs;
    for (int i = 1; i <= n; ++i) {
      std::vector<element_t> a(arity, 0), b(arity), c(arity, 0);
      a[2 * i - 2] = 1;
      a[2 * i - 1] = 1;
      for (int j = 0; j < n; ++j) {
        b[2 * j] = 1;
        b[2 * j + 1] = 2;
      }
      b[2 * i - 2] = 0;
      b[2 * i - 1] = 0;
      c[2 * i - 2] = 2;
      c[2 * i - 1] = 1;
      as.push_back(a);
      bs.push_back(b);
      cs.push_back(c);
    }
    std::vector<Case> cases;
    cases.push_back({"a", [as](std::span<const element_t> t) {
                       return std::any_of(as.begin(), as.end(),
                                          [&](const auto& a) { return same_tuple(t, a); });
                     },
                     [](std::span<const element_t>) { return element_t{0}; }});
    cases.push_back({"b", [bs](std::span<const element_t> t) {
                       return std::any_of(bs.begin(), bs.end(),
                                          [&](const auto& b) { return same_tuple(t, b); });
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"c", [cs](std::span<const element_t> t) {
                       return std::any_of(cs.begin(), cs.end(),
                                          [&](const auto& c) { return same_tuple(t, c); });
                     },
                     [](std::span<const element_t>) { return element_t{2}; }});
    cases.push_back({"const-u", [r, arity](std::span<const element_t> t) {
                       element_t u = t[0];
                       if (u < 3 || u > r)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t v) { return v == u; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    data.op = build_cases(k, arity, cases, static_cast<element_t>(r + 1), "central-r");
    data.tuples["a"] = as;
    data.tuples["b"] = bs;
    data.tuples["c"] = cs;
    break;
  }

  case Family::slupecki_bk2: {
    require(k > 3, "slupecki-bk2 needs k > 3");
    require(n >= 2, "slupecki-bk2 needs n >= 2");
    std::vector<std::vector<element_t>> us;
    for (int i = 0; i < n; ++i) {
      std::vector<element_t> u(n, static_cast<element_t>(k - 1));
      u[i] = 1;
      us.push_back(u);
    }
    std::vector<Case> cases;
    cases.push_back({"const-l", [k](std::span<const element_t> t) {
                       element_t l = t[0];
                       if (l < 1 || l > k - 2)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t v) { return v == l; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"u", [us](std::span<const element_t> t) {
                       return std::any_of(us.begin(), us.end(),
                                          [&](const auto& u) { return same_tuple(t, u); });
                     },
                     [k](std::span<const element_t>) { return static_cast<element_t>(k - 1); }});
    data.op = build_cases(k, n, cases, 0, "slupecki-bk2");
    data.tuples["u"] = us;
    break;
  }

  case Family::hreg_multi: {
    require(spec.hreg.has_value(), "hreg-multi needs the h-regular family");
    require(n >= 2, "hreg-multi needs n >= 2");
    const HRegularFamily& fam = *spec.hreg;
    require(fam.k == k, "hreg-multi family domain mismatch");
    require(static_cast<int>(fam.thetas.size()) >= 2, "hreg-multi needs r >= 2");
    std::string why;
    require(validate_h_regular(fam, &why), "invalid h-regular family: " + why);

    // theta = intersection; phi(a) = per-member block ids
    std::vector<std::vector<int>> idx;
    for (const Relation& th : fam.thetas)
      idx.push_back(th.block_index());
    auto theta_eq = [&](element_t a, element_t b) {
      for (const auto& bi : idx)
        if (bi[a] != bi[b])
          return false;
      return true;
    };
    // canonical transversal data: t_u on the phi-diagonal, e and o the two
    // least non-diagonal theta-classes
    std::vector<int> tu(fam.h, -1);
    int e = -1, o = -1;
    for (int a = 0; a < k; ++a) {
      bool diag = true;
      for (const auto& bi : idx)
        diag = diag && bi[a] == idx[0][a];
      if (diag) {
        if (tu[idx[0][a]] < 0)
          tu[idx[0][a]] = a;
      } else if (e < 0) {
        e = a;
      } else if (o < 0 && !theta_eq(static_cast<element_t>(a), static_cast<element_t>(e))) {
        o = a;
      }
    }
    require(e >= 0 && o >= 0, "hreg-multi: could not extend the diagonal transversal");
    for (int u = 0; u < fam.h; ++u)
      require(tu[u] >= 0, "hreg-multi: missing diagonal element");

    element_t ee = static_cast<element_t>(e), oo = static_cast<element_t>(o);
    std::vector<Case> cases;
    cases.push_back({"chain", [theta_eq, ee](std::span<const element_t> t) {
                       for (std::size_t i = 1; i < t.size(); ++i)
                         if (!theta_eq(t[0], t[i]))
                           return false;
                       return !theta_eq(t[0], ee);
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"near-e", [theta_eq, ee](std::span<const element_t> t) {
                       int cnt = 0;
                       for (element_t v : t)
                         cnt += theta_eq(v, ee) ? 1 : 0;
                       return cnt == static_cast<int>(t.size()) - 1;
                     },
                     [ee](std::span<const element_t>) { return ee; }});
    data.op = build_cases(k, n, cases, oo, "hreg-multi");
    std::vector<element_t> trans;
    for (int u = 0; u < fam.h; ++u)
      trans.push_back(static_cast<element_t>(tu[u]));
    data.tuples["transversal"] = {trans};
    data.tuples["e"] = {{ee}};
    data.tuples["o"] = {{oo}};
    break;
  }

  case Family::hreg_single: {
    require(spec.theta.has_value(), "hreg-single needs theta");
    require(n >= 2, "hreg-single needs n >= 2");
    const Relation& theta = *spec.theta;
    require(theta.k() == k, "hreg-single theta domain mismatch");
    require(theta.is_equivalence(), "hreg-single needs an equivalence");
    auto bi = theta.block_index();
    const int h = *std::max_element(bi.begin(), bi.end()) + 1;
    require(h >= 3, "hreg-single needs at least 3 blocks");
    require(h < k, "hreg-single needs theta != equality");
    // normalization: 1..h a transversal, 0 theta 1
    for (int u = 1; u <= h; ++u)
      for (int v = u + 1; v <= h; ++v)
        require(bi[u] != bi[v], "hreg-single: 1..h must be a block transversal");
    require(bi[0] == bi[1], "hreg-single: needs 0 theta 1");

    std::vector<Case> cases;
    cases.push_back({"chain", [bi](std::span<const element_t> t) {
                       for (std::size_t i = 1; i < t.size(); ++i)
                         if (bi[t[0]] != bi[t[i]])
                           return false;
                       return bi[t[0]] != bi[1];
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"near-1", [bi](std::span<const element_t> t) {
                       int cnt = 0;
                       for (element_t v : t)
                         cnt += bi[v] == bi[1] ? 1 : 0;
                       return cnt == static_cast<int>(t.size()) - 1;
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    data.op = build_cases(k, n, cases, 0, "hreg-single");
    break;
  }

  case Family::slup_central: {
    require(k >= 3, "slup-central needs k >= 3");
    require(n >= 1, "slup-central needs n >= 1");
    std::vector<Case> cases;
    cases.push_back({"const-u", [](std::span<const element_t> t) {
                       element_t u = t[0];
                       if (u < 1)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t v) { return v == u; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    data.op = build_cases(k, n, cases, 0, "slup-central");
    break;
  }

  case Family::slup_subset: {
    require(k >= 3, "slup-subset needs k >= 3");
    require(n >= k, "slup-subset needs n >= k");
    std::vector<element_t> b = spec.subset_b;
    std::sort(b.begin(), b.end());
    const int r = static_cast<int>(b.size());
    require(r >= 2 && r < k, "slup-subset needs 2 <= |B| < k");
    for (int i = 0; i < r; ++i)
      require(b[i] == i, "slup-subset expects B = {0..r-1}");
    auto in_b = [r](element_t v) { return v < r; };
    std::vector<std::vector<element_t>> es;
    for (int a = 0; a < k; ++a)
      es.push_back(rotation_tuple(k, n, static_cast<element_t>(a)));

    std::vector<Case> cases;
    cases.push_back({"in-B", [in_b](std::span<const element_t> t) {
                       return std::all_of(t.begin(), t.end(), in_b);
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"const-high", [r](std::span<const element_t> t) {
                       element_t a = t[0];
                       if (a < r)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t v) { return v == a; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"first-1", [in_b, es](std::span<const element_t> t) {
                       if (t[0] != 1)
                         return false;
                       if (std::all_of(t.begin(), t.end(), in_b))
                         return false;
                       return !same_tuple(t, es[1]);
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"rotation", [es](std::span<const element_t> t) {
                       for (std::size_t a = 0; a < es.size(); ++a)
                         if (a != 1 && same_tuple(t, es[a]))
                           return true;
                       return false;
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    data.op = build_cases(k, n, cases, 0, "slup-subset");
    data.tuples["e"] = es;
    break;
  }

  case Family::slup_eqrel: {
    require(spec.epsilon.has_value(), "slup-eqrel needs epsilon");
    require(n >= 1, "slup-eqrel needs n >= 1");
    const Relation& eps = *spec.epsilon;
    require(eps.k() == k, "slup-eqrel epsilon domain mismatch");
    require(eps.is_equivalence(), "slup-eqrel needs an equivalence");
    require(!(eps == Relation::equality(k)) && !(eps == Relation::all_pairs(k)),
            "slup-eqrel needs a nontrivial equivalence");
    auto blocks = eps.blocks();
    require(blocks.size() >= 2, "slup-eqrel needs >= 2 blocks");
    // normalized form: blocks are integer intervals and (0,1) in eps
    for (const auto& blk : blocks)
      for (std::size_t i = 1; i < blk.size(); ++i)
        require(blk[i] == blk[i - 1] + 1, "slup-eqrel expects interval blocks");
    require(blocks[0].size() >= 2, "slup-eqrel expects (0,1) in epsilon");

    const int arity = k * n;
    std::vector<std::vector<element_t>> es;
    for (int a = 0; a < k; ++a)
      es.push_back(block_rotation_tuple(k, n, static_cast<element_t>(a)));
    auto bi = eps.block_index();
    auto eps_class_of = [&](std::span<const element_t> t) -> int {
      // the unique a with t in the class of e_a, or -1
      for (int a = 0; a < k; ++a) {
        bool rel = true;
        for (int j = 0; j < arity && rel; ++j)
          rel = bi[t[j]] == bi[es[a][j]];
        if (rel)
          return a;
      }
      return -1;
    };

    std::vector<Case> cases;
    cases.push_back({"exact", [es](std::span<const element_t> t) {
                       for (const auto& e : es)
                         if (same_tuple(t, e))
                           return true;
                       return false;
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    cases.push_back({"class", [es, eps_class_of](std::span<const element_t> t) {
                       int a = eps_class_of(t);
                       if (a < 0)
                         return false;
                       return !same_tuple(t, es[a]);
                     },
                     [k, eps_class_of](std::span<const element_t> t) {
                       return static_cast<element_t>((eps_class_of(t) + 1) % k);
                     }});
    data.op = build_cases(k, arity, cases, 0, "slup-eqrel");
    data.tuples["e"] = es;
    break;
  }

  case Family::centralk1_subset1: {
    require(k >= 3, "centralk1-subset1 needs k >= 3");
    require(n >= 4, "centralk1-subset1 needs n >= 4");
    std::vector<element_t> b = spec.subset_b;
    std::sort(b.begin(), b.end());
    auto has = [&](element_t v) { return std::binary_search(b.begin(), b.end(), v); };
    require(has(0) && has(1) && !has(2) && static_cast<int>(b.size()) < k,
            "centralk1-subset1 expects 0,1 in B and 2 outside");
    std::vector<std::vector<element_t>> cs;
    {
      std::vector<element_t> c1(n, 1);
      c1[0] = 0;
      c1[1] = 0;
      cs.push_back(c1);
    }
    for (int i = 2; i <= n - 1; ++i)
      cs.push_back(e_tuple(k, n, i));

    std::vector<Case> cases;
    cases.push_back({"low", [cs](std::span<const element_t> t) {
                       for (std::size_t i = 0; i + 1 < cs.size(); ++i)
                         if (same_tuple(t, cs[i]))
                           return true;
                       return false;
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"top", [cs](std::span<const element_t> t) {
                       return same_tuple(t, cs.back());
                     },
                     [](std::span<const element_t>) { return element_t{2}; }});
    cases.push_back({"const-b", [k](std::span<const element_t> t) {
                       element_t v = t[0];
                       if (v < 3 || v > k - 1)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t w) { return w == v; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    data.op = build_cases(k, n, cases, 0, "centralk1-subset1");
    data.tuples["c"] = cs;
    break;
  }

  case Family::centralk1_subset2: {
    require(k >= 3, "centralk1-subset2 needs k >= 3");
    require(n >= 4, "centralk1-subset2 needs n >= 4");
    std::vector<element_t> b = spec.subset_b;
    std::sort(b.begin(), b.end());
    auto has = [&](element_t v) { return std::binary_search(b.begin(), b.end(), v); };
    require(!has(0) && has(2) && !b.empty(), "centralk1-subset2 expects 0 outside B, 2 in B");
    std::vector<std::vector<element_t>> cs;
    cs.push_back(constant_tuple(n, 2));
    {
      std::vector<element_t> c2(n, 0);
      c2[0] = 2;
      cs.push_back(c2);
    }
    for (int i = 3; i <= n; ++i)
      cs.push_back(e_tuple(k, n, i - 1));

    std::vector<Case> cases;
    cases.push_back({"low", [cs](std::span<const element_t> t) {
                       for (std::size_t i = 0; i + 1 < cs.size(); ++i)
                         if (same_tuple(t, cs[i]))
                           return true;
                       return false;
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"top", [cs](std::span<const element_t> t) {
                       return same_tuple(t, cs.back());
                     },
                     [](std::span<const element_t>) { return element_t{2}; }});
    cases.push_back({"const-b", [k](std::span<const element_t> t) {
                       element_t v = t[0];
                       if (v < 3 || v > k - 1)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t w) { return w == v; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    data.op = build_cases(k, n, cases, 0, "centralk1-subset2");
    data.tuples["c"] = cs;
    break;
  }

  case Family::centralk1_eqrel: {
    require(k >= 3, "centralk1-eqrel needs k >= 3");
    require(n >= 4, "centralk1-eqrel needs n >= 4");
    require(spec.epsilon.has_value(), "centralk1-eqrel needs epsilon");
    const Relation& eps = *spec.epsilon;
    require(eps.k() == k, "centralk1-eqrel epsilon domain mismatch");
    require(eps.is_equivalence(), "centralk1-eqrel needs an equivalence");
    require(!(eps == Relation::equality(k)) && !(eps == Relation::all_pairs(k)),
            "centralk1-eqrel needs a nontrivial equivalence");
    auto bi = eps.block_index();
    require(bi[0] != bi[2], "centralk1-eqrel expects (0,2) outside epsilon");
    {
      int cls0 = 0, cls2 = 0;
      for (int a = 0; a < k; ++a) {
        cls0 += bi[a] == bi[0] ? 1 : 0;
        cls2 += bi[a] == bi[2] ? 1 : 0;
      }
      require(cls0 >= 2 || cls2 >= 2,
              "centralk1-eqrel expects a non-singleton class at 0 or 2");
    }
    std::vector<std::vector<element_t>> es;
    for (int i = 2; i <= n - 1; ++i)
      es.push_back(e_tuple(k, n, i));
    auto class_of = [bi, es, n](std::span<const element_t> t) -> int {
      for (std::size_t a = 0; a < es.size(); ++a) {
        bool rel = true;
        for (int j = 0; j < n && rel; ++j)
          rel = bi[t[j]] == bi[es[a][j]];
        if (rel)
          return static_cast<int>(a); // index into es; tuple index i = a+2
      }
      return -1;
    };

    std::vector<Case> cases;
    cases.push_back({"e2", [es](std::span<const element_t> t) { return same_tuple(t, es[0]); },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"e2-class", [es, class_of](std::span<const element_t> t) {
                       return class_of(t) == 0 && !same_tuple(t, es[0]);
                     },
                     [](std::span<const element_t>) { return element_t{2}; }});
    cases.push_back({"mid", [es](std::span<const element_t> t) {
                       for (std::size_t a = 1; a + 1 < es.size(); ++a)
                         if (same_tuple(t, es[a]))
                           return true;
                       return false;
                     },
                     [](std::span<const element_t>) { return element_t{1}; }});
    cases.push_back({"mid-class", [es, class_of](std::span<const element_t> t) {
                       int a = class_of(t);
                       if (a <= 0 || a + 1 >= static_cast<int>(es.size()))
                         return false;
                       return !same_tuple(t, es[a]);
                     },
                     [](std::span<const element_t>) { return element_t{0}; }});
    cases.push_back({"top", [es](std::span<const element_t> t) {
                       return same_tuple(t, es.back());
                     },
                     [](std::span<const element_t>) { return element_t{2}; }});
    cases.push_back({"top-class", [es, class_of](std::span<const element_t> t) {
                       return class_of(t) == static_cast<int>(es.size()) - 1 &&
                              !same_tuple(t, es.back());
                     },
                     [](std::span<const element_t>) { return element_t{0}; }});
    cases.push_back({"const-b", [k](std::span<const element_t> t) {
                       element_t v = t[0];
                       if (v < 3 || v > k - 1)
                         return false;
                       return std::all_of(t.begin(), t.end(),
                                          [&](element_t w) { return w == v; });
                     },
                     [](std::span<const element_t> t) { return t[0]; }});
    data.op = build_cases(k, n, cases, 0, "centralk1-eqrel");
    data.tuples["e"] = es;
    break;
  }
  }
  return data;
}

// ---------------------------------------------------------------------------
// Sanity checks: the tuple-level claims of the corresponding proofs
// ---------------------------------------------------------------------------

namespace {

void add_check(SanityReport& rep, const std::string& id, bool pass,
               const std::string& detail = "") {
  rep.checks.push_back({id, pass, detail});
}

bool symmetric_under_variable_swaps(const OpTable& f) {
  std::vector<element_t> args(f.arity);
  for (int i = 0; i + 1 < f.arity; ++i) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      decode_tuple(x, f.k, args);
      std::swap(args[i], args[i + 1]);
      if (f(args) != f.table[x])
        return false;
      std::swap(args[i], args[i + 1]);
    }
  }
  return true;
}

bool depends_on_all(const OpTable& f) { return essential_arity(f) == f.arity; }

} // namespace

bool SanityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SanityCheck& c) { return c.pass; });
}

SanityReport family_sanity(const FamilySpec& spec) {
  SanityReport rep;
  WitnessData data = witness_family(spec); // audits case consistency
  const OpTable& f = data.op;
  const int k = spec.k;
  const int n = spec.n;
  add_check(rep, "case-analysis-consistent", true);

  switch (spec.family) {
  case Family::central_r: {
    const int r = spec.r;
    // test relation: tuples with a repeat or containing 0; the canonical
    // r-ary central relation with center 0 and (1,...,r) outside
    Relation rho = [&] {
      Relation rel(k, r);
      std::vector<element_t> t(r);
      for (std::uint64_t idx = 0; idx < rel.slots(); ++idx) {
        decode_tuple(idx, k, t);
        bool in = false;
        for (int i = 0; i < r && !in; ++i) {
          if (t[i] == 0)
            in = true;
          for (int j = i + 1; j < r && !in; ++j)
            in = t[i] == t[j];
        }
        if (in)
          rel.insert_index(idx);
      }
      return rel;
    }();
    {
      std::vector<element_t> probe(r);
      std::iota(probe.begin(), probe.end(), element_t{1});
      add_check(rep, "central-relation-excludes-1..r", !rho.contains(probe));
      add_check(rep, "central-relation-valid",
                validate_central(rho).reason == CentralityReport::Reason::ok);
    }
    const auto& as = data.tuples["a"];
    const auto& bs = data.tuples["b"];
    const auto& cs = data.tuples["c"];
    auto with_tail = [&](const std::vector<element_t>& first,
                         const std::vector<element_t>& second) {
      std::vector<std::vector<element_t>> rows{first, second};
      for (int u = 3; u <= r; ++u)
        rows.push_back(constant_tuple(2 * n, static_cast<element_t>(u)));
      return rows;
    };
    bool ab_same = true, ab_cross = true, cb_same = true, cb_cross = true;
    bool ac_cross = true, ac_same = true;
    for (int p = 0; p < n; ++p) {
      ab_same = ab_same && power_related(rho, with_tail(as[p], bs[p]));
      cb_same = cb_same && power_related(rho, with_tail(cs[p], bs[p]));
      ac_same = ac_same && !power_related(rho, with_tail(as[p], cs[p]));
      for (int q = 0; q < n; ++q) {
        if (p == q)
          continue;
        ab_cross = ab_cross && !power_related(rho, with_tail(as[p], bs[q]));
        cb_cross = cb_cross && !power_related(rho, with_tail(cs[q], bs[p]));
        ac_cross = ac_cross && power_related(rho, with_tail(as[p], cs[q]));
      }
    }
    add_check(rep, "a-b-same-index-related", ab_same);
    add_check(rep, "a-b-cross-index-unrelated", ab_cross);
    add_check(rep, "c-b-same-index-related", cb_same);
    add_check(rep, "c-b-cross-index-unrelated", cb_cross);
    add_check(rep, "a-c-cross-index-related", ac_cross);
    add_check(rep, "a-c-same-index-unrelated", ac_same);
    break;
  }

  case Family::slupecki_bk2:
    add_check(rep, "depends-on-all-variables", depends_on_all(f));
    add_check(rep, "symmetric", symmetric_under_variable_swaps(f));
    add_check(rep, "range-full", range_of(f).size() == static_cast<std::size_t>(k));
    break;

  case Family::hreg_multi: {
    const HRegularFamily& fam = *spec.hreg;
    Relation theta = [&] {
      Relation t = fam.thetas.front();
      Relation out(k, 2);
      std::vector<int> common(k, 0);
      std::vector<std::vector<int>> idx;
      for (const Relation& th : fam.thetas)
        idx.push_back(th.block_index());
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          bool eq = true;
          for (const auto& bi : idx)
            eq = eq && bi[a] == bi[b];
          if (eq) {
            element_t pair[2] = {static_cast<element_t>(a), static_cast<element_t>(b)};
            out.insert(pair);
          }
        }
      return out;
    }();
    add_check(rep, "preserves-theta", preserves(f, theta));
    OpTable ftheta = quotient_op(f, theta);
    add_check(rep, "quotient-symmetric", symmetric_under_variable_swaps(ftheta));
    add_check(rep, "quotient-nonconstant", essential_arity(ftheta) > 0);
    add_check(rep, "quotient-depends-on-all", depends_on_all(ftheta));
    add_check(rep, "lambda-valid", [&] {
      Relation lam = make_h_regular(fam);
      return totally_reflexive(lam) && totally_symmetric(lam);
    }());
    break;
  }

  case Family::hreg_single: {
    const Relation& theta = *spec.theta;
    add_check(rep, "preserves-theta", preserves(f, theta));
    OpTable ftheta = quotient_op(f, theta);
    add_check(rep, "quotient-symmetric", symmetric_under_variable_swaps(ftheta));
    add_check(rep, "quotient-depends-on-all", depends_on_all(ftheta));
    break;
  }

  case Family::slup_central:
    add_check(rep, "depends-on-all-variables", depends_on_all(f));
    add_check(rep, "symmetric", symmetric_under_variable_swaps(f));
    add_check(rep, "range-full", range_of(f).size() == static_cast<std::size_t>(k));
    break;

  case Family::slup_subset: {
    add_check(rep, "depends-on-all-variables", depends_on_all(f));
    const int r = static_cast<int>(spec.subset_b.size());
    bool outside = true;
    for (const auto& e : data.tuples["e"])
      outside = outside && std::any_of(e.begin(), e.end(),
                                       [&](element_t v) { return v >= r; });
    add_check(rep, "rotation-tuples-outside-B", outside);
    break;
  }

  case Family::slup_eqrel: {
    const Relation& eps = *spec.epsilon;
    const auto& es = data.tuples["e"];
    auto bi = eps.block_index();
    bool unrelated = true;
    for (std::size_t a = 0; a < es.size(); ++a)
      for (std::size_t b = a + 1; b < es.size(); ++b) {
        bool rel = true;
        for (std::size_t j = 0; j < es[a].size() && rel; ++j)
          rel = bi[es[a][j]] == bi[es[b][j]];
        unrelated = unrelated && !rel;
      }
    add_check(rep, "e-tuples-pairwise-unrelated", unrelated);

    // each class has a second element and maps onto {a, a+1 mod k}
    bool classes_ok = true;
    std::uint64_t sz = f.size();
    std::vector<std::uint32_t> image(es.size(), 0);
    std::vector<element_t> t(f.arity);
    for (std::uint64_t x = 0; x < sz; ++x) {
      decode_tuple(x, k, t);
      for (std::size_t a = 0; a < es.size(); ++a) {
        bool rel = true;
        for (int j = 0; j < f.arity && rel; ++j)
          rel = bi[t[j]] == bi[es[a][j]];
        if (rel)
          image[a] |= (1u << f.table[x]);
      }
    }
    for (std::size_t a = 0; a < es.size(); ++a) {
      std::uint32_t want = (1u << a) | (1u << ((a + 1) % k));
      classes_ok = classes_ok && image[a] == want;
    }
    add_check(rep, "class-images-two-element", classes_ok);
    add_check(rep, "depends-on-all-variables", depends_on_all(f));
    break;
  }

  case Family::centralk1_subset1:
  case Family::centralk1_subset2: {
    add_check(rep, "e-tuple-iff", check_e_tuple_iff(k, n));
    const auto& cs = data.tuples["c"];
    Relation sigma = make_central_sigma(k, 0);
    bool cond1 = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i; j < cs.size(); ++j) {
        std::vector<std::vector<element_t>> rows{cs[i], cs[j]};
        for (int b = 3; b <= k - 1; ++b)
          rows.push_back(constant_tuple(n, static_cast<element_t>(b)));
        bool related = power_related(sigma, rows);
        cond1 = cond1 && (related == (j - i <= 1));
      }
    add_check(rep, "chain-condition-c-tuples", cond1);

    std::vector<element_t> b = spec.subset_b;
    std::sort(b.begin(), b.end());
    auto in_b = [&](const std::vector<element_t>& t) {
      return std::all_of(t.begin(), t.end(), [&](element_t v) {
        return std::binary_search(b.begin(), b.end(), v);
      });
    };
    bool first_in = in_b(cs[0]);
    bool others_out = true;
    for (std::size_t i = 1; i + 1 < cs.size(); ++i)
      others_out = others_out && !in_b(cs[i]);
    add_check(rep, "c1-inside-B", first_in);
    add_check(rep, "middle-tuples-outside-B", others_out);
    break;
  }

  case Family::centralk1_eqrel: {
    add_check(rep, "e-tuple-iff", check_e_tuple_iff(k, n));
    const Relation& eps = *spec.epsilon;
    const auto& es = data.tuples["e"];
    auto bi = eps.block_index();
    bool unrelated = true;
    for (std::size_t a = 0; a < es.size(); ++a)
      for (std::size_t c = a + 1; c < es.size(); ++c) {
        bool rel = true;
        for (int j = 0; j < n && rel; ++j)
          rel = bi[es[a][j]] == bi[es[c][j]];
        unrelated = unrelated && !rel;
      }
    add_check(rep, "e-tuples-pairwise-unrelated", unrelated);

    // class images: {1,2} at the bottom tuple, {1,0} in the middle, {2,0} at
    // the top
    std::vector<std::uint32_t> image(es.size(), 0);
    std::vector<element_t> t(n);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      decode_tuple(x, k, t);
      for (std::size_t a = 0; a < es.size(); ++a) {
        bool rel = true;
        for (int j = 0; j < n && rel; ++j)
          rel = bi[t[j]] == bi[es[a][j]];
        if (rel)
          image[a] |= (1u << f.table[x]);
      }
    }
    bool img_ok = image.front() == ((1u << 1) | (1u << 2)) &&
                  image.back() == ((1u << 2) | (1u << 0));
    for (std::size_t a = 1; a + 1 < es.size(); ++a)
      img_ok = img_ok && image[a] == ((1u << 1) | (1u << 0));
    add_check(rep, "class-images-match", img_ok);
    break;
  }
  }
  return rep;
}

} // namespace clonekit

#include "clonekit/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace clonekit {

json op_to_json(const OpTable& f) {
  json j;
  j["k"] = f.k;
  j["arity"] = f.arity;
  j["table"] = json::array();
  for (element_t v : f.table)
    j["table"].push_back(static_cast<int>(v));
  return j;
}

OpTable op_from_json(const json& j) {
  int k = j.at("k").get<int>();
  int arity = j.at("arity").get<int>();
  std::vector<element_t> table;
  for (const auto& v : j.at("table")) {
    int x = v.get<int>();
    if (x < 0 || x > 255)
      throw structural_error("operation file: table entry out of range");
    table.push_back(static_cast<element_t>(x));
  }
  return OpTable(k, arity, std::move(table));
}

json relation_to_json(const Relation& rho) {
  json j;
  j["k"] = rho.k();
  j["arity"] = rho.arity();
  j["tuples"] = json::array();
  for (const auto& t : rho.tuples()) {
    json row = json::array();
    for (element_t v : t)
      row.push_back(static_cast<int>(v));
    j["tuples"].push_back(row);
  }
  return j;
}

Relation relation_from_json(const json& j) {
  int k = j.at("k").get<int>();
  int arity = j.at("arity").get<int>();
  std::vector<std::vector<element_t>> tuples;
  for (const auto& row : j.at("tuples")) {
    std::vector<element_t> t;
    for (const auto& v : row)
      t.push_back(static_cast<element_t>(v.get<int>()));
    tuples.push_back(std::move(t));
  }
  return Relation::from_tuples(k, arity, tuples);
}

json chain_to_json(const ChainE& chain) {
  json j;
  j["k"] = chain.k;
  j["partitions"] = json::array();
  for (const Relation& rho : chain.relations) {
    json part = json::array();
    for (const auto& block : rho.blocks()) {
      json b = json::array();
      for (element_t v : block)
        b.push_back(static_cast<int>(v));
      part.push_back(b);
    }
    j["partitions"].push_back(part);
  }
  return j;
}

ChainE chain_from_json(const json& j) {
  int k = j.at("k").get<int>();
  std::vector<std::vector<std::vector<element_t>>> partitions;
  for (const auto& part : j.at("partitions")) {
    std::vector<std::vector<element_t>> blocks;
    for (const auto& block : part) {
      std::vector<element_t> b;
      for (const auto& v : block)
        b.push_back(static_cast<element_t>(v.get<int>()));
      blocks.push_back(std::move(b));
    }
    partitions.push_back(std::move(blocks));
  }
  return make_chain(k, partitions);
}

json spec_to_json(const CloneSpec& spec) {
  json j;
  if (const auto* rel = std::get_if<RelationalSpec>(&spec)) {
    j["type"] = "relational";
    j["k"] = rel->k;
    j["relations"] = json::array();
    for (const Relation& r : rel->relations)
      j["relations"].push_back(relation_to_json(r));
    j["permutations"] = json::array();
    for (const OpTable& p : rel->permutations)
      j["permutations"].push_back(op_to_json(p));
    j["subsets"] = json::array();
    for (const auto& s : rel->subsets) {
      json row = json::array();
      for (element_t v : s)
        row.push_back(static_cast<int>(v));
      j["subsets"].push_back(row);
    }
  } else if (const auto* named = std::get_if<NamedSpec>(&spec)) {
    j["k"] = named->k;
    switch (named->tag) {
    case NamedTag::full_clone:
      j["type"] = "full";
      break;
    case NamedTag::projections:
      j["type"] = "projections";
      break;
    case NamedTag::slupecki_chain:
      j["type"] = "slupecki";
      j["i"] = named->index;
      break;
    case NamedTag::slupecki_chain_m:
      j["type"] = "slupecki_m";
      j["i"] = named->index;
      j["monoid"] = json::array();
      for (const OpTable& u : named->monoid)
        j["monoid"].push_back(op_to_json(u));
      break;
    case NamedTag::ta_minus:
      j["type"] = "ta_minus";
      break;
    case NamedTag::discriminator:
      j["type"] = "discriminator";
      break;
    case NamedTag::chain_clone:
      j["type"] = "chain";
      j["chain"] = chain_to_json(*named->chain);
      break;
    }
  } else {
    const auto& gen = std::get<GeneratedSpec>(spec);
    j["type"] = "generated";
    j["k"] = gen.k;
    j["generators"] = json::array();
    for (const OpTable& g : gen.generators)
      j["generators"].push_back(op_to_json(g));
  }
  return j;
}

CloneSpec spec_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "relational") {
    RelationalSpec spec;
    spec.k = j.at("k").get<int>();
    if (j.contains("relations"))
      for (const auto& r : j["relations"])
        spec.relations.push_back(relation_from_json(r));
    if (j.contains("permutations"))
      for (const auto& p : j["permutations"])
        spec.permutations.push_back(op_from_json(p));
    if (j.contains("subsets"))
      for (const auto& s : j["subsets"]) {
        std::vector<element_t> sub;
        for (const auto& v : s)
          sub.push_back(static_cast<element_t>(v.get<int>()));
        spec.subsets.push_back(std::move(sub));
      }
    return spec;
  }
  if (type == "full")
    return full_clone(j.at("k").get<int>());
  if (type == "projections")
    return projections_clone(j.at("k").get<int>());
  if (type == "slupecki")
    return slupecki_clone(j.at("k").get<int>(), j.at("i").get<int>());
  if (type == "slupecki_m") {
    std::vector<OpTable> monoid;
    for (const auto& u : j.at("monoid"))
      monoid.push_back(op_from_json(u));
    return slupecki_clone_m(j.at("k").get<int>(), j.at("i").get<int>(), std::move(monoid));
  }
  if (type == "ta_minus")
    return NamedSpec{NamedTag::ta_minus, j.at("k").get<int>()};
  if (type == "discriminator")
    return discriminator_clone(j.at("k").get<int>());
  if (type == "chain")
    return chain_clone(chain_from_json(j.at("chain")));
  if (type == "generated") {
    std::vector<OpTable> gens;
    for (const auto& g : j.at("generators"))
      gens.push_back(op_from_json(g));
    return generated_clone(j.at("k").get<int>(), std::move(gens));
  }
  throw structural_error("spec file: unknown type '" + type + "'");
}

json labeled_tree_to_json(const LabeledTree& tree) {
  json j;
  j["k"] = tree.k;
  j["arity"] = tree.arity;
  j["depth"] = tree.depth;
  {
    std::set<LeafLabel> distinct;
    for (std::uint64_t v = 0; v < tree.level_size[0]; ++v)
      if (tree.present[0][v])
        distinct.insert(tree.leaf_labels[v]);
    j["distinct_labels"] = distinct.size();
    double bound = std::pow(double(tree.k), double(tree.k) + 2.0 * tree.group.order());
    j["label_class_bound"] = bound;
    double log2types = core_type_bound_log2(tree.group, tree.depth, bound);
    j["core_types_bound_log2"] =
        std::isinf(log2types) ? json("inf") : json(log2types);
  }
  j["group"] = json::array();
  for (int g = 0; g < tree.group.order(); ++g) {
    json p = json::array();
    for (element_t v : tree.group.perm(g))
      p.push_back(static_cast<int>(v));
    j["group"].push_back(p);
  }
  j["levels"] = json::array();
  for (int level = 0; level <= tree.depth; ++level) {
    json lvl;
    lvl["level"] = level;
    lvl["nodes"] = json::array();
    for (std::uint64_t v = 0; v < tree.level_size[level]; ++v) {
      if (!tree.present[level][v])
        continue;
      json node;
      node["id"] = v;
      if (level < tree.depth)
        node["successor"] = tree.succ[level][v];
      json act = json::array();
      for (int g = 0; g < tree.group.order(); ++g)
        act.push_back(tree.action[level][g][v]);
      node["action"] = act;
      if (level == 0) {
        const LeafLabel& l = tree.leaf_labels[v];
        json lab;
        lab["coord_set"] = json::array();
        for (int a = 0; a < tree.k; ++a)
          if (l.coord_mask & (1u << a))
            lab["coord_set"].push_back(a);
        lab["stabilizer"] = json::array();
        for (int g = 0; g < tree.group.order(); ++g)
          if (l.stab_mask & (std::uint64_t{1} << g))
            lab["stabilizer"].push_back(g);
        lab["values"] = json::array();
        for (element_t v2 : l.values)
          lab["values"].push_back(static_cast<int>(v2));
        node["label"] = lab;
      }
      lvl["nodes"].push_back(node);
    }
    j["levels"].push_back(lvl);
  }
  return j;
}

namespace {

std::string block_string(const LabeledTree& tree, int level, int node) {
  std::ostringstream os;
  os << "(" << level << "," << node << ")";
  if (level == 0 && tree.arity >= 1) {
    os << " <";
    auto t = decode_tuple(static_cast<std::uint64_t>(node), tree.k, tree.arity);
    for (element_t v : t)
      os << static_cast<int>(v);
    os << ">";
  }
  return os.str();
}

void render_subtree(const LabeledTree& tree, int level, int node, int indent,
                    std::ostringstream& os) {
  for (int i = 0; i < indent; ++i)
    os << "  ";
  os << block_string(tree, level, node);
  if (level == 0) {
    const LeafLabel& l = tree.leaf_labels[node];
    os << "  label[coords=";
    for (int a = 0; a < tree.k; ++a)
      if (l.coord_mask & (1u << a))
        os << a;
    os << " stab=";
    for (int g = 0; g < tree.group.order(); ++g)
      if (l.stab_mask & (std::uint64_t{1} << g))
        os << g << ",";
    os << " values=";
    for (element_t v : l.values)
      os << static_cast<int>(v);
    os << "]";
  }
  os << "\n";
  if (level == 0)
    return;
  for (std::uint64_t c = 0; c < tree.level_size[level - 1]; ++c)
    if (tree.present[level - 1][c] && tree.succ[level - 1][c] == node)
      render_subtree(tree, level - 1, static_cast<int>(c), indent + 1, os);
}

} // namespace

std::string labeled_tree_to_text(const LabeledTree& tree) {
  std::ostringstream os;
  std::set<LeafLabel> distinct;
  for (std::uint64_t v = 0; v < tree.level_size[0]; ++v)
    if (tree.present[0][v])
      distinct.insert(tree.leaf_labels[v]);
  os << "labeled tree: k=" << tree.k << " arity=" << tree.arity << " depth=" << tree.depth
     << " |group|=" << tree.group.order() << " nodes=" << tree.node_count()
     << " distinct-labels=" << distinct.size() << " (bound "
     << std::pow(double(tree.k), double(tree.k) + 2.0 * tree.group.order()) << ")\n";
  render_subtree(tree, tree.depth, 0, 0, os);
  return os.str();
}

json sanity_report_to_json(const SanityReport& rep) {
  json j;
  j["all_pass"] = rep.all_pass();
  j["checks"] = json::array();
  for (const SanityCheck& c : rep.checks) {
    json e;
    e["id"] = c.id;
    e["pass"] = c.pass;
    if (!c.detail.empty())
      e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw structural_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out)
    throw structural_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

} // namespace clonekit

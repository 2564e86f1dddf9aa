#ifndef CLONEKIT_IO_HPP
#define CLONEKIT_IO_HPP

#include <string>

#include <json.hpp>

#include "clonekit/clone_spec.hpp"
#include "clonekit/group_trees.hpp"
#include "clonekit/witnesses.hpp"

namespace clonekit {

using json = nlohmann::json;

// Operation files: {"k": int, "arity": int, "table": [int,...]} with the
// table in tuple-index order.
json op_to_json(const OpTable& f);
OpTable op_from_json(const json& j);

// Relation files: {"k": int, "arity": int, "tuples": [[int,...],...]}.
json relation_to_json(const Relation& rho);
Relation relation_from_json(const json& j);

// Chain files: {"k": int, "partitions": [[[int,...],...],...]}, smallest
// relation first.
json chain_to_json(const ChainE& chain);
ChainE chain_from_json(const json& j);

// Clone specs: a tagged object mirroring the spec variants, e.g.
//   {"type":"relational","k":3,"relations":[...],"permutations":[...],
//    "subsets":[[0],[0,1]]}
//   {"type":"slupecki","k":3,"i":2}
//   {"type":"chain","chain":{...}}
//   {"type":"generated","k":2,"generators":[...]}
json spec_to_json(const CloneSpec& spec);
CloneSpec spec_from_json(const json& j);

json labeled_tree_to_json(const LabeledTree& tree);
std::string labeled_tree_to_text(const LabeledTree& tree);

json sanity_report_to_json(const SanityReport& rep);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace clonekit

#endif

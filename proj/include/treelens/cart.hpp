#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treelens/dataset.hpp"
#include "treelens/gini.hpp"

namespace treelens {

enum class SplitMode {
  multiway,  // one branch per domain value; an attribute is used once per path
  binary,    // subset-vs-complement questions; attributes may be revisited
};

struct StoppingPolicy {
  // Deepest level at which a node may still ask a question (root = depth 1).
  std::optional<int> max_depth;
  // Nodes smaller than this become leaves.
  std::int64_t min_node_size = 1;
  // Turn label-pure nodes into leaves.
  bool stop_on_pure = true;
};

// Greedy top-down induction: at every node the candidate split with the
// lowest exact weighted Gini impurity wins.  Ties break deterministically:
// earliest attribute in schema order first, then (binary mode) the partition
// whose stored subset is lexicographically smallest in domain order.
struct DecisionTree {
  struct Node {
    int depth = 1;
    LabelCounts counts;                     // training subset label counts
    std::optional<SplitDescriptor> split;   // nullopt for leaves
    std::vector<std::size_t> children;      // multiway: parallel to the domain;
                                            // binary: {inside, outside}
    Label label = Label::negative;          // leaf answer (majority, ties negative)

    bool is_leaf() const { return !split.has_value(); }
    std::int64_t subset_size() const { return counts.total(); }
  };

  std::vector<AttributeSpec> schema;
  SplitMode mode = SplitMode::multiway;
  StoppingPolicy policy;
  std::vector<Node> nodes;  // preorder; nodes[0] is the root

  const Node& root() const;
};

DecisionTree build_tree(const Dataset& data, const StoppingPolicy& policy = {},
                        SplitMode mode = SplitMode::multiway);

// All splits the builder would weigh at a node holding `row_indices`.
// `used_attributes` lists attributes already consumed on the path (multiway
// mode only).  Candidates come back in tie-break order.
std::vector<SplitDescriptor> candidate_splits(const Dataset& data,
                                              std::span<const std::size_t> row_indices,
                                              SplitMode mode,
                                              const std::vector<std::string>& used_attributes);

Label predict(const DecisionTree& tree, const std::vector<std::string>& row);

// Depth of the shallowest node splitting on `attr` (root = 1), if any.
std::optional<int> attribute_depth(const DecisionTree& tree, std::string_view attr);

struct ImportanceEntry {
  int min_depth = 0;                 // shallowest split on the attribute
  std::int64_t decisive_count = 0;   // training rows routed by its splits
};

// Attributes that actually appear in the tree, with how early and how often
// they decide.
std::map<std::string, ImportanceEntry> importance_report(const DecisionTree& tree);

// Serialisations.  The structured text form is versioned JSON carrying the
// schema, a schema digest, node counts and the stopping policy; it round
// trips byte-identically through import_tree.
std::string export_dot(const DecisionTree& tree);
std::string export_ascii(const DecisionTree& tree);
std::string export_text(const DecisionTree& tree);
DecisionTree import_tree(const std::string& text);

std::string schema_digest(const std::vector<AttributeSpec>& schema);

}  // namespace treelens

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lukas/stepset.hpp"

namespace lukas {

/// Rooted plane tree with ordered children. Traversal helpers are
/// iterative; depth can reach the path length.
struct PlaneTree {
  std::vector<PlaneTree> children;

  std::size_t node_count() const;
  /// Outdegrees in preorder; the first entry belongs to the root.
  std::vector<std::size_t> preorder_outdegrees() const;
};

/// Excursion -> plane tree: append the implicit final down step, then read
/// the preorder outdegrees as (step + 1). The result has length+1 nodes
/// with outdegrees in {0} + {b+1 : b up step}.
PlaneTree path_to_tree(const StepSet& s, std::span<const int> excursion);

/// Exact inverse: preorder outdegrees minus one, with the final step
/// dropped.
std::vector<int> tree_to_path(const StepSet& s, const PlaneTree& tree);

/// Number of nodes v that are not a leftmost child (the root qualifies)
/// whose chain of leftmost children down to the leftmost leaf of v's
/// subtree has length exactly r. Equals the r-ascent count of the
/// corresponding excursion.
long tree_ascent_count(const PlaneTree& tree, int r);

/// Nested-parentheses text, one "(...)" per node: a leaf is "()", a root
/// with two leaf children is "(()())".
std::string tree_to_text(const PlaneTree& tree);
PlaneTree tree_from_text(std::string_view text);

}  // namespace lukas

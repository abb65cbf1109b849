#include "lukas/bijection.hpp"

#include <algorithm>

#include "lukas/errors.hpp"

namespace lukas {

namespace {

// Preorder walk with an explicit stack; yields each node once.
template <class Fn>
void preorder(const PlaneTree& root, Fn&& fn) {
  std::vector<const PlaneTree*> stack{&root};
  while (!stack.empty()) {
    const PlaneTree* node = stack.back();
    stack.pop_back();
    fn(*node);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it)
      stack.push_back(&*it);
  }
}

bool outdegree_allowed(const StepSet& s, std::size_t d) {
  if (d == 0) return true;
  const auto& ups = s.ups();
  return std::binary_search(ups.begin(), ups.end(), int(d) - 1);
}

}  // namespace

std::size_t PlaneTree::node_count() const {
  std::size_t n = 0;
  preorder(*this, [&](const PlaneTree&) { ++n; });
  return n;
}

std::vector<std::size_t> PlaneTree::preorder_outdegrees() const {
  std::vector<std::size_t> out;
  preorder(*this, [&](const PlaneTree& v) { out.push_back(v.children.size()); });
  return out;
}

PlaneTree path_to_tree(const StepSet& s, std::span<const int> excursion) {
  const auto& ups = s.ups();
  long altitude = 0;
  for (int st : excursion) {
    bool legal = st == -1 || std::binary_search(ups.begin(), ups.end(), st);
    if (!legal) throw NotAnExcursion("step " + std::to_string(st) +
                                     " is not a member of the step set");
    altitude += st;
    if (altitude < 0) throw NotAnExcursion("path passes below its start");
  }
  if (altitude != 0) throw NotAnExcursion("path does not return to altitude 0");

  // Preorder outdegrees: every step + 1, then the implicit final down step.
  PlaneTree root;
  std::vector<std::pair<PlaneTree*, std::size_t>> open;  // node, unfilled slots
  PlaneTree* current = &root;
  for (int st : excursion) {
    std::size_t d = std::size_t(st + 1);
    current->children.reserve(d);
    if (d > 0) open.emplace_back(current, d);
    // next preorder node: deepest open slot
    auto& [parent, remaining] = open.back();
    current = &parent->children.emplace_back();
    if (--remaining == 0) open.pop_back();
  }
  // `current` is the final leaf (the appended down step, outdegree 0).
  return root;
}

std::vector<int> tree_to_path(const StepSet& s, const PlaneTree& tree) {
  std::vector<std::size_t> degrees = tree.preorder_outdegrees();
  for (std::size_t d : degrees)
    if (!outdegree_allowed(s, d)) throw IllegalOutdegree(d);
  std::vector<int> path;
  path.reserve(degrees.size() - 1);
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i)
    path.push_back(int(degrees[i]) - 1);
  return path;
}

long tree_ascent_count(const PlaneTree& tree, int r) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  // Preorder pass recording (outdegree, is-leftmost-child); in preorder the
  // first child of node i sits at index i+1, so leftmost-chain lengths fall
  // out of a reverse sweep.
  struct Entry {
    std::size_t degree;
    bool leftmost;
  };
  std::vector<Entry> entries;
  std::vector<std::pair<const PlaneTree*, bool>> stack{{&tree, false}};
  while (!stack.empty()) {
    auto [node, leftmost] = stack.back();
    stack.pop_back();
    entries.push_back({node->children.size(), leftmost});
    for (std::size_t j = node->children.size(); j-- > 0;)
      stack.push_back({&node->children[j], j == 0});
  }
  std::vector<long> chain(entries.size(), 0);
  long count = 0;
  for (std::size_t i = entries.size(); i-- > 0;) {
    chain[i] = entries[i].degree == 0 ? 0 : 1 + chain[i + 1];
    if (!entries[i].leftmost && chain[i] == r) ++count;
  }
  return count;
}

std::string tree_to_text(const PlaneTree& tree) {
  std::string out;
  // (node, next child index) pairs
  std::vector<std::pair<const PlaneTree*, std::size_t>> stack{{&tree, 0}};
  out += '(';
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->children.size()) {
      const PlaneTree* child = &node->children[next++];
      out += '(';
      stack.push_back({child, 0});
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  return out;
}

PlaneTree tree_from_text(std::string_view text) {
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r'))
      ++i;
  };
  skip_space();
  if (i >= text.size() || text[i] != '(')
    throw ValidationError("tree text must start with '('");
  PlaneTree root;
  std::vector<PlaneTree*> stack{&root};
  ++i;
  while (i < text.size() && !stack.empty()) {
    char ch = text[i++];
    if (ch == '(') {
      stack.push_back(&stack.back()->children.emplace_back());
    } else if (ch == ')') {
      stack.pop_back();
    } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      continue;
    } else {
      throw ValidationError(std::string("tree text: unexpected character '") +
                            ch + "'");
    }
  }
  if (!stack.empty()) throw ValidationError("tree text: unbalanced parentheses");
  skip_space();
  if (i != text.size())
    throw ValidationError("tree text: trailing characters after the root");
  return root;
}

}  // namespace lukas

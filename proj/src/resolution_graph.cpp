#include "coxforge/resolution_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "coxforge/errors.hpp"

namespace coxforge {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::Custom: return "custom";
  }
  return "?";
}

ResolutionGraph::ResolutionGraph(std::vector<int> nodes, std::vector<std::pair<int, int>> edges,
                                 std::map<int, int> self_intersection, std::vector<LeafVariable> leaf_variables,
                                 std::string label)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      self_intersection_(std::move(self_intersection)),
      leaf_variables_(std::move(leaf_variables)),
      label_(std::move(label)) {
  if (nodes_.empty()) throw ParameterError("a resolution graph needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!position_.emplace(nodes_[i], i).second) throw ParameterError("duplicate node id " + std::to_string(nodes_[i]));
  for (auto& [a, b] : edges_) {
    if (!has_node(a) || !has_node(b)) throw ParameterError("edge refers to an unknown node");
    if (a == b) throw ParameterError("self-loop at node " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw ParameterError("repeated edge");
  if (edges_.size() + 1 != nodes_.size()) throw ParameterError("edge count does not form a tree");
  // Connectedness plus |E| = |V| - 1 makes it a tree.
  std::set<int> seen{nodes_.front()};
  std::vector<int> stack{nodes_.front()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : neighbors(v))
      if (seen.insert(w).second) stack.push_back(w);
  }
  if (seen.size() != nodes_.size()) throw ParameterError("graph is not connected");
  for (int v : nodes_)
    if (!self_intersection_.count(v)) throw ParameterError("missing self-intersection for node " + std::to_string(v));
  if (self_intersection_.size() != nodes_.size()) throw ParameterError("self-intersection given for an unknown node");
  std::set<std::string> names;
  for (const auto& lv : leaf_variables_) {
    if (!has_node(lv.node)) throw ParameterError("leaf variable " + lv.name + " attaches to an unknown node");
    if (!names.insert(lv.name).second) throw ParameterError("duplicate leaf variable " + lv.name);
  }
}

std::size_t ResolutionGraph::index_of(int node) const {
  auto it = position_.find(node);
  if (it == position_.end()) throw ParameterError("unknown node " + std::to_string(node));
  return it->second;
}

bool ResolutionGraph::has_node(int node) const { return position_.count(node) > 0; }

std::vector<int> ResolutionGraph::neighbors(int node) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges_) {
    if (a == node) out.push_back(b);
    if (b == node) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ResolutionGraph::path(int a, int b) const {
  if (!has_node(a) || !has_node(b)) throw ParameterError("path endpoint is not a node");
  std::map<int, int> parent{{a, a}};
  std::queue<int> q;
  q.push(a);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (v == b) break;
    for (int w : neighbors(v))
      if (parent.emplace(w, v).second) q.push(w);
  }
  std::vector<int> out{b};
  while (out.back() != a) out.push_back(parent.at(out.back()));
  std::reverse(out.begin(), out.end());
  return out;
}

StarShape ResolutionGraph::star_shape() const {
  StarShape s;
  std::vector<int> branch_nodes;
  for (int v : nodes_)
    if (valence(v) >= 3) branch_nodes.push_back(v);
  if (branch_nodes.size() > 1) throw UnsupportedGraphError("graph has more than one branch node");
  auto walk = [&](int from, int start) {
    std::vector<int> chain{start};
    int prev = from;
    while (true) {
      std::vector<int> next;
      for (int w : neighbors(chain.back()))
        if (w != prev) next.push_back(w);
      if (next.empty()) break;
      prev = chain.back();
      chain.push_back(next.front());
    }
    return chain;
  };
  if (branch_nodes.empty()) {
    if (nodes_.size() == 1) {
      s.branches.push_back({nodes_.front()});
      return s;
    }
    int start = -1;
    for (int v : nodes_)
      if (valence(v) == 1 && (start == -1 || v < start)) start = v;
    s.branches.push_back(walk(start, start));
    return s;
  }
  s.center = branch_nodes.front();
  for (int w : neighbors(*s.center)) s.branches.push_back(walk(*s.center, w));
  return s;
}

namespace {

std::map<int, int> all_minus_two(const std::vector<int>& nodes) {
  std::map<int, int> si;
  for (int v : nodes) si[v] = -2;
  return si;
}

}  // namespace

ResolutionGraph build_singularity(Family family, int n) {
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<LeafVariable> leaves;
  switch (family) {
    case Family::A:
      if (n < 1) throw ParameterError("A_n requires n >= 1 (got " + std::to_string(n) + ")");
      for (int i = 1; i <= n; ++i) nodes.push_back(i);
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      leaves = {{"x1", 1}, {n == 1 ? "x1'" : "x" + std::to_string(n), n}};
      break;
    case Family::D:
      if (n < 4) throw ParameterError("D_n requires n >= 4 (got " + std::to_string(n) + ")");
      for (int i = 0; i < n; ++i) nodes.push_back(i);
      edges = {{0, 1}, {0, 2}, {0, 3}};
      for (int i = 3; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      leaves = {{"x1", 1}, {"x2", 2}, {"x" + std::to_string(n - 1), n - 1}};
      break;
    case Family::E:
      if (n < 6 || n > 8) throw ParameterError("E_n requires n in {6,7,8} (got " + std::to_string(n) + ")");
      for (int i = 0; i < n; ++i) nodes.push_back(i);
      edges = {{0, 1}, {0, 2}, {2, 3}, {0, 4}};
      for (int i = 4; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      leaves = {{"x1", 1}, {"x3", 3}, {"x" + std::to_string(n - 1), n - 1}};
      break;
    case Family::Custom:
      throw ParameterError("custom trees are built from branch lengths");
  }
  auto si = all_minus_two(nodes);
  return {std::move(nodes), std::move(edges), std::move(si), std::move(leaves), family_name(family) + std::to_string(n)};
}

ResolutionGraph build_custom_tree(const std::vector<int>& branch_lengths) {
  if (branch_lengths.empty()) throw ParameterError("custom tree needs at least one branch");
  std::vector<int> nodes{0};
  std::vector<std::pair<int, int>> edges;
  std::vector<LeafVariable> leaves;
  std::string label = "custom:";
  int next = 1;
  for (std::size_t b = 0; b < branch_lengths.size(); ++b) {
    const int len = branch_lengths[b];
    if (len < 1) throw ParameterError("branch lengths must be positive");
    label += (b ? "," : "") + std::to_string(len);
    int prev = 0;
    for (int k = 0; k < len; ++k) {
      nodes.push_back(next);
      edges.emplace_back(prev, next);
      prev = next++;
    }
    leaves.push_back({"x" + std::to_string(prev), prev});
  }
  auto si = all_minus_two(nodes);
  return {std::move(nodes), std::move(edges), std::move(si), std::move(leaves), label};
}

ResolutionGraph graph_from_case(const std::string& text) {
  if (text.rfind("custom:", 0) == 0) {
    std::vector<int> lengths;
    std::stringstream ss(text.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        lengths.push_back(std::stoi(item, &used));
        if (used != item.size()) throw ParameterError("bad branch length '" + item + "'");
      } catch (const std::logic_error&) {
        throw ParameterError("bad branch length '" + item + "' in " + text);
      }
    }
    return build_custom_tree(lengths);
  }
  if (text.size() < 2) throw ParameterError("case must look like A3, D5, E7 or custom:2,2,3");
  Family f;
  switch (text[0]) {
    case 'A': case 'a': f = Family::A; break;
    case 'D': case 'd': f = Family::D; break;
    case 'E': case 'e': f = Family::E; break;
    default: throw ParameterError("unknown family in case '" + text + "'");
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(text.substr(1), &used);
    if (used + 1 != text.size()) throw ParameterError("bad rank");
  } catch (const std::logic_error&) {
    throw ParameterError("bad rank in case '" + text + "'");
  }
  return build_singularity(f, n);
}

IntegerMatrix intersection_matrix(const ResolutionGraph& g) {
  const std::size_t n = g.size();
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = g.self_intersection().at(g.nodes()[i]);
  for (const auto& [a, b] : g.edges()) {
    m(g.index_of(a), g.index_of(b)) = 1;
    m(g.index_of(b), g.index_of(a)) = 1;
  }
  return m;
}

Grading extended_degree_matrix(const ResolutionGraph& g) {
  const std::size_t n = g.size();
  const std::size_t k = g.leaf_variables().size();
  const IntegerMatrix im = intersection_matrix(g);
  Grading gr;
  gr.degree_matrix = IntegerMatrix(n, k + n);
  for (std::size_t j = 0; j < k; ++j) {
    gr.variables.push_back(g.leaf_variables()[j].name);
    gr.degree_matrix(g.index_of(g.leaf_variables()[j].node), j) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    gr.variables.push_back(ResolutionGraph::curve_variable(g.nodes()[j]));
    for (std::size_t i = 0; i < n; ++i) gr.degree_matrix(i, k + j) = im(i, j);
  }
  return gr;
}

bool is_negative_definite(const IntegerMatrix& m) {
  if (!m.is_symmetric()) throw ParameterError("definiteness test needs a symmetric matrix");
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    IntegerMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m(i, j);
    const Integer det = determinant(lead);
    // Sylvester: sign of the k-th leading minor must be (-1)^k.
    if (k % 2 == 1 ? det >= 0 : det <= 0) return false;
  }
  return true;
}

namespace {

std::vector<int> tree_centers(const ResolutionGraph& g) {
  std::map<int, std::size_t> deg;
  std::vector<int> layer;
  for (int v : g.nodes()) {
    deg[v] = g.valence(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = g.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<int> next;
    for (int v : layer)
      for (int w : g.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string rooted_code(const ResolutionGraph& g, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : g.neighbors(v))
    if (w != parent) kids.push_back(rooted_code(g, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

std::string canonical_code(const ResolutionGraph& g) {
  std::string best;
  for (int c : tree_centers(g)) {
    std::string code = rooted_code(g, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace

bool tree_isomorphic(const ResolutionGraph& a, const ResolutionGraph& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

}  // namespace coxforge

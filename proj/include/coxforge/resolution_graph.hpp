#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxforge/multigraded_ring.hpp"
#include "coxforge/numeric.hpp"

namespace coxforge {

enum class Family { A, D, E, Custom };

std::string family_name(Family f);

struct LeafVariable {
  std::string name;
  int node = 0;
  friend bool operator==(const LeafVariable&, const LeafVariable&) = default;
};

/// A star-shaped tree seen from its branch node. Chains have no centre.
struct StarShape {
  std::optional<int> center;
  /// Node ids of each branch, ordered outward from the centre (for chains: the chain itself).
  std::vector<std::vector<int>> branches;
};

/// Dual graph of a configuration of exceptional curves. Immutable after construction.
class ResolutionGraph {
 public:
  ResolutionGraph(std::vector<int> nodes, std::vector<std::pair<int, int>> edges, std::map<int, int> self_intersection,
                  std::vector<LeafVariable> leaf_variables, std::string label = "");

  [[nodiscard]] const std::vector<int>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  [[nodiscard]] const std::map<int, int>& self_intersection() const { return self_intersection_; }
  [[nodiscard]] const std::vector<LeafVariable>& leaf_variables() const { return leaf_variables_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  /// Position of a node id in nodes(); this is the MultiDegree coordinate of that node.
  [[nodiscard]] std::size_t index_of(int node) const;
  [[nodiscard]] bool has_node(int node) const;
  [[nodiscard]] std::vector<int> neighbors(int node) const;
  [[nodiscard]] std::size_t valence(int node) const { return neighbors(node).size(); }
  /// Node ids along the unique path from a to b, both ends included.
  [[nodiscard]] std::vector<int> path(int a, int b) const;
  [[nodiscard]] StarShape star_shape() const;
  /// Name of the exceptional-curve variable attached to a node.
  [[nodiscard]] static std::string curve_variable(int node) { return "y" + std::to_string(node); }

  friend bool operator==(const ResolutionGraph&, const ResolutionGraph&) = default;

 private:
  std::vector<int> nodes_;
  std::vector<std::pair<int, int>> edges_;
  std::map<int, int> self_intersection_;
  std::vector<LeafVariable> leaf_variables_;
  std::string label_;
  std::map<int, std::size_t> position_;
};

ResolutionGraph build_singularity(Family family, int n);
ResolutionGraph build_custom_tree(const std::vector<int>& branch_lengths);

/// "A3", "D5", "E7", "custom:2,2,3".
ResolutionGraph graph_from_case(const std::string& text);

IntegerMatrix intersection_matrix(const ResolutionGraph& g);
/// Leaf variables first (degree e_attach), then one y-variable per node (its intersection column).
Grading extended_degree_matrix(const ResolutionGraph& g);
bool is_negative_definite(const IntegerMatrix& m);
/// Unlabelled tree isomorphism.
bool tree_isomorphic(const ResolutionGraph& a, const ResolutionGraph& b);

}  // namespace coxforge

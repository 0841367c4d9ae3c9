#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace qfinv {

enum class VertexRole { Component, Point };

/// Reduction graph of the closed fiber of a regular model. Multi-edges are
/// allowed; a pair of components meeting at two points is the standard
/// non-tree example.
struct ReductionGraph {
  std::size_t vertex_count = 1;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Either empty or one role per vertex.
  std::vector<VertexRole> roles;

  friend bool operator==(const ReductionGraph&, const ReductionGraph&) = default;
};

bool is_connected(const ReductionGraph& g);

/// |E| - |V| + 1. Precondition: g is connected.
long betti1(const ReductionGraph& g);

/// Throws InvalidDescriptor when g is disconnected or has an out-of-range edge.
bool is_tree(const ReductionGraph& g);

/// The 4-edge bipartite cycle: two components (0, 1) meeting at two points (2, 3).
ReductionGraph two_components_two_points();

struct Model;

struct LeafComponent {
  friend bool operator==(const LeafComponent&, const LeafComponent&) = default;
};

/// A component whose function field is rational over the residue field.
struct RationalLeafComponent {
  friend bool operator==(const RationalLeafComponent&, const RationalLeafComponent&) = default;
};

struct NestedComponent {
  std::shared_ptr<const Model> model;
  friend bool operator==(const NestedComponent& a, const NestedComponent& b);
};

using ComponentField = std::variant<LeafComponent, RationalLeafComponent, NestedComponent>;

/// Regular-model data for a semi-global field: the reduction graph (or just
/// whether it is a tree) and the function fields of the closed-fiber
/// components.
struct Model {
  std::optional<ReductionGraph> graph;
  std::optional<bool> tree_flag;
  std::vector<ComponentField> components;

  /// Graph tree-ness when a graph is present, otherwise the flag.
  /// Throws InvalidDescriptor if neither is set.
  bool is_tree() const;

  friend bool operator==(const Model&, const Model&) = default;
};

inline bool operator==(const NestedComponent& a, const NestedComponent& b) {
  if (a.model == b.model) return true;
  if (!a.model || !b.model) return false;
  return *a.model == *b.model;
}

ComponentField nested(Model m);

/// Graph used for display when a model only carries a tree flag.
ReductionGraph synthesized_graph(const Model& m);

}  // namespace qfinv

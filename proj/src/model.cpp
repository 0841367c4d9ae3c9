#include "qfinv/model.hpp"

#include <numeric>

#include "qfinv/error.hpp"

namespace qfinv {

namespace {

bool edges_in_range(const ReductionGraph& g) {
  for (const auto& [a, b] : g.edges) {
    if (a >= g.vertex_count || b >= g.vertex_count) return false;
  }
  return true;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

bool is_connected(const ReductionGraph& g) {
  if (g.vertex_count == 0 || !edges_in_range(g)) return false;
  std::vector<std::size_t> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::size_t classes = g.vertex_count;
  for (const auto& [a, b] : g.edges) {
    const auto ra = find_root(parent, a);
    const auto rb = find_root(parent, b);
    if (ra != rb) {
      parent[ra] = rb;
      --classes;
    }
  }
  return classes == 1;
}

long betti1(const ReductionGraph& g) {
  return static_cast<long>(g.edges.size()) - static_cast<long>(g.vertex_count) + 1;
}

bool is_tree(const ReductionGraph& g) {
  if (g.vertex_count == 0) throw InvalidDescriptor("reduction graph has no vertices");
  if (!edges_in_range(g)) throw InvalidDescriptor("reduction graph edge endpoint out of range");
  if (!is_connected(g)) throw InvalidDescriptor("disconnected graph");
  return betti1(g) == 0;
}

ReductionGraph two_components_two_points() {
  ReductionGraph g;
  g.vertex_count = 4;
  g.edges = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  g.roles = {VertexRole::Component, VertexRole::Component, VertexRole::Point, VertexRole::Point};
  return g;
}

bool Model::is_tree() const {
  if (graph) return qfinv::is_tree(*graph);
  if (tree_flag) return *tree_flag;
  throw InvalidDescriptor("model has neither a graph nor a tree flag");
}

ComponentField nested(Model m) { return NestedComponent{std::make_shared<const Model>(std::move(m))}; }

ReductionGraph synthesized_graph(const Model& m) {
  if (m.graph) return *m.graph;
  const std::size_t s = std::max<std::size_t>(m.components.size(), 1);
  const bool tree = m.tree_flag.value_or(true);
  ReductionGraph g;
  g.roles.assign(s, VertexRole::Component);
  std::size_t next = s;
  for (std::size_t c = 0; c + 1 < s; ++c) {
    g.edges.emplace_back(c, next);
    g.edges.emplace_back(c + 1, next);
    g.roles.push_back(VertexRole::Point);
    ++next;
  }
  if (!tree) {
    g.edges.emplace_back(s - 1, next);
    g.edges.emplace_back(0, next);
    g.roles.push_back(VertexRole::Point);
    ++next;
  }
  g.vertex_count = next;
  return g;
}

}  // namespace qfinv

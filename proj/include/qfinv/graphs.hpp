#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qfinv/field.hpp"
#include "qfinv/invariant_value.hpp"

namespace qfinv {

enum class VertexColor { White, Black };

/// Black/white rooted tree of component fields. Vertex 0 is the root.
class RootedComponentTree {
 public:
  struct Vertex {
    VertexColor color = VertexColor::White;
    unsigned level = 1;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };

  /// Adds a vertex under `parent` (or the root when parent is empty) and
  /// returns its index.
  std::size_t add_vertex(VertexColor color, std::optional<std::size_t> parent);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Vertex& root() const { return vertices_.at(0); }

 private:
  std::vector<Vertex> vertices_;
};

/// Root is black iff the model's reduction graph is not a tree; Nested
/// components contribute their own trees, Leaf/RationalLeaf a white vertex.
RootedComponentTree build_component_tree(const FieldDescriptor& f);

/// Minimum level of a black vertex; infinity when every vertex is white.
InvariantValue layer(const RootedComponentTree& t);

InvariantValue layer(const FieldDescriptor& f);

/// 2^layer when not fully arboreal, 2^(n+1) m_s(k) otherwise, with
/// n = cdvf_depth of the ground field.
InvariantValue m_from_layer(const FieldDescriptor& f);

/// Every AU set the union theorem can produce for a function field over an
/// n-local field over `base`, in canonical order.
std::set<AUSet> attainable_au(unsigned n, const BaseClass& base);

/// Serial reference for attainable_au (plain fixpoint over pairwise unions).
std::set<AUSet> attainable_au_serial(unsigned n, const BaseClass& base);

/// n-local tower Cdvf^n(base).
FieldDescriptor n_local(unsigned n, const BaseClass& base);

/// Semi-global field over Cdvf^n(base) whose component nesting is a chain of
/// j-1 single-component tree models ending in two components meeting at two
/// points. Its layer is j. Throws std::out_of_range unless 1 <= j <= n.
FieldDescriptor make_layer_example(unsigned n, unsigned j, const BaseClass& base);

/// A chain of n tree models ending in Leaf components: layer infinity.
FieldDescriptor make_fully_arboreal(unsigned n, const BaseClass& base);

/// Random valid semi-global descriptor over Cdvf^n(base).
FieldDescriptor random_semi_global(unsigned n, const BaseClass& base, std::mt19937_64& rng);

/// Uniform integer in [0, bound) by rejection sampling; portable across
/// standard libraries unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// DOT rendering of the reduction graphs of a semi-global descriptor: one
/// cluster per model in preorder, one line per edge.
std::string to_dot(const FieldDescriptor& f);

}  // namespace qfinv

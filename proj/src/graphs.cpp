#include "qfinv/graphs.hpp"

#include <omp.h>

#include <functional>
#include <sstream>
#include <stdexcept>

#include "qfinv/error.hpp"

namespace qfinv {

std::size_t RootedComponentTree::add_vertex(VertexColor color, std::optional<std::size_t> parent) {
  Vertex v;
  v.color = color;
  if (parent) {
    v.parent = parent;
    v.level = vertices_.at(*parent).level + 1;
  } else if (!vertices_.empty()) {
    throw std::logic_error("rooted component tree already has a root");
  }
  vertices_.push_back(v);
  const std::size_t index = vertices_.size() - 1;
  if (parent) vertices_[*parent].children.push_back(index);
  return index;
}

namespace {

void add_model(RootedComponentTree& t, const Model& m, std::optional<std::size_t> parent) {
  const auto self = t.add_vertex(m.is_tree() ? VertexColor::White : VertexColor::Black, parent);
  for (const auto& c : m.components) {
    if (const auto* n = std::get_if<NestedComponent>(&c)) {
      add_model(t, *n->model, self);
    } else {
      t.add_vertex(VertexColor::White, self);
    }
  }
}

}  // namespace

RootedComponentTree build_component_tree(const FieldDescriptor& f) {
  require_valid(f);
  if (!f.is_semi_global()) throw InvalidDescriptor("component trees are defined for semi-global descriptors");
  RootedComponentTree t;
  add_model(t, f.model(), std::nullopt);
  return t;
}

InvariantValue layer(const RootedComponentTree& t) {
  auto best = InvariantValue::infinity();
  for (const auto& v : t.vertices()) {
    if (v.color == VertexColor::Black) best = std::min(best, InvariantValue(v.level));
  }
  return best;
}

InvariantValue layer(const FieldDescriptor& f) { return layer(build_component_tree(f)); }

InvariantValue m_from_layer(const FieldDescriptor& f) {
  require_valid(f);
  if (!f.is_semi_global()) throw InvalidDescriptor("m_from_layer needs a semi-global descriptor");
  if (!satisfies_fnfield_hypothesis(f.inner())) {
    throw HypothesisRequired("m_from_layer needs the function-field hypothesis on the base");
  }
  const auto l = layer(f);
  if (l.is_finite()) return power_of_two(l);
  const unsigned n = cdvf_depth(f.inner());
  return power_of_two(InvariantValue(n + 1)) * InvariantValue(ms_us(bottom_residue(f.inner())));
}

namespace {

void check_attainable_args(unsigned n, const BaseClass& base) {
  if (!base.fnfield_hypothesis()) {
    throw HypothesisRequired("attainable_au needs the function-field hypothesis on the base");
  }
  if (n == 0) throw DomainError("attainable_au needs n >= 1");
  if (base.exponent() + n + 1 >= 63) throw CapExceeded("dimensions overflow 64 bits");
}

std::set<AUSet> with_optional_two(const std::set<AUSet>& unions) {
  std::set<AUSet> out;
  for (const auto& u : unions) {
    out.insert(u);
    out.insert(u | AUSet{2});
  }
  return out;
}

std::set<AUSet> one_local(const BaseClass& base) {
  const std::uint64_t top = std::uint64_t{1} << (base.exponent() + 2);
  return {AUSet{top}, AUSet{2, top}};
}

/// Closure of `generators` under pairwise union.
std::set<AUSet> union_closure_serial(const std::vector<AUSet>& generators) {
  std::set<AUSet> family(generators.begin(), generators.end());
  std::vector<AUSet> frontier(family.begin(), family.end());
  while (!frontier.empty()) {
    std::vector<AUSet> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        AUSet u = x | g;
        if (family.insert(u).second) next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  return family;
}

std::set<AUSet> union_closure_parallel(const std::vector<AUSet>& generators) {
  std::set<AUSet> family(generators.begin(), generators.end());
  std::vector<AUSet> frontier(family.begin(), family.end());
  while (!frontier.empty()) {
    std::set<AUSet> fresh;
    const auto count = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel
    {
      std::set<AUSet> local;
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        for (const auto& g : generators) {
          AUSet u = frontier[static_cast<std::size_t>(i)] | g;
          if (!family.contains(u)) local.insert(std::move(u));
        }
      }
#pragma omp critical(qfinv_union_closure)
      fresh.merge(local);
    }
    frontier.assign(fresh.begin(), fresh.end());
    family.merge(fresh);
  }
  return family;
}

template <typename Closure>
std::set<AUSet> attainable(unsigned n, const BaseClass& base, Closure closure) {
  check_attainable_args(n, base);
  std::set<AUSet> level = one_local(base);
  for (unsigned depth = 2; depth <= n; ++depth) {
    std::vector<AUSet> generators;
    generators.reserve(level.size());
    for (const auto& b : level) generators.push_back(b.sumset());
    level = with_optional_two(closure(generators));
  }
  return level;
}

}  // namespace

std::set<AUSet> attainable_au(unsigned n, const BaseClass& base) {
  return attainable(n, base, union_closure_parallel);
}

std::set<AUSet> attainable_au_serial(unsigned n, const BaseClass& base) {
  return attainable(n, base, union_closure_serial);
}

FieldDescriptor n_local(unsigned n, const BaseClass& base) {
  auto f = FieldDescriptor::base(base);
  for (unsigned i = 0; i < n; ++i) f = FieldDescriptor::cdvf(f);
  return f;
}

namespace {

Model single_component_tree(ComponentField c) {
  Model m;
  m.graph = ReductionGraph{1, {}, {VertexRole::Component}};
  m.components.push_back(std::move(c));
  return m;
}

}  // namespace

FieldDescriptor make_layer_example(unsigned n, unsigned j, const BaseClass& base) {
  if (j < 1 || j > n) {
    throw std::out_of_range("layer j=" + std::to_string(j) + " must satisfy 1 <= j <= n=" + std::to_string(n));
  }
  Model m;
  m.graph = two_components_two_points();
  m.components = {LeafComponent{}, LeafComponent{}};
  for (unsigned level = j; level > 1; --level) m = single_component_tree(nested(std::move(m)));
  return FieldDescriptor::semi_global(n_local(n, base), std::move(m));
}

FieldDescriptor make_fully_arboreal(unsigned n, const BaseClass& base) {
  if (n < 1) throw std::out_of_range("fully arboreal chains need n >= 1");
  Model m;
  m.tree_flag = true;
  m.components = {LeafComponent{}, RationalLeafComponent{}};
  for (unsigned level = n; level > 1; --level) m = single_component_tree(nested(std::move(m)));
  return FieldDescriptor::semi_global(n_local(n, base), std::move(m));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

namespace {

Model random_model(unsigned depth, std::mt19937_64& rng) {
  Model m;
  const auto count = 1 + uniform_below(rng, 3);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto pick = uniform_below(rng, depth >= 2 ? 3 : 2);
    if (pick == 0) {
      m.components.emplace_back(LeafComponent{});
    } else if (pick == 1) {
      m.components.emplace_back(RationalLeafComponent{});
    } else {
      m.components.push_back(nested(random_model(depth - 1, rng)));
    }
  }
  const bool tree = uniform_below(rng, 10) >= 3;
  switch (uniform_below(rng, 3)) {
    case 0:
      m.tree_flag = tree;
      break;
    case 1:
      m.tree_flag = tree;
      m.graph = synthesized_graph(m);
      m.tree_flag.reset();
      break;
    default:
      m.tree_flag = tree;
      m.graph = synthesized_graph(m);
      break;
  }
  return m;
}

void dot_model(std::ostringstream& out, const Model& m, std::size_t& counter) {
  const std::size_t id = counter++;
  const ReductionGraph g = synthesized_graph(m);
  const std::string prefix = "m" + std::to_string(id) + "_v";
  out << "  subgraph cluster_" << id << " {\n";
  out << "    label=\"model " << id << (m.is_tree() ? " (tree)" : " (not a tree)") << "\";\n";
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    out << "    " << prefix << v;
    if (!g.roles.empty()) out << (g.roles[v] == VertexRole::Component ? " [shape=box]" : " [shape=point]");
    out << ";\n";
  }
  for (const auto& [a, b] : g.edges) out << "    " << prefix << a << " -- " << prefix << b << ";\n";
  out << "  }\n";
  for (const auto& c : m.components) {
    if (const auto* n = std::get_if<NestedComponent>(&c)) dot_model(out, *n->model, counter);
  }
}

}  // namespace

FieldDescriptor random_semi_global(unsigned n, const BaseClass& base, std::mt19937_64& rng) {
  if (n < 1) throw std::out_of_range("random_semi_global needs n >= 1");
  return FieldDescriptor::semi_global(n_local(n, base), random_model(n, rng));
}

std::string to_dot(const FieldDescriptor& f) {
  require_valid(f);
  if (!f.is_semi_global()) throw InvalidDescriptor("export-graph needs a semi-global descriptor");
  std::ostringstream out;
  out << "graph reduction {\n";
  std::size_t counter = 0;
  dot_model(out, f.model(), counter);
  out << "}\n";
  return out.str();
}

}  // namespace qfinv

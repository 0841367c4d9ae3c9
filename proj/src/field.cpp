#include "qfinv/field.hpp"

#include <sstream>

#include "qfinv/error.hpp"

namespace qfinv {

unsigned BaseClass::exponent() const {
  return std::visit(
      [](const auto& k) -> unsigned {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AlgebraicallyClosed>) {
          return 0;
        } else if constexpr (std::is_same_v<T, FiniteField>) {
          return 1;
        } else {
          return k.r;
        }
      },
      kind_);
}

bool BaseClass::fnfield_hypothesis() const {
  if (const auto* c = std::get_if<CustomBase>(&kind_)) return c->fnfield_hypothesis;
  return true;
}

bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

struct FieldDescriptor::Node {
  Kind kind;
  BaseClass base;
  std::optional<FieldDescriptor> inner;
  Model model;
};

FieldDescriptor FieldDescriptor::base(BaseClass b) {
  return FieldDescriptor(std::make_shared<const Node>(Node{Kind::Base, b, std::nullopt, {}}));
}

FieldDescriptor FieldDescriptor::cdvf(FieldDescriptor residue) {
  return FieldDescriptor(std::make_shared<const Node>(Node{Kind::Cdvf, {}, std::move(residue), {}}));
}

FieldDescriptor FieldDescriptor::rational_fn(FieldDescriptor over) {
  return FieldDescriptor(std::make_shared<const Node>(Node{Kind::RationalFn, {}, std::move(over), {}}));
}

FieldDescriptor FieldDescriptor::semi_global(FieldDescriptor over, Model model) {
  return FieldDescriptor(
      std::make_shared<const Node>(Node{Kind::SemiGlobal, {}, std::move(over), std::move(model)}));
}

FieldDescriptor::Kind FieldDescriptor::kind() const { return node_->kind; }

const BaseClass& FieldDescriptor::base_class() const {
  if (node_->kind != Kind::Base) throw std::logic_error("base_class() on a non-base descriptor");
  return node_->base;
}

const FieldDescriptor& FieldDescriptor::inner() const {
  if (!node_->inner) throw std::logic_error("inner() on a base descriptor");
  return *node_->inner;
}

const Model& FieldDescriptor::model() const {
  if (node_->kind != Kind::SemiGlobal) throw std::logic_error("model() on a non-semi-global descriptor");
  return node_->model;
}

bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FieldDescriptor::Kind::Base:
      return x.base == y.base;
    case FieldDescriptor::Kind::Cdvf:
    case FieldDescriptor::Kind::RationalFn:
      return *x.inner == *y.inner;
    case FieldDescriptor::Kind::SemiGlobal:
      return *x.inner == *y.inner && x.model == y.model;
  }
  return false;
}

namespace {

class Validator {
 public:
  std::vector<Violation> violations;

  void field(const FieldDescriptor& f, const std::string& path) {
    switch (f.kind()) {
      case FieldDescriptor::Kind::Base:
        if (const auto* fin = std::get_if<FiniteField>(&f.base_class().kind())) {
          if (!is_odd_prime(fin->p)) add(path, std::to_string(fin->p) + " is not an odd prime");
        }
        break;
      case FieldDescriptor::Kind::Cdvf:
        if (!is_ms_us_computable(f.inner())) add(path + ".residue", "residue not ms-us-computable");
        field(f.inner(), path + ".residue");
        break;
      case FieldDescriptor::Kind::RationalFn:
        field(f.inner(), path + ".over");
        break;
      case FieldDescriptor::Kind::SemiGlobal:
        if (!f.inner().is_cdvf()) add(path + ".over", "over must be Cdvf-shaped");
        field(f.inner(), path + ".over");
        model(f.model(), f.inner(), path + ".model");
        break;
    }
  }

 private:
  void add(const std::string& path, std::string message) { violations.push_back({path, std::move(message)}); }

  void graph(const ReductionGraph& g, const std::string& path) {
    if (g.vertex_count == 0) {
      add(path, "graph must have at least one vertex");
      return;
    }
    bool in_range = true;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto [a, b] = g.edges[i];
      if (a >= g.vertex_count || b >= g.vertex_count) {
        add(path + ".e[" + std::to_string(i) + "]", "edge endpoint out of range");
        in_range = false;
      }
    }
    if (in_range && !is_connected(g)) add(path, "graph is disconnected");
    if (!g.roles.empty()) {
      if (g.roles.size() != g.vertex_count) {
        add(path + ".roles", "roles must label every vertex");
      } else if (in_range) {
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
          const auto [a, b] = g.edges[i];
          if (g.roles[a] == g.roles[b]) {
            add(path + ".e[" + std::to_string(i) + "]", "edge must join a component vertex to a point vertex");
          }
        }
      }
    }
  }

  void model(const Model& m, const FieldDescriptor& over, const std::string& path) {
    if (m.components.empty()) add(path + ".components", "model must have at least one component");
    if (m.graph) {
      const auto before = violations.size();
      graph(*m.graph, path + ".graph");
      if (violations.size() == before && m.tree_flag && *m.tree_flag != (betti1(*m.graph) == 0)) {
        add(path, "tree flag disagrees with graph");
      }
    } else if (!m.tree_flag) {
      add(path, "model needs a graph or a tree flag");
    }
    const bool nesting_allowed = over.is_cdvf() && over.inner().is_cdvf();
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      const auto* n = std::get_if<NestedComponent>(&m.components[i]);
      if (n == nullptr) continue;
      const std::string sub = path + ".components[" + std::to_string(i) + "]";
      if (!n->model) {
        add(sub, "nested component without a model");
      } else if (!nesting_allowed) {
        add(sub, "nested component requires the over-field's residue to be Cdvf-shaped");
      } else {
        model(*n->model, over.inner(), sub + ".model");
      }
    }
  }
};

unsigned depth(const FieldDescriptor& f) {
  switch (f.kind()) {
    case FieldDescriptor::Kind::Base:
      return 0;
    case FieldDescriptor::Kind::Cdvf:
      return 1 + depth(f.inner());
    default:
      return depth(f.inner());
  }
}

}  // namespace

Validity validate(const FieldDescriptor& f) {
  Validator v;
  v.field(f, "$");
  return Validity{std::move(v.violations)};
}

void require_valid(const FieldDescriptor& f) {
  const auto report = validate(f);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid descriptor:";
  for (const auto& v : report.violations) msg << " [" << v.path << ": " << v.message << "]";
  throw InvalidDescriptor(msg.str());
}

bool is_ms_us_computable(const FieldDescriptor& f) {
  switch (f.kind()) {
    case FieldDescriptor::Kind::Base:
      return true;
    case FieldDescriptor::Kind::Cdvf:
      return is_ms_us_computable(f.inner());
    case FieldDescriptor::Kind::RationalFn:
      return f.inner().is_base() &&
             std::holds_alternative<AlgebraicallyClosed>(f.inner().base_class().kind());
    case FieldDescriptor::Kind::SemiGlobal:
      return false;
  }
  return false;
}

unsigned cdvf_depth(const FieldDescriptor& f) {
  require_valid(f);
  return depth(f);
}

std::uint64_t ms_us(const FieldDescriptor& f) {
  require_valid(f);
  if (!is_ms_us_computable(f)) {
    throw NotMsUsComputable("m_s = u_s is not known for this descriptor");
  }
  const FieldDescriptor& bottom = bottom_residue(f);
  const unsigned r = bottom.is_base() ? bottom.base_class().exponent() : 1;  // ratfn(algclosed): 2^1
  const unsigned exponent = r + depth(f);
  if (exponent >= 64) throw NotMsUsComputable("m_s = u_s overflows 64 bits");
  return std::uint64_t{1} << exponent;
}

const FieldDescriptor& bottom_residue(const FieldDescriptor& f) {
  const FieldDescriptor* cur = &f;
  while (cur->is_cdvf()) cur = &cur->inner();
  return *cur;
}

bool satisfies_fnfield_hypothesis(const FieldDescriptor& f) {
  const auto& bottom = bottom_residue(f);
  return bottom.is_base() && bottom.base_class().fnfield_hypothesis();
}

}  // namespace qfinv

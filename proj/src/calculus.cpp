#include "qfinv/calculus.hpp"

#include <map>

#include "qfinv/dsl.hpp"
#include "qfinv/error.hpp"

namespace qfinv {

namespace {

class AuEvaluator {
 public:
  AUSet field(const FieldDescriptor& f) {
    const std::string key = print_field(f);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    AUSet out = compute(f);
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::map<std::string, AUSet> memo_;

  AUSet compute(const FieldDescriptor& f) {
    switch (f.kind()) {
      case FieldDescriptor::Kind::Base:
        return AUSet{std::uint64_t{1} << f.base_class().exponent()};
      case FieldDescriptor::Kind::Cdvf:
        return field(f.inner()).sumset();
      case FieldDescriptor::Kind::RationalFn:
        return AUSet{2 * ms_us(f.inner())};
      case FieldDescriptor::Kind::SemiGlobal:
        return semi_global(f.inner(), f.model());
    }
    throw std::logic_error("unreachable");
  }

  AUSet semi_global(const FieldDescriptor& over, const Model& m) {
    const FieldDescriptor& residue = over.inner();
    AUSet out;
    for (const auto& c : m.components) {
      out |= component(over, residue, c).sumset();
    }
    if (!m.is_tree()) out.insert(2);
    return out;
  }

  AUSet component(const FieldDescriptor& over, const FieldDescriptor& residue, const ComponentField& c) {
    if (std::holds_alternative<LeafComponent>(c)) {
      if (!satisfies_fnfield_hypothesis(over)) {
        throw HypothesisRequired(
            "leaf component needs a base whose one-variable function fields satisfy m = u = 2 u_s");
      }
      return AUSet{2 * ms_us(residue)};
    }
    if (std::holds_alternative<RationalLeafComponent>(c)) {
      return AUSet{2 * ms_us(residue)};
    }
    return field(FieldDescriptor::semi_global(residue, *std::get<NestedComponent>(c).model));
  }
};

}  // namespace

AUSet au_set(const FieldDescriptor& f) {
  require_valid(f);
  return AuEvaluator{}.field(f);
}

InvariantValue m_invariant(const FieldDescriptor& f) { return InvariantValue(au_set(f).min()); }

InvariantValue u_invariant(const FieldDescriptor& f) { return InvariantValue(au_set(f).max()); }

std::set<InvariantValue> possible_m(unsigned n, const BaseClass& base) {
  if (!base.fnfield_hypothesis()) {
    throw HypothesisRequired("possible_m needs the function-field hypothesis on the base");
  }
  const unsigned r = base.exponent();
  if (n == 0) return {power_of_two(InvariantValue(r))};
  std::set<InvariantValue> out;
  for (unsigned j = 1; j <= n; ++j) out.insert(power_of_two(InvariantValue(j)));
  out.insert(power_of_two(InvariantValue(n + r + 1)));
  return out;
}

}  // namespace qfinv

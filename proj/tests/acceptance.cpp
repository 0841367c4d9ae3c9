// Acceptance suite: one PASS/FAIL line per criterion, exact equality only.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qfinv/calculus.hpp"
#include "qfinv/dsl.hpp"
#include "qfinv/forms.hpp"
#include "qfinv/graphs.hpp"
#include "qfinv/oracle.hpp"

using namespace qfinv;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

// (m, u) pairs of every field the suite computes, for criterion 9.
std::vector<std::pair<InvariantValue, InvariantValue>> g_computed;

void record(const InvariantValue& m, const InvariantValue& u) { g_computed.emplace_back(m, u); }

void record(const FieldDescriptor& f) { record(m_invariant(f), u_invariant(f)); }

FieldDescriptor finite_field(std::uint32_t p) { return FieldDescriptor::base(BaseClass::finite(p)); }
FieldDescriptor algclosed() { return FieldDescriptor::base(BaseClass::algebraically_closed()); }

FieldDescriptor laurent(FieldDescriptor f, unsigned times = 1) {
  for (unsigned i = 0; i < times; ++i) f = FieldDescriptor::cdvf(f);
  return f;
}

std::string str(const AUSet& s) { return s.to_string(); }

const BaseClass kFinite = BaseClass::finite(3);
const BaseClass kAlgClosed = BaseClass::algebraically_closed();

Check criterion1() {
  Check c;
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const auto e = au_enumerate(Tower(p, 0));
    record(e.m, e.u);
    c.expect(e.au == AUSet({2}) && e.m == InvariantValue(2) && e.u == InvariantValue(2),
             "F_" + std::to_string(p) + " gave " + str(e.au));
  }
  return c;
}

Check criterion2() {
  Check c;
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const auto below = au_enumerate(Tower(p, 0));
    const auto e = au_enumerate(Tower(p, 1));
    record(e.m, e.u);
    c.expect(e.au == AUSet({4}), "F_" + std::to_string(p) + "((t)) gave " + str(e.au));
    c.expect(e.au == below.au.sumset(), "sumset of the layer below differs for p=" + std::to_string(p));
    c.expect(e.au == au_set(laurent(finite_field(p))), "calculus differs for p=" + std::to_string(p));
  }
  const auto below = au_enumerate(Tower(3, 1));
  const auto e = au_enumerate(Tower(3, 2));
  record(e.m, e.u);
  c.expect(e.au == AUSet({8}), "F_3((t1))((t2)) gave " + str(e.au));
  c.expect(e.au == below.au.sumset(), "sumset of F_3((t1)) differs");
  c.expect(e.au == au_set(laurent(finite_field(3), 2)), "calculus differs for F_3((t1))((t2))");
  return c;
}

Check criterion3() {
  Check c;
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const auto f = FieldDescriptor::rational_fn(laurent(finite_field(p)));
    record(f);
    c.expect(m_invariant(f) == InvariantValue(8), print_field(f));
  }
  const auto g = FieldDescriptor::rational_fn(laurent(FieldDescriptor::rational_fn(algclosed())));
  record(g);
  c.expect(m_invariant(g) == InvariantValue(8), print_field(g));
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    for (unsigned r = 1; r <= 4; ++r) {
      const auto f = FieldDescriptor::rational_fn(laurent(finite_field(p), r));
      record(f);
      c.expect(m_invariant(f) == InvariantValue(1ULL << (r + 2)), print_field(f));
    }
  }
  return c;
}

Check criterion4() {
  Check c;
  auto model = [](bool tree) {
    Model m;
    m.tree_flag = tree;
    m.components = {LeafComponent{}, LeafComponent{}};
    return m;
  };
  const std::vector<std::tuple<FieldDescriptor, bool, AUSet>> cases{
      {laurent(finite_field(3)), true, AUSet({8})},
      {laurent(finite_field(3)), false, AUSet({2, 8})},
      {laurent(finite_field(7)), true, AUSet({8})},
      {laurent(finite_field(7)), false, AUSet({2, 8})},
      {laurent(algclosed()), true, AUSet({4})},
      {laurent(algclosed()), false, AUSet({2, 4})},
  };
  for (const auto& [over, tree, expected] : cases) {
    const auto f = FieldDescriptor::semi_global(over, model(tree));
    record(f);
    c.expect(au_set(f) == expected, print_field(f) + " gave " + str(au_set(f)));
  }
  // The same dichotomy through explicit graphs.
  Model cycle;
  cycle.graph = two_components_two_points();
  cycle.components = {LeafComponent{}, LeafComponent{}};
  c.expect(au_set(FieldDescriptor::semi_global(laurent(finite_field(3)), cycle)) == AUSet({2, 8}), "explicit cycle graph");
  return c;
}

Check criterion5() {
  Check c;
  const std::set<AUSet> four{{16}, {2, 16}, {4, 10, 16}, {2, 4, 10, 16}};
  const std::set<AUSet> ten{{16},
                            {4, 10, 16},
                            {8, 10, 12, 14, 16},
                            {4, 8, 10, 12, 14, 16},
                            {4, 6, 8, 10, 12, 14, 16},
                            {2, 16},
                            {2, 4, 10, 16},
                            {2, 8, 10, 12, 14, 16},
                            {2, 4, 8, 10, 12, 14, 16},
                            {2, 4, 6, 8, 10, 12, 14, 16}};
  const auto a = attainable_au(2, kFinite);
  const auto b = attainable_au(3, kAlgClosed);
  c.expect(a == four, "(2, finite) gave " + std::to_string(a.size()) + " sets");
  c.expect(b == ten, "(3, algclosed) gave " + std::to_string(b.size()) + " sets");
  c.expect(a == attainable_au_serial(2, kFinite) && b == attainable_au_serial(3, kAlgClosed),
           "serial and parallel closures differ");
  return c;
}

Check criterion6() {
  Check c;
  for (const auto& base : {kFinite, kAlgClosed}) {
    const std::string name = print_base(base);
    for (unsigned n = 1; n <= 4; ++n) {
      for (unsigned j = 1; j <= n; ++j) {
        const auto f = make_layer_example(n, j, base);
        record(f);
        const std::string tag = name + " n=" + std::to_string(n) + " j=" + std::to_string(j);
        c.expect(layer(f) == InvariantValue(j), "layer " + tag);
        c.expect(m_from_layer(f) == InvariantValue(1ULL << j), "m_from_layer " + tag);
      }
      const auto f = make_fully_arboreal(n, base);
      record(f);
      const unsigned eps = base == kFinite ? 2 : 1;
      c.expect(layer(f).is_infinite(), "fully arboreal layer " + name);
      c.expect(m_from_layer(f) == InvariantValue(1ULL << (n + eps)), "fully arboreal m " + name);
      c.expect(m_invariant(f) == InvariantValue(1ULL << (n + eps)), "fully arboreal AU min " + name);
    }
  }
  std::mt19937_64 rng(20240601);
  for (const auto& base : {kFinite, kAlgClosed}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (int i = 0; i < 200; ++i) {
        const auto f = random_semi_global(n, base, rng);
        record(f);
        c.expect(validate(f).ok(), "generator produced an invalid descriptor");
        c.expect(m_from_layer(f) == m_invariant(f), "m_from_layer != m_invariant for " + print_field(f));
      }
    }
  }
  return c;
}

Check criterion7() {
  Check c;
  for (const auto& base : {kFinite, kAlgClosed}) {
    for (unsigned n = 1; n <= 3; ++n) {
      std::set<InvariantValue> minima;
      for (const auto& s : attainable_au(n, base)) minima.insert(InvariantValue(s.min()));
      c.expect(minima == possible_m(n, base), print_base(base) + " n=" + std::to_string(n));
    }
  }
  return c;
}

Check criterion8() {
  Check c;
  const auto a = cross_validate(Tower(3, 1), 1, 4, ValidationMode::exhaustive());
  c.expect(a.contradictions() == 0, "exhaustive run has contradictions");
  c.expect(a.engine_isotropic_certified() == a.engine_isotropic(),
           std::to_string(a.engine_isotropic() - a.engine_isotropic_certified()) + " isotropic decisions uncertified");
  c.expect(!a.records.empty(), "exhaustive run is empty");
  const auto b = cross_validate(Tower(5, 1), 1, 5, ValidationMode::random(1000, 42));
  c.expect(b.contradictions() == 0, "random run has contradictions");
  c.expect(b.records.size() == 1000, "random run size");
  return c;
}

Check criterion9() {
  Check c;
  std::mt19937_64 rng(9);
  const std::vector<Tower> towers{Tower(3, 0), Tower(5, 0), Tower(7, 0), Tower(13, 0), Tower(3, 1),
                                  Tower(5, 1), Tower(7, 1), Tower(13, 1), Tower(3, 2), Tower(5, 2)};
  for (const auto& t : towers) {
    for (int i = 0; i < 500; ++i) {
      ClassForm q;
      const auto dim = 1 + uniform_below(rng, 8);
      for (std::uint64_t k = 0; k < dim; ++k) q.entries.emplace_back(static_cast<std::uint32_t>(uniform_below(rng, t.class_count())));
      const SquareClass a(static_cast<std::uint32_t>(uniform_below(rng, t.class_count())));
      auto shuffled = q;
      std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
      const bool iso = is_isotropic(t, q);
      const bool uni = is_universal(t, q);
      const std::string tag = t.to_string() + " " + print_form(t, q);
      c.expect(is_isotropic(t, q.scaled(a)) == iso && is_universal(t, q.scaled(a)) == uni, "scaling " + tag);
      c.expect(is_isotropic(t, shuffled) == iso && is_universal(t, shuffled) == uni, "permutation " + tag);
    }
  }
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const Tower t(p, 1);
    const Tower k(p, 0);
    for (std::size_t d = 1; d <= 6; ++d) {
      for_each_class_multiset(t, d, [&](const ClassForm& q) {
        ClassForm q1;
        ClassForm q2;
        for (auto e : q.entries) (e.exp(1) ? q2 : q1).entries.push_back(e.without(1));
        const bool law =
            q1.dim() > 0 && q2.dim() > 0 && is_anisotropic_universal(k, q1) && is_anisotropic_universal(k, q2);
        c.expect(is_anisotropic_universal(t, q) == law, "residue-form law " + t.to_string() + " " + print_form(t, q));
      });
    }
  }
  c.expect(g_computed.size() > 100, "too few computed fields");
  for (const auto& [m, u] : g_computed) {
    const std::string tag = "m=" + m.to_string() + " u=" + u.to_string();
    c.expect(m.is_finite() && u.is_finite(), "infinite invariant " + tag);
    if (!m.is_finite() || !u.is_finite()) continue;
    std::uint64_t pow2 = 1;
    while (pow2 * 2 <= u.value()) pow2 *= 2;
    c.expect(m.value() != 3 && m.value() != 5, "m in {3, 5}: " + tag);
    c.expect(m.value() <= pow2 && pow2 <= u.value(), "power-of-two sandwich fails: " + tag);
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"base facts by brute force", criterion1},
      {"sumset law", criterion2},
      {"named m-invariants", criterion3},
      {"1-local AU dichotomy", criterion4},
      {"attainable AU landscapes", criterion5},
      {"layer calculus", criterion6},
      {"possible m-invariants", criterion7},
      {"Springer cross-validation", criterion8},
      {"property suites", criterion9},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::printf("criterion %zu %s  %s  (%.2f s)%s%s\n", i + 1, result.ok ? "PASS" : "FAIL", criteria[i].first,
                dt.count(), result.ok ? "" : "  ", result.detail.c_str());
    if (!result.ok) ++failures;
  }
  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              total.count());
  return failures == 0 ? 0 : 1;
}

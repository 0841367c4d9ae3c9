#include <gtest/gtest.h>
#include <omp.h>

#include <algorithm>
#include <random>

#include "qfinv/dsl.hpp"
#include "qfinv/error.hpp"
#include "qfinv/forms.hpp"
#include "support/oracles.hpp"

using namespace qfinv;

namespace {

ClassForm form(const Tower& t, const char* text) { return parse_form(text, t); }

ClassForm random_form(std::mt19937_64& rng, const Tower& t, std::size_t dim) {
  ClassForm q;
  for (std::size_t i = 0; i < dim; ++i) q.entries.emplace_back(static_cast<std::uint32_t>(rng() % t.class_count()));
  return q;
}

std::vector<std::uint32_t> integer_coefficients(const Tower& t, const ClassForm& q) {
  std::vector<std::uint32_t> a;
  for (auto c : q.entries) a.push_back(c.eps() ? oracles::smallest_nonsquare(t.p()) : 1U);
  return a;
}

AUSet iterated_sumset(unsigned r) {
  AUSet s{2};
  for (unsigned i = 0; i < r; ++i) s = s.sumset();
  return s;
}

}  // namespace

TEST(SquareClass, GroupLaw) {
  const SquareClass a(0b101);
  const SquareClass b(0b011);
  EXPECT_EQ(a * b, SquareClass(0b110));
  EXPECT_TRUE((a * a).is_trivial());
  EXPECT_TRUE(a.eps());
  EXPECT_FALSE(a.exp(1));
  EXPECT_TRUE(a.exp(2));
  EXPECT_EQ(a.without(2), SquareClass(1));
  EXPECT_EQ(SquareClass::make(true, {false, true}), a);
}

TEST(Tower, Basics) {
  const Tower t(5, 2);
  EXPECT_EQ(t.class_count(), 8U);
  EXPECT_EQ(t.nonresidue(), 2U);
  EXPECT_TRUE(t.minus_one().is_trivial());
  EXPECT_TRUE(Tower(7, 0).minus_one().eps());
  EXPECT_EQ(Tower(7, 0).nonresidue(), 3U);
  EXPECT_EQ(t.class_name(SquareClass(0)), "1");
  EXPECT_EQ(t.class_name(SquareClass(0b111)), "s*t1*t2");
  EXPECT_EQ(t.class_name(SquareClass(0b100)), "t2");
  EXPECT_THROW(Tower(9, 1), DomainError);
  EXPECT_THROW(Tower(3, Tower::kMaxDepth + 1), DomainError);
}

TEST(ClassOfElement, Examples) {
  const Tower t(5, 1);
  EXPECT_EQ(class_of_element(t, parse_element("1", t)), SquareClass(0));
  EXPECT_EQ(class_of_element(t, parse_element("t^-1", t)), SquareClass(0b10));
  EXPECT_EQ(class_of_element(t, parse_element("3*t^2 + 1*t^3", t)), SquareClass(0b01));
  EXPECT_THROW((void)class_of_element(t, LaurentElement(5, 1)), DomainError);
}

TEST(ClassOfElement, RepresentativesRoundTrip) {
  for (const auto& t : {Tower(3, 0), Tower(5, 1), Tower(7, 2), Tower(13, 3)}) {
    for (auto c : t.classes()) EXPECT_EQ(class_of_element(t, t.representative(c)), c);
  }
}

TEST(ClassOfElement, Multiplicative) {
  std::mt19937_64 rng(3);
  const Tower t(7, 2);
  for (int i = 0; i < 500; ++i) {
    LaurentElement a(7, 2);
    LaurentElement b(7, 2);
    while (a.is_zero()) a.add_term(1 + static_cast<std::int64_t>(rng() % 6), {int(rng() % 5) - 2, int(rng() % 5) - 2});
    while (b.is_zero()) b.add_term(1 + static_cast<std::int64_t>(rng() % 6), {int(rng() % 5) - 2, int(rng() % 5) - 2});
    a.add_term(static_cast<std::int64_t>(rng() % 7), {3, 3});
    b.add_term(static_cast<std::int64_t>(rng() % 7), {3, 4});
    EXPECT_EQ(class_of_element(t, a * b), class_of_element(t, a) * class_of_element(t, b));
    // Multiplying by a square leaves the class unchanged.
    EXPECT_EQ(class_of_element(t, a * b * b), class_of_element(t, a));
  }
}

TEST(Isotropy, Examples) {
  EXPECT_FALSE(is_isotropic(Tower(5, 0), form(Tower(5, 0), "[1, 2]")));
  EXPECT_FALSE(is_isotropic(Tower(5, 1), form(Tower(5, 1), "[1, 2, t1, 2*t1]")));
  EXPECT_TRUE(is_isotropic(Tower(3, 0), form(Tower(3, 0), "[1, 1, 1]")));
  EXPECT_TRUE(is_isotropic(Tower(5, 0), form(Tower(5, 0), "[1, 4]")));
  EXPECT_FALSE(is_isotropic(Tower(5, 0), form(Tower(5, 0), "[1]")));
  EXPECT_THROW((void)is_isotropic(Tower(5, 0), ClassForm{}), DomainError);
  EXPECT_THROW((void)is_isotropic(Tower(5, 0), ClassForm{{SquareClass(2)}}), DomainError);
}

TEST(Isotropy, DecisionDepth) {
  EXPECT_EQ(decide_isotropic(Tower(5, 0), form(Tower(5, 0), "[1, 2]")).depth, 0U);
  EXPECT_EQ(decide_isotropic(Tower(5, 2), form(Tower(5, 2), "[1, s, t1, s*t1, t2]")).depth, 2U);
}

TEST(Represents, Examples) {
  const Tower f5(5, 0);
  EXPECT_TRUE(represents(f5, form(f5, "[1]"), class_of_element(f5, parse_element("4", f5))));
  EXPECT_FALSE(represents(f5, form(f5, "[1]"), class_of_element(f5, parse_element("2", f5))));
  const Tower l5(5, 1);
  EXPECT_TRUE(represents(l5, form(l5, "[1, 2, t1, 2*t1]"), SquareClass(0b10)));
}

TEST(Universal, Examples) {
  const Tower f5(5, 0);
  EXPECT_TRUE(is_universal(f5, form(f5, "[1, 2]")));
  EXPECT_FALSE(is_universal(f5, form(f5, "[1]")));
  const Tower l5(5, 1);
  EXPECT_TRUE(is_universal(l5, form(l5, "[1, 2, t1, 2*t1]")));
  EXPECT_TRUE(is_universal(l5, form(l5, "[1, s, t1, s*t1]")));
  EXPECT_TRUE(is_anisotropic_universal(l5, form(l5, "[1, s, t1, s*t1]")));
}

TEST(BaseField, IsotropyMatchesBruteForce) {
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const Tower t(p, 0);
    for (std::size_t d = 1; d <= 4; ++d) {
      for (const auto& q : oracles::all_forms(t, d)) {
        EXPECT_EQ(is_isotropic(t, q), oracles::image(p, integer_coefficients(t, q)).isotropic)
            << p << " " << print_form(t, q);
      }
    }
  }
}

TEST(BaseField, UniversalityMatchesImage) {
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const Tower t(p, 0);
    for (std::size_t d = 1; d <= 3; ++d) {
      for (const auto& q : oracles::all_forms(t, d)) {
        const auto img = oracles::image(p, integer_coefficients(t, q));
        EXPECT_EQ(is_universal(t, q), img.nonzero_values.size() == p - 1) << p << " " << print_form(t, q);
      }
    }
  }
}

TEST(LocalField, IsotropyMatchesHilbertSymbols) {
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const Tower t(p, 1);
    for (std::size_t d = 1; d <= 6; ++d) {
      for (const auto& q : oracles::all_forms(t, d)) {
        EXPECT_EQ(is_isotropic(t, q), oracles::local_isotropic(p, q)) << p << " " << print_form(t, q);
        if (d <= 5) EXPECT_EQ(is_universal(t, q), oracles::local_universal(p, q)) << p << " " << print_form(t, q);
      }
    }
  }
}

TEST(LocalField, AuFromHilbertSymbols) {
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    const Tower t(p, 1);
    AUSet au;
    for (std::size_t d = 1; d <= 8; ++d) {
      for (const auto& q : oracles::all_forms(t, d)) {
        if (!oracles::local_isotropic(p, q) && oracles::local_universal(p, q)) au.insert(d);
      }
    }
    EXPECT_EQ(au, AUSet({4}));
    EXPECT_EQ(au_enumerate(t).au, au);
  }
}

TEST(FormProperties, ScalingAndPermutationInvariance) {
  std::mt19937_64 rng(42);
  for (const auto& t : {Tower(3, 0), Tower(5, 0), Tower(3, 1), Tower(5, 1), Tower(3, 2), Tower(7, 2)}) {
    for (int i = 0; i < 500; ++i) {
      const auto q = random_form(rng, t, 1 + rng() % 7);
      const SquareClass a(static_cast<std::uint32_t>(rng() % t.class_count()));
      auto shuffled = q;
      std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
      const bool iso = is_isotropic(t, q);
      const bool uni = is_universal(t, q);
      EXPECT_EQ(is_isotropic(t, q.scaled(a)), iso);
      EXPECT_EQ(is_universal(t, q.scaled(a)), uni);
      EXPECT_EQ(is_isotropic(t, shuffled), iso);
      EXPECT_EQ(is_universal(t, shuffled), uni);
    }
  }
}

TEST(FormProperties, IsotropicImpliesUniversal) {
  std::mt19937_64 rng(8);
  for (const auto& t : {Tower(3, 1), Tower(5, 1), Tower(3, 2), Tower(13, 2)}) {
    for (int i = 0; i < 500; ++i) {
      const auto q = random_form(rng, t, 2 + rng() % 6);
      if (is_isotropic(t, q)) EXPECT_TRUE(is_universal(t, q)) << print_form(t, q);
    }
  }
}

TEST(FormProperties, ResidueFormLaw) {
  for (std::uint32_t p : {3U, 5U, 7U}) {
    const Tower t(p, 1);
    const Tower k(p, 0);
    for (std::size_t d = 1; d <= 6; ++d) {
      for (const auto& q : oracles::all_forms(t, d)) {
        ClassForm q1;
        ClassForm q2;
        for (auto c : q.entries) (c.exp(1) ? q2 : q1).entries.push_back(c.without(1));
        const bool law = q1.dim() > 0 && q2.dim() > 0 && is_anisotropic_universal(k, q1) &&
                         is_anisotropic_universal(k, q2);
        EXPECT_EQ(is_anisotropic_universal(t, q), law) << p << " " << print_form(t, q);
      }
    }
  }
}

TEST(AuEnumerate, Examples) {
  const auto f5 = au_enumerate(Tower(5, 0));
  EXPECT_EQ(f5.au, AUSet({2}));
  EXPECT_EQ(f5.m, InvariantValue(2));
  EXPECT_EQ(f5.u, InvariantValue(2));
  EXPECT_EQ(au_enumerate(Tower(5, 1)).au, AUSet({4}));
  const auto f3 = au_enumerate(Tower(3, 2));
  EXPECT_EQ(f3.au, AUSet({8}));
  EXPECT_EQ(f3.m, InvariantValue(8));
}

TEST(AuEnumerate, IteratedSumset) {
  for (std::uint32_t p : {3U, 5U, 7U, 13U}) {
    for (unsigned r = 0; r <= 2; ++r) {
      const auto e = au_enumerate(Tower(p, r));
      EXPECT_EQ(e.au, iterated_sumset(r));
      EXPECT_NE(e.m, InvariantValue(3));
      EXPECT_NE(e.m, InvariantValue(5));
    }
  }
}

TEST(AuEnumerate, Options) {
  const Tower t(3, 2);
  const auto small = au_enumerate(t, {4, 2});
  EXPECT_TRUE(small.au.empty());
  EXPECT_EQ(small.m, InvariantValue::infinity());
  EXPECT_EQ(small.forms_checked, enumeration_size(t, 4));
  EXPECT_THROW((void)au_enumerate(Tower(3, 3)), CapExceeded);
  EXPECT_EQ(au_enumerate(Tower(3, 3), {2, 3}).au, AUSet());
  EXPECT_EQ(enumeration_size(Tower(3, 0), 2), 3U);
  EXPECT_EQ(enumeration_size(t, 8), 6435U);
}

TEST(AuEnumerate, SerialAndParallelAgree) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  for (const auto& t : {Tower(3, 0), Tower(5, 1), Tower(3, 2), Tower(13, 2)}) {
    const auto a = au_enumerate(t);
    const auto b = au_enumerate_serial(t);
    EXPECT_EQ(a, b);
    EXPECT_LE(b.forms_checked, enumeration_size(t, t.class_count()));
  }
  omp_set_num_threads(saved);
}

TEST(Radical, Examples) {
  const Tower f5(5, 0);
  EXPECT_EQ(kaplansky_radical(f5), f5.classes());
  EXPECT_EQ(kaplansky_radical(Tower(5, 1)), std::vector<SquareClass>{SquareClass(0)});
  EXPECT_EQ(kaplansky_radical(Tower(3, 1)), std::vector<SquareClass>{SquareClass(0)});
  EXPECT_THROW((void)kaplansky_radical(Tower(3, 3)), CapExceeded);
}

TEST(Radical, MatchesDefinition) {
  for (const auto& t : {Tower(3, 0), Tower(7, 1), Tower(5, 2)}) {
    std::vector<SquareClass> expected;
    for (auto a : t.classes()) {
      bool all = true;
      for (auto b : t.classes()) {
        const ClassForm q{{SquareClass(0), t.minus_one() * a, t.minus_one() * b}};
        all = all && is_isotropic(t, q);
      }
      if (all) expected.push_back(a);
    }
    EXPECT_EQ(kaplansky_radical(t), expected);
  }
}

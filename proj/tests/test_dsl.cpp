#include <gtest/gtest.h>

#include <random>

#include "qfinv/dsl.hpp"
#include "qfinv/error.hpp"
#include "qfinv/forms.hpp"
#include "qfinv/graphs.hpp"

using namespace qfinv;

namespace {

struct Position {
  std::size_t line;
  std::size_t column;
};

Position parse_error_position(const std::string& text) {
  try {
    (void)parse_field(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no parse error for " << text;
  return {0, 0};
}

}  // namespace

TEST(ParseField, Examples) {
  EXPECT_EQ(parse_field("ratfn(laurent(finite(5)))"),
            FieldDescriptor::rational_fn(FieldDescriptor::cdvf(FieldDescriptor::base(BaseClass::finite(5)))));
  const auto sg = parse_field("semiglobal(laurent(finite(3)); {tree:false,components:[leaf,leaf]})");
  ASSERT_TRUE(sg.is_semi_global());
  EXPECT_EQ(cdvf_depth(sg), 1U);
  EXPECT_FALSE(sg.model().is_tree());
  EXPECT_EQ(sg.model().components.size(), 2U);
  EXPECT_EQ(parse_field(" custom( r = 2 , hyp = false ) "), FieldDescriptor::base(BaseClass::custom(2, false)));
}

TEST(ParseField, InvalidDescriptor) {
  try {
    (void)parse_field("finite(4)");
    FAIL();
  } catch (const InvalidDescriptor& e) {
    EXPECT_NE(std::string(e.what()).find("4 is not an odd prime"), std::string::npos);
  }
  EXPECT_THROW((void)parse_field("semiglobal(finite(3); {tree:true,components:[leaf]})"), InvalidDescriptor);
  EXPECT_THROW((void)parse_field("laurent(ratfn(finite(3)))"), InvalidDescriptor);
}

TEST(ParseField, SyntaxErrors) {
  EXPECT_THROW((void)parse_field(""), ParseError);
  EXPECT_THROW((void)parse_field("finite(3) x"), ParseError);
  EXPECT_THROW((void)parse_field("finites(3)"), ParseError);
  EXPECT_THROW((void)parse_field("finite(99999999999)"), ParseError);
  EXPECT_THROW((void)parse_field("semiglobal(laurent(finite(3)); {tree:true})"), ParseError);
  EXPECT_THROW((void)parse_field("semiglobal(laurent(finite(3)); {components:[leaf]})"), ParseError);
  EXPECT_THROW((void)parse_field("semiglobal(laurent(finite(3)); {tree:true,tree:true,components:[leaf]})"),
               ParseError);
  EXPECT_THROW((void)parse_field("semiglobal(laurent(finite(3)); {graph:{v:2,e:[(0,1)],roles:[c,x]},components:[leaf]})"),
               ParseError);
}

TEST(ParseField, ErrorPositions) {
  const auto a = parse_error_position("laurent(finite(3)");
  EXPECT_EQ(a.line, 1U);
  EXPECT_EQ(a.column, 18U);
  const auto b = parse_error_position("semiglobal(\n  laurent(finite(3));\n  {tree:maybe,components:[leaf]})");
  EXPECT_EQ(b.line, 3U);
  EXPECT_EQ(b.column, 9U);
}

TEST(ParseField, GraphSyntax) {
  const auto f = parse_field(
      "semiglobal(laurent(finite(3)); {graph:{v:4,e:[(0,2),(0,3),(1,2),(1,3)],roles:[c,c,p,p]},"
      "components:[leaf,ratleaf]})");
  EXPECT_EQ(*f.model().graph, two_components_two_points());
  EXPECT_FALSE(f.model().is_tree());
  const auto g = parse_field("semiglobal(laurent(finite(3)); {graph:{v:1,e:[]},components:[leaf]})");
  EXPECT_TRUE(g.model().is_tree());
  EXPECT_THROW((void)parse_field("semiglobal(laurent(finite(3)); {graph:{v:3,e:[(0,1)]},components:[leaf]})"),
               InvalidDescriptor);
}

TEST(PrintField, RoundTripsRandomDescriptors) {
  std::mt19937_64 rng(17);
  for (const auto& base : {BaseClass::finite(7), BaseClass::algebraically_closed(), BaseClass::custom(3, false)}) {
    for (unsigned n = 1; n <= 4; ++n) {
      for (int i = 0; i < 50; ++i) {
        const auto f = random_semi_global(n, base, rng);
        const auto text = print_field(f);
        const auto g = parse_field(text);
        EXPECT_EQ(g, f) << text;
        EXPECT_EQ(print_field(g), text);
      }
    }
  }
  for (const char* text : {"algclosed", "finite(13)", "custom(r=0,hyp=true)", "ratfn(algclosed)",
                           "laurent(ratfn(algclosed))", "ratfn(laurent(laurent(finite(3))))"}) {
    EXPECT_EQ(print_field(parse_field(text)), text);
  }
}

TEST(ParseForm, Examples) {
  const Tower t(5, 1);
  const auto q = parse_form("[1, s, t1, s*t1]", t);
  EXPECT_EQ(q.entries, (std::vector<SquareClass>{SquareClass(0), SquareClass(1), SquareClass(2), SquareClass(3)}));
  EXPECT_EQ(parse_form("[t1^3]", Tower(3, 1)).entries, std::vector<SquareClass>{SquareClass(2)});
  EXPECT_EQ(parse_form("[elem{3*t^2 + 1*t^3}]", t).entries, std::vector<SquareClass>{SquareClass(1)});
  EXPECT_EQ(parse_form("[2, 4*t, t^-2, s^2*t1^-1]", t).entries,
            (std::vector<SquareClass>{SquareClass(1), SquareClass(2), SquareClass(0), SquareClass(2)}));
}

TEST(ParseForm, Errors) {
  const Tower t(5, 1);
  EXPECT_THROW((void)parse_form("[t2]", t), ParseError);
  EXPECT_THROW((void)parse_form("[t0]", t), ParseError);
  EXPECT_THROW((void)parse_form("[0]", t), ParseError);
  EXPECT_THROW((void)parse_form("[5*t]", t), ParseError);
  EXPECT_THROW((void)parse_form("[elem{t - t}]", t), ParseError);
  EXPECT_THROW((void)parse_form("[]", t), ParseError);
  EXPECT_THROW((void)parse_form("[1,]", t), ParseError);
  EXPECT_THROW((void)parse_form("[1] 2", t), ParseError);
}

TEST(PrintForm, RoundTrip) {
  for (const auto& t : {Tower(3, 0), Tower(5, 1), Tower(7, 3)}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for_each_class_multiset(t, d, [&](const ClassForm& q) { EXPECT_EQ(parse_form(print_form(t, q), t), q); });
    }
  }
  EXPECT_EQ(print_form(Tower(5, 1), parse_form("[1,s,t1,s*t1]", Tower(5, 1))), "[1, s, t1, s*t1]");
}

TEST(ParseElement, SparsePolynomials) {
  const Tower t(5, 1);
  const auto e = parse_element("3*t^-2 + 1*t^3", t);
  auto expected = LaurentElement::monomial(5, 3, {-2});
  expected.add_term(1, {3});
  EXPECT_EQ(e, expected);
  EXPECT_EQ(parse_element(e.to_string(), t), e);
  EXPECT_EQ(parse_element("-t", t), LaurentElement::monomial(5, 4, {1}));
  EXPECT_EQ(parse_element("2*3", t), LaurentElement::constant(5, 1, 1));
  EXPECT_EQ(parse_element("2^-1", t), LaurentElement::constant(5, 1, 3));
  const Tower u(3, 2);
  EXPECT_EQ(parse_element("2*t1*t2^-1 - 1", u).to_string(), "2 + 2*t1*t2^-1");
  EXPECT_THROW((void)parse_element("t3", u), ParseError);
  EXPECT_THROW((void)parse_element("0^-1", u), ParseError);
}

TEST(ParseTowerAndBase, Values) {
  EXPECT_EQ(parse_tower("5,1"), Tower(5, 1));
  EXPECT_EQ(parse_tower(" 13 , 2 "), Tower(13, 2));
  EXPECT_THROW((void)parse_tower("5"), ParseError);
  EXPECT_THROW((void)parse_tower("4,1"), DomainError);
  EXPECT_EQ(parse_base("finite"), BaseClass::finite(3));
  EXPECT_EQ(parse_base("finite:7"), BaseClass::finite(7));
  EXPECT_EQ(parse_base("algclosed"), BaseClass::algebraically_closed());
  EXPECT_EQ(parse_base("custom:2:true"), BaseClass::custom(2, true));
  EXPECT_THROW((void)parse_base("finite:9"), ParseError);
  EXPECT_THROW((void)parse_base("real"), ParseError);
  for (const auto& b : {BaseClass::finite(11), BaseClass::algebraically_closed(), BaseClass::custom(4, false)}) {
    EXPECT_EQ(parse_base(print_base(b)), b);
  }
}

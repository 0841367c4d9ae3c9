#include "qfinv/dsl.hpp"

#include <cctype>
#include <limits>

#include "qfinv/error.hpp"
#include "qfinv/forms.hpp"
#include "qfinv/fp.hpp"

namespace qfinv {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::size_t position() {
    skip_ws();
    return pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  /// Matches an identifier-like word that is not followed by [A-Za-z0-9_].
  bool accept_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  void expect_word(std::string_view word) {
    if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
  }

  std::uint64_t parse_uint() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail_at(start, "integer out of range");
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return value;
  }

  std::int64_t parse_int() {
    const bool negative = accept('-');
    const std::size_t start = position();
    const auto magnitude = parse_uint();
    if (magnitude > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
      fail_at(start, "integer out of range");
    }
    return negative ? -static_cast<std::int64_t>(magnitude) : static_cast<std::int64_t>(magnitude);
  }

  bool parse_bool() {
    if (accept_word("true")) return true;
    if (accept_word("false")) return false;
    fail("expected 'true' or 'false'");
  }

  bool is_digit_next() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class FieldParser {
 public:
  explicit FieldParser(Cursor& c) : c_(c) {}

  FieldDescriptor field() {
    if (c_.accept_word("algclosed")) return FieldDescriptor::base(BaseClass::algebraically_closed());
    if (c_.accept_word("finite")) {
      c_.expect('(');
      const auto at = c_.position();
      const auto p = c_.parse_uint();
      if (p > std::numeric_limits<std::uint32_t>::max()) c_.fail_at(at, "prime out of range");
      c_.expect(')');
      return FieldDescriptor::base(BaseClass::finite(static_cast<std::uint32_t>(p)));
    }
    if (c_.accept_word("custom")) {
      c_.expect('(');
      c_.expect_word("r");
      c_.expect('=');
      const auto at = c_.position();
      const auto r = c_.parse_uint();
      if (r > 62) c_.fail_at(at, "exponent out of range");
      c_.expect(',');
      c_.expect_word("hyp");
      c_.expect('=');
      const bool hyp = c_.parse_bool();
      c_.expect(')');
      return FieldDescriptor::base(BaseClass::custom(static_cast<unsigned>(r), hyp));
    }
    if (c_.accept_word("laurent")) {
      c_.expect('(');
      auto inner = field();
      c_.expect(')');
      return FieldDescriptor::cdvf(std::move(inner));
    }
    if (c_.accept_word("ratfn")) {
      c_.expect('(');
      auto inner = field();
      c_.expect(')');
      return FieldDescriptor::rational_fn(std::move(inner));
    }
    if (c_.accept_word("semiglobal")) {
      c_.expect('(');
      auto over = field();
      c_.expect(';');
      auto m = model();
      c_.expect(')');
      return FieldDescriptor::semi_global(std::move(over), std::move(m));
    }
    c_.fail("expected a field (algclosed, finite, custom, laurent, ratfn, semiglobal)");
  }

  Model model() {
    Model m;
    bool seen_components = false;
    bool seen_graph = false;
    c_.expect('{');
    do {
      const auto at = c_.position();
      if (c_.accept_word("tree")) {
        if (m.tree_flag) c_.fail_at(at, "duplicate key 'tree'");
        c_.expect(':');
        m.tree_flag = c_.parse_bool();
      } else if (c_.accept_word("graph")) {
        if (seen_graph) c_.fail_at(at, "duplicate key 'graph'");
        seen_graph = true;
        c_.expect(':');
        m.graph = graph();
      } else if (c_.accept_word("components")) {
        if (seen_components) c_.fail_at(at, "duplicate key 'components'");
        seen_components = true;
        c_.expect(':');
        c_.expect('[');
        do {
          m.components.push_back(component());
        } while (c_.accept(','));
        c_.expect(']');
      } else {
        c_.fail("expected 'tree', 'graph' or 'components'");
      }
    } while (c_.accept(','));
    const auto close = c_.position();
    c_.expect('}');
    if (!seen_components) c_.fail_at(close, "model is missing 'components'");
    if (!m.tree_flag && !m.graph) c_.fail_at(close, "model needs 'tree' or 'graph'");
    return m;
  }

 private:
  ReductionGraph graph() {
    ReductionGraph g;
    c_.expect('{');
    c_.expect_word("v");
    c_.expect(':');
    const auto at = c_.position();
    const auto v = c_.parse_uint();
    if (v > 1'000'000) c_.fail_at(at, "vertex count out of range");
    g.vertex_count = static_cast<std::size_t>(v);
    c_.expect(',');
    c_.expect_word("e");
    c_.expect(':');
    c_.expect('[');
    if (c_.peek() != ']') {
      do {
        c_.expect('(');
        const auto a = c_.parse_uint();
        c_.expect(',');
        const auto b = c_.parse_uint();
        c_.expect(')');
        g.edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      } while (c_.accept(','));
    }
    c_.expect(']');
    if (c_.accept(',')) {
      c_.expect_word("roles");
      c_.expect(':');
      c_.expect('[');
      do {
        if (c_.accept_word("c")) {
          g.roles.push_back(VertexRole::Component);
        } else if (c_.accept_word("p")) {
          g.roles.push_back(VertexRole::Point);
        } else {
          c_.fail("expected role 'c' or 'p'");
        }
      } while (c_.accept(','));
      c_.expect(']');
    }
    c_.expect('}');
    return g;
  }

  ComponentField component() {
    if (c_.accept_word("leaf")) return LeafComponent{};
    if (c_.accept_word("ratleaf")) return RationalLeafComponent{};
    if (c_.peek() == '{') return nested(model());
    c_.fail("expected a component ('leaf', 'ratleaf' or a nested model)");
  }

  Cursor& c_;
};

void print_graph(std::string& out, const ReductionGraph& g) {
  out += "{v:" + std::to_string(g.vertex_count) + ",e:[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(g.edges[i].first) + "," + std::to_string(g.edges[i].second) + ")";
  }
  out += "]";
  if (!g.roles.empty()) {
    out += ",roles:[";
    for (std::size_t i = 0; i < g.roles.size(); ++i) {
      if (i > 0) out += ",";
      out += g.roles[i] == VertexRole::Component ? "c" : "p";
    }
    out += "]";
  }
  out += "}";
}

void print_model_to(std::string& out, const Model& m) {
  out += "{";
  bool need_comma = false;
  if (m.tree_flag) {
    out += *m.tree_flag ? "tree:true" : "tree:false";
    need_comma = true;
  }
  if (m.graph) {
    if (need_comma) out += ",";
    out += "graph:";
    print_graph(out, *m.graph);
    need_comma = true;
  }
  if (need_comma) out += ",";
  out += "components:[";
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    if (i > 0) out += ",";
    const auto& c = m.components[i];
    if (std::holds_alternative<LeafComponent>(c)) {
      out += "leaf";
    } else if (std::holds_alternative<RationalLeafComponent>(c)) {
      out += "ratleaf";
    } else {
      print_model_to(out, *std::get<NestedComponent>(c).model);
    }
  }
  out += "]}";
}

void print_field_to(std::string& out, const FieldDescriptor& f) {
  switch (f.kind()) {
    case FieldDescriptor::Kind::Base: {
      const auto& k = f.base_class().kind();
      if (std::holds_alternative<AlgebraicallyClosed>(k)) {
        out += "algclosed";
      } else if (const auto* fin = std::get_if<FiniteField>(&k)) {
        out += "finite(" + std::to_string(fin->p) + ")";
      } else {
        const auto& c = std::get<CustomBase>(k);
        out += "custom(r=" + std::to_string(c.r) + ",hyp=" + (c.fnfield_hypothesis ? "true" : "false") + ")";
      }
      break;
    }
    case FieldDescriptor::Kind::Cdvf:
      out += "laurent(";
      print_field_to(out, f.inner());
      out += ")";
      break;
    case FieldDescriptor::Kind::RationalFn:
      out += "ratfn(";
      print_field_to(out, f.inner());
      out += ")";
      break;
    case FieldDescriptor::Kind::SemiGlobal:
      out += "semiglobal(";
      print_field_to(out, f.inner());
      out += "; ";
      print_model_to(out, f.model());
      out += ")";
      break;
  }
}

/// A monomial c * t^e accumulated while reading a product.
struct Monomial {
  std::int64_t coef = 1;
  LaurentElement::Exponent exponent;
};

/// Reads "t" [INDEX] ["^" INT]; the leading 't' has been consumed.
void variable_power(Cursor& c, const Tower& t, LaurentElement::Exponent& e, std::size_t at) {
  std::uint64_t index = 1;
  if (c.is_digit_next()) index = c.parse_uint();
  if (index == 0 || index > t.r()) {
    c.fail_at(at, "unknown variable t" + std::to_string(index) + " (tower has r=" + std::to_string(t.r()) + ")");
  }
  std::int64_t power = 1;
  if (c.accept('^')) power = c.parse_int();
  e[index - 1] += static_cast<int>(power);
}

/// Reads [ws] 't' immediately followed by digits/'^' etc. Returns false if
/// the next token is not a variable.
bool accept_variable(Cursor& c) {
  if (c.peek() != 't') return false;
  return c.accept('t');
}

Monomial parse_term(Cursor& c, const Tower& t) {
  Monomial m;
  m.exponent.assign(t.r(), 0);
  do {
    const auto at = c.position();
    if (c.is_digit_next()) {
      const auto value = static_cast<std::int64_t>(c.parse_uint() % t.p());
      std::int64_t power = 1;
      if (c.accept('^')) power = c.parse_int();
      auto base = fp::reduce(value, t.p());
      if (base == 0 && power < 0) c.fail_at(at, "division by zero");
      if (power < 0) base = fp::inv(base, t.p());
      m.coef = fp::mul(fp::reduce(m.coef, t.p()),
                       fp::pow(base, static_cast<std::uint64_t>(power < 0 ? -power : power), t.p()), t.p());
    } else if (accept_variable(c)) {
      variable_power(c, t, m.exponent, at);
    } else {
      c.fail("expected a coefficient or a variable t<i>");
    }
  } while (c.accept('*'));
  return m;
}

LaurentElement parse_poly(Cursor& c, const Tower& t) {
  LaurentElement out(t.p(), t.r());
  bool negative = c.accept('-');
  while (true) {
    const auto m = parse_term(c, t);
    out.add_term(negative ? -m.coef : m.coef, m.exponent);
    if (c.accept('+')) {
      negative = false;
    } else if (c.accept('-')) {
      negative = true;
    } else {
      break;
    }
  }
  return out;
}

SquareClass parse_form_entry(Cursor& c, const Tower& t) {
  const auto at = c.position();
  if (c.accept_word("elem")) {
    c.expect('{');
    const auto e = parse_poly(c, t);
    c.expect('}');
    if (e.is_zero()) c.fail_at(at, "zero entry");
    return class_of_element(t, e);
  }
  std::uint32_t bits = 0;
  do {
    const auto factor_at = c.position();
    std::uint32_t factor = 0;
    if (c.is_digit_next()) {
      const auto value = c.parse_uint() % t.p();
      if (value == 0) c.fail_at(factor_at, "zero entry");
      factor = fp::is_square(static_cast<std::uint32_t>(value), t.p()) ? 0U : 1U;
    } else if (c.accept_word("s")) {
      factor = 1U;
    } else if (accept_variable(c)) {
      std::uint64_t index = 1;
      if (c.is_digit_next()) index = c.parse_uint();
      if (index == 0 || index > t.r()) {
        c.fail_at(factor_at,
                  "unknown variable t" + std::to_string(index) + " (tower has r=" + std::to_string(t.r()) + ")");
      }
      factor = 1U << index;
    } else {
      c.fail("expected 1, s, t<i>, an integer or elem{...}");
    }
    std::int64_t power = 1;
    if (c.accept('^')) power = c.parse_int();
    if (power % 2 != 0) bits ^= factor;
  } while (c.accept('*'));
  return SquareClass(bits);
}

}  // namespace

FieldDescriptor parse_field(std::string_view text) {
  Cursor c(text);
  FieldParser parser(c);
  auto f = parser.field();
  if (!c.at_end()) c.fail("unexpected trailing input");
  require_valid(f);
  return f;
}

std::string print_field(const FieldDescriptor& f) {
  std::string out;
  print_field_to(out, f);
  return out;
}

std::string print_model(const Model& m) {
  std::string out;
  print_model_to(out, m);
  return out;
}

ClassForm parse_form(std::string_view text, const Tower& t) {
  Cursor c(text);
  ClassForm q;
  c.expect('[');
  do {
    q.entries.push_back(parse_form_entry(c, t));
  } while (c.accept(','));
  c.expect(']');
  if (!c.at_end()) c.fail("unexpected trailing input");
  return q;
}

std::string print_form(const Tower& t, const ClassForm& q) {
  std::string out = "[";
  for (std::size_t i = 0; i < q.entries.size(); ++i) {
    if (i > 0) out += ", ";
    out += t.class_name(q.entries[i]);
  }
  return out + "]";
}

LaurentElement parse_element(std::string_view text, const Tower& t) {
  Cursor c(text);
  auto e = parse_poly(c, t);
  if (!c.at_end()) c.fail("unexpected trailing input");
  return e;
}

Tower parse_tower(std::string_view text) {
  Cursor c(text);
  const auto at = c.position();
  const auto p = c.parse_uint();
  c.expect(',');
  const auto r = c.parse_uint();
  if (!c.at_end()) c.fail("unexpected trailing input");
  if (p > std::numeric_limits<std::uint32_t>::max() || r > Tower::kMaxDepth) c.fail_at(at, "tower out of range");
  return Tower(static_cast<std::uint32_t>(p), static_cast<unsigned>(r));
}

BaseClass parse_base(std::string_view text) {
  Cursor c(text);
  const auto base = [&c]() -> BaseClass::Kind {
    if (c.accept_word("algclosed")) return AlgebraicallyClosed{};
    if (c.accept_word("finite")) {
      std::uint64_t p = 3;
      if (c.accept(':')) p = c.parse_uint();
      if (!is_odd_prime(p)) c.fail(std::to_string(p) + " is not an odd prime");
      return FiniteField{static_cast<std::uint32_t>(p)};
    }
    if (c.accept_word("custom")) {
      c.expect(':');
      const auto r = c.parse_uint();
      if (r > 62) c.fail("exponent out of range");
      c.expect(':');
      const bool hyp = c.parse_bool();
      return CustomBase{static_cast<unsigned>(r), hyp};
    }
    c.fail("expected algclosed, finite[:P] or custom:R:HYP");
  }();
  if (!c.at_end()) c.fail("unexpected trailing input");
  return BaseClass(base);
}

std::string print_base(const BaseClass& b) {
  const auto& k = b.kind();
  if (std::holds_alternative<AlgebraicallyClosed>(k)) return "algclosed";
  if (const auto* fin = std::get_if<FiniteField>(&k)) return "finite:" + std::to_string(fin->p);
  const auto& c = std::get<CustomBase>(k);
  return "custom:" + std::to_string(c.r) + ":" + (c.fnfield_hypothesis ? "true" : "false");
}

}  // namespace qfinv

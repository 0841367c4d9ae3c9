#include "qfinv/laurent.hpp"

#include <limits>
#include <stdexcept>

#include "qfinv/fp.hpp"

namespace qfinv {

LaurentElement LaurentElement::constant(std::uint32_t p, unsigned vars, std::int64_t c) {
  LaurentElement e(p, vars);
  e.add_term(c, Exponent(vars, 0));
  return e;
}

LaurentElement LaurentElement::monomial(std::uint32_t p, std::int64_t c, Exponent e) {
  LaurentElement out(p, static_cast<unsigned>(e.size()));
  out.add_term(c, e);
  return out;
}

void LaurentElement::add_term(std::int64_t c, const Exponent& e) {
  if (e.size() != vars_) throw std::invalid_argument("exponent length does not match variable count");
  const auto v = fp::reduce(c, p_);
  if (v == 0) return;
  auto [it, inserted] = terms_.emplace(e, v);
  if (!inserted) {
    it->second = (it->second + v) % p_;
    if (it->second == 0) terms_.erase(it);
  }
}

int LaurentElement::valuation(unsigned var) const {
  if (var < 1 || var > vars_) throw std::out_of_range("valuation: variable index out of range");
  if (terms_.empty()) throw std::domain_error("valuation of zero");
  int best = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) best = std::min(best, e[var - 1]);
  return best;
}

LaurentElement LaurentElement::outer_coefficient(int v) const {
  if (vars_ == 0) throw std::logic_error("outer_coefficient of a constant");
  LaurentElement out(p_, vars_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e.back() == v) out.terms_.emplace(Exponent(e.begin(), e.end() - 1), c);
  }
  return out;
}

std::uint32_t LaurentElement::constant_value() const {
  if (vars_ != 0) throw std::logic_error("constant_value of a non-constant ring element");
  return terms_.empty() ? 0 : terms_.begin()->second;
}

std::uint32_t LaurentElement::evaluate(const std::vector<std::uint32_t>& point) const {
  if (point.size() != vars_) throw std::invalid_argument("evaluation point has the wrong length");
  std::uint32_t sum = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t term = c;
    for (unsigned i = 0; i < vars_; ++i) {
      const auto x = point[i] % p_;
      if (x == 0) throw std::domain_error("evaluation at zero");
      const auto base = e[i] >= 0 ? x : fp::inv(x, p_);
      term = fp::mul(term, fp::pow(base, static_cast<std::uint64_t>(e[i] >= 0 ? e[i] : -e[i]), p_), p_);
    }
    sum = (sum + term) % p_;
  }
  return sum;
}

LaurentElement LaurentElement::shifted(unsigned var, int k) const {
  if (var < 1 || var > vars_) throw std::out_of_range("shifted: variable index out of range");
  LaurentElement out(p_, vars_);
  for (const auto& [e, c] : terms_) {
    auto moved = e;
    moved[var - 1] += k;
    out.terms_.emplace(std::move(moved), c);
  }
  return out;
}

LaurentElement LaurentElement::operator-() const {
  LaurentElement out(p_, vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, p_ - c);
  return out;
}

void LaurentElement::check_compatible(const LaurentElement& o) const {
  if (p_ != o.p_ || vars_ != o.vars_) throw std::invalid_argument("Laurent elements from different rings");
}

LaurentElement& LaurentElement::operator+=(const LaurentElement& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

LaurentElement& LaurentElement::operator-=(const LaurentElement& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(static_cast<std::int64_t>(p_) - c, e);
  return *this;
}

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
  a.check_compatible(b);
  LaurentElement out(a.p_, a.vars_);
  LaurentElement::Exponent e(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (unsigned i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(fp::mul(ca, cb, a.p_), e);
    }
  }
  return out;
}

std::string LaurentElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    for (unsigned i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      s += "*t" + std::to_string(i + 1);
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
  }
  return s;
}

}  // namespace qfinv

#include "qfinv/tower.hpp"

#include "qfinv/error.hpp"
#include "qfinv/field.hpp"
#include "qfinv/fp.hpp"

namespace qfinv {

SquareClass SquareClass::make(bool eps, const std::vector<bool>& exps) {
  std::uint32_t bits = eps ? 1U : 0U;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i]) bits |= 1U << (i + 1);
  }
  return SquareClass(bits);
}

Tower::Tower(std::uint32_t p, unsigned r) : p_(p), r_(r) {
  if (!is_odd_prime(p)) throw DomainError(std::to_string(p) + " is not an odd prime");
  if (r > kMaxDepth) throw DomainError("tower depth " + std::to_string(r) + " exceeds " + std::to_string(kMaxDepth));
  nonresidue_ = fp::least_nonresidue(p);
  minus_one_ = SquareClass(p % 4 == 3 ? 1U : 0U);
}

std::vector<SquareClass> Tower::classes() const {
  std::vector<SquareClass> out;
  out.reserve(class_count());
  for (std::uint32_t b = 0; b < class_count(); ++b) out.emplace_back(b);
  return out;
}

LaurentElement Tower::representative(SquareClass c) const {
  LaurentElement::Exponent e(r_, 0);
  for (unsigned i = 1; i <= r_; ++i) e[i - 1] = c.exp(i) ? 1 : 0;
  return LaurentElement::monomial(p_, c.eps() ? nonresidue_ : 1, e);
}

std::string Tower::class_name(SquareClass c) const {
  std::string s = c.eps() ? "s" : "";
  for (unsigned i = 1; i <= r_; ++i) {
    if (!c.exp(i)) continue;
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(i);
  }
  return s.empty() ? "1" : s;
}

std::string Tower::to_string() const { return std::to_string(p_) + "," + std::to_string(r_); }

ClassForm ClassForm::scaled(SquareClass c) const {
  ClassForm out = *this;
  for (auto& e : out.entries) e = e * c;
  return out;
}

ClassForm ClassForm::appended(SquareClass c) const {
  ClassForm out = *this;
  out.entries.push_back(c);
  return out;
}

}  // namespace qfinv

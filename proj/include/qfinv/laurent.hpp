#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qfinv {

/// Exact multivariate Laurent polynomial over F_p in t_1..t_r, t_r outermost.
/// Stored sparsely; zero coefficients are never kept.
class LaurentElement {
 public:
  /// Exponent of t_1..t_r, in that order.
  using Exponent = std::vector<int>;

  LaurentElement(std::uint32_t p, unsigned vars) : p_(p), vars_(vars) {}

  static LaurentElement constant(std::uint32_t p, unsigned vars, std::int64_t c);
  static LaurentElement monomial(std::uint32_t p, std::int64_t c, Exponent e);

  std::uint32_t p() const noexcept { return p_; }
  unsigned vars() const noexcept { return vars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponent, std::uint32_t>& terms() const noexcept { return terms_; }

  /// Adds c * t^e.
  void add_term(std::int64_t c, const Exponent& e);

  /// t_var-adic valuation, var in 1..vars. Throws std::domain_error on zero.
  int valuation(unsigned var) const;

  /// Coefficient of t_r^v as an element in the inner r-1 variables.
  LaurentElement outer_coefficient(int v) const;

  /// Value of a 0-variable element.
  std::uint32_t constant_value() const;

  /// Substitutes nonzero F_p values for t_1..t_r.
  std::uint32_t evaluate(const std::vector<std::uint32_t>& point) const;

  /// Multiplies by t_var^k.
  LaurentElement shifted(unsigned var, int k) const;

  LaurentElement operator-() const;
  LaurentElement& operator+=(const LaurentElement& o);
  LaurentElement& operator-=(const LaurentElement& o);
  friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) { return a += b; }
  friend LaurentElement operator-(LaurentElement a, const LaurentElement& b) { return a -= b; }
  friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);

  /// e.g. "3*t1^-2 + 1*t1^3"; "0" for zero.
  std::string to_string() const;

  friend bool operator==(const LaurentElement&, const LaurentElement&) = default;

 private:
  void check_compatible(const LaurentElement& o) const;

  std::uint32_t p_;
  unsigned vars_;
  std::map<Exponent, std::uint32_t> terms_;
};

}  // namespace qfinv

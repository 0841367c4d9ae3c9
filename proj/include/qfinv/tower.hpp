#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qfinv/laurent.hpp"

namespace qfinv {

/// Square class of F_p((t_1))...((t_r)): bit 0 is the unit part's
/// non-residue flag, bit i (1 <= i <= r) the parity of the t_i-valuation.
class SquareClass {
 public:
  constexpr SquareClass() = default;
  constexpr explicit SquareClass(std::uint32_t bits) : bits_(bits) {}

  static SquareClass make(bool eps, const std::vector<bool>& exps);

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr bool eps() const noexcept { return (bits_ & 1U) != 0; }
  /// Valuation parity of t_i, i in 1..r.
  constexpr bool exp(unsigned i) const noexcept { return ((bits_ >> i) & 1U) != 0; }
  constexpr bool is_trivial() const noexcept { return bits_ == 0; }

  /// The same class with the t_i bit cleared.
  constexpr SquareClass without(unsigned i) const noexcept { return SquareClass(bits_ & ~(1U << i)); }

  friend constexpr SquareClass operator*(SquareClass a, SquareClass b) { return SquareClass(a.bits_ ^ b.bits_); }
  friend constexpr bool operator==(SquareClass, SquareClass) = default;
  friend constexpr auto operator<=>(SquareClass, SquareClass) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// F_p((t_1))...((t_r)), p an odd prime.
class Tower {
 public:
  static constexpr unsigned kMaxDepth = 16;

  /// Throws DomainError unless p is an odd prime and r <= kMaxDepth.
  Tower(std::uint32_t p, unsigned r);

  std::uint32_t p() const noexcept { return p_; }
  unsigned r() const noexcept { return r_; }
  /// Least positive non-residue mod p, the representative of `s`.
  std::uint32_t nonresidue() const noexcept { return nonresidue_; }
  /// 2^(r+1).
  std::uint32_t class_count() const noexcept { return 2U << r_; }
  SquareClass minus_one() const noexcept { return minus_one_; }
  std::vector<SquareClass> classes() const;
  bool contains(SquareClass c) const noexcept { return c.bits() < class_count(); }

  /// Canonical representative (1 or s) * prod t_i^{exp_i} as an element.
  LaurentElement representative(SquareClass c) const;

  /// "1", "s", "t1", "s*t1*t2", ...
  std::string class_name(SquareClass c) const;

  /// "p,r".
  std::string to_string() const;

  friend bool operator==(const Tower&, const Tower&) = default;

 private:
  std::uint32_t p_;
  unsigned r_;
  std::uint32_t nonresidue_;
  SquareClass minus_one_;
};

/// Diagonal form <a_1, ..., a_n> recorded at square-class resolution.
struct ClassForm {
  std::vector<SquareClass> entries;

  std::size_t dim() const noexcept { return entries.size(); }
  ClassForm scaled(SquareClass c) const;
  ClassForm appended(SquareClass c) const;

  friend bool operator==(const ClassForm&, const ClassForm&) = default;
  friend auto operator<=>(const ClassForm&, const ClassForm&) = default;
};

}  // namespace qfinv

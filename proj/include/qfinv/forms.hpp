#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qfinv/invariant_value.hpp"
#include "qfinv/laurent.hpp"
#include "qfinv/tower.hpp"

namespace qfinv {

/// Square class of a nonzero element: recursion on the outermost variable,
/// Legendre symbol at the bottom. Throws DomainError on zero.
SquareClass class_of_element(const Tower& t, const LaurentElement& e);

/// A decision together with the recursion depth of the Springer descent
/// that produced it (0 when decided directly over F_p).
struct Decision {
  bool value = false;
  unsigned depth = 0;
};

/// Springer descent: split by the t_r bit into q_1 + t_r q_2 and recurse on
/// the residue forms; over F_p, dim >= 3 is isotropic and <a, b> is
/// isotropic iff -ab is a square. Throws DomainError on dim 0 or on classes
/// outside the tower.
Decision decide_isotropic(const Tower& t, const ClassForm& q);
bool is_isotropic(const Tower& t, const ClassForm& q);

/// q represents a iff q + <-a> is isotropic.
bool represents(const Tower& t, const ClassForm& q, SquareClass a);

Decision decide_universal(const Tower& t, const ClassForm& q);
bool is_universal(const Tower& t, const ClassForm& q);

bool is_anisotropic_universal(const Tower& t, const ClassForm& q);

struct EnumerationOptions {
  /// Defaults to 2^(r+1), the u-invariant of the tower.
  std::optional<unsigned> max_dim;
  /// Towers deeper than this are refused with CapExceeded.
  unsigned max_r = 2;
};

struct AuEnumeration {
  AUSet au;
  InvariantValue m;
  InvariantValue u;
  /// Visit count; depends on scheduling in the parallel kernel.
  std::uint64_t forms_checked = 0;

  friend bool operator==(const AuEnumeration& a, const AuEnumeration& b) {
    return a.au == b.au && a.m == b.m && a.u == b.u;
  }
};

/// Number of class forms au_enumerate visits in the worst case (first
/// entry fixed to the trivial class).
std::uint64_t enumeration_size(const Tower& t, unsigned max_dim);

/// Exhaustive AU(T) over class multisets with the first entry fixed to 1.
/// The per-dimension search is parallelised with OpenMP.
AuEnumeration au_enumerate(const Tower& t, const EnumerationOptions& opts = {});

/// Single-threaded reference for au_enumerate.
AuEnumeration au_enumerate_serial(const Tower& t, const EnumerationOptions& opts = {});

/// Classes a with <1, -a> universal.
std::vector<SquareClass> kaplansky_radical(const Tower& t, unsigned max_r = 2);

/// Calls `visit` on every multiset of `dim` classes, as a nondecreasing
/// sequence, in lexicographic order.
void for_each_class_multiset(const Tower& t, std::size_t dim, const std::function<void(const ClassForm&)>& visit);

}  // namespace qfinv

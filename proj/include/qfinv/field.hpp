#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qfinv/model.hpp"

namespace qfinv {

struct AlgebraicallyClosed {
  friend bool operator==(const AlgebraicallyClosed&, const AlgebraicallyClosed&) = default;
};

struct FiniteField {
  std::uint32_t p = 3;
  friend bool operator==(const FiniteField&, const FiniteField&) = default;
};

/// A base field known only through m_s = u_s = 2^r and whether every
/// one-variable function field L over it has m(L) = u(L) = 2 u_s.
struct CustomBase {
  unsigned r = 0;
  bool fnfield_hypothesis = false;
  friend bool operator==(const CustomBase&, const CustomBase&) = default;
};

class BaseClass {
 public:
  using Kind = std::variant<AlgebraicallyClosed, FiniteField, CustomBase>;

  BaseClass() = default;
  BaseClass(Kind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)

  static BaseClass algebraically_closed() { return BaseClass(AlgebraicallyClosed{}); }
  static BaseClass finite(std::uint32_t p) { return BaseClass(FiniteField{p}); }
  static BaseClass custom(unsigned r, bool hyp) { return BaseClass(CustomBase{r, hyp}); }

  const Kind& kind() const noexcept { return kind_; }

  /// r with m_s = u_s = 2^r.
  unsigned exponent() const;
  bool fnfield_hypothesis() const;

  friend bool operator==(const BaseClass&, const BaseClass&) = default;

 private:
  Kind kind_;
};

bool is_odd_prime(std::uint64_t n);

/// Immutable recursive description of a field. Copies share structure.
class FieldDescriptor {
 public:
  enum class Kind { Base, Cdvf, RationalFn, SemiGlobal };

  static FieldDescriptor base(BaseClass b);
  /// Complete discretely valued field with the given residue field.
  static FieldDescriptor cdvf(FieldDescriptor residue);
  static FieldDescriptor rational_fn(FieldDescriptor over);
  static FieldDescriptor semi_global(FieldDescriptor over, Model model);

  Kind kind() const;
  bool is_base() const { return kind() == Kind::Base; }
  bool is_cdvf() const { return kind() == Kind::Cdvf; }
  bool is_rational_fn() const { return kind() == Kind::RationalFn; }
  bool is_semi_global() const { return kind() == Kind::SemiGlobal; }

  /// Precondition: is_base().
  const BaseClass& base_class() const;
  /// Residue field (Cdvf) or ground field (RationalFn, SemiGlobal).
  const FieldDescriptor& inner() const;
  /// Precondition: is_semi_global().
  const Model& model() const;

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b);

 private:
  struct Node;
  explicit FieldDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Violation {
  std::string path;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Validity {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  friend bool operator==(const Validity&, const Validity&) = default;
};

Validity validate(const FieldDescriptor& f);

/// Throws InvalidDescriptor listing every violation unless validate(f).ok().
void require_valid(const FieldDescriptor& f);

/// Base, Cdvf of an ms-us-computable field, or ratfn(algclosed).
bool is_ms_us_computable(const FieldDescriptor& f);

/// Number of Cdvf constructors down to the base.
unsigned cdvf_depth(const FieldDescriptor& f);

/// Common value m_s = u_s. Throws NotMsUsComputable.
std::uint64_t ms_us(const FieldDescriptor& f);

/// Strips Cdvf constructors: the field k of an n-local field over k.
const FieldDescriptor& bottom_residue(const FieldDescriptor& f);

/// True iff `f` (stripped of Cdvf layers) is a base whose function fields are
/// known to satisfy m(L) = u(L) = 2 u_s.
bool satisfies_fnfield_hypothesis(const FieldDescriptor& f);

}  // namespace qfinv

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qfinv {

/// A natural number or infinity. Arithmetic saturates at infinity.
class InvariantValue {
 public:
  constexpr InvariantValue() = default;
  constexpr explicit InvariantValue(std::uint64_t value) : value_(value) {}

  static constexpr InvariantValue infinity() {
    InvariantValue v;
    v.value_.reset();
    return v;
  }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }

  /// Throws std::logic_error when infinite.
  std::uint64_t value() const;

  std::string to_string() const;

  friend constexpr bool operator==(const InvariantValue&, const InvariantValue&) = default;
  friend constexpr std::strong_ordering operator<=>(const InvariantValue& a, const InvariantValue& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.value_ <=> *b.value_;
  }

  friend InvariantValue operator+(InvariantValue a, InvariantValue b);
  friend InvariantValue operator*(InvariantValue a, InvariantValue b);

 private:
  std::optional<std::uint64_t> value_{0};
};

/// 2^exponent, or infinity if it does not fit in 64 bits.
InvariantValue power_of_two(InvariantValue exponent);

/// Finite set of dimensions of anisotropic universal forms.
class AUSet {
 public:
  AUSet() = default;
  AUSet(std::initializer_list<std::uint64_t> dims) : dims_(dims) {}
  explicit AUSet(std::set<std::uint64_t> dims) : dims_(std::move(dims)) {}

  bool empty() const noexcept { return dims_.empty(); }
  std::size_t size() const noexcept { return dims_.size(); }
  bool contains(std::uint64_t d) const { return dims_.contains(d); }
  const std::set<std::uint64_t>& dims() const noexcept { return dims_; }

  /// Throws std::logic_error on the empty set.
  std::uint64_t min() const;
  std::uint64_t max() const;

  void insert(std::uint64_t d) { dims_.insert(d); }
  AUSet& operator|=(const AUSet& other);

  /// { a + b | a, b in this }.
  AUSet sumset() const;

  std::vector<std::uint64_t> to_vector() const { return {dims_.begin(), dims_.end()}; }
  std::string to_string() const;

  friend bool operator==(const AUSet&, const AUSet&) = default;
  friend auto operator<=>(const AUSet& a, const AUSet& b) { return a.dims_ <=> b.dims_; }

 private:
  std::set<std::uint64_t> dims_;
};

AUSet operator|(AUSet a, const AUSet& b);

}  // namespace qfinv

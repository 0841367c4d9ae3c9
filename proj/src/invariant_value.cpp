#include "qfinv/invariant_value.hpp"

#include <limits>
#include <stdexcept>

namespace qfinv {

std::uint64_t InvariantValue::value() const {
  if (!value_) {
    throw std::logic_error("InvariantValue::value() on infinity");
  }
  return *value_;
}

std::string InvariantValue::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

InvariantValue operator+(InvariantValue a, InvariantValue b) {
  if (a.is_infinite() || b.is_infinite()) {
    return InvariantValue::infinity();
  }
  const std::uint64_t x = *a.value_;
  const std::uint64_t y = *b.value_;
  if (x > std::numeric_limits<std::uint64_t>::max() - y) {
    return InvariantValue::infinity();
  }
  return InvariantValue(x + y);
}

InvariantValue operator*(InvariantValue a, InvariantValue b) {
  if (a == InvariantValue(0) || b == InvariantValue(0)) {
    return InvariantValue(0);
  }
  if (a.is_infinite() || b.is_infinite()) {
    return InvariantValue::infinity();
  }
  const std::uint64_t x = *a.value_;
  const std::uint64_t y = *b.value_;
  if (x > std::numeric_limits<std::uint64_t>::max() / y) {
    return InvariantValue::infinity();
  }
  return InvariantValue(x * y);
}

InvariantValue power_of_two(InvariantValue exponent) {
  if (exponent.is_infinite() || exponent.value() >= 64) {
    return InvariantValue::infinity();
  }
  return InvariantValue(std::uint64_t{1} << exponent.value());
}

std::uint64_t AUSet::min() const {
  if (dims_.empty()) {
    throw std::logic_error("min of empty AU set");
  }
  return *dims_.begin();
}

std::uint64_t AUSet::max() const {
  if (dims_.empty()) {
    throw std::logic_error("max of empty AU set");
  }
  return *dims_.rbegin();
}

AUSet& AUSet::operator|=(const AUSet& other) {
  dims_.insert(other.dims_.begin(), other.dims_.end());
  return *this;
}

AUSet AUSet::sumset() const {
  AUSet out;
  for (auto i = dims_.begin(); i != dims_.end(); ++i) {
    for (auto j = i; j != dims_.end(); ++j) {
      out.dims_.insert(*i + *j);
    }
  }
  return out;
}

std::string AUSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto d : dims_) {
    if (!first) s += ", ";
    s += std::to_string(d);
    first = false;
  }
  return s + "}";
}

AUSet operator|(AUSet a, const AUSet& b) {
  a |= b;
  return a;
}

}  // namespace qfinv

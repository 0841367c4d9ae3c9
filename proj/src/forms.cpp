#include "qfinv/forms.hpp"

#include <omp.h>

#include <atomic>
#include <span>

#include "qfinv/error.hpp"
#include "qfinv/fp.hpp"

namespace qfinv {

SquareClass class_of_element(const Tower& t, const LaurentElement& e) {
  if (e.is_zero()) throw DomainError("zero element has no square class");
  if (e.p() != t.p() || e.vars() != t.r()) throw DomainError("element does not belong to the tower");
  std::uint32_t bits = 0;
  LaurentElement cur = e;
  for (unsigned var = t.r(); var >= 1; --var) {
    const int v = cur.valuation(var);
    if (v % 2 != 0) bits |= 1U << var;
    cur = cur.outer_coefficient(v);
  }
  if (!fp::is_square(cur.constant_value(), t.p())) bits |= 1U;
  return SquareClass(bits);
}

namespace {

void check_form(const Tower& t, const ClassForm& q) {
  if (q.dim() == 0) throw DomainError("form of dimension 0");
  for (const auto c : q.entries) {
    if (!t.contains(c)) throw DomainError("square class outside the tower");
  }
}

/// Entries must already have every bit above `level` cleared.
Decision springer(std::span<const SquareClass> entries, unsigned level, bool minus_one_eps) {
  if (level == 0) {
    if (entries.size() >= 3) return {true, 0};
    if (entries.size() == 2) return {(entries[0].eps() != entries[1].eps()) == minus_one_eps, 0};
    return {false, 0};
  }
  std::vector<SquareClass> units;
  std::vector<SquareClass> uniformizer_part;
  for (const auto c : entries) {
    (c.exp(level) ? uniformizer_part : units).push_back(c.without(level));
  }
  Decision result{false, 0};
  for (const auto* part : {&units, &uniformizer_part}) {
    if (part->empty()) continue;
    const auto d = springer(*part, level - 1, minus_one_eps);
    result.depth = std::max(result.depth, d.depth + 1);
    if (d.value) {
      result.value = true;
      return result;
    }
  }
  result.depth = std::max(result.depth, 1U);
  return result;
}

}  // namespace

Decision decide_isotropic(const Tower& t, const ClassForm& q) {
  check_form(t, q);
  return springer(q.entries, t.r(), t.minus_one().eps());
}

bool is_isotropic(const Tower& t, const ClassForm& q) { return decide_isotropic(t, q).value; }

bool represents(const Tower& t, const ClassForm& q, SquareClass a) {
  return is_isotropic(t, q.appended(t.minus_one() * a));
}

Decision decide_universal(const Tower& t, const ClassForm& q) {
  check_form(t, q);
  Decision out{true, 0};
  for (const auto a : t.classes()) {
    const auto d = decide_isotropic(t, q.appended(t.minus_one() * a));
    out.depth = std::max(out.depth, d.depth);
    if (!d.value) {
      out.value = false;
      return out;
    }
  }
  return out;
}

bool is_universal(const Tower& t, const ClassForm& q) { return decide_universal(t, q).value; }

bool is_anisotropic_universal(const Tower& t, const ClassForm& q) {
  return !is_isotropic(t, q) && is_universal(t, q);
}

namespace {

/// Advances a nondecreasing sequence over [0, n) to its lexicographic
/// successor; false when exhausted.
bool next_multiset(std::vector<std::uint32_t>& v, std::uint32_t n) {
  std::size_t i = v.size();
  while (i > 0 && v[i - 1] == n - 1) --i;
  if (i == 0) return false;
  const auto value = v[i - 1] + 1;
  for (std::size_t j = i - 1; j < v.size(); ++j) v[j] = value;
  return true;
}

ClassForm with_trivial_first(const std::vector<std::uint32_t>& rest) {
  ClassForm q;
  q.entries.reserve(rest.size() + 1);
  q.entries.emplace_back(0U);
  for (auto b : rest) q.entries.emplace_back(b);
  return q;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

unsigned resolve_max_dim(const Tower& t, const EnumerationOptions& opts) {
  if (t.r() > opts.max_r) {
    throw CapExceeded("tower depth r=" + std::to_string(t.r()) + " exceeds the enumeration cap " +
                      std::to_string(opts.max_r) + " (worst case " +
                      std::to_string(enumeration_size(t, t.class_count())) + " forms; raise --max-r to allow)");
  }
  const unsigned max_dim = opts.max_dim.value_or(t.class_count());
  if (max_dim == 0) throw DomainError("max_dim must be positive");
  return max_dim;
}

AuEnumeration finish(AUSet au, std::uint64_t checked) {
  AuEnumeration out;
  out.forms_checked = checked;
  if (au.empty()) {
    out.m = InvariantValue::infinity();
    out.u = InvariantValue::infinity();
  } else {
    out.m = InvariantValue(au.min());
    out.u = InvariantValue(au.max());
  }
  out.au = std::move(au);
  return out;
}

}  // namespace

void for_each_class_multiset(const Tower& t, std::size_t dim, const std::function<void(const ClassForm&)>& visit) {
  if (dim == 0) return;
  std::vector<std::uint32_t> v(dim, 0);
  ClassForm q;
  do {
    q.entries.clear();
    for (const auto b : v) q.entries.emplace_back(b);
    visit(q);
  } while (next_multiset(v, t.class_count()));
}

std::uint64_t enumeration_size(const Tower& t, unsigned max_dim) {
  std::uint64_t total = 0;
  const std::uint64_t n = t.class_count();
  for (unsigned d = 1; d <= max_dim; ++d) total += binomial(n + d - 2, d - 1);
  return total;
}

AuEnumeration au_enumerate_serial(const Tower& t, const EnumerationOptions& opts) {
  const unsigned max_dim = resolve_max_dim(t, opts);
  AUSet au;
  std::uint64_t checked = 0;
  for (unsigned d = 1; d <= max_dim; ++d) {
    std::vector<std::uint32_t> rest(d - 1, 0);
    do {
      ++checked;
      if (is_anisotropic_universal(t, with_trivial_first(rest))) {
        au.insert(d);
        break;
      }
    } while (next_multiset(rest, t.class_count()));
  }
  return finish(std::move(au), checked);
}

AuEnumeration au_enumerate(const Tower& t, const EnumerationOptions& opts) {
  const unsigned max_dim = resolve_max_dim(t, opts);
  const std::uint32_t n = t.class_count();
  AUSet au;
  std::uint64_t checked = 0;
  for (unsigned d = 1; d <= max_dim; ++d) {
    if (d <= 2) {
      // Too few forms to be worth a parallel region.
      std::vector<std::uint32_t> rest(d - 1, 0);
      do {
        ++checked;
        if (is_anisotropic_universal(t, with_trivial_first(rest))) {
          au.insert(d);
          break;
        }
      } while (next_multiset(rest, n));
      continue;
    }
    // Work units: the first two free entries (a <= b); each unit walks the
    // remaining d-3 entries (all >= b) in order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> units;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a; b < n; ++b) units.emplace_back(a, b);
    }
    std::atomic<bool> found{false};
    std::uint64_t local_checked = 0;
    const auto count = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : local_checked)
    for (std::ptrdiff_t u = 0; u < count; ++u) {
      if (found.load(std::memory_order_relaxed)) continue;
      const auto [a, b] = units[static_cast<std::size_t>(u)];
      std::vector<std::uint32_t> tail(d - 3, b);
      std::vector<std::uint32_t> rest(d - 1);
      do {
        rest[0] = a;
        rest[1] = b;
        std::copy(tail.begin(), tail.end(), rest.begin() + 2);
        ++local_checked;
        if (is_anisotropic_universal(t, with_trivial_first(rest))) {
          found.store(true, std::memory_order_relaxed);
          break;
        }
        if (tail.empty()) break;
        // Advance the tail within [b, n).
        std::size_t i = tail.size();
        while (i > 0 && tail[i - 1] == n - 1) --i;
        if (i == 0) break;
        const auto value = tail[i - 1] + 1;
        for (std::size_t j = i - 1; j < tail.size(); ++j) tail[j] = value;
      } while (!found.load(std::memory_order_relaxed));
    }
    checked += local_checked;
    if (found.load()) au.insert(d);
  }
  return finish(std::move(au), checked);
}

std::vector<SquareClass> kaplansky_radical(const Tower& t, unsigned max_r) {
  if (t.r() > max_r) {
    throw CapExceeded("tower depth r=" + std::to_string(t.r()) + " exceeds the cap " + std::to_string(max_r));
  }
  std::vector<SquareClass> out;
  for (const auto a : t.classes()) {
    if (is_universal(t, ClassForm{{SquareClass(0), t.minus_one() * a}})) out.push_back(a);
  }
  return out;
}

}  // namespace qfinv

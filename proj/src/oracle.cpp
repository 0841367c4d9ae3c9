#include "qfinv/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include "qfinv/dsl.hpp"
#include "qfinv/error.hpp"
#include "qfinv/forms.hpp"
#include "qfinv/fp.hpp"
#include "qfinv/graphs.hpp"

namespace qfinv {

namespace {

/// p^n, or max() if it overflows.
std::uint64_t checked_power(std::uint64_t p, std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    out *= p;
  }
  return out;
}

/// Odometer over [0, base)^n, last coordinate fastest.
bool next_vector(std::vector<std::uint32_t>& v, std::uint32_t base, std::size_t from = 0) {
  for (std::size_t i = v.size(); i-- > from;) {
    if (++v[i] < base) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> fp_isotropy_witness(std::uint32_t p,
                                                              const std::vector<std::uint32_t>& coefficients,
                                                              std::uint64_t budget) {
  if (!is_odd_prime(p)) throw DomainError(std::to_string(p) + " is not an odd prime");
  const std::size_t n = coefficients.size();
  if (n == 0) throw DomainError("form of dimension 0");
  if (checked_power(p, n) > budget) {
    throw CapExceeded("F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds the search budget of " +
                      std::to_string(budget) + " candidates");
  }
  // weighted[i][x] = a_i x^2 mod p
  std::vector<std::vector<std::uint32_t>> weighted(n, std::vector<std::uint32_t>(p));
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = coefficients[i] % p;
    if (a == 0) throw DomainError("form is not regular (zero coefficient)");
    for (std::uint32_t x = 0; x < p; ++x) weighted[i][x] = fp::mul(a, fp::mul(x, x, p), p);
  }
  auto value = [&](const std::vector<std::uint32_t>& x) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += weighted[i][x[i]];
    return sum % p;
  };

  std::vector<std::uint32_t> x(n, 0);
  x[0] = 1;
  do {
    if (value(x) == 0) return x;
  } while (next_vector(x, p, 1));

  // No zero with x_1 = 1; regular forms then have no zero at all, but the
  // remaining projective points are scanned anyway.
  std::fill(x.begin(), x.end(), 0);
  while (next_vector(x, p, 1)) {
    const auto first = std::find_if(x.begin(), x.end(), [](auto v) { return v != 0; });
    if (*first != 1) continue;
    if (value(x) == 0) return x;
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> fp_isotropy_witness(const Tower& t, const ClassForm& q,
                                                              std::uint64_t budget) {
  if (t.r() != 0) throw DomainError("fp_isotropy_witness needs a tower with r = 0");
  std::vector<std::uint32_t> coefficients;
  for (const auto c : q.entries) {
    if (!t.contains(c)) throw DomainError("square class outside the tower");
    coefficients.push_back(c.eps() ? t.nonresidue() : 1U);
  }
  return fp_isotropy_witness(t.p(), coefficients, budget);
}

std::vector<LaurentElement> instantiate(const Tower& t, const ClassForm& q) {
  std::vector<LaurentElement> out;
  out.reserve(q.dim());
  for (const auto c : q.entries) {
    if (!t.contains(c)) throw DomainError("square class outside the tower");
    out.push_back(t.representative(c));
  }
  return out;
}

std::string WitnessSearchResult::reason() const {
  switch (status) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::SpaceExhausted:
      return "no certificate within the degree bound (not a proof of anisotropy)";
    case SearchStatus::BudgetExhausted:
      return "candidate budget exhausted after " + std::to_string(candidates) + " vectors";
  }
  return "unknown";
}

namespace {

constexpr int kPackOffset = 1 << 15;
constexpr int kPackLimit = (1 << 15) - 1;

struct PackedTerm {
  std::uint64_t key;
  std::uint32_t coef;
};

std::uint64_t pack(const LaurentElement::Exponent& e) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    key |= static_cast<std::uint64_t>(e[i] + kPackOffset) << (16 * i);
  }
  return key;
}

int unpack_outer(std::uint64_t key, unsigned r) {
  return static_cast<int>((key >> (16 * (r - 1))) & 0xFFFFU) - kPackOffset;
}

struct Choice {
  std::uint32_t coef = 0;
  LaurentElement::Exponent exponent;
};

/// Exponent vectors in [-b, b]^r ordered by max norm, then lexicographically.
std::vector<LaurentElement::Exponent> exponent_box(unsigned r, int b) {
  std::vector<LaurentElement::Exponent> out;
  LaurentElement::Exponent e(r, -b);
  while (true) {
    out.push_back(e);
    std::size_t i = r;
    while (i > 0 && e[i - 1] == b) {
      e[i - 1] = -b;
      --i;
    }
    if (i == 0) break;
    ++e[i - 1];
  }
  auto norm = [](const LaurentElement::Exponent& v) {
    int m = 0;
    for (int x : v) m = std::max(m, std::abs(x));
    return m;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& c) { return norm(a) < norm(c); });
  return out;
}

void check_coefficients(const Tower& t, const std::vector<LaurentElement>& coefficients) {
  for (const auto& a : coefficients) {
    if (a.p() != t.p() || a.vars() != t.r()) throw DomainError("coefficient does not belong to the tower");
    if (a.is_zero()) throw DomainError("form is not regular (zero coefficient)");
  }
}

}  // namespace

WitnessSearchResult witness_search(const Tower& t, const std::vector<LaurentElement>& coefficients, int degree_bound,
                                   std::uint64_t budget) {
  const unsigned r = t.r();
  const std::size_t n = coefficients.size();
  if (r < 1) throw DomainError("witness_search needs r >= 1");
  if (n < 2) throw DomainError("witness_search needs dim >= 2");
  if (degree_bound < 0) throw DomainError("degree bound must be nonnegative");
  if (r > 4) throw CapExceeded("witness_search supports r <= 4");
  check_coefficients(t, coefficients);
  bool integral = true;
  for (const auto& a : coefficients) {
    for (const auto& [e, c] : a.terms()) {
      for (int x : e) {
        if (std::abs(x) + 2 * degree_bound > kPackLimit / 2) throw CapExceeded("coefficient exponents too large");
      }
    }
    integral = integral && a.valuation(r) >= 0;
  }
  std::vector<int> coef_val(n);
  for (std::size_t i = 0; i < n; ++i) coef_val[i] = coefficients[i].valuation(r);

  WitnessSearchResult result;
  std::vector<PackedTerm> acc;
  for (int bound = 0; bound <= degree_bound; ++bound) {
    std::vector<Choice> choices(1);  // index 0: zero coordinate
    for (const auto& e : exponent_box(r, bound)) {
      for (std::uint32_t c = 1; c < t.p(); ++c) choices.push_back({c, e});
    }
    const auto k = static_cast<std::uint32_t>(choices.size());
    // terms[i][choice] = a_i * (c t^e)^2, packed
    std::vector<std::vector<std::vector<PackedTerm>>> terms(n, std::vector<std::vector<PackedTerm>>(k));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint32_t ch = 1; ch < k; ++ch) {
        LaurentElement::Exponent twice = choices[ch].exponent;
        for (auto& x : twice) x *= 2;
        const auto prod = coefficients[i] * LaurentElement::monomial(t.p(), fp::mul(choices[ch].coef, choices[ch].coef, t.p()), twice);
        for (const auto& [e, c] : prod.terms()) terms[i][ch].push_back({pack(e), c});
      }
    }

    std::vector<std::uint32_t> idx(n, 0);
    while (next_vector(idx, k)) {
      const auto first = std::find_if(idx.begin(), idx.end(), [](auto v) { return v != 0; });
      if (choices[*first].coef != 1) continue;
      if (++result.candidates > budget) {
        result.status = SearchStatus::BudgetExhausted;
        return result;
      }
      acc.clear();
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& term : terms[i][idx[i]]) {
          auto it = std::find_if(acc.begin(), acc.end(), [&](const PackedTerm& a) { return a.key == term.key; });
          if (it == acc.end()) {
            acc.push_back(term);
          } else {
            it->coef = (it->coef + term.coef) % t.p();
          }
        }
      }
      std::optional<int> defect;
      for (const auto& a : acc) {
        if (a.coef == 0) continue;
        const int v = unpack_outer(a.key, r);
        defect = defect ? std::min(*defect, v) : v;
      }

      int shift = std::numeric_limits<int>::max();
      for (std::size_t i = 0; i < n; ++i) {
        if (idx[i] != 0) shift = std::min(shift, choices[idx[i]].exponent[r - 1]);
      }
      std::optional<std::size_t> pivot;
      if (!defect) {
        pivot = static_cast<std::size_t>(first - idx.begin());
      } else if (integral) {
        int best = std::numeric_limits<int>::max();
        for (std::size_t j = 0; j < n; ++j) {
          if (idx[j] == 0) continue;
          const int vd = coef_val[j] + choices[idx[j]].exponent[r - 1];
          if (*defect > 2 * vd && vd < best) {
            best = vd;
            pivot = j;
          }
        }
      }
      if (!pivot) continue;

      HenselCertificate cert;
      cert.pivot = *pivot;
      for (std::size_t i = 0; i < n; ++i) {
        if (idx[i] == 0) {
          cert.witness.emplace_back(t.p(), r);
        } else {
          cert.witness.push_back(
              LaurentElement::monomial(t.p(), choices[idx[i]].coef, choices[idx[i]].exponent).shifted(r, -shift));
        }
      }
      if (defect) cert.defect_valuation = *defect - 2 * shift;
      cert.derivative_valuation = coef_val[*pivot] + choices[idx[*pivot]].exponent[r - 1] - shift;
      result.certificate = std::move(cert);
      result.status = SearchStatus::Found;
      return result;
    }
  }
  result.status = SearchStatus::SpaceExhausted;
  return result;
}

WitnessSearchResult witness_search(const Tower& t, const ClassForm& q, int degree_bound, std::uint64_t budget) {
  return witness_search(t, instantiate(t, q), degree_bound, budget);
}

bool verify_certificate(const Tower& t, const std::vector<LaurentElement>& coefficients, const HenselCertificate& c) {
  const std::size_t n = coefficients.size();
  if (n == 0 || c.witness.size() != n || c.pivot >= n) return false;
  for (const auto& a : coefficients) {
    if (a.p() != t.p() || a.vars() != t.r() || a.is_zero()) return false;
  }
  for (const auto& x : c.witness) {
    if (x.p() != t.p() || x.vars() != t.r()) return false;
  }
  if (c.witness[c.pivot].is_zero()) return false;

  LaurentElement value(t.p(), t.r());
  for (std::size_t i = 0; i < n; ++i) value += coefficients[i] * c.witness[i] * c.witness[i];

  if (t.r() == 0) {
    // No valuation to lift along: only exact zeros certify.
    return value.is_zero() && !c.defect_valuation && c.derivative_valuation == 0;
  }
  const unsigned r = t.r();
  int min_val = std::numeric_limits<int>::max();
  for (const auto& x : c.witness) {
    if (!x.is_zero()) min_val = std::min(min_val, x.valuation(r));
  }
  if (min_val != 0) return false;  // also rejects the all-zero witness
  const int vd = (coefficients[c.pivot] * c.witness[c.pivot]).valuation(r);
  if (vd != c.derivative_valuation) return false;
  if (value.is_zero()) return !c.defect_valuation;
  // Newton's lemma needs an integral polynomial in the pivot coordinate.
  for (const auto& a : coefficients) {
    if (a.valuation(r) < 0) return false;
  }
  if (!c.defect_valuation || *c.defect_valuation != value.valuation(r)) return false;
  return *c.defect_valuation > 2 * vd;
}

bool verify_certificate(const Tower& t, const ClassForm& q, const HenselCertificate& c) {
  return verify_certificate(t, instantiate(t, q), c);
}

namespace {

void residue_groups(const ClassForm& q, std::vector<std::size_t> indices, unsigned level,
                    std::vector<std::vector<std::size_t>>& out) {
  if (level == 0) {
    out.push_back(std::move(indices));
    return;
  }
  std::vector<std::size_t> units;
  std::vector<std::size_t> scaled;
  for (auto i : indices) (q.entries[i].exp(level) ? scaled : units).push_back(i);
  if (!units.empty()) residue_groups(q, std::move(units), level - 1, out);
  if (!scaled.empty()) residue_groups(q, std::move(scaled), level - 1, out);
}

}  // namespace

StructuralCheck springer_structural_check(const Tower& t, const ClassForm& q, std::uint64_t fp_budget) {
  if (q.dim() == 0) throw DomainError("form of dimension 0");
  const auto coefficients = instantiate(t, q);
  std::vector<std::size_t> all(q.dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> groups;
  residue_groups(q, std::move(all), t.r(), groups);

  StructuralCheck out;
  for (const auto& group : groups) {
    std::vector<std::uint32_t> units;
    for (auto i : group) units.push_back(q.entries[i].eps() ? t.nonresidue() : 1U);
    ++out.base_forms_checked;
    const auto y = fp_isotropy_witness(t.p(), units, fp_budget);
    if (!y) continue;
    HenselCertificate cert;
    cert.witness.assign(q.dim(), LaurentElement(t.p(), t.r()));
    for (std::size_t k = 0; k < group.size(); ++k) {
      cert.witness[group[k]] = LaurentElement::constant(t.p(), t.r(), (*y)[k]);
    }
    cert.pivot = group[static_cast<std::size_t>(
        std::find_if(y->begin(), y->end(), [](auto v) { return v != 0; }) - y->begin())];
    cert.derivative_valuation = t.r() == 0 ? 0 : (coefficients[cert.pivot] * cert.witness[cert.pivot]).valuation(t.r());
    if (verify_certificate(t, coefficients, cert)) {
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.anisotropic = !out.certificate;
  return out;
}

std::string to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::CertifiedIsotropic:
      return "certified-isotropic";
    case OracleOutcome::ConfirmedAnisotropic:
      return "confirmed-anisotropic";
    case OracleOutcome::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::size_t ValidationReport::count(OracleOutcome o) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [o](const auto& r) { return r.outcome == o; }));
}

std::size_t ValidationReport::contradictions() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.contradiction(); }));
}

std::size_t ValidationReport::engine_isotropic() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.engine_isotropic; }));
}

std::size_t ValidationReport::engine_isotropic_certified() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) {
    return r.engine_isotropic && r.outcome == OracleOutcome::CertifiedIsotropic;
  }));
}

std::string ValidationReport::serialize() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    out << "record index=" << i << " dim=" << rec.form.dim() << " form=" << print_form(tower, rec.form)
        << " engine=" << (rec.engine_isotropic ? "isotropic" : "anisotropic") << " oracle=" << to_string(rec.outcome)
        << " contradiction=" << (rec.contradiction() ? "yes" : "no") << "\n";
  }
  out << "summary tower=" << tower.to_string() << "\n";
  out << "summary dims=" << dim_lo << ".." << dim_hi << "\n";
  if (mode.kind == ValidationMode::Kind::Exhaustive) {
    out << "summary mode=exhaustive\n";
    out << "summary seed=none\n";
  } else {
    out << "summary mode=random:" << mode.samples << ":" << mode.seed << "\n";
    out << "summary seed=" << mode.seed << "\n";
  }
  out << "summary degree_bound=" << degree_bound << "\n";
  out << "summary records=" << records.size() << "\n";
  out << "summary engine_isotropic=" << engine_isotropic() << "\n";
  out << "summary engine_isotropic_certified=" << engine_isotropic_certified() << "\n";
  out << "summary certified_isotropic=" << count(OracleOutcome::CertifiedIsotropic) << "\n";
  out << "summary confirmed_anisotropic=" << count(OracleOutcome::ConfirmedAnisotropic) << "\n";
  out << "summary inconclusive=" << count(OracleOutcome::Inconclusive) << "\n";
  out << "summary contradictions=" << contradictions() << "\n";
  return out.str();
}

std::vector<ClassForm> validation_forms(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                        std::uint64_t max_forms) {
  if (dim_lo < 1 || dim_lo > dim_hi) throw DomainError("dimension range must satisfy 1 <= lo <= hi");
  std::vector<ClassForm> forms;
  if (mode.kind == ValidationMode::Kind::Random) {
    if (mode.samples > max_forms) throw CapExceeded("sample count exceeds the form budget");
    std::mt19937_64 rng(mode.seed);
    forms.reserve(mode.samples);
    for (std::uint64_t s = 0; s < mode.samples; ++s) {
      const auto dim = dim_lo + static_cast<unsigned>(uniform_below(rng, dim_hi - dim_lo + 1));
      ClassForm q;
      for (unsigned i = 0; i < dim; ++i) q.entries.emplace_back(static_cast<std::uint32_t>(uniform_below(rng, t.class_count())));
      forms.push_back(std::move(q));
    }
    return forms;
  }
  std::uint64_t total = 0;
  for (unsigned d = dim_lo; d <= dim_hi; ++d) {
    // multisets of size d from class_count classes
    std::uint64_t c = 1;
    const std::uint64_t n = t.class_count();
    for (std::uint64_t i = 1; i <= d; ++i) {
      c = c * (n + i - 1) / i;
      if (c > max_forms) break;
    }
    total += c;
    if (total > max_forms) {
      throw CapExceeded("exhaustive run would visit more than " + std::to_string(max_forms) + " forms");
    }
  }
  forms.reserve(total);
  for (unsigned d = dim_lo; d <= dim_hi; ++d) {
    for_each_class_multiset(t, d, [&](const ClassForm& q) { forms.push_back(q); });
  }
  return forms;
}

namespace {

ValidationRecord check_form(const Tower& t, const ClassForm& q, const CrossValidateOptions& opts) {
  ValidationRecord rec;
  rec.form = q;
  rec.engine_isotropic = is_isotropic(t, q);
  const bool searchable = t.r() >= 1 && q.dim() >= 2;

  if (rec.engine_isotropic) {
    if (searchable) {
      const auto found = witness_search(t, q, opts.degree_bound, opts.search_budget);
      if (found.certificate && verify_certificate(t, q, *found.certificate)) {
        rec.outcome = OracleOutcome::CertifiedIsotropic;
        return rec;
      }
    }
    const auto structural = springer_structural_check(t, q, opts.fp_budget);
    rec.outcome = structural.certificate ? OracleOutcome::CertifiedIsotropic
                  : structural.anisotropic ? OracleOutcome::ConfirmedAnisotropic
                                           : OracleOutcome::Inconclusive;
    return rec;
  }

  const auto structural = springer_structural_check(t, q, opts.fp_budget);
  if (structural.certificate) {
    rec.outcome = OracleOutcome::CertifiedIsotropic;
    return rec;
  }
  if (searchable) {
    // Cheap constant-vector probe: a hit here would expose an unsound decision.
    const auto probe = witness_search(t, q, 0, opts.search_budget);
    if (probe.certificate && verify_certificate(t, q, *probe.certificate)) {
      rec.outcome = OracleOutcome::CertifiedIsotropic;
      return rec;
    }
  }
  rec.outcome = structural.anisotropic ? OracleOutcome::ConfirmedAnisotropic : OracleOutcome::Inconclusive;
  return rec;
}

ValidationReport empty_report(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                              const CrossValidateOptions& opts) {
  ValidationReport report;
  report.tower = t;
  report.dim_lo = dim_lo;
  report.dim_hi = dim_hi;
  report.mode = mode;
  report.degree_bound = opts.degree_bound;
  return report;
}

}  // namespace

ValidationReport cross_validate_serial(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                       const CrossValidateOptions& opts) {
  auto report = empty_report(t, dim_lo, dim_hi, mode, opts);
  for (const auto& q : validation_forms(t, dim_lo, dim_hi, mode, opts.max_forms)) {
    report.records.push_back(check_form(t, q, opts));
  }
  return report;
}

ValidationReport cross_validate(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                const CrossValidateOptions& opts) {
  auto report = empty_report(t, dim_lo, dim_hi, mode, opts);
  const auto forms = validation_forms(t, dim_lo, dim_hi, mode, opts.max_forms);
  report.records.resize(forms.size());
  const auto count = static_cast<std::ptrdiff_t>(forms.size());
  // Exceptions must not escape a parallel region; the first one is rethrown.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      report.records[static_cast<std::size_t>(i)] = check_form(t, forms[static_cast<std::size_t>(i)], opts);
    } catch (...) {
#pragma omp critical(qfinv_cross_validate_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace qfinv

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfinv/laurent.hpp"
#include "qfinv/tower.hpp"

namespace qfinv {

inline constexpr std::uint64_t kDefaultFpBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// Exhaustive search of F_p^n for a nonzero zero of sum a_i x_i^2. Vectors
/// with x_1 = 1 are tried first, in lexicographic order; any witness returned
/// has its first nonzero coordinate equal to 1. Throws CapExceeded when p^n
/// exceeds the budget.
std::optional<std::vector<std::uint32_t>> fp_isotropy_witness(std::uint32_t p,
                                                              const std::vector<std::uint32_t>& coefficients,
                                                              std::uint64_t budget = kDefaultFpBudget);

/// Same, with entries instantiated by canonical representatives 1 and s.
/// Precondition: t.r() == 0.
std::optional<std::vector<std::uint32_t>> fp_isotropy_witness(const Tower& t, const ClassForm& q,
                                                              std::uint64_t budget = kDefaultFpBudget);

/// Canonical representatives of the entries of q.
std::vector<LaurentElement> instantiate(const Tower& t, const ClassForm& q);

/// Approximate zero x of q with q(x) accurate enough in the t_r-adic
/// valuation for Newton's lemma in the pivot coordinate: either q(x) = 0, or
/// v(q(x)) > 2 v(a_j x_j). The witness is primitive (min t_r-valuation 0).
struct HenselCertificate {
  std::vector<LaurentElement> witness;
  std::size_t pivot = 0;
  /// t_r-valuation of q(witness); empty when q(witness) = 0 exactly.
  std::optional<int> defect_valuation;
  /// t_r-valuation of a_pivot * witness_pivot.
  int derivative_valuation = 0;

  bool exact() const noexcept { return !defect_valuation.has_value(); }
  friend bool operator==(const HenselCertificate&, const HenselCertificate&) = default;
};

enum class SearchStatus { Found, SpaceExhausted, BudgetExhausted };

struct WitnessSearchResult {
  std::optional<HenselCertificate> certificate;
  SearchStatus status = SearchStatus::SpaceExhausted;
  std::uint64_t candidates = 0;

  /// Human-readable reason; "found" on success.
  std::string reason() const;
};

/// Searches vectors whose coordinates are zero or a single monomial c*t^e
/// with every exponent in [-degree_bound, degree_bound], constant vectors
/// first. A miss is not a proof of anisotropy. Requires r >= 1, dim >= 2.
WitnessSearchResult witness_search(const Tower& t, const std::vector<LaurentElement>& coefficients, int degree_bound,
                                   std::uint64_t budget = kDefaultSearchBudget);
WitnessSearchResult witness_search(const Tower& t, const ClassForm& q, int degree_bound,
                                   std::uint64_t budget = kDefaultSearchBudget);

/// Recomputes q(witness) exactly and checks primitivity, integrality of the
/// coefficients, the recorded valuations and the Newton condition.
bool verify_certificate(const Tower& t, const std::vector<LaurentElement>& coefficients, const HenselCertificate& c);
bool verify_certificate(const Tower& t, const ClassForm& q, const HenselCertificate& c);

/// Outcome of the Springer residue descent run by the oracle: either every
/// base residue form was shown anisotropic by exhaustive search, or one of
/// them had a zero, lifted here to an exact certificate.
struct StructuralCheck {
  bool anisotropic = false;
  std::optional<HenselCertificate> certificate;
  std::size_t base_forms_checked = 0;
};

StructuralCheck springer_structural_check(const Tower& t, const ClassForm& q,
                                          std::uint64_t fp_budget = kDefaultFpBudget);

enum class OracleOutcome { CertifiedIsotropic, ConfirmedAnisotropic, Inconclusive };

std::string to_string(OracleOutcome o);

struct ValidationRecord {
  ClassForm form;
  bool engine_isotropic = false;
  OracleOutcome outcome = OracleOutcome::Inconclusive;

  bool contradiction() const noexcept {
    return (engine_isotropic && outcome == OracleOutcome::ConfirmedAnisotropic) ||
           (!engine_isotropic && outcome == OracleOutcome::CertifiedIsotropic);
  }
  friend bool operator==(const ValidationRecord&, const ValidationRecord&) = default;
};

struct ValidationMode {
  enum class Kind { Exhaustive, Random };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static ValidationMode exhaustive() { return {}; }
  static ValidationMode random(std::uint64_t n, std::uint64_t seed) { return {Kind::Random, n, seed}; }
  friend bool operator==(const ValidationMode&, const ValidationMode&) = default;
};

struct CrossValidateOptions {
  int degree_bound = 1;
  std::uint64_t search_budget = kDefaultSearchBudget;
  std::uint64_t fp_budget = kDefaultFpBudget;
  /// Refuse exhaustive runs with more forms than this.
  std::uint64_t max_forms = 2'000'000;
};

struct ValidationReport {
  Tower tower{3, 0};
  unsigned dim_lo = 1;
  unsigned dim_hi = 1;
  ValidationMode mode;
  int degree_bound = 1;
  std::vector<ValidationRecord> records;

  std::size_t count(OracleOutcome o) const;
  std::size_t contradictions() const;
  std::size_t engine_isotropic() const;
  /// Engine-isotropic records backed by a verified certificate.
  std::size_t engine_isotropic_certified() const;

  /// One record per line, then a summary block; fixed field order.
  std::string serialize() const;
};

/// The forms a run visits, in report order: every class multiset per
/// dimension (exhaustive), or uniformly sampled dimension and entries drawn
/// from std::mt19937_64(seed) (random).
std::vector<ClassForm> validation_forms(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                        std::uint64_t max_forms);

/// Pits the Springer decision procedure against the certificate search and
/// the exhaustive base-case oracle. Parallel over forms; the report does not
/// depend on the thread count.
ValidationReport cross_validate(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                const CrossValidateOptions& opts = {});

/// Single-threaded reference for cross_validate.
ValidationReport cross_validate_serial(const Tower& t, unsigned dim_lo, unsigned dim_hi, const ValidationMode& mode,
                                       const CrossValidateOptions& opts = {});

}  // namespace qfinv

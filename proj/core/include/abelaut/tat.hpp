#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelaut/gl_enum.hpp"
#include "abelaut/wedge.hpp"

namespace abelaut {

/// A candidate triple (V, K, f): V = GF(p)^n, K a subspace of the exterior
/// square, f an n x C(n,2) matrix whose rows are canonical coset
/// representatives mod K. Row i holds the coefficients c_{i,j,k} of the
/// image of the i-th basis vector.
///
/// The container accepts degenerate inputs (small n, non-injective f) so
/// tests can probe failure paths; TAT validity is decided by is_tat().
class TatCandidate {
 public:
  static TatCandidate make(FieldPrime field, std::size_t n, QuotientSpace k,
                           const FpMatrix& f);

  FieldPrime field() const { return field_; }
  std::size_t n() const { return n_; }
  const QuotientSpace& k() const { return k_; }
  const FpMatrix& f() const { return f_; }

  bool operator==(const TatCandidate& o) const {
    return n_ == o.n_ && k_ == o.k_ && f_ == o.f_;
  }

 private:
  TatCandidate(FieldPrime field, std::size_t n, QuotientSpace k, FpMatrix f)
      : field_(field), n_(n), k_(std::move(k)), f_(std::move(f)) {}

  FieldPrime field_;
  std::size_t n_;
  QuotientSpace k_;
  FpMatrix f_;
};

/// Condition (3): f injective as a map into the coset representatives.
bool verify_injective(const TatCandidate& t);

struct CentralizerOptions {
  int workers = 1;
  std::size_t element_cap = 16;
  std::uint64_t budget = 0;  ///< 0: use default_gl_budget()
  bool enforce_preconditions = true;
  std::uint64_t early_exit_count = 0;  ///< abort once count reaches this (0: off)
};

struct CentralizerReport {
  std::uint64_t count = 0;
  std::vector<FpMatrix> elements;  ///< first element_cap elements found
  u128 search_space = 0;           ///< |GL(n, p)|
  double elapsed_ms = 0;
  bool aborted_early = false;
};

/// Exhaustively decides condition (4): counts all alpha in GL(V) with
/// K invariant under the induced map and alpha . f = f . alpha-bar on the
/// quotient. The identity always qualifies, so count >= 1.
///
/// The search walks GL(n, p) row by row; for a fixed choice of the first
/// n-1 rows every remaining condition is affine-linear in the last row, so
/// the leaf solves a small linear system instead of scanning p^n rows.
/// Workers partition the first-row choices; counts are independent of the
/// worker count.
///
/// Throws SearchSpaceTooLarge when |GL(n, p)| exceeds the budget, and
/// InvalidTat when preconditions are enforced but violated.
CentralizerReport centralizer(const TatCandidate& t,
                              const CentralizerOptions& opt = {});

struct TatConditions {
  bool dimension_ok = false;    // (1) n >= 4
  bool wedge_ok = false;        // (2) v ^ V not inside K for v != 0
  bool injective = false;       // (3) f injective mod K
  bool centralizer_ran = false;
  bool centralizer_trivial = false;  // (4)
  CentralizerReport report;
};

/// Evaluates conditions (1)-(4); (4) runs only when (1)-(3) hold.
TatConditions check_tat_conditions(const TatCandidate& t,
                                   const CentralizerOptions& opt = {});

bool is_tat(const TatCandidate& t, const CentralizerOptions& opt = {});

struct TatSearchParams {
  FieldPrime field;
  std::size_t n = 4;
  std::size_t k_dim = 0;
  std::uint64_t seed = 0;
  int budget = 500;  ///< number of f candidates to try
  CentralizerOptions centralizer;
};

struct TatSearchOutcome {
  std::optional<TatCandidate> tat;
  int attempts = 0;        ///< f candidates drawn (for the empirical density)
  int k_rejections = 0;    ///< subspace draws rejected by the wedge condition
  CentralizerReport report;  ///< full report of the accepted candidate
};

/// Randomized search: draws K (satisfying the wedge condition) and injective
/// f up to `budget` times and returns the first candidate with trivial
/// centralizer. Deterministic given the seed; a none-result is a normal
/// outcome. Requires n >= 4 and C(n,2) - k_dim >= n.
TatSearchOutcome search_tat(const TatSearchParams& params);

/// Base change on V: the triple describing the same group in the basis
/// transformed by beta. Centralizer counts are preserved.
TatCandidate transport_tat(const TatCandidate& t, const FpMatrix& beta);

/// Interchange format, schema 1:
/// {"schema":1,"p":..,"n":..,"wedge_order":"lex","k_basis":[[..]..],"f_rows":[[..]..]}
nlohmann::json tat_to_json(const TatCandidate& t);
TatCandidate tat_from_json(const nlohmann::json& j);

nlohmann::json centralizer_report_to_json(const CentralizerReport& r);

}  // namespace abelaut

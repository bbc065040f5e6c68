#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abelaut/linalg.hpp"

namespace abelaut {

/// 1-based slice of a deterministic work partition.
struct GlPartition {
  int worker_index = 1;
  int worker_count = 1;
};

using u128 = unsigned __int128;

/// |GL(n, p)| = prod_{i=0..n-1} (p^n - p^i).
u128 gl_order(int n, FieldPrime field);

std::string u128_to_string(u128 v);

/// GL enumeration budget: ABELAUT_BUDGET env var, else 10^10.
std::uint64_t default_gl_budget();

/// Visits every invertible n x n matrix over GF(p) assigned to this worker.
///
/// Matrices are produced row by row; candidate rows are scanned in increasing
/// base-p packed order, so the stream is deterministic given (n, p,
/// worker_count). The partition splits the first-row choices round-robin:
/// worker unions are disjoint and cover GL(n, p) exactly. The visitor returns
/// false to stop; the function returns false iff it was stopped.
bool enumerate_invertible(int n, FieldPrime field, GlPartition part,
                          const std::function<bool(const FpMatrix&)>& visit);

/// Incremental linear system over GF(p), kept in reduced form so that
/// inconsistency is detected as soon as a contradictory equation arrives.
class LinearSystem {
 public:
  LinearSystem(FieldPrime field, std::size_t unknowns);

  /// Adds coeffs . x = rhs. Returns false once the system is inconsistent.
  bool add(std::span<const std::uint32_t> coeffs, std::uint32_t rhs);

  bool consistent() const { return consistent_; }
  std::size_t unknowns() const { return unknowns_; }
  std::size_t rank() const { return pivot_cols_.size(); }
  std::size_t nullity() const { return unknowns_ - pivot_cols_.size(); }

  /// Enumerates all p^nullity solutions in a fixed deterministic order.
  /// The callback returns false to stop; returns false iff stopped.
  bool for_each_solution(
      const std::function<bool(std::span<const std::uint32_t>)>& fn) const;

 private:
  FieldPrime field_;
  std::size_t unknowns_;
  bool consistent_ = true;
  std::vector<std::vector<std::uint32_t>> rows_;  // coeffs + rhs, reduced
  std::vector<std::size_t> pivot_cols_;
};

/// Enumerates invertible matrices whose last row is constrained by an
/// affine-linear system.
///
/// The driver walks the first n-1 rows exactly like enumerate_invertible
/// (with the same first-row partition). For each prefix, build_system
/// receives the rows chosen so far and fills a LinearSystem over
/// n + extra_unknowns variables: the first n are the entries of the last
/// row, the rest are caller-defined. Every solution with an admissible last
/// row (nonzero, outside the prefix span) yields an on_solution call with
/// the completed matrix and the extra variable values.
///
/// build_system may return false to discard the prefix outright.
/// on_solution returns false to abort the whole search; the function
/// returns false iff aborted.
struct AffineRowSearch {
  AffineRowSearch(int n_, FieldPrime field_) : n(n_), field(field_) {}

  int n;
  FieldPrime field;
  std::size_t extra_unknowns = 0;
  GlPartition partition;
  std::function<bool(const std::vector<FpVector>& prefix, LinearSystem& sys)>
      build_system;
  std::function<bool(const FpMatrix& alpha,
                     std::span<const std::uint32_t> extras)>
      on_solution;
};

bool search_invertible_affine(const AffineRowSearch& cfg);

}  // namespace abelaut

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "abelaut/linalg.hpp"

namespace abelaut {

/// Coordinates on the exterior square of an n-dimensional space: basis
/// vectors e_i ^ e_j with i < j, in lexicographic pair order. Pairs are
/// 0-based in storage; user-facing generator names are 1-based.
std::size_t wedge_dim(std::size_t n);
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> index_pair(std::size_t n, std::size_t idx);

/// u ^ v, with coordinate u_i v_j - u_j v_i at pair (i, j).
FpVector wedge(const FpVector& u, const FpVector& v);

/// The map induced on the exterior square by alpha (acting on row vectors):
/// wedge(u, v) * induced_map(alpha) == wedge(u * alpha, v * alpha).
/// Row pair (i, j) is wedge(row_i(alpha), row_j(alpha)).
FpMatrix induced_map(const FpMatrix& alpha);

/// A subspace K of the exterior square together with the canonical linear
/// section of the quotient: reduce against RREF(K), which zeroes K's pivot
/// coordinates. Coset representatives are exactly the vectors fixed by
/// project(), and equality mod K is plain vector equality of representatives.
class QuotientSpace {
 public:
  /// K = {0}.
  QuotientSpace(FieldPrime field, std::size_t n);
  /// K = row span of `spanning` (rows need not be independent).
  static QuotientSpace from_spanning(FieldPrime field, std::size_t n,
                                     const FpMatrix& spanning);

  FieldPrime field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t ambient_dim() const { return wedge_dim(n_); }
  std::size_t k_dim() const { return basis_.rows(); }
  std::size_t rep_dim() const { return ambient_dim() - k_dim(); }

  /// RREF basis of K, k_dim() x ambient_dim().
  const FpMatrix& k_basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  /// Canonical representative of v + K.
  FpVector project(const FpVector& v) const;
  void project_in_place(std::span<std::uint32_t> v) const;
  bool contains(const FpVector& v) const;

  /// Drop the pivot coordinates of a representative, giving a rep_dim()
  /// vector; decompress re-inserts zeros at the pivots.
  FpVector compress(const FpVector& rep) const;
  FpVector decompress(const FpVector& compressed) const;

  bool operator==(const QuotientSpace& o) const;

 private:
  QuotientSpace(FieldPrime field, std::size_t n, FpMatrix basis,
                std::vector<std::size_t> pivots);

  FieldPrime field_;
  std::size_t n_;
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> non_pivots_;
};

/// v ^ V not contained in K for every nonzero v; scans one representative
/// per projective point.
bool check_wedge_condition(const QuotientSpace& k);

/// K * induced_map(alpha) == K as subspaces (alpha must be invertible).
bool subspace_invariant(const QuotientSpace& k, const FpMatrix& alpha);

/// Representatives of the projective points of GF(p)^n: every vector with
/// first nonzero coordinate equal to 1, in lexicographic order.
std::vector<FpVector> projective_representatives(FieldPrime field, std::size_t n);

}  // namespace abelaut

#include "abelaut/wedge.hpp"

#include <stdexcept>

namespace abelaut {

std::size_t wedge_dim(std::size_t n) { return n * (n - 1) / 2; }

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // lexicographic over pairs i < j: (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> index_pair(std::size_t n, std::size_t idx) {
  std::size_t i = 0;
  std::size_t block = n - 1;
  while (idx >= block) {
    idx -= block;
    --block;
    ++i;
  }
  return {i, i + 1 + idx};
}

FpVector wedge(const FpVector& u, const FpVector& v) {
  if (u.size() != v.size() || u.field() != v.field()) {
    throw std::invalid_argument("wedge: dimension mismatch");
  }
  const FieldPrime f = u.field();
  const std::size_t n = u.size();
  FpVector out(f, wedge_dim(n));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      out.set(idx, f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])));
    }
  }
  return out;
}

FpMatrix induced_map(const FpMatrix& alpha) {
  if (alpha.rows() != alpha.cols()) {
    throw std::invalid_argument("induced_map: matrix not square");
  }
  const std::size_t n = alpha.rows();
  const std::size_t d = wedge_dim(n);
  FpMatrix out(alpha.field(), d, d);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      out.set_row(idx, wedge(alpha.row_vector(i), alpha.row_vector(j)));
    }
  }
  return out;
}

QuotientSpace::QuotientSpace(FieldPrime field, std::size_t n)
    : QuotientSpace(field, n, FpMatrix(field, 0, wedge_dim(n)), {}) {}

QuotientSpace::QuotientSpace(FieldPrime field, std::size_t n, FpMatrix basis,
                             std::vector<std::size_t> pivots)
    : field_(field), n_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {
  std::size_t next = 0;
  for (std::size_t c = 0; c < ambient_dim(); ++c) {
    if (next < pivots_.size() && pivots_[next] == c) {
      ++next;
    } else {
      non_pivots_.push_back(c);
    }
  }
}

QuotientSpace QuotientSpace::from_spanning(FieldPrime field, std::size_t n,
                                           const FpMatrix& spanning) {
  if (spanning.cols() != wedge_dim(n)) {
    throw std::invalid_argument("QuotientSpace: spanning rows must have length C(n,2)");
  }
  RrefResult red = rref(spanning);
  FpMatrix basis(field, red.rank, spanning.cols());
  for (std::size_t r = 0; r < red.rank; ++r) {
    basis.set_row(r, red.rref.row_vector(r));
  }
  return QuotientSpace(field, n, std::move(basis), std::move(red.pivot_columns));
}

FpVector QuotientSpace::project(const FpVector& v) const {
  if (v.size() != ambient_dim()) {
    throw std::invalid_argument("QuotientSpace::project: dimension mismatch");
  }
  FpVector out = v;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const std::uint32_t c = out[pivots_[r]];
    if (c != 0) out.add_scaled(basis_.row_vector(r), field_.neg(c));
  }
  return out;
}

void QuotientSpace::project_in_place(std::span<std::uint32_t> v) const {
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const std::uint32_t c = v[pivots_[r]];
    if (c == 0) continue;
    const std::uint32_t factor = field_.neg(c);
    const auto row = basis_.row(r);
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = field_.add(v[j], field_.mul(factor, row[j]));
    }
  }
}

bool QuotientSpace::contains(const FpVector& v) const {
  return project(v).is_zero();
}

FpVector QuotientSpace::compress(const FpVector& rep) const {
  FpVector out(field_, rep_dim());
  for (std::size_t i = 0; i < non_pivots_.size(); ++i) out.set(i, rep[non_pivots_[i]]);
  return out;
}

FpVector QuotientSpace::decompress(const FpVector& compressed) const {
  if (compressed.size() != rep_dim()) {
    throw std::invalid_argument("QuotientSpace::decompress: dimension mismatch");
  }
  FpVector out(field_, ambient_dim());
  for (std::size_t i = 0; i < non_pivots_.size(); ++i) out.set(non_pivots_[i], compressed[i]);
  return out;
}

bool QuotientSpace::operator==(const QuotientSpace& o) const {
  return field_ == o.field_ && n_ == o.n_ && basis_ == o.basis_;
}

std::vector<FpVector> projective_representatives(FieldPrime field, std::size_t n) {
  std::vector<FpVector> reps;
  for (std::size_t lead = 0; lead < n; ++lead) {
    // coordinates before `lead` are zero, coordinate `lead` is 1
    const std::size_t tail = n - lead - 1;
    std::vector<std::uint32_t> suffix(tail, 0);
    while (true) {
      FpVector v(field, n);
      v.set(lead, 1);
      for (std::size_t i = 0; i < tail; ++i) v.set(lead + 1 + i, suffix[i]);
      reps.push_back(std::move(v));
      std::size_t i = tail;
      bool done = tail == 0;
      while (i > 0) {
        --i;
        if (++suffix[i] < field.p()) break;
        suffix[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return reps;
}

bool check_wedge_condition(const QuotientSpace& k) {
  const FieldPrime f = k.field();
  const std::size_t n = k.n();
  if (n < 1) return false;
  for (const FpVector& v : projective_representatives(f, n)) {
    bool hits_outside_k = false;
    for (std::size_t j = 0; j < n && !hits_outside_k; ++j) {
      FpVector ej(f, n);
      ej.set(j, 1);
      if (!k.project(wedge(v, ej)).is_zero()) hits_outside_k = true;
    }
    if (!hits_outside_k) return false;  // v wedge V lies inside K
  }
  return true;
}

bool subspace_invariant(const QuotientSpace& k, const FpMatrix& alpha) {
  if (k.k_dim() == 0) return true;
  const FpMatrix hat = induced_map(alpha);
  FpMatrix image(k.field(), k.k_dim(), k.ambient_dim());
  for (std::size_t r = 0; r < k.k_dim(); ++r) {
    image.set_row(r, hat.apply_row(k.k_basis().row_vector(r)));
  }
  return same_row_span(image, k.k_basis());
}

}  // namespace abelaut

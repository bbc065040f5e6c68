#include "abelaut/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "abelaut/errors.hpp"

namespace abelaut {

FpVector::FpVector(FieldPrime field, std::vector<std::uint32_t> entries)
    : field_(field), entries_(std::move(entries)) {
  for (auto& e : entries_) e %= field_.p();
}

bool FpVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](std::uint32_t e) { return e == 0; });
}

FpVector& FpVector::add_scaled(const FpVector& other, std::uint32_t c) {
  c %= field_.p();
  if (c == 0) return *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.add(entries_[i], field_.mul(c, other.entries_[i]));
  }
  return *this;
}

FpVector FpVector::operator+(const FpVector& o) const {
  FpVector r = *this;
  r.add_scaled(o, 1);
  return r;
}

FpVector FpVector::operator-(const FpVector& o) const {
  FpVector r = *this;
  r.add_scaled(o, field_.p() - 1);
  return r;
}

FpVector FpVector::scaled(std::uint32_t c) const {
  FpVector r(field_, entries_.size());
  c %= field_.p();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    r.entries_[i] = field_.mul(entries_[i], c);
  }
  return r;
}

FpMatrix FpMatrix::identity(FieldPrime field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(FieldPrime field, std::size_t cols,
                             const std::vector<FpVector>& rows) {
  FpMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("FpMatrix::from_rows: row length mismatch");
    }
    m.set_row(r, rows[r]);
  }
  return m;
}

FpVector FpMatrix::row_vector(std::size_t r) const {
  FpVector v(field_, cols_);
  for (std::size_t c = 0; c < cols_; ++c) v.set(c, at(r, c));
  return v;
}

void FpMatrix::set_row(std::size_t r, const FpVector& v) {
  for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = v[c];
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_) {
    throw std::invalid_argument("FpMatrix::operator*: dimension mismatch");
  }
  FpMatrix result(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        std::uint64_t acc = result.data_[i * o.cols_ + j] + a * o.at(k, j);
        result.data_[i * o.cols_ + j] =
            static_cast<std::uint32_t>(acc % field_.p());
      }
    }
  }
  return result;
}

FpVector FpMatrix::apply_row(const FpVector& v) const {
  if (v.size() != rows_) {
    throw std::invalid_argument("FpMatrix::apply_row: dimension mismatch");
  }
  FpVector result(field_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i] != 0) result.add_scaled(row_vector(i), v[i]);
  }
  return result;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  }
  return t;
}

RrefResult rref(const FpMatrix& m) {
  FpMatrix a = m;
  const FieldPrime f = m.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a.at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::uint32_t tmp = a.at(r, j);
        a.set(r, j, a.at(pivot, j));
        a.set(pivot, j, tmp);
      }
    }
    const std::uint32_t scale = f.inv(a.at(r, c));
    for (std::size_t j = 0; j < cols; ++j) a.set(r, j, f.mul(scale, a.at(r, j)));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint32_t factor = a.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        a.set(i, j, f.sub(a.at(i, j), f.mul(factor, a.at(r, j))));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{std::move(a), std::move(pivots), r};
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

FpMatrix mat_inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("mat_inverse: matrix not square");
  }
  const std::size_t n = m.rows();
  FpMatrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, 1);
  }
  RrefResult red = rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (red.rref.at(i, i) != 1) {
      throw SingularMatrix("mat_inverse: rank deficient input");
    }
  }
  FpMatrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, red.rref.at(i, n + j));
  }
  return inv;
}

bool is_invertible(const FpMatrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

LinearSolution solve_linear(const FpMatrix& a, const FpVector& b) {
  if (a.rows() != b.size()) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }
  const FieldPrime f = a.field();
  const std::size_t n = a.cols();
  FpMatrix aug(f, a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, n, b[i]);
  }
  RrefResult red = rref(aug);

  LinearSolution sol{false, FpVector(f, n), {}};
  std::vector<int> pivot_of_col(n, -1);
  for (std::size_t r = 0; r < red.pivot_columns.size(); ++r) {
    const std::size_t c = red.pivot_columns[r];
    if (c == n) return sol;  // pivot in the augmented column: inconsistent
    pivot_of_col[c] = static_cast<int>(r);
  }
  sol.consistent = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) {
      sol.particular.set(c, red.rref.at(static_cast<std::size_t>(pivot_of_col[c]), n));
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    FpVector basis(f, n);
    basis.set(c, 1);
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (pivot_of_col[c2] >= 0) {
        basis.set(c2, f.neg(red.rref.at(static_cast<std::size_t>(pivot_of_col[c2]), c)));
      }
    }
    sol.nullspace.push_back(std::move(basis));
  }
  return sol;
}

bool in_row_span(const FpMatrix& rref_basis, const FpVector& v) {
  const FieldPrime f = v.field();
  FpVector residue = v;
  for (std::size_t r = 0; r < rref_basis.rows(); ++r) {
    std::size_t lead = 0;
    while (lead < rref_basis.cols() && rref_basis.at(r, lead) == 0) ++lead;
    if (lead == rref_basis.cols()) continue;
    if (residue[lead] != 0) {
      residue.add_scaled(rref_basis.row_vector(r), f.neg(residue[lead]));
    }
  }
  return residue.is_zero();
}

bool same_row_span(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field()) return false;
  const RrefResult ra = rref(a), rb = rref(b);
  if (ra.rank != rb.rank || ra.pivot_columns != rb.pivot_columns) return false;
  for (std::size_t r = 0; r < ra.rank; ++r) {
    if (!std::ranges::equal(ra.rref.row(r), rb.rref.row(r))) return false;
  }
  return true;
}

nlohmann::json to_json(const FpVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

nlohmann::json to_json(const FpMatrix& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) arr.push_back(to_json(m.row_vector(r)));
  return arr;
}

FpVector vector_from_json(FieldPrime field, const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector JSON must be an array");
  std::vector<std::uint32_t> entries;
  entries.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= field.p()) {
      throw std::invalid_argument("vector entry out of range for GF(p)");
    }
    entries.push_back(e.get<std::uint32_t>());
  }
  return FpVector(field, std::move(entries));
}

FpMatrix matrix_from_json(FieldPrime field, std::size_t cols,
                          const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix JSON must be an array");
  std::vector<FpVector> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    FpVector v = vector_from_json(field, row);
    if (v.size() != cols) throw std::invalid_argument("matrix row length mismatch");
    rows.push_back(std::move(v));
  }
  return FpMatrix::from_rows(field, cols, rows);
}

}  // namespace abelaut

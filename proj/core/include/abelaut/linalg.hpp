#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelaut/field.hpp"

namespace abelaut {

/// Dense vector over GF(p). Entries are always reduced mod p.
class FpVector {
 public:
  FpVector(FieldPrime field, std::size_t dim)
      : field_(field), entries_(dim, 0) {}
  FpVector(FieldPrime field, std::vector<std::uint32_t> entries);

  FieldPrime field() const { return field_; }
  std::size_t size() const { return entries_.size(); }

  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::uint32_t value) {
    entries_[i] = value % field_.p();
  }

  std::span<const std::uint32_t> data() const { return entries_; }

  bool is_zero() const;

  /// this += c * other
  FpVector& add_scaled(const FpVector& other, std::uint32_t c);

  FpVector operator+(const FpVector& o) const;
  FpVector operator-(const FpVector& o) const;
  FpVector scaled(std::uint32_t c) const;

  bool operator==(const FpVector& o) const {
    return field_ == o.field_ && entries_ == o.entries_;
  }

 private:
  FieldPrime field_;
  std::vector<std::uint32_t> entries_;
};

/// Dense row-major matrix over GF(p).
class FpMatrix {
 public:
  FpMatrix(FieldPrime field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static FpMatrix identity(FieldPrime field, std::size_t n);
  static FpMatrix from_rows(FieldPrime field, std::size_t cols,
                            const std::vector<FpVector>& rows);

  FieldPrime field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::uint32_t value) {
    data_[r * cols_ + c] = value % field_.p();
  }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  FpVector row_vector(std::size_t r) const;
  void set_row(std::size_t r, const FpVector& v);

  FpMatrix operator*(const FpMatrix& o) const;
  FpVector apply_row(const FpVector& v) const;  ///< v * this (row convention)
  FpMatrix transposed() const;

  bool operator==(const FpMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           data_ == o.data_;
  }

 private:
  FieldPrime field_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> data_;
};

struct RrefResult {
  FpMatrix rref;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank;
};

/// Unique reduced row echelon form.
RrefResult rref(const FpMatrix& m);

std::size_t rank(const FpMatrix& m);

/// Inverse of a square matrix. Throws SingularMatrix if rank < dimension.
FpMatrix mat_inverse(const FpMatrix& m);

bool is_invertible(const FpMatrix& m);

/// Solution set of a * x = b (x a column vector with cols(a) entries).
struct LinearSolution {
  bool consistent = false;
  FpVector particular;
  std::vector<FpVector> nullspace;  ///< basis of the homogeneous solutions
};

LinearSolution solve_linear(const FpMatrix& a, const FpVector& b);

/// Row space membership: v in span of the rows of rref_basis (rows in RREF).
bool in_row_span(const FpMatrix& rref_basis, const FpVector& v);

/// Spans equal as subspaces (arguments need not be in RREF).
bool same_row_span(const FpMatrix& a, const FpMatrix& b);

// JSON: vectors as flat integer arrays, matrices as arrays of row arrays.
nlohmann::json to_json(const FpVector& v);
nlohmann::json to_json(const FpMatrix& m);
FpVector vector_from_json(FieldPrime field, const nlohmann::json& j);
FpMatrix matrix_from_json(FieldPrime field, std::size_t cols,
                          const nlohmann::json& j);

}  // namespace abelaut

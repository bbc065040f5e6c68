#pragma once

// Internal helper shared by the centralizer and the block solvers.
//
// During the row-by-row walk of GL(n, p), the first n-1 rows of alpha are
// fixed at a leaf and the last row x is unknown. For any target vector t in
// the exterior square,
//
//   t * alpha_hat = C_t + wedge(g_t, x),
//
// where C_t sums the wedges of prefix-row pairs weighted by t and
// g_t = sum_l t[pair(l, n-1)] * prefix_l. Both pieces are affine in x, which
// is what makes the leaf a linear solve.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "abelaut/wedge.hpp"

namespace abelaut::detail {

class AlphaHatLeafEval {
 public:
  AlphaHatLeafEval(FieldPrime field, std::size_t n, const QuotientSpace* proj)
      : field_(field), n_(n), dim_(wedge_dim(n)), proj_(proj) {}

  std::size_t dim() const { return dim_; }

  void begin_leaf(const std::vector<FpVector>& prefix) {
    prefix_ = &prefix;
    const std::size_t rows = prefix.size();
    pair_wedges_.resize(rows * (rows - 1) / 2 * dim_);
    std::size_t w = 0;
    for (std::size_t l = 0; l < rows; ++l) {
      for (std::size_t m = l + 1; m < rows; ++m, ++w) {
        wedge_into(prefix[l].data(), prefix[m].data(),
                   pair_wedges_.data() + w * dim_);
      }
    }
  }

  /// c_out: length dim(), receives proj(C_t).
  /// cols_out: n * dim(), entry k*dim+c is proj(wedge(g_t, e_k))[c].
  void eval_target(std::span<const std::uint32_t> t, std::uint32_t* c_out,
                   std::uint32_t* cols_out) {
    const std::size_t rows = prefix_->size();
    std::fill(c_out, c_out + dim_, 0u);
    std::size_t w = 0;
    for (std::size_t l = 0; l < rows; ++l) {
      for (std::size_t m = l + 1; m < rows; ++m, ++w) {
        const std::uint32_t coef = t[pair_index(n_, l, m)];
        if (coef == 0) continue;
        const std::uint32_t* wv = pair_wedges_.data() + w * dim_;
        for (std::size_t c = 0; c < dim_; ++c) {
          c_out[c] = field_.add(c_out[c], field_.mul(coef, wv[c]));
        }
      }
    }
    if (proj_) proj_->project_in_place({c_out, dim_});

    // g_t = sum over prefix rows paired with the unknown last row
    g_.assign(n_, 0);
    for (std::size_t l = 0; l < rows; ++l) {
      const std::uint32_t coef = t[pair_index(n_, l, n_ - 1)];
      if (coef == 0) continue;
      const auto row = (*prefix_)[l].data();
      for (std::size_t j = 0; j < n_; ++j) {
        g_[j] = field_.add(g_[j], field_.mul(coef, row[j]));
      }
    }
    // wedge(g, e_k): coordinate (i,k) is g_i for i<k, coordinate (k,j) is -g_j for k<j
    std::fill(cols_out, cols_out + n_ * dim_, 0u);
    for (std::size_t k = 0; k < n_; ++k) {
      std::uint32_t* col = cols_out + k * dim_;
      for (std::size_t i = 0; i < k; ++i) col[pair_index(n_, i, k)] = g_[i];
      for (std::size_t j = k + 1; j < n_; ++j) {
        col[pair_index(n_, k, j)] = field_.neg(g_[j]);
      }
      if (proj_) proj_->project_in_place({col, dim_});
    }
  }

 private:
  void wedge_into(std::span<const std::uint32_t> u,
                  std::span<const std::uint32_t> v, std::uint32_t* out) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j, ++idx) {
        out[idx] = field_.sub(field_.mul(u[i], v[j]), field_.mul(u[j], v[i]));
      }
    }
  }

  FieldPrime field_;
  std::size_t n_, dim_;
  const QuotientSpace* proj_;
  const std::vector<FpVector>* prefix_ = nullptr;
  std::vector<std::uint32_t> pair_wedges_;
  std::vector<std::uint32_t> g_;
};

}  // namespace abelaut::detail

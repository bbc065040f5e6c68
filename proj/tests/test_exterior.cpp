#include <doctest.h>

#include <abelaut/gl_enum.hpp>
#include <abelaut/rng.hpp>
#include <abelaut/wedge.hpp>

using namespace abelaut;

namespace {

FpVector unit(FieldPrime f, std::size_t n, std::size_t i) {
  FpVector v(f, n);
  v.set(i, 1);
  return v;
}

FpVector random_vector(FieldPrime f, std::size_t n, DeterministicRng& rng) {
  FpVector v(f, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.below(f.p()));
  return v;
}

FpMatrix random_invertible(FieldPrime f, std::size_t n, DeterministicRng& rng) {
  while (true) {
    FpMatrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.below(f.p()));
    }
    if (is_invertible(m)) return m;
  }
}

// K = span{e1^e2, e1^e3, e1^e4} at n = 4: e1 ^ V lies inside it
QuotientSpace bad_k(FieldPrime f) {
  FpMatrix rows(f, 3, wedge_dim(4));
  rows.set(0, pair_index(4, 0, 1), 1);
  rows.set(1, pair_index(4, 0, 2), 1);
  rows.set(2, pair_index(4, 0, 3), 1);
  return QuotientSpace::from_spanning(f, 4, rows);
}

}  // namespace

TEST_CASE("pair indexing is a lexicographic bijection") {
  const std::size_t n = 5;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      CHECK(pair_index(n, i, j) == idx);
      CHECK(index_pair(n, idx) == std::make_pair(i, j));
    }
  }
  CHECK(idx == wedge_dim(n));
}

TEST_CASE("wedge of basis vectors is a coordinate vector") {
  FieldPrime f(3);
  const FpVector w = wedge(unit(f, 4, 0), unit(f, 4, 1));
  for (std::size_t c = 0; c < wedge_dim(4); ++c) {
    CHECK(w[c] == (c == pair_index(4, 0, 1) ? 1u : 0u));
  }
}

TEST_CASE("wedge is alternating") {
  FieldPrime f(5);
  DeterministicRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const FpVector v = random_vector(f, 4, rng);
    CHECK(wedge(v, v).is_zero());
  }
}

TEST_CASE("wedge of e1+e2 with e1-e2 over GF(3)") {
  FieldPrime f(3);
  FpVector u(f, 2), v(f, 2);
  u.set(0, 1); u.set(1, 1);
  v.set(0, 1); v.set(1, 2);  // e1 - e2
  const FpVector w = wedge(u, v);
  // bilinear expansion gives -2 = 1 mod 3 at the single coordinate
  CHECK(w[0] == 1);
}

TEST_CASE("wedge is bilinear on random triples") {
  for (std::uint32_t p : {3u, 5u}) {
    FieldPrime f(p);
    DeterministicRng rng(p);
    for (int trial = 0; trial < 1000; ++trial) {
      const FpVector u = random_vector(f, 4, rng);
      const FpVector u2 = random_vector(f, 4, rng);
      const FpVector v = random_vector(f, 4, rng);
      const std::uint32_t c = rng.below(p);
      CHECK(wedge(u + u2.scaled(c), v) == wedge(u, v) + wedge(u2, v).scaled(c));
      CHECK(wedge(v, u + u2.scaled(c)) == wedge(v, u) + wedge(v, u2).scaled(c));
    }
  }
}

TEST_CASE("induced_map of the identity is the identity") {
  FieldPrime f(3);
  CHECK(induced_map(FpMatrix::identity(f, 4)) == FpMatrix::identity(f, wedge_dim(4)));
}

TEST_CASE("induced_map of a diagonal matrix scales by products") {
  FieldPrime f(7);
  const std::uint32_t d[4] = {2, 3, 4, 5};
  FpMatrix diag(f, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) diag.set(i, i, d[i]);
  const FpMatrix hat = induced_map(diag);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const std::size_t idx = pair_index(4, i, j);
      for (std::size_t c = 0; c < wedge_dim(4); ++c) {
        CHECK(hat.at(idx, c) == (c == idx ? f.mul(d[i], d[j]) : 0u));
      }
    }
  }
}

TEST_CASE("induced_map is functorial and intertwines the wedge") {
  FieldPrime f(3);
  DeterministicRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const FpMatrix a = random_invertible(f, 3, rng);
    const FpMatrix b = random_invertible(f, 3, rng);
    CHECK(induced_map(a * b) == induced_map(a) * induced_map(b));
    const FpVector u = random_vector(f, 3, rng);
    const FpVector v = random_vector(f, 3, rng);
    CHECK(induced_map(a).apply_row(wedge(u, v)) ==
          wedge(a.apply_row(u), a.apply_row(v)));
  }
}

TEST_CASE("quotient projection is an idempotent section killing K") {
  FieldPrime f(3);
  DeterministicRng rng(23);
  FpMatrix spanning(f, 2, wedge_dim(4));
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < wedge_dim(4); ++c) spanning.set(r, c, rng.below(3));
  }
  const QuotientSpace k = QuotientSpace::from_spanning(f, 4, spanning);
  CHECK(k.k_dim() + k.rep_dim() == wedge_dim(4));
  for (std::size_t r = 0; r < k.k_dim(); ++r) {
    CHECK(k.project(k.k_basis().row_vector(r)).is_zero());
  }
  for (int trial = 0; trial < 200; ++trial) {
    const FpVector v = random_vector(f, wedge_dim(4), rng);
    const FpVector w = random_vector(f, wedge_dim(4), rng);
    const FpVector pv = k.project(v);
    CHECK(k.project(pv) == pv);
    CHECK(k.contains(v - pv));
    // linearity
    CHECK(k.project(v + w) == pv + k.project(w));
    // compression round-trips on representatives
    CHECK(k.decompress(k.compress(pv)) == pv);
  }
}

TEST_CASE("wedge condition: trivial K holds, e1-annihilating K fails, full K fails") {
  FieldPrime f(3);
  CHECK(check_wedge_condition(QuotientSpace(f, 4)));
  CHECK_FALSE(check_wedge_condition(bad_k(f)));

  const QuotientSpace full =
      QuotientSpace::from_spanning(f, 4, FpMatrix::identity(f, wedge_dim(4)));
  CHECK_FALSE(check_wedge_condition(full));
}

TEST_CASE("wedge condition is basis-change covariant") {
  FieldPrime f(3);
  DeterministicRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    FpMatrix spanning(f, trial % 4, wedge_dim(4));
    for (std::size_t r = 0; r < spanning.rows(); ++r) {
      for (std::size_t c = 0; c < spanning.cols(); ++c) {
        spanning.set(r, c, rng.below(3));
      }
    }
    const QuotientSpace k = QuotientSpace::from_spanning(f, 4, spanning);
    const FpMatrix beta = random_invertible(f, 4, rng);
    const FpMatrix hat = induced_map(beta);
    FpMatrix image(f, k.k_dim(), wedge_dim(4));
    for (std::size_t r = 0; r < k.k_dim(); ++r) {
      image.set_row(r, hat.apply_row(k.k_basis().row_vector(r)));
    }
    const QuotientSpace moved = QuotientSpace::from_spanning(f, 4, image);
    CHECK(check_wedge_condition(k) == check_wedge_condition(moved));
  }
  // the bad K stays bad in any basis
  const QuotientSpace k = bad_k(f);
  const FpMatrix beta = random_invertible(f, 4, rng);
  const FpMatrix hat = induced_map(beta);
  FpMatrix image(f, 3, wedge_dim(4));
  for (std::size_t r = 0; r < 3; ++r) {
    image.set_row(r, hat.apply_row(k.k_basis().row_vector(r)));
  }
  CHECK_FALSE(check_wedge_condition(QuotientSpace::from_spanning(f, 4, image)));
}

TEST_CASE("subspace invariance under the induced map") {
  FieldPrime f(3);
  DeterministicRng rng(41);
  const FpMatrix any = random_invertible(f, 4, rng);
  CHECK(subspace_invariant(QuotientSpace(f, 4), any));
  const QuotientSpace full =
      QuotientSpace::from_spanning(f, 4, FpMatrix::identity(f, wedge_dim(4)));
  CHECK(subspace_invariant(full, any));

  // K = span{e1^e2}, alpha swapping e1 <-> e3: image is span{e3^e2}
  FpMatrix krows(f, 1, wedge_dim(4));
  krows.set(0, pair_index(4, 0, 1), 1);
  const QuotientSpace k = QuotientSpace::from_spanning(f, 4, krows);
  FpMatrix swap(f, 4, 4);
  swap.set(0, 2, 1);
  swap.set(2, 0, 1);
  swap.set(1, 1, 1);
  swap.set(3, 3, 1);
  CHECK_FALSE(subspace_invariant(k, swap));
  CHECK(subspace_invariant(k, FpMatrix::identity(f, 4)));
}

TEST_CASE("projective representatives cover each line once") {
  FieldPrime f(3);
  const auto reps = projective_representatives(f, 4);
  CHECK(reps.size() == 40);  // (3^4 - 1) / 2
  for (const FpVector& v : reps) {
    std::size_t lead = 0;
    while (lead < 4 && v[lead] == 0) ++lead;
    REQUIRE(lead < 4);
    CHECK(v[lead] == 1);
  }
}

#include <doctest.h>

#include <map>
#include <set>

#include <abelaut/errors.hpp>
#include <abelaut/rng.hpp>
#include <abelaut/tat.hpp>

using namespace abelaut;

namespace {

FpMatrix basis_wedge_rows(FieldPrime f, std::size_t n,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  FpMatrix m(f, pairs.size(), wedge_dim(n));
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    m.set(r, pair_index(n, pairs[r].first, pairs[r].second), 1);
  }
  return m;
}

TatCandidate zero_f_candidate(FieldPrime f, std::size_t n) {
  return TatCandidate::make(f, n, QuotientSpace(f, n),
                            FpMatrix(f, n, wedge_dim(n)));
}

TatCandidate find_reference_tat() {
  TatSearchParams params{FieldPrime(3)};
  params.n = 4;
  params.k_dim = 0;
  params.seed = 7;
  params.budget = 500;
  params.centralizer.workers = 2;
  auto outcome = search_tat(params);
  REQUIRE(outcome.tat.has_value());
  return *outcome.tat;
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

}  // namespace

TEST_CASE("injectivity of f mod K") {
  FieldPrime f(3);
  CHECK_FALSE(verify_injective(zero_f_candidate(f, 4)));

  const FpMatrix rows = basis_wedge_rows(f, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  const TatCandidate good = TatCandidate::make(f, 4, QuotientSpace(f, 4), rows);
  CHECK(verify_injective(good));

  FpMatrix repeated = rows;
  repeated.set_row(3, rows.row_vector(0));
  CHECK_FALSE(verify_injective(
      TatCandidate::make(f, 4, QuotientSpace(f, 4), repeated)));
}

TEST_CASE("candidate rows are projected to coset representatives") {
  FieldPrime f(3);
  const FpMatrix krows = basis_wedge_rows(f, 4, {{0, 1}});
  const QuotientSpace k = QuotientSpace::from_spanning(f, 4, krows);
  FpMatrix raw(f, 4, wedge_dim(4));
  raw.set(0, pair_index(4, 0, 1), 2);  // inside K, must project away
  raw.set(0, pair_index(4, 2, 3), 1);
  const TatCandidate t = TatCandidate::make(f, 4, k, raw);
  CHECK(t.f().at(0, pair_index(4, 0, 1)) == 0);
  CHECK(t.f().at(0, pair_index(4, 2, 3)) == 1);
}

TEST_CASE("centralizer of the zero map is all of GL(4,3)") {
  FieldPrime f(3);
  CentralizerOptions opt;
  opt.enforce_preconditions = false;
  opt.workers = 2;
  opt.element_cap = 4;
  const CentralizerReport rep = centralizer(zero_f_candidate(f, 4), opt);
  CHECK(rep.count == 24261120);
  CHECK(u128_to_string(rep.search_space) == "24261120");
  CHECK(rep.elements.size() == 4);
}

TEST_CASE("centralizer enforces its preconditions") {
  FieldPrime f(3);
  CHECK_THROWS_AS(centralizer(zero_f_candidate(f, 4)), InvalidTat);
}

TEST_CASE("small centralizer is closed under product and inverse") {
  // n = 2, f = 0: every invertible matrix commutes, count = |GL(2,3)| = 48
  FieldPrime f(3);
  CentralizerOptions opt;
  opt.enforce_preconditions = false;
  opt.element_cap = 64;
  const CentralizerReport rep = centralizer(zero_f_candidate(f, 2), opt);
  REQUIRE(rep.count == 48);
  REQUIRE(rep.elements.size() == 48);

  auto key = [](const FpMatrix& m) {
    std::uint64_t v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) v = v * 3 + m.at(r, c);
    }
    return v;
  };
  std::set<std::uint64_t> members;
  for (const FpMatrix& m : rep.elements) members.insert(key(m));
  for (const FpMatrix& a : rep.elements) {
    CHECK(members.count(key(mat_inverse(a))) == 1);
    for (const FpMatrix& b : rep.elements) {
      CHECK(members.count(key(a * b)) == 1);
    }
  }
}

TEST_CASE("centralizer count is worker invariant") {
  FieldPrime f(3);
  DeterministicRng rng(3);
  FpMatrix fm(f, 3, wedge_dim(3));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < wedge_dim(3); ++c) fm.set(r, c, rng.below(3));
  }
  const TatCandidate t = TatCandidate::make(f, 3, QuotientSpace(f, 3), fm);
  CentralizerOptions opt;
  opt.enforce_preconditions = false;
  std::map<int, std::uint64_t> counts;
  for (int workers : {1, 2, 8}) {
    opt.workers = workers;
    counts[workers] = centralizer(t, opt).count;
  }
  CHECK(counts[1] == counts[2]);
  CHECK(counts[1] == counts[8]);
  CHECK(counts[1] >= 1);
}

TEST_CASE("search budget exhaustion and preconditions") {
  TatSearchParams params{FieldPrime(3)};
  params.n = 4;
  params.k_dim = 0;
  params.budget = 0;
  CHECK_FALSE(search_tat(params).tat.has_value());

  params.n = 3;
  params.budget = 1;
  CHECK_THROWS_AS(search_tat(params), std::invalid_argument);

  params.n = 4;
  params.k_dim = 3;  // C(4,2) - 3 = 3 < 4
  CHECK_THROWS_AS(search_tat(params), std::invalid_argument);
}

TEST_CASE("search at (3,4,{0}) self-verifies and is seed deterministic") {
  const TatCandidate t = find_reference_tat();
  CentralizerOptions opt;
  opt.workers = 2;
  CHECK(is_tat(t, opt));

  const TatCandidate again = find_reference_tat();
  CHECK(t == again);
}

TEST_CASE("transport by the identity and inverse transport are trivial") {
  const TatCandidate t = find_reference_tat();
  const FieldPrime f = t.field();
  CHECK(transport_tat(t, FpMatrix::identity(f, 4)) == t);

  DeterministicRng rng(99);
  const FpMatrix beta = random_invertible(f, 4, rng);
  const TatCandidate back = transport_tat(transport_tat(t, beta), mat_inverse(beta));
  CHECK(back == t);

  FpMatrix singular(f, 4, 4);
  CHECK_THROWS_AS(transport_tat(t, singular), SingularMatrix);
}

TEST_CASE("centralizer count is preserved under 20 random base changes") {
  const TatCandidate t = find_reference_tat();
  CentralizerOptions opt;
  opt.workers = 2;
  const std::uint64_t reference = centralizer(t, opt).count;
  CHECK(reference == 1);
  DeterministicRng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const FpMatrix beta = random_invertible(t.field(), 4, rng);
    const TatCandidate moved = transport_tat(t, beta);
    CHECK(centralizer(moved, opt).count == reference);
  }
}

TEST_CASE("TAT JSON round-trips and rejects malformed input") {
  const TatCandidate t = find_reference_tat();
  const nlohmann::json j = tat_to_json(t);
  CHECK(j.at("wedge_order") == "lex");
  CHECK(j.at("schema") == 1);
  const TatCandidate back = tat_from_json(j);
  CHECK(back == t);

  nlohmann::json bad = j;
  bad["wedge_order"] = "colex";
  CHECK_THROWS_AS(tat_from_json(bad), std::invalid_argument);

  bad = j;
  bad.erase("f_rows");
  CHECK_THROWS_AS(tat_from_json(bad), std::invalid_argument);

  bad = j;
  bad["f_rows"][0][0] = 3;  // not reduced mod 3
  CHECK_THROWS_AS(tat_from_json(bad), std::invalid_argument);

  bad = j;
  bad["p"] = 4;
  CHECK_THROWS_AS(tat_from_json(bad), std::invalid_argument);
}

TEST_CASE("search space budget guard") {
  const TatCandidate t = find_reference_tat();
  CentralizerOptions opt;
  opt.budget = 1000;  // far below |GL(4,3)|
  CHECK_THROWS_AS(centralizer(t, opt), SearchSpaceTooLarge);
}

TEST_CASE("is_tat fails fast on bad candidates") {
  FieldPrime f(3);
  // n = 2 fails the dimension condition before any search
  FpMatrix fm(f, 2, 1);
  fm.set(0, 0, 1);
  CHECK_FALSE(is_tat(TatCandidate::make(f, 2, QuotientSpace(f, 2), fm)));

  // K = span{e1^e2, e1^e3, e1^e4} violates the wedge condition
  const FpMatrix krows = basis_wedge_rows(f, 4, {{0, 1}, {0, 2}, {0, 3}});
  const QuotientSpace k = QuotientSpace::from_spanning(f, 4, krows);
  const TatCandidate bad = TatCandidate::make(f, 4, k, FpMatrix(f, 4, wedge_dim(4)));
  const TatConditions cond = check_tat_conditions(bad);
  CHECK(cond.dimension_ok);
  CHECK_FALSE(cond.wedge_ok);
  CHECK_FALSE(cond.centralizer_ran);
  CHECK_FALSE(is_tat(bad));
}

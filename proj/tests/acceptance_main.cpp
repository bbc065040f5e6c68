// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and thresholds are pinned here in code.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <abelaut/aut.hpp>
#include <abelaut/errors.hpp>
#include <abelaut/rng.hpp>

using namespace abelaut;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
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

struct Acquired {
  TatCandidate tat;
  std::uint32_t p;
  std::size_t n;
  int attempts;
};

// Criterion 1: acquire a TAT at (3,4,{0}) within budget 500, escalating to
// (5,4,{0}) and (3,5,{0}) on empirical failure; then time the exhaustive
// verification pass over GL(4,3).
std::optional<Acquired> criterion_1() {
  struct Stage {
    std::uint32_t p;
    std::size_t n;
    int budget;
    std::uint64_t gl_budget;  // 0: default
  };
  // escalated stages need a raised GL budget; they are expected unreachable
  const Stage stages[] = {{3, 4, 500, 0},
                          {5, 4, 5, 200'000'000'000ULL},
                          {3, 5, 5, 600'000'000'000ULL}};
  std::optional<Acquired> found;
  std::string trail;
  for (const Stage& st : stages) {
    TatSearchParams params{FieldPrime(st.p)};
    params.n = st.n;
    params.k_dim = 0;
    params.seed = 7;
    params.budget = st.budget;
    params.centralizer.workers = 8;
    params.centralizer.budget = st.gl_budget;
    TatSearchOutcome out = search_tat(params);
    if (out.tat) {
      found = Acquired{*out.tat, st.p, st.n, out.attempts};
      trail += "(" + std::to_string(st.p) + "," + std::to_string(st.n) +
               "): found at attempt " + std::to_string(out.attempts) + "/" +
               std::to_string(st.budget);
      break;
    }
    trail += "(" + std::to_string(st.p) + "," + std::to_string(st.n) +
             "): exhausted " + std::to_string(out.attempts) +
             " candidates, escalating; ";
  }
  if (!found) {
    report(1, false, "TAT acquisition failed at every escalation stage: " + trail);
    return std::nullopt;
  }

  // timing of the full GL(4,3) pass: < 60 s single worker, < 10 s with 8
  const TatCandidate gl43_candidate =
      (found->p == 3 && found->n == 4)
          ? found->tat
          : TatCandidate::make(FieldPrime(3), 4, QuotientSpace(FieldPrime(3), 4),
                               FpMatrix(FieldPrime(3), 4, wedge_dim(4)));
  CentralizerOptions opt;
  opt.workers = 1;
  opt.enforce_preconditions = found->p == 3 && found->n == 4;
  auto t0 = std::chrono::steady_clock::now();
  const CentralizerReport single = centralizer(gl43_candidate, opt);
  const double t_single = seconds_since(t0);
  opt.workers = 8;
  t0 = std::chrono::steady_clock::now();
  const CentralizerReport eight = centralizer(gl43_candidate, opt);
  const double t_eight = seconds_since(t0);

  const bool space_ok = u128_to_string(single.search_space) == "24261120";
  const bool counts_ok = single.count == eight.count;
  const bool timing_ok = t_single < 60.0 && t_eight < 10.0;
  report(1, space_ok && counts_ok && timing_ok,
         trail + "; GL(4,3) pass over 24261120 matrices: " +
             std::to_string(t_single) + " s single-worker (< 60), " +
             std::to_string(t_eight) + " s with 8 workers (< 10), count " +
             std::to_string(single.count));
  return found;
}

void criterion_2(const TatCandidate& t, const CentralizerOptions& opt) {
  std::string detail;
  bool ok = true;
  const GroupArtifact g = build_special(t, opt);
  const std::size_t n = t.n();
  const int d = static_cast<int>(t.k().rep_dim());

  const StandardSubgroup gp = agemo(g.pres);
  const StandardSubgroup der = derived_subgroup(g.pres);
  const StandardSubgroup phi = frattini(g.pres);
  const StandardSubgroup z = center(g.pres);
  const StandardSubgroup om1 = omega(g.pres, 1);
  ok &= subgroup_leq(g.pres, gp, der);
  ok &= subgroup_compare(g.pres, der, phi) == SubgroupRel::Equal;
  ok &= subgroup_compare(g.pres, phi, z) == SubgroupRel::Equal;
  ok &= subgroup_compare(g.pres, z, om1) == SubgroupRel::Equal;
  detail += "G^p <= G' = Phi = Z = Omega_1; ";

  const int quotient = g.pres.order_exponent() - der.order_exponent(g.pres);
  ok &= quotient == static_cast<int>(n);
  ok &= gp.order_exponent(g.pres) == static_cast<int>(n);
  detail += "|G/G'| = |G^p| = p^" + std::to_string(n) + "; ";

  const AutCertificate cert = certify_automorphisms(g, opt);
  ok &= cert.aut_equals_autc;
  ok &= cert.structure == AutStructure::ElementaryAbelian;
  const int expected_exp = static_cast<int>(n) * d;
  ok &= cert.autc_order_exponent == expected_exp && cert.autc_order_verified;
  detail += "Aut = Aut_c, elementary abelian, |Aut_c| = p^" +
            std::to_string(cert.autc_order_exponent) + " (expected p^" +
            std::to_string(expected_exp) + ")";
  report(2, ok, detail);
}

void criterion_3(const TatCandidate& t, const CentralizerOptions& opt) {
  bool ok = true;
  const GroupArtifact g = build_zurek(t, opt);
  ok &= classify_lattice(g.pres) == LatticeShape::DerivedLtFrattiniEqCenter;
  ok &= purely_nonabelian_certificate(g.pres);
  const AutCertificate cert = certify_automorphisms(g, opt);
  ok &= cert.aut_equals_autc;
  ok &= cert.structure == AutStructure::Nonabelian;
  bool witness_ok = false;
  if (cert.witness) {
    const std::int64_t p = g.pres.field().p();
    const GroupElement x2p2 = power(g.pres, generator_element(g.pres, 1), p * p);
    witness_ok = cert.witness->gamma_delta_value == x2p2 &&
                 !is_identity(cert.witness->gamma_delta_value) &&
                 is_identity(cert.witness->delta_gamma_value);
  }
  ok &= witness_ok;
  report(3, ok,
         "zurek: G' < Phi = Z, Z <= Phi certificate, Aut = Aut_c nonabelian, "
         "transcribed witness gives x1 -> x2^{p^2} != 1 one way and 1 the other");
}

void criterion_4(const TatCandidate& t, const CentralizerOptions& opt) {
  bool ok = true;
  const GroupArtifact g = build_central_product(t, opt);
  ok &= classify_lattice(g.pres) == LatticeShape::DerivedEqFrattiniLtCenter;
  const AutCertificate cert = certify_automorphisms(g, opt);
  ok &= cert.aut_equals_autc;
  ok &= cert.block_report.has_value() && cert.block_report->block_count == 1;
  if (ok) {
    const Block& b = cert.block_report->blocks.front();
    ok &= b.alpha == FpMatrix::identity(t.field(), t.n()) && b.vec.is_zero() &&
          b.scalar == 1;
  }
  ok &= cert.structure == AutStructure::ElementaryAbelian;
  report(4, ok,
         "central product: G' = Phi < Z, unique surviving block (alpha, lambda, "
         "mu) = (1, 0, 1), elementary abelian");
}

void criterion_5(const TatCandidate& t, const CentralizerOptions& opt) {
  bool ok = true;
  const GroupArtifact g = build_extension(t, 2, std::nullopt, opt);
  ok &= classify_lattice(g.pres) == LatticeShape::DerivedLtFrattiniEqCenter;

  const HomSpace homs = hom_space(g.pres);
  bool shapes = true;
  for (const CentralHom& h : homs.spanning) {
    if (h.images[0].exponents[0] % g.pres.field().p() != 0) shapes = false;
    for (std::size_t i = 0; i < g.pres.num_generators(); ++i) {
      for (std::size_t j = (i == 0 ? 1 : 0); j < g.pres.num_generators(); ++j) {
        if (h.images[i].exponents[j] != 0) shapes = false;
      }
    }
  }
  ok &= shapes;

  const AutCertificate cert = certify_automorphisms(g, opt);
  ok &= cert.aut_equals_autc;
  ok &= cert.block_report.has_value() && cert.block_report->block_count == 1;
  if (cert.block_report && !cert.block_report->blocks.empty()) {
    const Block& b = cert.block_report->blocks.front();
    ok &= b.alpha == FpMatrix::identity(t.field(), t.n()) && b.vec.is_zero() &&
          b.scalar == 1;
  }
  ok &= cert.structure == AutStructure::Abelian;
  report(5, ok,
         "extension (m = 2): G' < Phi = Z, homs have shape y -> y^{ps} mod G' "
         "and x_i -> 1 mod G', block solve forces (tau, sigma, alpha) = "
         "(1, 0, 1), abelian");
}

void criterion_6(const TatCandidate& t, const CentralizerOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t assoc_checked = 0;

  const GroupArtifact artifacts[] = {
      build_special(t, opt), build_zurek(t, opt),
      build_central_product(t, opt), build_extension(t, 2, std::nullopt, opt)};
  for (const GroupArtifact& g : artifacts) {
    const PcPresentation& pres = g.pres;
    DeterministicRng rng(1000 + static_cast<int>(g.tag));
    const std::int64_t p = pres.field().p();
    for (int trial = 0; trial < 10000; ++trial) {
      const GroupElement a = random_element(pres, rng);
      const GroupElement b = random_element(pres, rng);
      const GroupElement c = random_element(pres, rng);
      if (!(multiply(pres, multiply(pres, a, b), c) ==
            multiply(pres, a, multiply(pres, b, c)))) {
        ok = false;
        break;
      }
      ++assoc_checked;
      if (trial < 1000) {
        if (!(power(pres, multiply(pres, a, b), p) ==
              multiply(pres, power(pres, a, p), power(pres, b, p)))) {
          ok = false;
        }
        if (!(commutator(pres, a, multiply(pres, b, c)) ==
              multiply(pres, commutator(pres, a, b), commutator(pres, a, c)))) {
          ok = false;
        }
      }
    }
    // order bookkeeping
    const StandardSubgroup z = center(pres);
    const StandardSubgroup der = derived_subgroup(pres);
    const StandardSubgroup phi = frattini(pres);
    int sum = static_cast<int>(pres.w_dim());
    for (std::size_t i = 0; i < pres.num_generators(); ++i) {
      sum += pres.generator(i).e;
    }
    ok &= pres.order_exponent() == sum;
    ok &= z.order_exponent(pres) <= pres.order_exponent();
    ok &= subgroup_leq(pres, der, phi);
  }

  // commutator/wedge agreement in the special group
  {
    const PcPresentation& pres = artifacts[0].pres;
    DeterministicRng rng(77);
    const FieldPrime f = t.field();
    for (int trial = 0; trial < 1000; ++trial) {
      FpVector u(f, t.n()), v(f, t.n());
      for (std::size_t i = 0; i < t.n(); ++i) {
        u.set(i, rng.below(f.p()));
        v.set(i, rng.below(f.p()));
      }
      GroupElement gu = identity_element(pres), gv = identity_element(pres);
      for (std::size_t i = 0; i < t.n(); ++i) {
        gu.exponents[i] = u[i];
        gv.exponents[i] = v[i];
      }
      if (!(commutator(pres, gu, gv).tail ==
            t.k().compress(t.k().project(wedge(u, v))))) {
        ok = false;
        break;
      }
    }
  }

  const double elapsed = seconds_since(t0);
  ok &= elapsed < 30.0;
  report(6, ok,
         "engine property suite: " + std::to_string(assoc_checked) +
             " associativity triples, p-power homomorphism, commutator "
             "bilinearity, commutator/wedge agreement, order bookkeeping in " +
             std::to_string(elapsed) + " s (< 30)");
}

void criterion_7(const TatCandidate& t, const CentralizerOptions& opt) {
  bool ok = true;
  const FieldPrime f = t.field();

  // bad K = span{e1^e2, e1^e3, e1^e4}: condition (2) fails and the special
  // group over it has Z > Phi
  FpMatrix krows(f, 3, wedge_dim(4));
  krows.set(0, pair_index(4, 0, 1), 1);
  krows.set(1, pair_index(4, 0, 2), 1);
  krows.set(2, pair_index(4, 0, 3), 1);
  const QuotientSpace bad_k = QuotientSpace::from_spanning(f, 4, krows);
  ok &= !check_wedge_condition(bad_k);

  FpMatrix inj(f, 4, wedge_dim(4));
  inj.set(0, pair_index(4, 1, 2), 1);
  inj.set(1, pair_index(4, 1, 3), 1);
  inj.set(2, pair_index(4, 2, 3), 1);
  inj.set(3, pair_index(4, 1, 2), 1);
  inj.set(3, pair_index(4, 1, 3), 2);
  const TatCandidate bad_k_cand = TatCandidate::make(f, 4, bad_k, inj);
  const PcPresentation bad_k_pres = assemble_special(bad_k_cand);
  ok &= subgroup_compare(bad_k_pres, center(bad_k_pres), frattini(bad_k_pres)) ==
        SubgroupRel::ProperSuperset;

  // non-injective f: condition (3) fails and |G^p| < p^n
  FpMatrix flat(f, 4, wedge_dim(4));
  flat.set(0, pair_index(4, 0, 1), 1);
  flat.set(1, pair_index(4, 0, 1), 2);
  const TatCandidate flat_cand = TatCandidate::make(f, 4, QuotientSpace(f, 4), flat);
  ok &= !verify_injective(flat_cand);
  const PcPresentation flat_pres = assemble_special(flat_cand);
  ok &= agemo(flat_pres).order_exponent(flat_pres) < 4;

  // worker invariance of every count
  CentralizerOptions w_opt = opt;
  std::uint64_t counts[3];
  int idx = 0;
  for (int workers : {1, 2, 8}) {
    w_opt.workers = workers;
    counts[idx++] = centralizer(t, w_opt).count;
  }
  ok &= counts[0] == counts[1] && counts[1] == counts[2];

  CentralizerOptions bypass;
  bypass.enforce_preconditions = false;
  std::uint64_t zero_counts[3];
  idx = 0;
  const TatCandidate zero3 =
      TatCandidate::make(f, 3, QuotientSpace(f, 3), FpMatrix(f, 3, wedge_dim(3)));
  for (int workers : {1, 2, 8}) {
    bypass.workers = workers;
    zero_counts[idx++] = centralizer(zero3, bypass).count;
  }
  ok &= zero_counts[0] == 11232 && zero_counts[1] == 11232 &&
        zero_counts[2] == 11232;

  report(7, ok,
         "negative controls: bad K fails condition (2) and yields Z > Phi, "
         "non-injective f fails condition (3) and shrinks G^p, counts are "
         "worker invariant");
}

}  // namespace

int main() {
  std::optional<Acquired> acquired;
  try {
    acquired = criterion_1();
  } catch (const std::exception& e) {
    report(1, false, std::string("exception: ") + e.what());
  }
  if (!acquired || !(acquired->p == 3 && acquired->n == 4)) {
    std::printf("criteria 2-7 need the (3,4,{0}) TAT; acquired %s\n",
                acquired ? "a different stage" : "nothing");
    return 1;
  }

  CentralizerOptions opt;
  opt.workers = 8;
  const TatCandidate& t = acquired->tat;
  try { criterion_2(t, opt); } catch (const std::exception& e) { report(2, false, e.what()); }
  try { criterion_3(t, opt); } catch (const std::exception& e) { report(3, false, e.what()); }
  try { criterion_4(t, opt); } catch (const std::exception& e) { report(4, false, e.what()); }
  try { criterion_5(t, opt); } catch (const std::exception& e) { report(5, false, e.what()); }
  try { criterion_6(t, opt); } catch (const std::exception& e) { report(6, false, e.what()); }
  try { criterion_7(t, opt); } catch (const std::exception& e) { report(7, false, e.what()); }

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}

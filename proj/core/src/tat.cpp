#include "abelaut/tat.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "abelaut/errors.hpp"
#include "abelaut/rng.hpp"
#include "alpha_hat_leaf.hpp"

namespace abelaut {

namespace {

struct AbortSearch {};

// Per-worker centralizer search state.
struct WorkerResult {
  std::uint64_t count = 0;
  std::vector<FpMatrix> elements;
};

void centralizer_worker(const TatCandidate& t, const CentralizerOptions& opt,
                        GlPartition part, std::atomic<std::uint64_t>& global_count,
                        std::atomic<bool>& stop, WorkerResult& out) {
  const FieldPrime field = t.field();
  const std::size_t n = t.n();
  const std::size_t dim = wedge_dim(n);
  const FpMatrix& f = t.f();
  const QuotientSpace& k = t.k();

  detail::AlphaHatLeafEval eval(field, n, &k);
  std::vector<std::uint32_t> c_buf(dim), cols_buf(n * dim);
  std::vector<std::uint32_t> lhs_buf(dim), coefs(n);

  AffineRowSearch cfg(static_cast<int>(n), field);
  cfg.partition = part;

  cfg.build_system = [&](const std::vector<FpVector>& prefix, LinearSystem& sys) {
    if (stop.load(std::memory_order_relaxed)) throw AbortSearch{};
    eval.begin_leaf(prefix);

    // switch condition per basis vector: (e_i alpha) f = proj((e_i f) alpha_hat)
    for (std::size_t i = 0; i < n; ++i) {
      eval.eval_target(f.row(i), c_buf.data(), cols_buf.data());
      const bool last = i + 1 == n;
      if (!last) {
        std::fill(lhs_buf.begin(), lhs_buf.end(), 0u);
        for (std::size_t kk = 0; kk < n; ++kk) {
          const std::uint32_t a = prefix[i][kk];
          if (a == 0) continue;
          const auto frow = f.row(kk);
          for (std::size_t c = 0; c < dim; ++c) {
            lhs_buf[c] = field.add(lhs_buf[c], field.mul(a, frow[c]));
          }
        }
      }
      for (std::size_t c = 0; c < dim; ++c) {
        if (last) {
          // sum_k x_k (f[k][c] - col_k[c]) = C[c]
          for (std::size_t kk = 0; kk < n; ++kk) {
            coefs[kk] = field.sub(f.at(kk, c), cols_buf[kk * dim + c]);
          }
          if (!sys.add(coefs, c_buf[c])) return true;
        } else {
          // sum_k x_k col_k[c] = lhs[c] - C[c]
          for (std::size_t kk = 0; kk < n; ++kk) {
            coefs[kk] = cols_buf[kk * dim + c];
          }
          if (!sys.add(coefs, field.sub(lhs_buf[c], c_buf[c]))) return true;
        }
      }
    }
    // K invariance: proj(kappa alpha_hat) = 0 for every basis row of K
    for (std::size_t r = 0; r < k.k_dim(); ++r) {
      eval.eval_target(k.k_basis().row(r), c_buf.data(), cols_buf.data());
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t kk = 0; kk < n; ++kk) {
          coefs[kk] = cols_buf[kk * dim + c];
        }
        if (!sys.add(coefs, field.neg(c_buf[c]))) return true;
      }
    }
    return true;
  };

  cfg.on_solution = [&](const FpMatrix& alpha, std::span<const std::uint32_t>) {
    ++out.count;
    if (out.elements.size() < opt.element_cap) out.elements.push_back(alpha);
    const std::uint64_t total = global_count.fetch_add(1) + 1;
    if (opt.early_exit_count != 0 && total >= opt.early_exit_count) {
      stop.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  };

  try {
    search_invertible_affine(cfg);
  } catch (const AbortSearch&) {
  }
}

}  // namespace

TatCandidate TatCandidate::make(FieldPrime field, std::size_t n, QuotientSpace k,
                                const FpMatrix& f) {
  if (n < 2) throw std::invalid_argument("TatCandidate: n must be at least 2");
  if (k.n() != n || k.field() != field) {
    throw std::invalid_argument("TatCandidate: K lives on the wrong space");
  }
  if (f.rows() != n || f.cols() != wedge_dim(n) || f.field() != field) {
    throw std::invalid_argument("TatCandidate: f must be n x C(n,2) over GF(p)");
  }
  FpMatrix projected(field, n, f.cols());
  for (std::size_t r = 0; r < n; ++r) {
    projected.set_row(r, k.project(f.row_vector(r)));
  }
  return TatCandidate(field, n, std::move(k), std::move(projected));
}

bool verify_injective(const TatCandidate& t) {
  return rank(t.f()) == t.n();
}

CentralizerReport centralizer(const TatCandidate& t, const CentralizerOptions& opt) {
  const std::uint64_t budget = opt.budget ? opt.budget : default_gl_budget();
  const u128 space = gl_order(static_cast<int>(t.n()), t.field());
  if (space > budget) {
    throw SearchSpaceTooLarge("centralizer: |GL(" + std::to_string(t.n()) + "," +
                              std::to_string(t.field().p()) + ")| = " +
                              u128_to_string(space) + " exceeds budget " +
                              std::to_string(budget));
  }
  if (opt.enforce_preconditions) {
    if (!verify_injective(t)) {
      throw InvalidTat("centralizer: f is not injective mod K");
    }
    if (!check_wedge_condition(t.k())) {
      throw InvalidTat("centralizer: K violates the wedge condition");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const int workers = std::max(1, opt.workers);
  std::vector<WorkerResult> results(workers);
  std::atomic<std::uint64_t> global_count{0};
  std::atomic<bool> stop{false};

  if (workers == 1) {
    centralizer_worker(t, opt, GlPartition{1, 1}, global_count, stop, results[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        centralizer_worker(t, opt, GlPartition{w + 1, workers}, global_count,
                           stop, results[w]);
      });
    }
    for (auto& th : threads) th.join();
  }

  CentralizerReport report;
  report.search_space = space;
  report.aborted_early = stop.load();
  for (const auto& r : results) {
    report.count += r.count;
    for (const auto& m : r.elements) {
      if (report.elements.size() < opt.element_cap) report.elements.push_back(m);
    }
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

TatConditions check_tat_conditions(const TatCandidate& t,
                                   const CentralizerOptions& opt) {
  TatConditions cond;
  cond.dimension_ok = t.n() >= 4;
  cond.wedge_ok = check_wedge_condition(t.k());
  cond.injective = verify_injective(t);
  if (cond.dimension_ok && cond.wedge_ok && cond.injective) {
    cond.report = centralizer(t, opt);
    cond.centralizer_ran = true;
    cond.centralizer_trivial = cond.report.count == 1;
  }
  return cond;
}

bool is_tat(const TatCandidate& t, const CentralizerOptions& opt) {
  const TatConditions c = check_tat_conditions(t, opt);
  return c.dimension_ok && c.wedge_ok && c.injective && c.centralizer_trivial;
}

TatSearchOutcome search_tat(const TatSearchParams& params) {
  const FieldPrime field = params.field;
  const std::size_t n = params.n;
  const std::size_t dim = wedge_dim(n);
  if (n < 4) {
    throw std::invalid_argument("search_tat: n must be at least 4");
  }
  if (dim < params.k_dim || dim - params.k_dim < n) {
    throw std::invalid_argument(
        "search_tat: need C(n,2) - k_dim >= n for an injective f");
  }

  DeterministicRng rng(params.seed);
  TatSearchOutcome outcome;

  // Verification of a candidate only needs a yes/no answer, so the
  // centralizer may abort as soon as a second element shows up.
  CentralizerOptions reject_fast = params.centralizer;
  reject_fast.early_exit_count = 2;

  for (int attempt = 0; attempt < params.budget; ++attempt) {
    ++outcome.attempts;

    // subspace K: k_dim independent rows passing the wedge condition
    std::optional<QuotientSpace> k;
    if (params.k_dim == 0) {
      k.emplace(field, n);
    } else {
      for (int tries = 0; tries < 1000; ++tries) {
        FpMatrix rows(field, params.k_dim, dim);
        for (std::size_t r = 0; r < params.k_dim; ++r) {
          for (std::size_t c = 0; c < dim; ++c) {
            rows.set(r, c, rng.below(field.p()));
          }
        }
        QuotientSpace candidate = QuotientSpace::from_spanning(field, n, rows);
        if (candidate.k_dim() != params.k_dim || !check_wedge_condition(candidate)) {
          ++outcome.k_rejections;
          continue;
        }
        k.emplace(std::move(candidate));
        break;
      }
      if (!k.has_value()) continue;
    }

    FpMatrix f(field, n, dim);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < dim; ++c) f.set(r, c, rng.below(field.p()));
    }
    TatCandidate candidate = TatCandidate::make(field, n, *k, f);
    if (!verify_injective(candidate)) continue;

    CentralizerReport report = centralizer(candidate, reject_fast);
    if (report.count == 1 && !report.aborted_early) {
      outcome.tat = std::move(candidate);
      outcome.report = std::move(report);
      return outcome;
    }
  }
  return outcome;
}

TatCandidate transport_tat(const TatCandidate& t, const FpMatrix& beta) {
  if (beta.rows() != t.n() || beta.cols() != t.n()) {
    throw std::invalid_argument("transport_tat: beta must be n x n");
  }
  const FpMatrix beta_inv = mat_inverse(beta);  // throws SingularMatrix
  const FpMatrix hat = induced_map(beta);

  FpMatrix k_image(t.field(), t.k().k_dim(), t.k().ambient_dim());
  for (std::size_t r = 0; r < t.k().k_dim(); ++r) {
    k_image.set_row(r, hat.apply_row(t.k().k_basis().row_vector(r)));
  }
  QuotientSpace k_new = QuotientSpace::from_spanning(t.field(), t.n(), k_image);

  // f' with (v beta) f' = (v f) beta_hat mod K', i.e. f' = beta^-1 f beta_hat
  const FpMatrix f_new = beta_inv * (t.f() * hat);
  return TatCandidate::make(t.field(), t.n(), std::move(k_new), f_new);
}

nlohmann::json tat_to_json(const TatCandidate& t) {
  nlohmann::json j;
  j["schema"] = 1;
  j["p"] = t.field().p();
  j["n"] = t.n();
  j["wedge_order"] = "lex";
  j["k_basis"] = to_json(t.k().k_basis());
  j["f_rows"] = to_json(t.f());
  return j;
}

nlohmann::json centralizer_report_to_json(const CentralizerReport& r) {
  nlohmann::json j;
  j["count"] = r.count;
  j["search_space"] = u128_to_string(r.search_space);
  nlohmann::json elems = nlohmann::json::array();
  for (const FpMatrix& m : r.elements) elems.push_back(to_json(m));
  j["elements"] = std::move(elems);
  j["aborted_early"] = r.aborted_early;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

TatCandidate tat_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("n") ||
      !j.contains("k_basis") || !j.contains("f_rows")) {
    throw std::invalid_argument("TAT JSON: missing required fields");
  }
  if (j.value("wedge_order", "") != "lex") {
    throw std::invalid_argument("TAT JSON: unsupported wedge_order");
  }
  const FieldPrime field(j.at("p").get<std::uint32_t>());
  const std::size_t n = j.at("n").get<std::size_t>();
  if (n < 2 || n > 64) throw std::invalid_argument("TAT JSON: n out of range");
  const std::size_t dim = wedge_dim(n);
  FpMatrix k_rows = matrix_from_json(field, dim, j.at("k_basis"));
  FpMatrix f = matrix_from_json(field, dim, j.at("f_rows"));
  if (f.rows() != n) throw std::invalid_argument("TAT JSON: f_rows must have n rows");
  return TatCandidate::make(field, n, QuotientSpace::from_spanning(field, n, k_rows),
                            f);
}

}  // namespace abelaut

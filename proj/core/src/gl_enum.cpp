#include "abelaut/gl_enum.hpp"

#include <cstdlib>
#include <stdexcept>

namespace abelaut {

namespace {

std::uint64_t ipow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Stack of independent rows with O(1) span membership via a packed table.
// Span elements live in one flat buffer (n entries each).
class RowSpan {
 public:
  RowSpan(FieldPrime field, int n) : field_(field), n_(n) {
    const std::uint64_t size = ipow_u64(field.p(), n);
    if (size > (1u << 27)) {
      throw std::invalid_argument("RowSpan: p^n too large for a span table");
    }
    in_span_.assign(size, 0);
    elems_.assign(n, 0);
    packed_.push_back(0);
    in_span_[0] = 1;
    checkpoints_.push_back(1);
  }

  std::uint64_t table_size() const { return in_span_.size(); }

  bool contains_packed(std::uint64_t v) const { return in_span_[v] != 0; }

  std::uint64_t pack(std::span<const std::uint32_t> v) const {
    std::uint64_t out = 0;
    for (int i = n_ - 1; i >= 0; --i) out = out * field_.p() + v[i];
    return out;
  }

  void unpack(std::uint64_t v, std::uint32_t* out) const {
    for (int i = 0; i < n_; ++i) {
      out[i] = static_cast<std::uint32_t>(v % field_.p());
      v /= field_.p();
    }
  }

  void push_row(std::span<const std::uint32_t> row) {
    const std::size_t count = checkpoints_.back();
    elems_.resize(static_cast<std::size_t>(n_) * count * field_.p());
    packed_.reserve(count * field_.p());
    std::vector<std::uint32_t> scaled(n_);
    std::size_t write = count;
    for (std::uint32_t c = 1; c < field_.p(); ++c) {
      for (int i = 0; i < n_; ++i) scaled[i] = field_.mul(c, row[i]);
      for (std::size_t e = 0; e < count; ++e, ++write) {
        const std::uint32_t* src = elems_.data() + e * n_;
        std::uint32_t* dst = elems_.data() + write * n_;
        for (int i = 0; i < n_; ++i) dst[i] = field_.add(src[i], scaled[i]);
        const std::uint64_t packed = pack({dst, static_cast<std::size_t>(n_)});
        in_span_[packed] = 1;
        packed_.push_back(packed);
      }
    }
    checkpoints_.push_back(write);
  }

  void pop_row() {
    checkpoints_.pop_back();
    const std::size_t count = checkpoints_.back();
    while (packed_.size() > count) {
      in_span_[packed_.back()] = 0;
      packed_.pop_back();
    }
    elems_.resize(static_cast<std::size_t>(n_) * count);
  }

 private:
  FieldPrime field_;
  int n_;
  std::vector<std::uint8_t> in_span_;
  std::vector<std::uint32_t> elems_;  // flat, n_ entries per element
  std::vector<std::uint64_t> packed_;
  std::vector<std::size_t> checkpoints_;
};

void validate_partition(const GlPartition& part) {
  if (part.worker_count < 1 || part.worker_index < 1 ||
      part.worker_index > part.worker_count) {
    throw std::invalid_argument("GlPartition: need 1 <= worker_index <= worker_count");
  }
}

}  // namespace

u128 gl_order(int n, FieldPrime field) {
  if (n < 1) throw std::invalid_argument("gl_order: n must be positive");
  u128 pn = 1;
  for (int i = 0; i < n; ++i) pn *= field.p();
  u128 order = 1;
  u128 pi = 1;
  for (int i = 0; i < n; ++i) {
    order *= pn - pi;
    pi *= field.p();
  }
  return order;
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::uint64_t default_gl_budget() {
  if (const char* env = std::getenv("ABELAUT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000'000ULL;
}

bool enumerate_invertible(int n, FieldPrime field, GlPartition part,
                          const std::function<bool(const FpMatrix&)>& visit) {
  if (n < 1) throw std::invalid_argument("enumerate_invertible: n must be positive");
  validate_partition(part);

  RowSpan span(field, n);
  FpMatrix m(field, n, n);
  std::vector<std::uint32_t> row(n);
  bool keep_going = true;

  auto rec = [&](auto&& self, int level) -> void {
    if (level == n) {
      keep_going = visit(m);
      return;
    }
    std::uint64_t candidate_idx = 0;
    for (std::uint64_t v = 1; v < span.table_size() && keep_going; ++v) {
      if (span.contains_packed(v)) continue;
      if (level == 0) {
        const bool mine =
            candidate_idx % static_cast<std::uint64_t>(part.worker_count) ==
            static_cast<std::uint64_t>(part.worker_index - 1);
        ++candidate_idx;
        if (!mine) continue;
      }
      span.unpack(v, row.data());
      for (int j = 0; j < n; ++j) m.set(level, j, row[j]);
      span.push_row(row);
      self(self, level + 1);
      span.pop_row();
    }
  };
  rec(rec, 0);
  return keep_going;
}

LinearSystem::LinearSystem(FieldPrime field, std::size_t unknowns)
    : field_(field), unknowns_(unknowns) {}

bool LinearSystem::add(std::span<const std::uint32_t> coeffs, std::uint32_t rhs) {
  if (!consistent_) return false;
  std::vector<std::uint32_t> vec(unknowns_ + 1);
  for (std::size_t i = 0; i < unknowns_; ++i) vec[i] = coeffs[i];
  vec[unknowns_] = rhs;

  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint32_t factor = vec[pivot_cols_[r]];
    if (factor == 0) continue;
    const auto& row = rows_[r];
    for (std::size_t j = 0; j <= unknowns_; ++j) {
      vec[j] = field_.sub(vec[j], field_.mul(factor, row[j]));
    }
  }

  std::size_t pivot = 0;
  while (pivot < unknowns_ && vec[pivot] == 0) ++pivot;
  if (pivot == unknowns_) {
    if (vec[unknowns_] != 0) consistent_ = false;
    return consistent_;
  }

  const std::uint32_t scale = field_.inv(vec[pivot]);
  for (std::size_t j = 0; j <= unknowns_; ++j) vec[j] = field_.mul(scale, vec[j]);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint32_t factor = rows_[r][pivot];
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= unknowns_; ++j) {
      rows_[r][j] = field_.sub(rows_[r][j], field_.mul(factor, vec[j]));
    }
  }
  rows_.push_back(std::move(vec));
  pivot_cols_.push_back(pivot);
  return true;
}

bool LinearSystem::for_each_solution(
    const std::function<bool(std::span<const std::uint32_t>)>& fn) const {
  if (!consistent_) return true;

  std::vector<int> pivot_of_col(unknowns_, -1);
  for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
    pivot_of_col[pivot_cols_[r]] = static_cast<int>(r);
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < unknowns_; ++c) {
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  }

  std::vector<std::uint32_t> x(unknowns_, 0);
  std::vector<std::uint32_t> free_vals(free_cols.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free_cols.size(); ++i) x[free_cols[i]] = free_vals[i];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint32_t val = rows_[r][unknowns_];
      for (const std::size_t c : free_cols) {
        if (x[c] != 0 && rows_[r][c] != 0) {
          val = field_.sub(val, field_.mul(rows_[r][c], x[c]));
        }
      }
      x[pivot_cols_[r]] = val;
    }
    if (!fn(x)) return false;

    // odometer over the free variables, last one fastest
    std::size_t i = free_cols.size();
    while (i > 0) {
      --i;
      if (++free_vals[i] < field_.p()) break;
      free_vals[i] = 0;
      if (i == 0) return true;
    }
    if (free_cols.empty()) return true;
  }
}

bool search_invertible_affine(const AffineRowSearch& cfg) {
  const int n = cfg.n;
  if (n < 1) throw std::invalid_argument("search_invertible_affine: n must be positive");
  validate_partition(cfg.partition);

  // n == 1 has no prefix rows to split on; the single leaf goes to worker 1.
  if (n == 1 && cfg.partition.worker_index != 1) return true;

  RowSpan span(cfg.field, n);
  std::vector<FpVector> prefix;
  prefix.reserve(n - 1);
  std::vector<std::uint32_t> row(n);
  bool keep_going = true;

  auto leaf = [&]() {
    LinearSystem sys(cfg.field, static_cast<std::size_t>(n) + cfg.extra_unknowns);
    if (!cfg.build_system(prefix, sys) || !sys.consistent()) return;
    FpMatrix alpha(cfg.field, n, n);
    for (int r = 0; r < n - 1; ++r) alpha.set_row(r, prefix[r]);
    sys.for_each_solution([&](std::span<const std::uint32_t> sol) {
      const std::uint64_t packed = span.pack(sol.first(n));
      if (packed == 0 || span.contains_packed(packed)) return true;
      for (int j = 0; j < n; ++j) alpha.set(n - 1, j, sol[j]);
      keep_going = cfg.on_solution(alpha, sol.subspan(n));
      return keep_going;
    });
  };

  auto rec = [&](auto&& self, int level) -> void {
    if (level == n - 1) {
      leaf();
      return;
    }
    std::uint64_t candidate_idx = 0;
    for (std::uint64_t v = 1; v < span.table_size() && keep_going; ++v) {
      if (span.contains_packed(v)) continue;
      if (level == 0) {
        const bool mine =
            candidate_idx % static_cast<std::uint64_t>(cfg.partition.worker_count) ==
            static_cast<std::uint64_t>(cfg.partition.worker_index - 1);
        ++candidate_idx;
        if (!mine) continue;
      }
      span.unpack(v, row.data());
      FpVector rv(cfg.field, n);
      for (int j = 0; j < n; ++j) rv.set(j, row[j]);
      prefix.push_back(std::move(rv));
      span.push_row(row);
      self(self, level + 1);
      span.pop_row();
      prefix.pop_back();
    }
  };
  rec(rec, 0);
  return keep_going;
}

}  // namespace abelaut

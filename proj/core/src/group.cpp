#include "abelaut/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace abelaut {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

PcPresentation::PcPresentation(FieldPrime field, std::vector<Generator> generators,
                               std::size_t w_dim, std::vector<FpVector> comm_table)
    : field_(field), gens_(std::move(generators)), w_dim_(w_dim),
      comm_(std::move(comm_table)) {
  const std::size_t r = gens_.size();
  if (r == 0 || r > 64) {
    throw std::invalid_argument("PcPresentation: generator count out of range");
  }
  if (comm_.size() != wedge_dim(r)) {
    throw std::invalid_argument("PcPresentation: commutator table must have C(r,2) entries");
  }
  moduli_.reserve(r);
  for (const Generator& g : gens_) {
    if (g.e < 1 || g.e > 30) {
      throw std::invalid_argument("PcPresentation: exponent height out of range");
    }
    const std::uint64_t mod = pow_u64(field_.p(), g.e);
    if (mod >= (1ull << 62)) {
      throw std::invalid_argument("PcPresentation: p^e too large");
    }
    moduli_.push_back(mod);
    if (g.power_tail.size() != w_dim_ || g.power_tail.field() != field_) {
      throw std::invalid_argument("PcPresentation: power tail has wrong dimension");
    }
  }
  for (const FpVector& c : comm_) {
    if (c.size() != w_dim_ || c.field() != field_) {
      throw std::invalid_argument("PcPresentation: commutator tail has wrong dimension");
    }
  }
}

int PcPresentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

const FpVector& PcPresentation::comm(std::size_t i, std::size_t j) const {
  return comm_[pair_index(gens_.size(), i, j)];
}

int PcPresentation::order_exponent() const {
  int sum = static_cast<int>(w_dim_);
  for (const Generator& g : gens_) sum += g.e;
  return sum;
}

bool PcPresentation::tail_spanned_by_commutators() const {
  if (w_dim_ == 0) return true;
  FpMatrix rows(field_, comm_.size(), w_dim_);
  for (std::size_t i = 0; i < comm_.size(); ++i) rows.set_row(i, comm_[i]);
  return rank(rows) == w_dim_;
}

bool PcPresentation::operator==(const PcPresentation& o) const {
  if (field_ != o.field_ || w_dim_ != o.w_dim_ || gens_.size() != o.gens_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name != o.gens_[i].name || gens_[i].e != o.gens_[i].e ||
        !(gens_[i].power_tail == o.gens_[i].power_tail)) {
      return false;
    }
  }
  return comm_ == o.comm_;
}

GroupElement identity_element(const PcPresentation& pres) {
  return GroupElement{std::vector<std::uint64_t>(pres.num_generators(), 0),
                      FpVector(pres.field(), pres.w_dim())};
}

GroupElement generator_element(const PcPresentation& pres, std::size_t i) {
  GroupElement g = identity_element(pres);
  g.exponents[i] = 1;
  return g;
}

GroupElement tail_element(const PcPresentation& pres, const FpVector& c) {
  GroupElement g = identity_element(pres);
  if (c.size() != pres.w_dim()) {
    throw std::invalid_argument("tail_element: dimension mismatch");
  }
  g.tail = c;
  return g;
}

GroupElement make_element(const PcPresentation& pres,
                          std::vector<std::uint64_t> exponents, FpVector tail) {
  GroupElement g{std::move(exponents), std::move(tail)};
  if (!is_valid_element(pres, g)) {
    throw std::invalid_argument("make_element: invalid normal form");
  }
  return g;
}

bool is_identity(const GroupElement& g) {
  return g.tail.is_zero() &&
         std::all_of(g.exponents.begin(), g.exponents.end(),
                     [](std::uint64_t a) { return a == 0; });
}

bool is_valid_element(const PcPresentation& pres, const GroupElement& g) {
  if (g.exponents.size() != pres.num_generators()) return false;
  if (g.tail.size() != pres.w_dim() || g.tail.field() != pres.field()) return false;
  for (std::size_t i = 0; i < g.exponents.size(); ++i) {
    if (g.exponents[i] >= pres.gen_modulus(i)) return false;
  }
  return true;
}

GroupElement random_element(const PcPresentation& pres, DeterministicRng& rng) {
  GroupElement g = identity_element(pres);
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    std::uint64_t a = 0;
    for (int digit = 0; digit < pres.generator(i).e; ++digit) {
      a = a * pres.field().p() + rng.below(pres.field().p());
    }
    g.exponents[i] = a;
  }
  for (std::size_t t = 0; t < pres.w_dim(); ++t) {
    g.tail.set(t, rng.below(pres.field().p()));
  }
  return g;
}

GroupElement multiply(const PcPresentation& pres, const GroupElement& g,
                      const GroupElement& h) {
  if (!is_valid_element(pres, g) || !is_valid_element(pres, h)) {
    throw std::invalid_argument("multiply: element does not belong to the presentation");
  }
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  GroupElement out = identity_element(pres);
  out.tail = g.tail + h.tail;
  for (std::size_t i = 0; i < r; ++i) {
    std::uint64_t s = g.exponents[i] + h.exponents[i];
    if (s >= pres.gen_modulus(i)) {
      s -= pres.gen_modulus(i);
      out.tail.add_scaled(pres.generator(i).power_tail, 1);
    }
    out.exponents[i] = s;
  }
  // collection correction: -sum_{i<j} a_j b_i w_ij (exponents mod p)
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint32_t b = static_cast<std::uint32_t>(h.exponents[i] % f.p());
    if (b == 0) continue;
    for (std::size_t j = i + 1; j < r; ++j) {
      const std::uint32_t a = static_cast<std::uint32_t>(g.exponents[j] % f.p());
      if (a == 0) continue;
      out.tail.add_scaled(pres.comm(i, j), f.neg(f.mul(a, b)));
    }
  }
  return out;
}

GroupElement inverse(const PcPresentation& pres, const GroupElement& g) {
  GroupElement inv = identity_element(pres);
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    inv.exponents[i] =
        g.exponents[i] == 0 ? 0 : pres.gen_modulus(i) - g.exponents[i];
  }
  // fix the tail so that g * inv = 1
  GroupElement probe = g;
  probe.tail = FpVector(pres.field(), pres.w_dim());
  const GroupElement prod = multiply(pres, probe, inv);
  inv.tail = FpVector(pres.field(), pres.w_dim()) - prod.tail - g.tail;
  return inv;
}

GroupElement power(const PcPresentation& pres, const GroupElement& g,
                   std::int64_t k) {
  if (k < 0) return inverse(pres, power(pres, g, -k));
  GroupElement result = identity_element(pres);
  GroupElement base = g;
  std::uint64_t e = static_cast<std::uint64_t>(k);
  while (e > 0) {
    if (e & 1) result = multiply(pres, result, base);
    base = multiply(pres, base, base);
    e >>= 1;
  }
  return result;
}

GroupElement commutator(const PcPresentation& pres, const GroupElement& g,
                        const GroupElement& h) {
  if (!is_valid_element(pres, g) || !is_valid_element(pres, h)) {
    throw std::invalid_argument("commutator: element does not belong to the presentation");
  }
  const FieldPrime f = pres.field();
  GroupElement out = identity_element(pres);
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    const std::uint32_t a = static_cast<std::uint32_t>(g.exponents[i] % f.p());
    for (std::size_t j = i + 1; j < pres.num_generators(); ++j) {
      const std::uint32_t b = static_cast<std::uint32_t>(h.exponents[j] % f.p());
      const std::uint32_t a_j = static_cast<std::uint32_t>(g.exponents[j] % f.p());
      const std::uint32_t b_i = static_cast<std::uint32_t>(h.exponents[i] % f.p());
      const std::uint32_t coef = f.sub(f.mul(a, b), f.mul(a_j, b_i));
      if (coef != 0) out.tail.add_scaled(pres.comm(i, j), coef);
    }
  }
  return out;
}

int element_order_exponent(const PcPresentation& pres, const GroupElement& g) {
  GroupElement y = g;
  int k = 0;
  while (!is_identity(y)) {
    y = power(pres, y, static_cast<std::int64_t>(pres.field().p()));
    ++k;
    if (k > 70) throw std::logic_error("element_order_exponent: runaway order");
  }
  return k;
}

StandardSubgroup::StandardSubgroup(const PcPresentation& pres,
                                   std::vector<int> divisibility,
                                   FpMatrix digit_conditions,
                                   FpMatrix tail_spanning)
    : m_(std::move(divisibility)),
      digit_conditions_(std::move(digit_conditions)),
      tail_basis_(pres.field(), 0, pres.w_dim()) {
  const std::size_t r = pres.num_generators();
  if (m_.size() != r || digit_conditions_.cols() != r) {
    throw std::invalid_argument("StandardSubgroup: dimension mismatch");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (m_[i] < 0 || m_[i] > pres.generator(i).e) {
      throw std::invalid_argument("StandardSubgroup: bad divisibility exponent");
    }
  }
  RrefResult red = rref(tail_spanning);
  FpMatrix basis(pres.field(), red.rank, pres.w_dim());
  for (std::size_t i = 0; i < red.rank; ++i) basis.set_row(i, red.rref.row_vector(i));
  tail_basis_ = std::move(basis);
}

bool StandardSubgroup::contains(const PcPresentation& pres,
                                const GroupElement& g) const {
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  FpVector digits(f, r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint64_t mod = pow_u64(f.p(), m_[i]);
    if (g.exponents[i] % mod != 0) return false;
    digits.set(i, static_cast<std::uint32_t>((g.exponents[i] / mod) % f.p()));
  }
  if (digit_conditions_.rows() > 0) {
    for (std::size_t row = 0; row < digit_conditions_.rows(); ++row) {
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i < r; ++i) {
        acc = f.add(acc, f.mul(digit_conditions_.at(row, i), digits[i]));
      }
      if (acc != 0) return false;
    }
  }
  return in_row_span(tail_basis_, g.tail);
}

namespace {

// digit conditions augmented with rows pinning r_i = 0 wherever no digit
// freedom exists (m_i = e_i)
FpMatrix augmented_digit_system(const PcPresentation& pres,
                                const std::vector<int>& m,
                                const FpMatrix& digit_conditions) {
  const std::size_t r = pres.num_generators();
  std::vector<FpVector> rows;
  for (std::size_t row = 0; row < digit_conditions.rows(); ++row) {
    rows.push_back(digit_conditions.row_vector(row));
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (m[i] == pres.generator(i).e) {
      FpVector pin(pres.field(), r);
      pin.set(i, 1);
      rows.push_back(std::move(pin));
    }
  }
  return FpMatrix::from_rows(pres.field(), r, rows);
}

}  // namespace

int StandardSubgroup::order_exponent(const PcPresentation& pres) const {
  const std::size_t r = pres.num_generators();
  const FpMatrix sys = augmented_digit_system(pres, m_, digit_conditions_);
  const std::size_t digit_freedom = r - rank(sys);
  int exp = static_cast<int>(digit_freedom) + static_cast<int>(tail_basis_.rows());
  for (std::size_t i = 0; i < r; ++i) {
    const int h = pres.generator(i).e - m_[i];
    if (h >= 1) exp += h - 1;
  }
  return exp;
}

std::vector<GroupElement> StandardSubgroup::generators(
    const PcPresentation& pres) const {
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  std::vector<GroupElement> out;

  const FpMatrix sys = augmented_digit_system(pres, m_, digit_conditions_);
  const LinearSolution hom = solve_linear(sys, FpVector(f, sys.rows()));
  for (const FpVector& basis_vec : hom.nullspace) {
    GroupElement g = identity_element(pres);
    for (std::size_t i = 0; i < r; ++i) {
      g.exponents[i] =
          (pow_u64(f.p(), m_[i]) * basis_vec[i]) % pres.gen_modulus(i);
    }
    out.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (pres.generator(i).e - m_[i] >= 2) {
      GroupElement g = identity_element(pres);
      g.exponents[i] = pow_u64(f.p(), m_[i] + 1);
      out.push_back(std::move(g));
    }
  }
  for (std::size_t row = 0; row < tail_basis_.rows(); ++row) {
    out.push_back(tail_element(pres, tail_basis_.row_vector(row)));
  }
  return out;
}

bool subgroup_leq(const PcPresentation& pres, const StandardSubgroup& s1,
                  const StandardSubgroup& s2) {
  for (const GroupElement& g : s1.generators(pres)) {
    if (!s2.contains(pres, g)) return false;
  }
  return true;
}

SubgroupRel subgroup_compare(const PcPresentation& pres,
                             const StandardSubgroup& s1,
                             const StandardSubgroup& s2) {
  const bool le = subgroup_leq(pres, s1, s2);
  const bool ge = subgroup_leq(pres, s2, s1);
  if (le && ge) return SubgroupRel::Equal;
  if (le) return SubgroupRel::ProperSubset;
  if (ge) return SubgroupRel::ProperSuperset;
  return SubgroupRel::Incomparable;
}

StandardSubgroup derived_subgroup(const PcPresentation& pres) {
  const std::size_t r = pres.num_generators();
  std::vector<int> m(r);
  for (std::size_t i = 0; i < r; ++i) m[i] = pres.generator(i).e;
  std::vector<FpVector> comm_rows;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) comm_rows.push_back(pres.comm(i, j));
  }
  return StandardSubgroup(
      pres, std::move(m), FpMatrix(pres.field(), 0, r),
      FpMatrix::from_rows(pres.field(), pres.w_dim(), comm_rows));
}

StandardSubgroup center(const PcPresentation& pres) {
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  const std::size_t d = pres.w_dim();
  // commuting with every generator: for each j, sum_i a_i [g_i, g_j] = 0
  std::vector<FpVector> rows;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t t = 0; t < d; ++t) {
      FpVector row(f, r);
      for (std::size_t i = 0; i < r; ++i) {
        if (i < j) {
          row.set(i, pres.comm(i, j)[t]);
        } else if (i > j) {
          row.set(i, f.neg(pres.comm(j, i)[t]));
        }
      }
      if (!row.is_zero()) rows.push_back(std::move(row));
    }
  }
  return StandardSubgroup(pres, std::vector<int>(r, 0),
                          FpMatrix::from_rows(f, r, rows),
                          FpMatrix::identity(f, d));
}

StandardSubgroup agemo(const PcPresentation& pres) {
  const std::size_t r = pres.num_generators();
  std::vector<FpVector> tails;
  for (std::size_t i = 0; i < r; ++i) tails.push_back(pres.generator(i).power_tail);
  return StandardSubgroup(pres, std::vector<int>(r, 1),
                          FpMatrix(pres.field(), 0, r),
                          FpMatrix::from_rows(pres.field(), pres.w_dim(), tails));
}

StandardSubgroup frattini(const PcPresentation& pres) {
  const std::size_t r = pres.num_generators();
  std::vector<FpVector> tails;
  for (std::size_t i = 0; i < r; ++i) tails.push_back(pres.generator(i).power_tail);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) tails.push_back(pres.comm(i, j));
  }
  return StandardSubgroup(pres, std::vector<int>(r, 1),
                          FpMatrix(pres.field(), 0, r),
                          FpMatrix::from_rows(pres.field(), pres.w_dim(), tails));
}

StandardSubgroup omega(const PcPresentation& pres, int k) {
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  const std::size_t d = pres.w_dim();
  if (k < 0) throw std::invalid_argument("omega: k must be nonnegative");
  std::vector<int> m(r);
  for (std::size_t i = 0; i < r; ++i) m[i] = std::max(0, pres.generator(i).e - k);
  if (k == 0) {
    return StandardSubgroup(pres, std::move(m), FpMatrix(f, 0, r),
                            FpMatrix(f, 0, d));
  }
  // g^(p^k) lands on sum_i q_i w_i with q_i the digit above the divisibility
  // threshold; membership needs that tail to vanish
  std::vector<FpVector> rows;
  for (std::size_t t = 0; t < d; ++t) {
    FpVector row(f, r);
    for (std::size_t i = 0; i < r; ++i) {
      if (pres.generator(i).e >= k) row.set(i, pres.generator(i).power_tail[t]);
    }
    if (!row.is_zero()) rows.push_back(std::move(row));
  }
  return StandardSubgroup(pres, std::move(m), FpMatrix::from_rows(f, r, rows),
                          FpMatrix::identity(f, d));
}

StandardSubgroup central_omega(const PcPresentation& pres, int k) {
  const FieldPrime f = pres.field();
  const std::size_t r = pres.num_generators();
  StandardSubgroup om = omega(pres, k);
  if (k == 0) return om;  // trivial subgroup
  StandardSubgroup z = center(pres);
  // the centre's conditions act on a_i mod p, which is the omega digit when
  // m_i = 0 and is forced to zero by divisibility otherwise
  std::vector<FpVector> rows;
  for (std::size_t row = 0; row < om.digit_conditions().rows(); ++row) {
    rows.push_back(om.digit_conditions().row_vector(row));
  }
  for (std::size_t row = 0; row < z.digit_conditions().rows(); ++row) {
    FpVector v = z.digit_conditions().row_vector(row);
    for (std::size_t i = 0; i < r; ++i) {
      if (om.divisibility()[i] >= 1) v.set(i, 0);
    }
    if (!v.is_zero()) rows.push_back(std::move(v));
  }
  return StandardSubgroup(pres, om.divisibility(),
                          FpMatrix::from_rows(f, r, rows),
                          FpMatrix::identity(f, pres.w_dim()));
}

bool is_special(const PcPresentation& pres) {
  const StandardSubgroup gp = agemo(pres);
  const StandardSubgroup der = derived_subgroup(pres);
  const StandardSubgroup z = center(pres);
  return subgroup_leq(pres, gp, der) &&
         subgroup_compare(pres, der, z) == SubgroupRel::Equal;
}

bool purely_nonabelian_certificate(const PcPresentation& pres) {
  return subgroup_leq(pres, center(pres), frattini(pres));
}

}  // namespace abelaut

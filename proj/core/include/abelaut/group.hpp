#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abelaut/linalg.hpp"
#include "abelaut/rng.hpp"
#include "abelaut/wedge.hpp"

namespace abelaut {

/// One polycyclic generator: it satisfies g^(p^e) = w(power_tail), where the
/// tail lives in the central elementary abelian subgroup W = GF(p)^d.
struct Generator {
  std::string name;
  int e = 1;
  FpVector power_tail;
};

/// Power-commutator presentation for the groups handled here: nilpotence
/// class at most 2, all commutators in a central tail W of exponent p,
/// [g_i, g_j] = w(comm(i,j)) for i < j, g_i^(p^e_i) = w(power_tail_i).
/// Such data always presents a consistent group; group order is
/// p^(sum e_i + d).
class PcPresentation {
 public:
  PcPresentation(FieldPrime field, std::vector<Generator> generators,
                 std::size_t w_dim, std::vector<FpVector> comm_table);

  FieldPrime field() const { return field_; }
  std::size_t num_generators() const { return gens_.size(); }
  std::size_t w_dim() const { return w_dim_; }
  const Generator& generator(std::size_t i) const { return gens_[i]; }
  int generator_index(const std::string& name) const;  // -1 if absent

  /// p^{e_i}
  std::uint64_t gen_modulus(std::size_t i) const { return moduli_[i]; }

  /// [g_i, g_j] tail for i < j.
  const FpVector& comm(std::size_t i, std::size_t j) const;

  /// log_p |G| = sum e_i + d
  int order_exponent() const;

  /// True when the commutator tails span all of W; the groups built by the
  /// constructions all have W = G', which several Hom computations rely on.
  bool tail_spanned_by_commutators() const;

  bool operator==(const PcPresentation& o) const;

 private:
  FieldPrime field_;
  std::vector<Generator> gens_;
  std::size_t w_dim_;
  std::vector<FpVector> comm_;  // pair_index(r, i, j) order
  std::vector<std::uint64_t> moduli_;
};

/// Normal form: g_1^{a_1} ... g_r^{a_r} w(c) with a_i in [0, p^{e_i}).
struct GroupElement {
  std::vector<std::uint64_t> exponents;
  FpVector tail;

  bool operator==(const GroupElement& o) const {
    return exponents == o.exponents && tail == o.tail;
  }
};

GroupElement identity_element(const PcPresentation& pres);
GroupElement generator_element(const PcPresentation& pres, std::size_t i);
GroupElement tail_element(const PcPresentation& pres, const FpVector& c);
GroupElement make_element(const PcPresentation& pres,
                          std::vector<std::uint64_t> exponents, FpVector tail);
bool is_identity(const GroupElement& g);
bool is_valid_element(const PcPresentation& pres, const GroupElement& g);
GroupElement random_element(const PcPresentation& pres, DeterministicRng& rng);

/// Collection product. Exponents add coordinate-wise with carry q_i into the
/// tail via w_i; the interleaving correction is -sum_{i<j} a_j b_i w_ij.
GroupElement multiply(const PcPresentation& pres, const GroupElement& g,
                      const GroupElement& h);
GroupElement inverse(const PcPresentation& pres, const GroupElement& g);
GroupElement power(const PcPresentation& pres, const GroupElement& g,
                   std::int64_t k);
GroupElement commutator(const PcPresentation& pres, const GroupElement& g,
                        const GroupElement& h);

/// Least k with g^(p^k) = 1.
int element_order_exponent(const PcPresentation& pres, const GroupElement& g);

/// Characteristic subgroups of the engine's groups all have the product shape
/// A x C: an exponent-vector part A cut out by per-coordinate divisibility
/// p^{m_i} | a_i plus GF(p)-linear conditions on the digits
/// r_i = (a_i / p^{m_i}) mod p, and a tail subspace C <= W.
class StandardSubgroup {
 public:
  StandardSubgroup(const PcPresentation& pres, std::vector<int> divisibility,
                   FpMatrix digit_conditions, FpMatrix tail_spanning);

  bool contains(const PcPresentation& pres, const GroupElement& g) const;
  int order_exponent(const PcPresentation& pres) const;  // log_p |S|
  std::vector<GroupElement> generators(const PcPresentation& pres) const;

  const std::vector<int>& divisibility() const { return m_; }
  const FpMatrix& digit_conditions() const { return digit_conditions_; }
  const FpMatrix& tail_basis() const { return tail_basis_; }

 private:
  std::vector<int> m_;
  FpMatrix digit_conditions_;
  FpMatrix tail_basis_;  // RREF
};

enum class SubgroupRel { Equal, ProperSubset, ProperSuperset, Incomparable };

SubgroupRel subgroup_compare(const PcPresentation& pres,
                             const StandardSubgroup& s1,
                             const StandardSubgroup& s2);
bool subgroup_leq(const PcPresentation& pres, const StandardSubgroup& s1,
                  const StandardSubgroup& s2);

StandardSubgroup derived_subgroup(const PcPresentation& pres);
StandardSubgroup center(const PcPresentation& pres);
StandardSubgroup frattini(const PcPresentation& pres);
StandardSubgroup agemo(const PcPresentation& pres);  ///< G^p
StandardSubgroup omega(const PcPresentation& pres, int k);
/// Z(G) intersect Omega_k(G); images of a generator of exponent-height k
/// under a central hom range over exactly this subgroup.
StandardSubgroup central_omega(const PcPresentation& pres, int k);

/// G^p <= G' = Z(G).
bool is_special(const PcPresentation& pres);
/// Z(G) <= Phi(G); sufficient for G purely non-abelian.
bool purely_nonabelian_certificate(const PcPresentation& pres);

}  // namespace abelaut

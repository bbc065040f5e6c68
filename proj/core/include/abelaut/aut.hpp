#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelaut/constructions.hpp"
#include "abelaut/group.hpp"
#include "abelaut/tat.hpp"

namespace abelaut {

/// An element of Hom(G, Z(G)), stored as the generator images. A valid hom
/// needs every image central with z_i^(p^e_i) = 1; it kills W, which equals
/// G' for the groups built here (checked: commutator tails span W).
struct CentralHom {
  std::vector<GroupElement> images;
};

CentralHom make_central_hom(const PcPresentation& pres,
                            std::vector<GroupElement> images);
/// No validation; for negative tests only.
CentralHom unchecked_central_hom(std::vector<GroupElement> images);
bool central_hom_valid(const PcPresentation& pres, const CentralHom& hom);

GroupElement evaluate_hom(const PcPresentation& pres, const CentralHom& hom,
                          const GroupElement& g);

CentralHom zero_hom(const PcPresentation& pres);
CentralHom p_power_hom(const PcPresentation& pres);  ///< x -> x^p
bool is_zero_hom(const CentralHom& hom);
bool hom_equal(const CentralHom& a, const CentralHom& b);

/// Pointwise sum: g^(a+b) = g^a g^b.
CentralHom hom_add(const PcPresentation& pres, const CentralHom& a,
                   const CentralHom& b);
CentralHom hom_scale(const PcPresentation& pres, const CentralHom& a,
                     std::uint32_t c);
/// Composition a then b: g -> b(a(g)).
CentralHom compose_homs(const PcPresentation& pres, const CentralHom& a,
                        const CentralHom& b);
/// Circle operation a + b + ab, mirroring composition of 1+a and 1+b.
CentralHom circle_homs(const PcPresentation& pres, const CentralHom& a,
                       const CentralHom& b);

/// Order of the hom in the circle group, as log_p.
int circle_order_exponent(const PcPresentation& pres, const CentralHom& hom);

/// Spanning data for (Hom(G, Z(G)), +): slot i carries generators of
/// T_i = {z in Z : z^(p^e_i) = 1}, and Hom is the direct product of the T_i.
struct HomSpace {
  std::vector<StandardSubgroup> slots;       ///< T_i per generator
  std::vector<CentralHom> spanning;          ///< one hom per slot generator
  int order_exponent = 0;                    ///< log_p |Hom|
};

HomSpace hom_space(const PcPresentation& pres);

/// Action of 1 + hom on G/Phi(G); the endomorphism is bijective iff this is
/// invertible.
FpMatrix hom_induced_matrix(const PcPresentation& pres, const CentralHom& hom);
bool hom_is_bijective(const PcPresentation& pres, const CentralHom& hom);

struct Automorphism {
  CentralHom gamma;
};

/// The endomorphism g -> g * gamma(g); throws NotBijective if it is not an
/// automorphism.
Automorphism to_automorphism(const PcPresentation& pres, const CentralHom& hom);
GroupElement apply_automorphism(const PcPresentation& pres,
                                const Automorphism& phi, const GroupElement& g);

/// Surviving block of the induced action on the relevant quotient: the
/// central-product matrix [[alpha, lambda], [0, mu]] on G/G', or the
/// extension matrix [[tau, sigma], [0, alpha]] on G/Phi.
struct Block {
  FpMatrix alpha;
  FpVector vec;          ///< lambda (central product) or sigma (extension)
  std::uint32_t scalar;  ///< mu or tau
};

struct BlockSolveReport {
  std::vector<Block> blocks;  ///< deduplicated surviving blocks
  std::uint64_t block_count = 0;
  u128 search_space = 0;  ///< |GL(n, p)| swept for the alpha part
  double elapsed_ms = 0;
};

/// All (alpha, lambda, mu) with alpha in GL(V), K invariant, and the p-power
/// equivariance of the central product group; automorphisms correspond to
/// blocks with mu != 0. Reuses the partitioned centralizer walk.
BlockSolveReport solve_central_product_blocks(const GroupArtifact& g,
                                              const CentralizerOptions& opt = {});

/// All (tau, sigma, alpha) compatible with the extension group's relations
/// (power rows, y-power row, commutator rows), tau != 0.
BlockSolveReport solve_extension_blocks(const GroupArtifact& g,
                                        const CentralizerOptions& opt = {});

struct WitnessPair {
  CentralHom gamma;
  CentralHom delta;
  std::size_t generator_index = 0;
  GroupElement gamma_delta_value;  ///< compose(gamma,delta) on that generator
  GroupElement delta_gamma_value;
};

struct AutCertificate {
  Construction construction = Construction::Special;
  bool aut_equals_autc = false;
  std::string method;
  AutStructure structure = AutStructure::ElementaryAbelian;
  int autc_order_exponent = 0;
  bool autc_order_verified = false;  ///< every hom certified bijective
  std::optional<WitnessPair> witness;
  std::optional<CentralizerReport> tat_centralizer;
  std::optional<BlockSolveReport> block_report;
};

/// Decides the structure of (Hom, circle) from spanning pairs; biadditivity
/// of composition makes the spanning checks conclusive. Throws Inconclusive
/// if abelianness holds but neither the elementary-abelian sufficient test
/// nor an exponent witness settles the refinement.
AutStructure aut_structure(const PcPresentation& pres, const HomSpace& homs,
                           std::optional<WitnessPair>& witness_out);

/// Certify Aut(G) = Aut_c(G) for the given construction and determine the
/// structure and order of the automorphism group.
AutCertificate certify_automorphisms(const GroupArtifact& g,
                                     const CentralizerOptions& opt = {});

nlohmann::json certificate_to_json(const AutCertificate& cert);

}  // namespace abelaut

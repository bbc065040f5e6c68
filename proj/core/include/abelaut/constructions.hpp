#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "abelaut/group.hpp"
#include "abelaut/tat.hpp"

namespace abelaut {

enum class Construction { Special, Zurek, CentralProduct, Extension };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

enum class AutStructure { ElementaryAbelian, Abelian, Nonabelian };
std::string aut_structure_name(AutStructure s);

enum class LatticeShape {
  DerivedEqFrattiniEqCenter,  // G' = Phi = Z
  DerivedLtFrattiniEqCenter,  // G' < Phi = Z
  DerivedEqFrattiniLtCenter,  // G' = Phi < Z
  Other
};
std::string lattice_name(LatticeShape s);
LatticeShape classify_lattice(const PcPresentation& pres);

/// What the construction promises about its automorphism group.
struct ClaimSheet {
  bool aut_equals_autc = true;
  AutStructure structure = AutStructure::ElementaryAbelian;
  LatticeShape lattice = LatticeShape::DerivedEqFrattiniEqCenter;
  bool purely_nonabelian_expected = true;
};

ClaimSheet claim_sheet(Construction c);

/// A built group together with its provenance.
struct GroupArtifact {
  PcPresentation pres;
  Construction tag;
  TatCandidate tat;
};

// The assemble_* functions wire up the presentation without checking that
// the input is a TAT, so tests can build negative controls. The build_*
// functions verify is_tat first and are the public path.

/// G = <x : x^p = x f, K>. Generators x1..xn of height 1 with tails the rows
/// of f; W is the coset representative space of the quotient, commutators
/// are the projected wedges.
PcPresentation assemble_special(const TatCandidate& t);

/// Same relations with p^2-th powers: x^{p^2} = x f.
PcPresentation assemble_zurek(const TatCandidate& t);

/// Central product H<z> with z of order p^2 and z^p amalgamated to the first
/// canonical representative outside K + Vf.
PcPresentation assemble_central_product(const TatCandidate& t);

/// Extension of the special group by y with [x, y] = x gamma and
/// y^{p^m} = c0 outside the image of f. Requires K = {0} and m > 1;
/// gamma defaults to f and must be injective and not of the inner shape
/// x -> x ^ v.
PcPresentation assemble_extension(const TatCandidate& t, int m,
                                  const std::optional<FpMatrix>& gamma);

GroupArtifact build_special(const TatCandidate& t,
                            const CentralizerOptions& opt = {});
GroupArtifact build_zurek(const TatCandidate& t,
                          const CentralizerOptions& opt = {});
GroupArtifact build_central_product(const TatCandidate& t,
                                    const CentralizerOptions& opt = {});
GroupArtifact build_extension(const TatCandidate& t, int m = 2,
                              std::optional<FpMatrix> gamma = std::nullopt,
                              const CentralizerOptions& opt = {});

/// Lexicographically first canonical representative (compressed coordinates)
/// outside the row span of `compressed_span`. Throws when the span is full.
FpVector first_rep_outside(const QuotientSpace& k, const FpMatrix& compressed_span);

/// True iff gamma has the inner shape x -> x ^ v for some v.
bool is_inner_shaped(const FpMatrix& gamma);

nlohmann::json group_to_json(const GroupArtifact& g);
GroupArtifact group_from_json(const nlohmann::json& j);

}  // namespace abelaut

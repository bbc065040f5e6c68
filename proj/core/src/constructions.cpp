#include "abelaut/constructions.hpp"

#include <stdexcept>

#include "abelaut/errors.hpp"

namespace abelaut {

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Special: return "special";
    case Construction::Zurek: return "zurek";
    case Construction::CentralProduct: return "central_product";
    case Construction::Extension: return "extension";
  }
  return "?";
}

Construction construction_from_name(const std::string& name) {
  if (name == "special") return Construction::Special;
  if (name == "zurek") return Construction::Zurek;
  if (name == "central_product") return Construction::CentralProduct;
  if (name == "extension") return Construction::Extension;
  throw std::invalid_argument("unknown construction: " + name);
}

std::string aut_structure_name(AutStructure s) {
  switch (s) {
    case AutStructure::ElementaryAbelian: return "elementary_abelian";
    case AutStructure::Abelian: return "abelian";
    case AutStructure::Nonabelian: return "nonabelian";
  }
  return "?";
}

std::string lattice_name(LatticeShape s) {
  switch (s) {
    case LatticeShape::DerivedEqFrattiniEqCenter: return "G'=Phi=Z";
    case LatticeShape::DerivedLtFrattiniEqCenter: return "G'<Phi=Z";
    case LatticeShape::DerivedEqFrattiniLtCenter: return "G'=Phi<Z";
    case LatticeShape::Other: return "other";
  }
  return "?";
}

LatticeShape classify_lattice(const PcPresentation& pres) {
  const StandardSubgroup der = derived_subgroup(pres);
  const StandardSubgroup phi = frattini(pres);
  const StandardSubgroup z = center(pres);
  const SubgroupRel dp = subgroup_compare(pres, der, phi);
  const SubgroupRel pz = subgroup_compare(pres, phi, z);
  if (dp == SubgroupRel::Equal && pz == SubgroupRel::Equal) {
    return LatticeShape::DerivedEqFrattiniEqCenter;
  }
  if (dp == SubgroupRel::ProperSubset && pz == SubgroupRel::Equal) {
    return LatticeShape::DerivedLtFrattiniEqCenter;
  }
  if (dp == SubgroupRel::Equal && pz == SubgroupRel::ProperSubset) {
    return LatticeShape::DerivedEqFrattiniLtCenter;
  }
  return LatticeShape::Other;
}

ClaimSheet claim_sheet(Construction c) {
  switch (c) {
    case Construction::Special:
      return {true, AutStructure::ElementaryAbelian,
              LatticeShape::DerivedEqFrattiniEqCenter, true};
    case Construction::Zurek:
      return {true, AutStructure::Nonabelian,
              LatticeShape::DerivedLtFrattiniEqCenter, true};
    case Construction::CentralProduct:
      return {true, AutStructure::ElementaryAbelian,
              LatticeShape::DerivedEqFrattiniLtCenter, false};
    case Construction::Extension:
      return {true, AutStructure::Abelian,
              LatticeShape::DerivedLtFrattiniEqCenter, true};
  }
  throw std::logic_error("claim_sheet: bad tag");
}

namespace {

std::string x_name(std::size_t i) { return "x" + std::to_string(i + 1); }

// generators x1..xn of height e with tails the compressed rows of f, and the
// projected wedges as commutators
PcPresentation assemble_power_group(const TatCandidate& t, int e) {
  const FieldPrime f = t.field();
  const std::size_t n = t.n();
  const QuotientSpace& k = t.k();
  const std::size_t d = k.rep_dim();

  std::vector<Generator> gens;
  gens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    gens.push_back({x_name(i), e, k.compress(t.f().row_vector(i))});
  }
  std::vector<FpVector> comm;
  comm.reserve(wedge_dim(n));
  for (std::size_t i = 0; i < n; ++i) {
    FpVector ei(f, n);
    ei.set(i, 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      FpVector ej(f, n);
      ej.set(j, 1);
      comm.push_back(k.compress(k.project(wedge(ei, ej))));
    }
  }
  return PcPresentation(f, std::move(gens), d, std::move(comm));
}

}  // namespace

PcPresentation assemble_special(const TatCandidate& t) {
  return assemble_power_group(t, 1);
}

PcPresentation assemble_zurek(const TatCandidate& t) {
  return assemble_power_group(t, 2);
}

FpVector first_rep_outside(const QuotientSpace& k, const FpMatrix& compressed_span) {
  const FieldPrime f = k.field();
  const std::size_t d = k.rep_dim();
  if (compressed_span.cols() != d) {
    throw std::invalid_argument("first_rep_outside: span must use compressed coordinates");
  }
  const FpMatrix basis = rref(compressed_span).rref;
  std::vector<std::uint32_t> digits(d, 0);
  while (true) {
    // next vector in lexicographic order (first coordinate most significant)
    std::size_t i = d;
    bool overflow = true;
    while (i > 0) {
      --i;
      if (++digits[i] < f.p()) {
        overflow = false;
        break;
      }
      digits[i] = 0;
    }
    if (overflow) {
      throw AmalgamObstruction("first_rep_outside: span covers the whole space");
    }
    FpVector candidate(f, d);
    for (std::size_t c = 0; c < d; ++c) candidate.set(c, digits[c]);
    if (!in_row_span(basis, candidate)) return candidate;
  }
}

PcPresentation assemble_central_product(const TatCandidate& t) {
  const FieldPrime f = t.field();
  const std::size_t n = t.n();
  const QuotientSpace& k = t.k();
  const std::size_t d = k.rep_dim();
  if (d <= n) {
    throw AmalgamObstruction(
        "central product needs K + Vf proper, i.e. dim K + n < C(n,2)");
  }

  FpMatrix compressed_f(f, n, d);
  for (std::size_t i = 0; i < n; ++i) {
    compressed_f.set_row(i, k.compress(t.f().row_vector(i)));
  }
  const FpVector c0 = first_rep_outside(k, compressed_f);

  const PcPresentation base = assemble_special(t);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(base.generator(i));
  gens.push_back({"z", 1, c0});

  std::vector<FpVector> comm;
  for (std::size_t i = 0; i < n + 1; ++i) {
    for (std::size_t j = i + 1; j < n + 1; ++j) {
      if (j < n) {
        comm.push_back(base.comm(i, j));
      } else {
        comm.push_back(FpVector(f, d));  // z is central
      }
    }
  }
  return PcPresentation(f, std::move(gens), d, std::move(comm));
}

bool is_inner_shaped(const FpMatrix& gamma) {
  const FieldPrime f = gamma.field();
  const std::size_t n = gamma.rows();
  const std::size_t dim = wedge_dim(n);
  if (gamma.cols() != dim) {
    throw std::invalid_argument("is_inner_shaped: gamma must be n x C(n,2)");
  }
  // solve gamma_i = e_i ^ v for v: coordinate (a,b) of e_i ^ v is
  // delta_{ia} v_b - delta_{ib} v_a
  FpMatrix sys(f, n * dim, n);
  FpVector rhs(f, n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b, ++idx) {
        const std::size_t row = i * dim + idx;
        if (a == i) sys.set(row, b, 1);
        if (b == i) sys.set(row, a, f.neg(1));
        rhs.set(row, gamma.at(i, idx));
      }
    }
  }
  return solve_linear(sys, rhs).consistent;
}

PcPresentation assemble_extension(const TatCandidate& t, int m,
                                  const std::optional<FpMatrix>& gamma_opt) {
  const FieldPrime f = t.field();
  const std::size_t n = t.n();
  const std::size_t dim = wedge_dim(n);
  if (t.k().k_dim() != 0) {
    throw InvalidTat("extension construction needs K = {0}");
  }
  if (m < 2) throw std::invalid_argument("extension construction needs m > 1");

  const FpMatrix gamma = gamma_opt.value_or(t.f());
  if (gamma.rows() != n || gamma.cols() != dim || gamma.field() != f) {
    throw BadGamma("gamma must be an n x C(n,2) matrix over GF(p)");
  }
  if (is_inner_shaped(gamma)) {
    throw BadGamma("gamma has the inner shape x -> x ^ v");
  }
  if (rank(gamma) != n) throw BadGamma("gamma is not injective");

  const FpVector c0 = first_rep_outside(t.k(), t.f());

  std::vector<Generator> gens;
  gens.push_back({"y", m, c0});
  for (std::size_t i = 0; i < n; ++i) {
    gens.push_back({x_name(i), 1, t.f().row_vector(i)});
  }

  // generator order (y, x1..xn): comm(0, 1+i) = [y, x_i] = -gamma_i
  std::vector<FpVector> comm;
  for (std::size_t i = 0; i < n; ++i) {
    comm.push_back(gamma.row_vector(i).scaled(f.p() - 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    FpVector ei(f, n);
    ei.set(i, 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      FpVector ej(f, n);
      ej.set(j, 1);
      comm.push_back(wedge(ei, ej));
    }
  }
  return PcPresentation(f, std::move(gens), dim, std::move(comm));
}

namespace {

void require_tat(const TatCandidate& t, const CentralizerOptions& opt) {
  if (!is_tat(t, opt)) {
    throw InvalidTat("construction input failed TAT verification");
  }
}

}  // namespace

GroupArtifact build_special(const TatCandidate& t, const CentralizerOptions& opt) {
  require_tat(t, opt);
  return {assemble_special(t), Construction::Special, t};
}

GroupArtifact build_zurek(const TatCandidate& t, const CentralizerOptions& opt) {
  require_tat(t, opt);
  return {assemble_zurek(t), Construction::Zurek, t};
}

GroupArtifact build_central_product(const TatCandidate& t,
                                    const CentralizerOptions& opt) {
  require_tat(t, opt);
  return {assemble_central_product(t), Construction::CentralProduct, t};
}

GroupArtifact build_extension(const TatCandidate& t, int m,
                              std::optional<FpMatrix> gamma,
                              const CentralizerOptions& opt) {
  require_tat(t, opt);
  return {assemble_extension(t, m, gamma), Construction::Extension, t};
}

nlohmann::json group_to_json(const GroupArtifact& g) {
  nlohmann::json j;
  j["schema"] = 1;
  j["p"] = g.pres.field().p();
  j["construction"] = construction_name(g.tag);
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t i = 0; i < g.pres.num_generators(); ++i) {
    const Generator& gen = g.pres.generator(i);
    gens.push_back({{"name", gen.name},
                    {"e", gen.e},
                    {"power_tail", to_json(gen.power_tail)}});
  }
  j["generators"] = std::move(gens);
  j["w_dim"] = g.pres.w_dim();
  nlohmann::json comm = nlohmann::json::array();
  for (std::size_t i = 0; i < g.pres.num_generators(); ++i) {
    for (std::size_t jj = i + 1; jj < g.pres.num_generators(); ++jj) {
      comm.push_back({{"i", i + 1}, {"j", jj + 1}, {"tail", to_json(g.pres.comm(i, jj))}});
    }
  }
  j["comm_table"] = std::move(comm);
  j["tat"] = tat_to_json(g.tat);
  return j;
}

GroupArtifact group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("generators") ||
      !j.contains("w_dim") || !j.contains("comm_table") || !j.contains("tat") ||
      !j.contains("construction")) {
    throw std::invalid_argument("group JSON: missing required fields");
  }
  const FieldPrime field(j.at("p").get<std::uint32_t>());
  const std::size_t d = j.at("w_dim").get<std::size_t>();
  std::vector<Generator> gens;
  for (const auto& gj : j.at("generators")) {
    gens.push_back({gj.at("name").get<std::string>(), gj.at("e").get<int>(),
                    vector_from_json(field, gj.at("power_tail"))});
  }
  const std::size_t r = gens.size();
  std::vector<FpVector> comm(wedge_dim(r), FpVector(field, d));
  for (const auto& cj : j.at("comm_table")) {
    const std::size_t i = cj.at("i").get<std::size_t>();
    const std::size_t jj = cj.at("j").get<std::size_t>();
    if (i < 1 || jj <= i || jj > r) {
      throw std::invalid_argument("group JSON: bad commutator indices");
    }
    comm[pair_index(r, i - 1, jj - 1)] = vector_from_json(field, cj.at("tail"));
  }
  PcPresentation pres(field, std::move(gens), d, std::move(comm));
  return {std::move(pres), construction_from_name(j.at("construction").get<std::string>()),
          tat_from_json(j.at("tat"))};
}

}  // namespace abelaut

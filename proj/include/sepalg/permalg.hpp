#pragma once

#include "sepalg/gset.hpp"
#include "sepalg/tower.hpp"

namespace sepalg {

// A^G_X data: group, finite G-set and coefficient field.
struct PermutationAlgebraSpec {
  GroupRef group;
  GSet xset;
  FieldRef field;
};

struct PermutationAlgebra {
  StructureAlgebra algebra;     // k[X], pointwise product, permutation action
  SeparabilityWitness witness;  // e = sum_x x (x) x, re-verified exactly
};
PermutationAlgebra permutation_algebra(const PermutationAlgebraSpec& spec);

// Representation of a finite group by invertible matrices, one per generator.
struct GModule {
  GroupRef group;
  FieldRef field;
  size_t dim = 0;
  std::vector<Matrix> generator_matrices;
  std::vector<Matrix> element_matrices() const;  // relation-checked
};

GModule permutation_module(const GroupRef& g, const GSet& x, const FieldRef& field);

// Tate H^0(G; M): strict invariants modulo the image of the norm operator.
struct TateH0 {
  size_t invariant_dim = 0;
  size_t norm_image_dim = 0;
  size_t dim = 0;  // invariant_dim - norm_image_dim
};
TateH0 tate_h0(const GModule& m);

// For an algebra with installed action: the induced ring on invariants/norms.
struct TateH0Ring {
  TateH0 dims;
  StructureAlgebra ring;
  bool is_ground_field = false;  // quotient is k itself
};
TateH0Ring tate_h0_ring(const StructureAlgebra& a);

// Stable (Balmer) degree of A^G_X in the stable module category:
// max over order-p subgroups Q of |X^Q|. Below the oracle cutoff an
// independent subset search over the points, testing p | |common stabilizer|
// directly, is run and must agree.
struct StmodReport {
  int degree = 0;
  bool trivial_category = false;  // p does not divide |G|
  std::optional<Subgroup> maximizing_q;
  std::vector<uint32_t> witness_points;  // the Q-fixed points counted
  bool oracle_ran = false;
  int oracle_degree = -1;
};
StmodReport stmod_degree(const GSet& x, uint64_t p, size_t oracle_cutoff = 16);
StmodReport stmod_degree(const Subgroup& h, uint64_t p, size_t oracle_cutoff = 16);

// Orbit indices (per orbit_decomposition order) split by projectivity of the
// orbit summand k[G/Stab]: projective iff p does not divide |Stab|.
struct ProjectiveSplit {
  std::vector<size_t> nonprojective;
  std::vector<size_t> projective;
};
ProjectiveSplit strip_projective_summands(const GSet& x, uint64_t p);

// Full machine verification of the rank-one Galois picture for A^G_P.
struct GaloisVerificationReport {
  Subgroup p_subgroup;
  Subgroup normalizer;
  size_t weyl_order = 0;
  bool h_equals_tau = false;
  size_t weyl_orbit_count = 0;
  size_t free_orbit_count = 0;
  bool double_coset_ledger_ok = false;
  int stable_degree = 0;
  bool degree_equals_weyl_order = false;
  bool tate_pi0_is_k = false;
  bool ok = false;
};
GaloisVerificationReport verify_rank_one_galois(const GroupRef& g, uint64_t p,
                                                const FieldRef& field);

// The classification dictionary for p-rank one: one cover A^G_V per subgroup
// P <= V <= N, grouped by conjugacy of V/P in W.
struct RankOneCover {
  Subgroup v;
  size_t v_order = 0;
  size_t index_in_g = 0;     // |G/V| = dimension of the cover
  size_t w_set_size = 0;     // |W/(V/P)|
  size_t conjugacy_class = 0;  // class id of V/P among subgroups of W
};
struct RankOneClassificationReport {
  Subgroup p_subgroup;
  Subgroup normalizer;
  size_t weyl_order = 0;
  std::vector<RankOneCover> covers;
  size_t weyl_subgroup_count = 0;
  // Realized algebras A^G_V in cover order (with action, witness verified).
  std::vector<PermutationAlgebra> algebras;
};
RankOneClassificationReport classify_rank_one(const GroupRef& g, uint64_t p,
                                              const FieldRef& field);

// Galois data of Mod_G(k): N_p(G), the quotient group, and the predicate
// selecting the G-sets that index finite covers.
struct ModGGaloisData {
  Subgroup np;
  QuotientGroup quotient;
  bool accepts(const GSet& x) const;               // N_p(G) acts trivially
  size_t modg_degree(const GSet& x) const;         // |X| for accepted covers
};
ModGGaloisData modg_galois_data(const GroupRef& g, uint64_t p);

}  // namespace sepalg

#pragma once

#include "sepalg/idempotents.hpp"

namespace sepalg {

// Total algebra over a commutative base, both over the same ground field.
struct RelativeAlgebra {
  StructureAlgebra base;
  StructureAlgebra total;
  Matrix structure_map;  // total.dim x base.dim, unital algebra hom
};

// Validates that the map is a unital algebra homomorphism.
RelativeAlgebra make_relative(StructureAlgebra base, StructureAlgebra total, Matrix structure_map);
// B over the ground field itself.
RelativeAlgebra over_ground_field(StructureAlgebra total);

// B (x)_R B as the quotient of B (x) B by the span of (r x) (x) y - x (x) (r y),
// with the two induced maps B -> B (x)_R B.
struct RelativeTensorSquare {
  StructureAlgebra algebra;
  Matrix left_map;    // x -> class(x (x) 1)
  Matrix right_map;   // y -> class(1 (x) y)
  Matrix mult_map;    // class(x (x) y) -> x y
};
RelativeTensorSquare relative_tensor_square(const RelativeAlgebra& rel);

// One tower step: finds the separability idempotent e of B over R inside
// B (x)_R B and returns A' = (1-e)(B (x)_R B) with the map x -> (1-e)(x (x) 1).
// The splitting B (x)_R B = B x A' with first projection mu is asserted.
struct SplittingStep {
  StructureAlgebra next;
  Matrix map_from_total;  // next.dim x total.dim
};
SplittingStep splitting_step(const RelativeAlgebra& rel);

// One stage of the splitting tower, tracked componentwise over the field
// components of the previous stage.
struct TowerStageComponent {
  std::string field_desc;          // residue field of the component
  size_t field_dim_over_ground;    // [component field : ground field]
  size_t fiber_dim;                // dim of the fiber over that field
};
struct TowerStage {
  size_t dim_over_ground = 0;
  std::vector<TowerStageComponent> components;
  std::optional<StructureAlgebra> materialized;  // over the ground field, small stages only
};
struct SplittingTowerRecord {
  std::vector<TowerStage> stages;  // stages[n] = A^[n]; stages[0] is the base
  int degree = 0;
};

// Iterates the splitting step from A^[0] = ground field, A^[1] = a until the
// zero algebra or max_steps (default dim + 1; exceeding it is a capacity
// error). Stages are materialized over the ground field up to materialize_cap.
SplittingTowerRecord splitting_tower(const StructureAlgebra& a, Rng& rng, int max_steps = -1,
                                     size_t materialize_cap = 512);

int balmer_degree(const StructureAlgebra& a, Rng& rng);

// Local degrees of the total algebra over an etale base, one per primitive
// idempotent of the base; global degree is the maximum.
struct DegreeFunction {
  struct Entry {
    std::string field_desc;
    int degree;
  };
  std::vector<Entry> local;
  int global = 0;
};
DegreeFunction degree_function(const RelativeAlgebra& rel, Rng& rng);

// Splits b along a retraction pair (g: b -> a, f: a -> b, g f = id): locates
// the idempotent e with g(e) = 1 via the primitive decomposition and returns
// C = (1-e) b with b = a x C.
StructureAlgebra split_retraction(const StructureAlgebra& b, const AlgebraMorphism& g,
                                  const AlgebraMorphism& f, Rng& rng);

struct GaloisCheckReport {
  bool ok = false;
  bool invariants_are_base = false;
  bool shear_is_isomorphism = false;
  bool nonzero = false;
  std::string detail;
};
// Strict-fixed-point Galois condition: invariants = base, the shear map
// a1 (x) a2 -> (a1 g(a2))_g is a linear isomorphism, and the algebra is
// nonzero.
GaloisCheckReport galois_check(const StructureAlgebra& a);

// Subalgebra fixed by every element of k_sub (a subgroup of the acting group).
StructureAlgebra fixed_subalgebra(const StructureAlgebra& a, const Subgroup& k_sub);

}  // namespace sepalg

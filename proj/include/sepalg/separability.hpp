#pragma once

#include "sepalg/structure_algebra.hpp"

namespace sepalg {

// Separability idempotent e in A (x) A, coordinates indexed i*dim + j.
// Houses the bimodule section sigma(a) = a*e and gamma = sigma(1) = e.
struct SeparabilityWitness {
  Vec e;
};

// A (x) A as an algebra; Koszul signs are built in when `a` is graded.
StructureAlgebra tensor_square(const StructureAlgebra& a);

// Solves { e : mu(e) = 1, (b (x) 1) e = (1 (x) b) e for all basis b }.
// Empty when infeasible. When solvable the solution is checked to be unique
// (zero-dimensional affine solution set) and idempotent.
// Usage error on non-commutative input.
std::optional<SeparabilityWitness> separability_idempotent(const StructureAlgebra& a);

// Graded version of the same system (graded-commutative input required).
// When a witness exists, the odd part must vanish and the even part must be
// etale; both are asserted.
std::optional<SeparabilityWitness> graded_separability_idempotent(const StructureAlgebra& a);

// Dimension of the affine solution space of the witness system (0 = unique);
// nullopt when the system is infeasible.
std::optional<size_t> witness_solution_space_dim(const StructureAlgebra& a, bool graded = false);

// True iff the trace form is nondegenerate; independent oracle agreeing with
// separability_idempotent solvability over a field.
bool etale_via_trace_form(const StructureAlgebra& a);

// mu(e) = 1, two-sided centrality, e*e = e; exact.
bool verify_witness(const StructureAlgebra& a, const SeparabilityWitness& w);

// Witness for a (x) b from witnesses of the factors.
SeparabilityWitness combine_tensor_witnesses(const StructureAlgebra& a,
                                             const SeparabilityWitness& wa,
                                             const StructureAlgebra& b,
                                             const SeparabilityWitness& wb);
// Witness for a x b from witnesses of the factors.
SeparabilityWitness combine_product_witnesses(const StructureAlgebra& a,
                                              const SeparabilityWitness& wa,
                                              const StructureAlgebra& b,
                                              const SeparabilityWitness& wb);

// Finite-dimensional module over an algebra, given by one action matrix per
// algebra basis vector.
struct AlgebraModule {
  size_t dim = 0;
  std::vector<Matrix> basis_action;
};

ValidationReport validate_module(const StructureAlgebra& a, const AlgebraModule& m);

// Builds xi_M = (1 (x) act)(gamma (x) 1) and checks that it sections the
// action map and is A-linear, both exactly.
bool counit_section_check(const StructureAlgebra& a, const SeparabilityWitness& w,
                          const AlgebraModule& m);

}  // namespace sepalg

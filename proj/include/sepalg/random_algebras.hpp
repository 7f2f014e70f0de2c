#pragma once

#include "sepalg/structure_algebra.hpp"

namespace sepalg {

// Seeded generators for randomized suites. All are valid commutative unital
// algebras by construction; a random change of basis hides the construction.

// Product of quotients k[x]/(f) with random monic f (not necessarily
// separable), dim in [1, max_dim].
StructureAlgebra random_commutative_algebra(const FieldRef& f, size_t max_dim, Rng& rng);

// Etale algebra of the given dimension: product of field extensions cut out
// by random irreducible polynomials. Finite fields only.
StructureAlgebra random_etale_algebra(const FieldRef& f, size_t dim, Rng& rng);

// Graded-commutative algebra with a nonzero odd part, dim <= max_dim.
StructureAlgebra random_graded_commutative_algebra(const FieldRef& f, size_t max_dim, Rng& rng);

Scalar random_scalar(const FieldRef& f, Rng& rng);
Matrix random_invertible(const FieldRef& f, size_t n, Rng& rng);

}  // namespace sepalg

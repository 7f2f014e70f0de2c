#pragma once

#include "sepalg/separability.hpp"

namespace sepalg {

// Quotient of an algebra by a two-sided ideal (the span must be verified as
// an ideal). projection maps old coordinates to quotient coordinates; section
// picks a representative.
struct QuotientData {
  StructureAlgebra algebra;
  Matrix projection;  // q x n
  Matrix section;     // n x q
};
QuotientData quotient_by_ideal(const StructureAlgebra& a, const std::vector<Vec>& ideal_span);

// Basis of the nilradical. Characteristic p: stabilized kernel of the
// iterated q-power Frobenius operator (F_q-linear). Characteristic 0:
// radical of the trace form.
std::vector<Vec> nilradical(const StructureAlgebra& a, Rng& rng);

// Complete list of primitive orthogonal idempotents, deterministically
// ordered. Pairwise products vanish and the sum is the unit; both asserted.
struct IdempotentDecomposition {
  std::vector<Vec> idempotents;
};
IdempotentDecomposition primitive_idempotents(const StructureAlgebra& a, Rng& rng);

// Newton lift e <- 3e^2 - 2e^3 of an approximate idempotent (idempotent
// modulo nilpotents) to an exact one.
Vec lift_idempotent(const StructureAlgebra& a, Vec e);

}  // namespace sepalg

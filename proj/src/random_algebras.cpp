#include "sepalg/random_algebras.hpp"

#include "sepalg/poly.hpp"

namespace sepalg {

Scalar random_scalar(const FieldRef& f, Rng& rng) {
  switch (f->kind()) {
    case Field::Kind::Prime:
      return Scalar::residue(f, rng.below(f->p()));
    case Field::Kind::Extension: {
      std::vector<uint64_t> coords(f->degree());
      for (auto& c : coords) c = rng.below(f->p());
      return Scalar::ext_coords(f, std::move(coords));
    }
    case Field::Kind::Rationals: {
      long num = static_cast<long>(rng.below(19)) - 9;
      long den = 1 + static_cast<long>(rng.below(4));
      return Scalar::of_mpq(f, mpq_class(num, den));
    }
  }
  return Scalar::zero(f);
}

Matrix random_invertible(const FieldRef& f, size_t n, Rng& rng) {
  while (true) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = random_scalar(f, rng);
    if (!m.determinant().is_zero()) return m;
  }
}

namespace {

Poly random_monic(const FieldRef& f, size_t deg, Rng& rng) {
  std::vector<Scalar> cs(deg + 1, Scalar::zero(f));
  for (size_t i = 0; i < deg; ++i) cs[i] = random_scalar(f, rng);
  cs[deg] = Scalar::one(f);
  return Poly(f, std::move(cs));
}

StructureAlgebra scrambled(const StructureAlgebra& a, Rng& rng) {
  if (a.dim() == 0) return a;
  return a.change_of_basis(random_invertible(a.field(), a.dim(), rng));
}

}  // namespace

StructureAlgebra random_commutative_algebra(const FieldRef& f, size_t max_dim, Rng& rng) {
  check_usage(max_dim >= 1, "dimension must be positive");
  size_t remaining = 1 + rng.below(max_dim);
  StructureAlgebra acc = StructureAlgebra::zero_algebra(f);
  bool first = true;
  while (remaining > 0) {
    size_t d = 1 + rng.below(std::min<size_t>(remaining, 3));
    StructureAlgebra block = StructureAlgebra::polynomial_quotient(random_monic(f, d, rng));
    acc = first ? std::move(block) : StructureAlgebra::direct_product(acc, block);
    first = false;
    remaining -= d;
  }
  return scrambled(acc, rng);
}

StructureAlgebra random_etale_algebra(const FieldRef& f, size_t dim, Rng& rng) {
  check_usage(f->is_finite(), "etale generator is for finite fields");
  check_usage(dim >= 1, "dimension must be positive");
  size_t remaining = dim;
  StructureAlgebra acc = StructureAlgebra::zero_algebra(f);
  bool first = true;
  while (remaining > 0) {
    size_t d = 1 + rng.below(std::min<size_t>(remaining, 3));
    Poly p = random_monic(f, d, rng);
    while (!poly_is_irreducible(p, rng)) p = random_monic(f, d, rng);
    StructureAlgebra block = StructureAlgebra::polynomial_quotient(p);
    acc = first ? std::move(block) : StructureAlgebra::direct_product(acc, block);
    first = false;
    remaining -= d;
  }
  return scrambled(acc, rng);
}

StructureAlgebra random_graded_commutative_algebra(const FieldRef& f, size_t max_dim, Rng& rng) {
  check_usage(max_dim >= 2, "graded generator needs dimension at least 2");
  // B[theta] with theta odd: theta^2 = 0, or any even element in char 2.
  size_t half = 1 + rng.below(max_dim / 2);
  StructureAlgebra b = random_commutative_algebra(f, half, rng);
  size_t n = b.dim();
  Vec theta_sq = vec_zero(f, n);
  if (f->characteristic() == 2 && rng.below(2) == 0) {
    for (size_t i = 0; i < n; ++i) theta_sq[i] = random_scalar(f, rng);
  }
  size_t dim = 2 * n;
  std::vector<std::string> labels;
  for (const auto& l : b.basis_labels()) labels.push_back(l);
  for (const auto& l : b.basis_labels()) labels.push_back(l + ".th");
  Vec unit = vec_zero(f, dim);
  for (size_t i = 0; i < n; ++i) unit[i] = b.unit()[i];
  StructureAlgebra a(f, dim, std::move(labels), std::move(unit));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      const SparseVec& prod = b.basis_product(i, j);
      for (const auto& [k, c] : prod) {
        a.add_structure_entry(i, j, k, c);                    // even * even
        a.add_structure_entry(i, static_cast<uint32_t>(n + j), static_cast<uint32_t>(n + k), c);
        a.add_structure_entry(static_cast<uint32_t>(n + i), j, static_cast<uint32_t>(n + k), c);
      }
      // (x theta)(y theta) = (xy) theta^2, with the Koszul sign folded into
      // commutativity: odd*odd products are symmetric in characteristic 2 and
      // antisymmetric otherwise; theta^2 = 0 makes both vanish off char 2.
      Vec bij = vec_zero(f, n);
      for (const auto& [k, c] : prod) bij[k] = c;
      Vec sq = b.mul(bij, theta_sq);
      for (uint32_t k = 0; k < n; ++k)
        if (!sq[k].is_zero())
          a.add_structure_entry(static_cast<uint32_t>(n + i), static_cast<uint32_t>(n + j), k,
                                sq[k]);
    }
  std::vector<uint8_t> par(dim, 0);
  for (size_t i = n; i < dim; ++i) par[i] = 1;
  a.set_grading(std::move(par));
  // Parity-preserving scramble.
  Matrix even = random_invertible(f, n, rng);
  Matrix odd = random_invertible(f, n, rng);
  Matrix change(f, dim, dim);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      change.at(r, c) = even.at(r, c);
      change.at(n + r, n + c) = odd.at(r, c);
    }
  return a.change_of_basis(change);
}

}  // namespace sepalg

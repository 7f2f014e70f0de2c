#include "sepalg/idempotents.hpp"

#include <algorithm>

namespace sepalg {

namespace {

// Deterministic ordering of coordinate vectors for reproducible output.
bool vec_less(const Vec& a, const Vec& b) {
  check_internal(a.size() == b.size(), "comparing vectors of different size");
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    const FieldRef& f = a[i].field();
    switch (f->kind()) {
      case Field::Kind::Prime:
        return a[i].residue_value() < b[i].residue_value();
      case Field::Kind::Extension:
        return a[i].ext_value() < b[i].ext_value();
      case Field::Kind::Rationals:
        return a[i].rational_value() < b[i].rational_value();
    }
  }
  return false;
}

}  // namespace

QuotientData quotient_by_ideal(const StructureAlgebra& a, const std::vector<Vec>& ideal_span) {
  const FieldRef& f = a.field();
  size_t n = a.dim();
  RowSpan ideal(f, n);
  for (const Vec& v : ideal_span) ideal.insert(v);
  // Verify the span is an ideal.
  for (const Vec& v : ideal.basis())
    for (uint32_t i = 0; i < n; ++i)
      check_internal(ideal.contains(a.mul_basis_by(i, v)), "span is not an ideal");

  std::vector<bool> is_pivot(n, false);
  for (size_t p : ideal.pivots()) is_pivot[p] = true;
  std::vector<uint32_t> free_cols;
  for (uint32_t i = 0; i < n; ++i)
    if (!is_pivot[i]) free_cols.push_back(i);
  size_t q = free_cols.size();

  // projection: reduce mod the ideal, then read off free coordinates.
  Matrix proj(f, q, n);
  for (uint32_t i = 0; i < n; ++i) {
    Vec ei = vec_zero(f, n);
    ei[i] = Scalar::one(f);
    Vec red = ideal.reduce(ei);
    for (size_t r = 0; r < q; ++r) proj.at(r, i) = red[free_cols[r]];
  }
  Matrix sect(f, n, q);
  for (size_t c = 0; c < q; ++c) {
    Vec ei = vec_zero(f, n);
    ei[free_cols[c]] = Scalar::one(f);
    Vec red = ideal.reduce(ei);  // representative with ideal part removed
    for (size_t r = 0; r < n; ++r) sect.at(r, c) = red[r];
  }

  std::vector<std::string> labels;
  for (uint32_t c : free_cols) labels.push_back(a.basis_labels()[c]);
  StructureAlgebra quot(f, q, std::move(labels), proj.apply(a.unit()));
  for (uint32_t i = 0; i < q; ++i) {
    Vec bi(n, Scalar::zero(f));
    for (size_t r = 0; r < n; ++r) bi[r] = sect.at(r, i);
    for (uint32_t j = 0; j < q; ++j) {
      Vec bj(n, Scalar::zero(f));
      for (size_t r = 0; r < n; ++r) bj[r] = sect.at(r, j);
      Vec prod = proj.apply(a.mul(bi, bj));
      SparseVec sv;
      for (uint32_t k = 0; k < q; ++k)
        if (!prod[k].is_zero()) sv.push_back({k, prod[k]});
      quot.set_basis_product(i, j, std::move(sv));
    }
  }
  return {std::move(quot), std::move(proj), std::move(sect)};
}

std::vector<Vec> nilradical(const StructureAlgebra& a, Rng& rng) {
  (void)rng;
  const FieldRef& f = a.field();
  size_t n = a.dim();
  if (n == 0) return {};
  if (f->characteristic() == 0) {
    // Radical of the trace form.
    return a.trace_form().kernel_basis();
  }
  // Stabilized kernel of x -> x^q. The kernel of the m-th iterate is the set
  // of x with x^(q^m) = 0, which reaches the nilradical once q^m >= dim.
  Matrix frob(f, n, n);
  mpz_class q = f->size();
  for (uint32_t j = 0; j < n; ++j) {
    Vec ej = vec_zero(f, n);
    ej[j] = Scalar::one(f);
    Vec img = ej;
    // x^q via square-and-multiply on the exponent.
    Vec acc = a.unit();
    Vec base = ej;
    mpz_class e = q;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = a.mul(acc, base);
      base = a.mul(base, base);
      e >>= 1;
    }
    img = acc;
    for (uint32_t r = 0; r < n; ++r) frob.at(r, j) = img[r];
  }
  Matrix it = frob;
  mpz_class reach = q;
  while (reach < static_cast<long>(n)) {
    it = it * frob;
    reach *= q;
  }
  return it.kernel_basis();
}

Vec lift_idempotent(const StructureAlgebra& a, Vec e) {
  for (int iter = 0; iter < 200; ++iter) {
    Vec e2 = a.mul(e, e);
    if (e2 == e) return e;
    // e <- 3 e^2 - 2 e^3
    Vec e3 = a.mul(e2, e);
    Vec next = vec_sub(vec_add(e2, vec_add(e2, e2)), vec_add(e3, e3));
    e = std::move(next);
  }
  throw InternalError("idempotent lift did not converge");
}

namespace {

// Splits the reduced algebra abar into primitive idempotents.
std::vector<Vec> split_reduced(const StructureAlgebra& abar, Rng& rng) {
  const FieldRef& f = abar.field();
  size_t n = abar.dim();
  if (n == 0) return {};
  std::vector<Vec> idems{abar.unit()};

  auto refine_by_element = [&](const Vec& v) {
    // CRT split along the eigenvalues of multiplication by v.
    Poly mp = minimal_polynomial_of_vector(
        v, [&](const Vec& x) { return abar.mul(x, v); }, abar.unit());
    auto factors = factor_polynomial(mp, rng);
    if (factors.size() <= 1) return;
    std::vector<Vec> next;
    for (Vec& e : idems) {
      std::vector<Vec> parts;
      for (const auto& [fac, mult] : factors) {
        check_internal(mult == 1, "reduced algebra has a repeated factor");
        // Projector: (mp / fac) * inverse mod fac, evaluated at v.
        Poly cofactor = mp.divmod(fac).quot;
        Poly inv = poly_inverse_mod(cofactor, fac);
        Poly proj = cofactor * inv;
        // Evaluate proj(v) in the algebra.
        Vec acc = vec_zero(f, n);
        Vec pw = abar.unit();
        for (int i = 0; i <= proj.degree(); ++i) {
          acc = vec_add(acc, vec_scale(proj.coeff(i), pw));
          pw = abar.mul(pw, v);
        }
        Vec piece = abar.mul(e, acc);
        if (!vec_is_zero(piece)) parts.push_back(std::move(piece));
      }
      if (parts.size() <= 1) {
        next.push_back(std::move(e));
      } else {
        for (Vec& p : parts) next.push_back(std::move(p));
      }
    }
    idems = std::move(next);
  };

  if (f->characteristic() == 0) {
    // Find a primitive element on the curve t -> sum t^i b_i; all but
    // finitely many t work for an etale algebra over Q.
    for (long t = 0; t < 4000; ++t) {
      Vec v = vec_zero(f, n);
      Scalar tw = Scalar::one(f);
      Scalar ts = Scalar::of_int(f, t);
      for (uint32_t i = 0; i < n; ++i) {
        v[i] = tw;
        tw *= ts;
      }
      Poly mp = minimal_polynomial_of_vector(
          v, [&](const Vec& x) { return abar.mul(x, v); }, abar.unit());
      if (mp.degree() == static_cast<int>(n)) {
        refine_by_element(v);
        return idems;
      }
    }
    throw InternalError("no primitive element found over Q");
  }

  // Characteristic p: the Frobenius-fixed subalgebra is a split product of
  // copies of F_q, and its elements have squarefree split minimal
  // polynomials; refining along a basis separates all components.
  Matrix frob(f, n, n);
  mpz_class q = f->size();
  for (uint32_t j = 0; j < n; ++j) {
    Vec ej = vec_zero(f, n);
    ej[j] = Scalar::one(f);
    Vec acc = abar.unit();
    Vec base = ej;
    mpz_class e = q;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = abar.mul(acc, base);
      base = abar.mul(base, base);
      e >>= 1;
    }
    for (uint32_t r = 0; r < n; ++r) frob.at(r, j) = acc[r];
  }
  Matrix fixed = frob - Matrix::identity(f, n);
  for (const Vec& v : fixed.kernel_basis()) refine_by_element(v);
  return idems;
}

}  // namespace

IdempotentDecomposition primitive_idempotents(const StructureAlgebra& a, Rng& rng) {
  check_usage(a.is_commutative(), "primitive idempotents need a commutative algebra");
  const FieldRef& f = a.field();
  size_t n = a.dim();
  if (n == 0) return {};

  std::vector<Vec> nil = nilradical(a, rng);
  QuotientData quot = quotient_by_ideal(a, nil);
  std::vector<Vec> reduced_idems = split_reduced(quot.algebra, rng);

  // Lift along the nilpotent kernel, orthogonalizing as we go.
  std::sort(reduced_idems.begin(), reduced_idems.end(), vec_less);
  std::vector<Vec> lifted;
  Vec used = vec_zero(f, n);  // sum of the idempotents lifted so far
  for (size_t i = 0; i < reduced_idems.size(); ++i) {
    Vec e;
    if (i + 1 == reduced_idems.size()) {
      e = vec_sub(a.unit(), used);
      check_internal(a.mul(e, e) == e, "final idempotent complement is not idempotent");
    } else {
      Vec x = quot.section.apply(reduced_idems[i]);
      // Push into the complement of the already-lifted part; stays a lift of
      // the same reduced idempotent since the lifted parts map elsewhere.
      x = a.mul(x, vec_sub(a.unit(), used));
      e = lift_idempotent(a, std::move(x));
    }
    check_internal(!vec_is_zero(e), "lifted idempotent vanished");
    used = vec_add(used, e);
    lifted.push_back(std::move(e));
  }

  // Invariants: orthogonality, completeness, primitivity via a recount.
  for (size_t i = 0; i < lifted.size(); ++i)
    for (size_t j = i + 1; j < lifted.size(); ++j)
      check_internal(vec_is_zero(a.mul(lifted[i], lifted[j])), "idempotents are not orthogonal");
  check_internal(used == a.unit(), "idempotents do not sum to the unit");

  std::sort(lifted.begin(), lifted.end(), vec_less);
  return {std::move(lifted)};
}

}  // namespace sepalg

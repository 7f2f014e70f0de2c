#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sepalg/matrix.hpp"

namespace sepalg {

// Deterministic random stream; the seed is part of the run configuration.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t next_u64() { return eng_(); }
  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return n == 0 ? 0 : eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

struct PolyDivMod;

// Univariate polynomial over a field, little-endian coefficients with a
// nonzero leading coefficient (empty vector = zero polynomial).
class Poly {
 public:
  Poly() = default;
  Poly(const FieldRef& f, std::vector<Scalar> coeffs);
  static Poly zero(const FieldRef& f);
  static Poly constant(const Scalar& c);
  static Poly x(const FieldRef& f);
  static Poly from_ints(const FieldRef& f, const std::vector<long>& coeffs);

  const FieldRef& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Scalar leading() const;
  Scalar coeff(size_t i) const;
  Scalar eval(const Scalar& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;

  Poly scale(const Scalar& c) const;
  Poly monic() const;
  Poly derivative() const;

  // Euclidean division: *this = q * d + r with deg r < deg d.
  PolyDivMod divmod(const Poly& d) const;
  Poly mod(const Poly& d) const;

  Poly pow_mod(mpz_class e, const Poly& m) const;

  std::string str() const;

 private:
  FieldRef field_;
  std::vector<Scalar> coeffs_;
  void trim();
};

struct PolyDivMod {
  Poly quot, rem;
};

Poly poly_gcd(Poly a, Poly b);

// Inverse of g modulo m (gcd(g, m) = 1 required).
Poly poly_inverse_mod(const Poly& g, const Poly& m);

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity;
};

// Full factorization; factors are monic irreducible and their product,
// times the leading unit, reproduces the input exactly.
// Finite fields: squarefree + distinct-degree + equal-degree splitting.
// Rationals: reduction mod a good prime, Hensel lifting and factor
// recombination; capacity error above the configured degree bound.
std::vector<PolyFactor> factor_polynomial(const Poly& f, Rng& rng, int rational_degree_cap = 24);

bool poly_is_irreducible(const Poly& f, Rng& rng);

// Monic least-degree annihilating polynomial of a square matrix.
Poly minimal_polynomial(const Matrix& action);

// Least-degree monic p with p(v-as-element) = 0 where powers are computed by
// the supplied multiply-by map; used for algebra elements.
Poly minimal_polynomial_of_vector(const Vec& v, const std::function<Vec(const Vec&)>& mul_by_v,
                                  const Vec& one);

}  // namespace sepalg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepalg/poly.hpp"
#include "sepalg/random_algebras.hpp"

using namespace sepalg;

TEST_CASE("field axioms on random triples") {
  std::vector<FieldRef> fields = {Field::prime(2), Field::prime(5), Field::rationals(),
                                  Field::extension(2, 2, {1, 1, 1}),
                                  Field::extension(3, 2, {1, 0, 1})};
  Rng rng(7);
  for (const FieldRef& f : fields) {
    for (int i = 0; i < 10000; ++i) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == Scalar::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
    }
  }
}

TEST_CASE("scalar canonical forms") {
  FieldRef q = Field::rationals();
  CHECK(scalar_from_string(q, "2/4") == scalar_from_string(q, "1/2"));
  CHECK(scalar_from_string(q, "-3/-6") == scalar_from_string(q, "1/2"));
  FieldRef f5 = Field::prime(5);
  CHECK(Scalar::of_int(f5, -1) == Scalar::residue(f5, 4));
  CHECK(scalar_from_string(f5, "7") == Scalar::residue(f5, 2));
  CHECK(scalar_from_string(f5, "1/2") == Scalar::residue(f5, 3));
}

TEST_CASE("extension field construction rejects reducible moduli") {
  CHECK_THROWS_AS(Field::extension(2, 2, {1, 0, 1}), UsageError);  // x^2+1 = (x+1)^2
  CHECK_NOTHROW(Field::extension(2, 3, {1, 1, 0, 1}));             // x^3+x+1
}

TEST_CASE("solve_linear identity case") {
  FieldRef f = Field::prime(7);
  Matrix id = Matrix::identity(f, 4);
  Vec b = {Scalar::of_int(f, 1), Scalar::of_int(f, 2), Scalar::of_int(f, 3), Scalar::of_int(f, 4)};
  auto sol = solve_linear(id, b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == b);
  CHECK(sol->kernel.empty());
}

TEST_CASE("solve_linear symmetric kernel over F2") {
  FieldRef f = Field::prime(2);
  Matrix m(f, 1, 2);
  m.at(0, 0) = Scalar::one(f);
  m.at(0, 1) = Scalar::one(f);
  Vec b = {Scalar::zero(f)};
  auto sol = solve_linear(m, b);
  REQUIRE(sol.has_value());
  CHECK(vec_is_zero(sol->particular));
  REQUIRE(sol->kernel.size() == 1);
  CHECK(sol->kernel[0] == Vec{Scalar::one(f), Scalar::one(f)});
}

TEST_CASE("solve_linear recovers planted solutions exactly") {
  FieldRef f = Field::prime(5);
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(f, 6, 6);
    for (size_t i = 0; i < 6; ++i)
      for (size_t j = 0; j < 6; ++j) m.at(i, j) = random_scalar(f, rng);
    Vec x(6, Scalar::zero(f));
    for (auto& c : x) c = random_scalar(f, rng);
    Vec b = m.apply(x);
    auto sol = solve_linear(m, b);
    REQUIRE(sol.has_value());
    CHECK(vec_is_zero(vec_sub(m.apply(sol->particular), b)));
    for (const Vec& k : sol->kernel) CHECK(vec_is_zero(m.apply(k)));
  }
}

TEST_CASE("factorization reproduces the input exactly") {
  Rng rng(3);
  std::vector<FieldRef> fields = {Field::prime(2), Field::prime(3), Field::prime(5),
                                  Field::extension(2, 2, {1, 1, 1})};
  for (const FieldRef& f : fields) {
    for (int trial = 0; trial < 40; ++trial) {
      size_t deg = 1 + rng.below(7);
      std::vector<Scalar> cs(deg + 1, Scalar::zero(f));
      for (size_t i = 0; i < deg; ++i) cs[i] = random_scalar(f, rng);
      cs[deg] = Scalar::one(f);
      Poly p(f, cs);
      auto factors = factor_polynomial(p, rng);
      Poly prod = Poly::constant(p.leading());
      for (const auto& [fac, mult] : factors) {
        CHECK(poly_is_irreducible(fac, rng));
        for (int i = 0; i < mult; ++i) prod = prod * fac;
      }
      CHECK(prod == p);
    }
  }
}

TEST_CASE("factorization fixed cases") {
  Rng rng(1);
  FieldRef f2 = Field::prime(2);
  SUBCASE("x^2+x over F2 splits as x(x+1)") {
    auto fs = factor_polynomial(Poly::from_ints(f2, {0, 1, 1}), rng);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].multiplicity == 1);
    CHECK(fs[1].multiplicity == 1);
  }
  SUBCASE("x^2+1 over F2 is (x+1)^2") {
    auto fs = factor_polynomial(Poly::from_ints(f2, {1, 0, 1}), rng);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].multiplicity == 2);
    CHECK(fs[0].factor == Poly::from_ints(f2, {1, 1}));
  }
  SUBCASE("x^4 - 1 over F3: brute-force oracle agreement") {
    FieldRef f3 = Field::prime(3);
    Poly p = Poly::from_ints(f3, {-1, 0, 0, 0, 1});
    auto fs = factor_polynomial(p, rng);
    // Oracle: scan all monic polynomials of degree <= 2 for divisors.
    std::vector<Poly> irreducible_divisors;
    for (int deg = 1; deg <= 2; ++deg) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < (deg == 2 ? 3 : 1); ++b) {
          std::vector<long> cs;
          if (deg == 1)
            cs = {a, 1};
          else
            cs = {a, b, 1};
          Poly cand = Poly::from_ints(f3, cs);
          if (!p.mod(cand).is_zero()) continue;
          bool irred = true;
          if (deg == 2) {
            for (int r = 0; r < 3; ++r)
              if (cand.eval(Scalar::of_int(f3, r)).is_zero()) irred = false;
          }
          if (irred) irreducible_divisors.push_back(cand);
        }
    }
    CHECK(fs.size() == irreducible_divisors.size());
    for (const auto& [fac, mult] : fs) {
      CHECK(mult == 1);
      bool found = false;
      for (const Poly& d : irreducible_divisors)
        if (d == fac) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("rational factorization") {
  Rng rng(11);
  FieldRef q = Field::rationals();
  SUBCASE("product of quadratics") {
    // (x^2+1)(x^2-2)(x+3)
    Poly p = Poly::from_ints(q, {1, 0, 1}) * Poly::from_ints(q, {-2, 0, 1}) *
             Poly::from_ints(q, {3, 1});
    auto fs = factor_polynomial(p, rng);
    CHECK(fs.size() == 3);
    Poly prod = Poly::constant(Scalar::one(q));
    for (const auto& [fac, mult] : fs)
      for (int i = 0; i < mult; ++i) prod = prod * fac;
    CHECK(prod == p);
  }
  SUBCASE("repeated factors and denominators") {
    // (x - 1/2)^2 (x^2 + x + 1)
    Poly lin = Poly(q, {scalar_from_string(q, "-1/2"), Scalar::one(q)});
    Poly p = lin * lin * Poly::from_ints(q, {1, 1, 1});
    auto fs = factor_polynomial(p, rng);
    REQUIRE(fs.size() == 2);
    Poly prod = Poly::constant(Scalar::one(q));
    for (const auto& [fac, mult] : fs)
      for (int i = 0; i < mult; ++i) prod = prod * fac;
    CHECK(prod == p);
  }
  SUBCASE("irreducible stays whole") {
    auto fs = factor_polynomial(Poly::from_ints(q, {1, 1, 0, 0, 1}), rng);  // x^4+x+1
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].multiplicity == 1);
  }
  SUBCASE("degree cap raises a capacity error") {
    std::vector<long> cs(26, 0);
    cs[25] = 1;
    cs[0] = 1;
    CHECK_THROWS_AS(factor_polynomial(Poly::from_ints(q, cs), rng), CapacityError);
  }
  SUBCASE("zero polynomial is a domain error") {
    CHECK_THROWS_AS(factor_polynomial(Poly::zero(q), rng), DomainError);
  }
}

TEST_CASE("minimal polynomials") {
  FieldRef f2 = Field::prime(2);
  SUBCASE("zero matrix -> x") {
    Matrix z(f2, 3, 3);
    CHECK(minimal_polynomial(z) == Poly::x(f2));
  }
  SUBCASE("identity -> x - 1") {
    CHECK(minimal_polynomial(Matrix::identity(f2, 4)) == Poly::from_ints(f2, {1, 1}));
  }
  SUBCASE("companion matrix of x^2+x+1") {
    Matrix c(f2, 2, 2);
    c.at(0, 1) = Scalar::one(f2);
    c.at(1, 0) = Scalar::one(f2);
    c.at(1, 1) = Scalar::one(f2);
    // Oracle: evaluate all monic candidates of degree <= 2 on the matrix.
    Poly expect = Poly::from_ints(f2, {1, 1, 1});
    Matrix val = c * c + c + Matrix::identity(f2, 2);
    CHECK(val == Matrix(f2, 2, 2));
    CHECK(minimal_polynomial(c) == expect);
  }
  SUBCASE("minimal polynomial divides the characteristic polynomial") {
    Rng rng(5);
    FieldRef f5 = Field::prime(5);
    for (int t = 0; t < 10; ++t) {
      Matrix m(f5, 4, 4);
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) m.at(i, j) = random_scalar(f5, rng);
      Poly mp = minimal_polynomial(m);
      CHECK(mp.degree() <= 4);
      // Evaluate on the matrix: must vanish.
      Matrix acc(f5, 4, 4);
      Matrix pw = Matrix::identity(f5, 4);
      for (int i = 0; i <= mp.degree(); ++i) {
        for (size_t r = 0; r < 4; ++r)
          for (size_t cc = 0; cc < 4; ++cc) acc.at(r, cc) += mp.coeff(i) * pw.at(r, cc);
        pw = pw * m;
      }
      CHECK(acc == Matrix(f5, 4, 4));
    }
  }
}

TEST_CASE("matrix inverse and rank") {
  Rng rng(21);
  FieldRef f = Field::extension(2, 2, {1, 1, 1});
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_invertible(f, 5, rng);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Matrix::identity(f, 5));
    CHECK(m.rank() == 5);
  }
}

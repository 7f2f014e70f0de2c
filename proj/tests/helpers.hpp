#pragma once

#include "sepalg/permalg.hpp"
#include "sepalg/random_algebras.hpp"

namespace sepalg::testing {

// F_{p^d} = F_p[x]/(modulus) presented as a structure algebra over F_p.
inline StructureAlgebra field_ext_algebra(uint64_t p, const std::vector<long>& modulus) {
  FieldRef fp = Field::prime(p);
  return StructureAlgebra::polynomial_quotient(Poly::from_ints(fp, modulus));
}

// Installs the Frobenius Z/d action x -> x^p on a degree-d field extension
// presented over F_p.
inline StructureAlgebra with_frobenius_action(StructureAlgebra a, uint64_t p) {
  const FieldRef& f = a.field();
  size_t d = a.dim();
  Perm cycle(d);
  for (size_t i = 0; i < d; ++i) cycle[i] = static_cast<uint32_t>((i + 1) % d);
  GroupRef zd = PermGroup::from_generators(static_cast<uint32_t>(d), {cycle},
                                           "Z/" + std::to_string(d));
  Matrix frob(f, d, d);
  for (size_t j = 0; j < d; ++j) {
    Vec ej = vec_zero(f, d);
    ej[j] = Scalar::one(f);
    Vec img = a.power(ej, p);
    for (size_t r = 0; r < d; ++r) frob.at(r, j) = img[r];
  }
  GroupAction act;
  act.group = zd;
  act.generator_matrices = {std::move(frob)};
  a.set_action(std::move(act));
  return a;
}

inline StructureAlgebra f4_over_f2() { return field_ext_algebra(2, {1, 1, 1}); }
inline StructureAlgebra f8_over_f2() { return field_ext_algebra(2, {1, 1, 0, 1}); }
inline StructureAlgebra f16_over_f2() { return field_ext_algebra(2, {1, 1, 0, 0, 1}); }
inline StructureAlgebra f9_over_f3() { return field_ext_algebra(3, {1, 0, 1}); }
inline StructureAlgebra dual_numbers_f2() {
  return StructureAlgebra::polynomial_quotient(Poly::from_ints(Field::prime(2), {0, 0, 1}));
}

inline Vec vec_of_ints(const FieldRef& f, const std::vector<long>& v) {
  Vec out;
  out.reserve(v.size());
  for (long c : v) out.push_back(Scalar::of_int(f, c));
  return out;
}

}  // namespace sepalg::testing

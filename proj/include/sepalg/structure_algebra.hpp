#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sepalg/matrix.hpp"
#include "sepalg/perm_group.hpp"
#include "sepalg/poly.hpp"

namespace sepalg {

using SparseVec = std::vector<std::pair<uint32_t, Scalar>>;

// Group acting on an algebra by automorphisms, one matrix per generator of a
// concrete permutation group.
struct GroupAction {
  GroupRef group;
  std::vector<Matrix> generator_matrices;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(const std::string& what) {
    ok = false;
    violations.push_back(what);
  }
};

// Finite-dimensional algebra presented by structure constants over an exact
// field. The zero algebra is dim 0 with an empty unit.
class StructureAlgebra {
 public:
  StructureAlgebra() = default;
  StructureAlgebra(FieldRef f, size_t dim, std::vector<std::string> basis_labels, Vec unit);

  static StructureAlgebra zero_algebra(const FieldRef& f);
  static StructureAlgebra base_field(const FieldRef& f);  // k itself
  // k[x]/(f), basis 1, x, ..., x^{deg-1}.
  static StructureAlgebra polynomial_quotient(const Poly& f);
  // Group algebra k[G] with convolution product.
  static StructureAlgebra group_algebra(const FieldRef& f, const GroupRef& g);
  // Split algebra k^n.
  static StructureAlgebra split_algebra(const FieldRef& f, size_t n);

  void set_basis_product(uint32_t i, uint32_t j, SparseVec value);
  void add_structure_entry(uint32_t i, uint32_t j, uint32_t k, const Scalar& c);
  void set_grading(std::vector<uint8_t> parity);
  void set_action(GroupAction action);

  const FieldRef& field() const { return field_; }
  size_t dim() const { return dim_; }
  bool is_zero_algebra() const { return dim_ == 0; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const Vec& unit() const { return unit_; }
  const std::optional<std::vector<uint8_t>>& grading() const { return grading_; }
  const std::optional<GroupAction>& action() const { return action_; }
  bool is_graded() const { return grading_.has_value(); }

  const SparseVec& basis_product(uint32_t i, uint32_t j) const;
  Vec mul(const Vec& u, const Vec& v) const;
  Vec mul_basis_by(uint32_t i, const Vec& v) const;
  Vec power(const Vec& v, uint64_t n) const;
  Matrix left_mult_matrix(const Vec& v) const;

  bool is_commutative() const;

  // Full invariant check: unit laws, associativity on basis triples,
  // (graded) commutativity, and action validity when an action is installed.
  ValidationReport validate() const;

  // Trace of multiplication-by-v.
  Scalar trace_of_mult(const Vec& v) const;
  // Bilinear form (x, y) -> tr(L_{xy}) on the basis.
  Matrix trace_form() const;

  // Matrices of every group element acting on the algebra (BFS order of the
  // acting group); relation consistency is verified.
  std::vector<Matrix> action_element_matrices() const;

  // Subalgebra on an explicit independent spanning set (must be closed under
  // multiplication and contain the given unit).
  StructureAlgebra subalgebra(const std::vector<Vec>& span_basis, const Vec& unit,
                              std::vector<std::string> labels = {}) const;

  // e * A for an idempotent e, with unit e.
  StructureAlgebra idempotent_slice(const Vec& e) const;

  // Same algebra in a new basis; columns of basis_in_old are the new basis
  // vectors in old coordinates.
  StructureAlgebra change_of_basis(const Matrix& basis_in_old,
                                   std::vector<std::string> labels = {}) const;

  static StructureAlgebra tensor_product(const StructureAlgebra& a, const StructureAlgebra& b);
  static StructureAlgebra direct_product(const StructureAlgebra& a, const StructureAlgebra& b);

 private:
  FieldRef field_;
  size_t dim_ = 0;
  std::vector<std::string> labels_;
  Vec unit_;
  std::unordered_map<uint64_t, SparseVec> table_;  // key (i << 32) | j, absent = zero product
  std::optional<std::vector<uint8_t>> grading_;
  std::optional<GroupAction> action_;

  static uint64_t key(uint32_t i, uint32_t j) { return (static_cast<uint64_t>(i) << 32) | j; }
};

// Element of an algebra: owning algebra plus a coordinate vector.
struct AlgebraElement {
  const StructureAlgebra* algebra = nullptr;
  Vec coords;

  AlgebraElement operator*(const AlgebraElement& o) const {
    check_usage(algebra == o.algebra, "elements of different algebras");
    return {algebra, algebra->mul(coords, o.coords)};
  }
  AlgebraElement operator+(const AlgebraElement& o) const {
    check_usage(algebra == o.algebra, "elements of different algebras");
    return {algebra, vec_add(coords, o.coords)};
  }
};

// Unital algebra homomorphism given by its matrix on basis vectors.
struct AlgebraMorphism {
  const StructureAlgebra* source = nullptr;
  const StructureAlgebra* target = nullptr;
  Matrix matrix;  // target.dim x source.dim

  Vec apply(const Vec& v) const { return matrix.apply(v); }
};

// Checks unit preservation and multiplicativity on basis pairs.
bool morphism_is_valid(const AlgebraMorphism& m);

std::vector<std::string> default_labels(const std::string& stem, size_t n);

}  // namespace sepalg

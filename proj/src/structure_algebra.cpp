#include "sepalg/structure_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace sepalg {

std::vector<std::string> default_labels(const std::string& stem, size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

StructureAlgebra::StructureAlgebra(FieldRef f, size_t dim, std::vector<std::string> basis_labels,
                                   Vec unit)
    : field_(std::move(f)), dim_(dim), labels_(std::move(basis_labels)), unit_(std::move(unit)) {
  if (labels_.empty()) labels_ = default_labels("e", dim_);
  check_usage(labels_.size() == dim_, "label count must match dimension");
  check_usage(unit_.size() == dim_, "unit coordinate length must match dimension");
}

StructureAlgebra StructureAlgebra::zero_algebra(const FieldRef& f) {
  return StructureAlgebra(f, 0, {}, {});
}

StructureAlgebra StructureAlgebra::base_field(const FieldRef& f) {
  StructureAlgebra a(f, 1, {"1"}, {Scalar::one(f)});
  a.add_structure_entry(0, 0, 0, Scalar::one(f));
  return a;
}

StructureAlgebra StructureAlgebra::polynomial_quotient(const Poly& f) {
  check_usage(f.degree() >= 1, "polynomial quotient needs degree >= 1");
  const FieldRef& k = f.field();
  size_t n = f.degree();
  Vec unit = vec_zero(k, n);
  unit[0] = Scalar::one(k);
  std::vector<std::string> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i));
  StructureAlgebra a(k, n, std::move(labels), std::move(unit));
  Poly fm = f.monic();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Scalar> cs(i + j + 1, Scalar::zero(k));
      cs[i + j] = Scalar::one(k);
      Poly r = Poly(k, cs).mod(fm);
      SparseVec sv;
      for (int t = 0; t <= r.degree(); ++t)
        if (!r.coeff(t).is_zero()) sv.push_back({static_cast<uint32_t>(t), r.coeff(t)});
      a.set_basis_product(i, j, std::move(sv));
    }
  return a;
}

StructureAlgebra StructureAlgebra::group_algebra(const FieldRef& f, const GroupRef& g) {
  size_t n = g->order();
  Vec unit = vec_zero(f, n);
  unit[0] = Scalar::one(f);
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  StructureAlgebra a(f, n, std::move(labels), std::move(unit));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      a.add_structure_entry(i, j, g->mul(i, j), Scalar::one(f));
  return a;
}

StructureAlgebra StructureAlgebra::split_algebra(const FieldRef& f, size_t n) {
  Vec unit(n, Scalar::one(f));
  StructureAlgebra a(f, n, default_labels("e", n), std::move(unit));
  for (uint32_t i = 0; i < n; ++i) a.add_structure_entry(i, i, i, Scalar::one(f));
  return a;
}

void StructureAlgebra::set_basis_product(uint32_t i, uint32_t j, SparseVec value) {
  check_usage(i < dim_ && j < dim_, "structure index out of range");
  std::sort(value.begin(), value.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec cleaned;
  for (auto& [k, c] : value) {
    check_usage(k < dim_, "structure index out of range");
    if (!cleaned.empty() && cleaned.back().first == k)
      cleaned.back().second += c;
    else
      cleaned.push_back({k, c});
  }
  cleaned.erase(std::remove_if(cleaned.begin(), cleaned.end(),
                               [](const auto& e) { return e.second.is_zero(); }),
                cleaned.end());
  if (cleaned.empty())
    table_.erase(key(i, j));
  else
    table_[key(i, j)] = std::move(cleaned);
}

void StructureAlgebra::add_structure_entry(uint32_t i, uint32_t j, uint32_t k, const Scalar& c) {
  check_usage(i < dim_ && j < dim_ && k < dim_, "structure index out of range");
  if (c.is_zero()) return;
  SparseVec& sv = table_[key(i, j)];
  for (auto& [t, v] : sv)
    if (t == k) {
      v += c;
      if (v.is_zero()) {
        SparseVec copy = sv;
        copy.erase(std::remove_if(copy.begin(), copy.end(),
                                  [](const auto& e) { return e.second.is_zero(); }),
                   copy.end());
        set_basis_product(i, j, std::move(copy));
      }
      return;
    }
  sv.push_back({k, c});
  std::sort(sv.begin(), sv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

void StructureAlgebra::set_grading(std::vector<uint8_t> parity) {
  check_usage(parity.size() == dim_, "grading length must match dimension");
  for (uint8_t p : parity) check_usage(p <= 1, "grading entries must be 0 or 1");
  grading_ = std::move(parity);
}

void StructureAlgebra::set_action(GroupAction action) {
  for (const Matrix& m : action.generator_matrices)
    check_usage(m.rows() == dim_ && m.cols() == dim_, "action matrix shape mismatch");
  check_usage(action.generator_matrices.size() == action.group->generators().size(),
              "one action matrix per group generator required");
  action_ = std::move(action);
}

const SparseVec& StructureAlgebra::basis_product(uint32_t i, uint32_t j) const {
  static const SparseVec empty;
  auto it = table_.find(key(i, j));
  return it == table_.end() ? empty : it->second;
}

Vec StructureAlgebra::mul(const Vec& u, const Vec& v) const {
  check_usage(u.size() == dim_ && v.size() == dim_, "element length mismatch");
  Vec r = vec_zero(field_, dim_);
  for (uint32_t i = 0; i < dim_; ++i) {
    if (u[i].is_zero()) continue;
    for (uint32_t j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      Scalar c = u[i] * v[j];
      for (const auto& [k, s] : basis_product(i, j)) r[k] += c * s;
    }
  }
  return r;
}

Vec StructureAlgebra::mul_basis_by(uint32_t i, const Vec& v) const {
  Vec r = vec_zero(field_, dim_);
  for (uint32_t j = 0; j < dim_; ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [k, s] : basis_product(i, j)) r[k] += v[j] * s;
  }
  return r;
}

Vec StructureAlgebra::power(const Vec& v, uint64_t n) const {
  Vec r = unit_;
  Vec b = v;
  while (n > 0) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

Matrix StructureAlgebra::left_mult_matrix(const Vec& v) const {
  Matrix m(field_, dim_, dim_);
  for (uint32_t j = 0; j < dim_; ++j) {
    Vec col = vec_zero(field_, dim_);
    for (uint32_t i = 0; i < dim_; ++i) {
      if (v[i].is_zero()) continue;
      for (const auto& [k, s] : basis_product(i, j)) col[k] += v[i] * s;
    }
    for (uint32_t r = 0; r < dim_; ++r) m.at(r, j) = col[r];
  }
  return m;
}

bool StructureAlgebra::is_commutative() const {
  for (uint32_t i = 0; i < dim_; ++i)
    for (uint32_t j = i + 1; j < dim_; ++j)
      if (basis_product(i, j) != basis_product(j, i)) return false;
  return true;
}

ValidationReport StructureAlgebra::validate() const {
  ValidationReport rep;
  if (dim_ == 0) return rep;

  for (uint32_t b = 0; b < dim_; ++b) {
    Vec eb = vec_zero(field_, dim_);
    eb[b] = Scalar::one(field_);
    if (mul(unit_, eb) != eb) rep.fail("unit law fails at left of basis " + std::to_string(b));
    if (mul(eb, unit_) != eb) rep.fail("unit law fails at right of basis " + std::to_string(b));
  }

  for (uint32_t i = 0; i < dim_; ++i)
    for (uint32_t j = 0; j < dim_; ++j) {
      // Associativity on the triple (i, j, k).
      for (uint32_t k = 0; k < dim_; ++k) {
        Vec ei = vec_zero(field_, dim_), ej = vec_zero(field_, dim_), ek = vec_zero(field_, dim_);
        ei[i] = Scalar::one(field_);
        ej[j] = Scalar::one(field_);
        ek[k] = Scalar::one(field_);
        if (mul(mul(ei, ej), ek) != mul(ei, mul(ej, ek))) {
          rep.fail("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + ")");
        }
      }
    }

  if (!grading_.has_value()) {
    for (uint32_t i = 0; i < dim_; ++i)
      for (uint32_t j = i + 1; j < dim_; ++j)
        if (basis_product(i, j) != basis_product(j, i))
          rep.fail("commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  } else {
    const auto& par = *grading_;
    // Products must respect parity and satisfy the Koszul sign rule.
    for (uint32_t i = 0; i < dim_; ++i)
      for (uint32_t j = 0; j < dim_; ++j) {
        uint8_t want = (par[i] + par[j]) % 2;
        for (const auto& [k, c] : basis_product(i, j)) {
          (void)c;
          if (par[k] != want)
            rep.fail("grading violated by product (" + std::to_string(i) + "," + std::to_string(j) +
                     ") component " + std::to_string(k));
        }
        if (j > i) {
          Vec ei = vec_zero(field_, dim_), ej = vec_zero(field_, dim_);
          ei[i] = Scalar::one(field_);
          ej[j] = Scalar::one(field_);
          Vec lhs = mul(ei, ej);
          Vec rhs = mul(ej, ei);
          if (par[i] && par[j]) rhs = vec_scale(-Scalar::one(field_), rhs);
          if (lhs != rhs)
            rep.fail("graded commutativity fails at (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
        }
      }
    for (uint32_t b = 0; b < dim_; ++b)
      if (par[b] == 1 && !unit_[b].is_zero()) rep.fail("unit has an odd component");
  }

  if (action_.has_value()) {
    for (size_t gi = 0; gi < action_->generator_matrices.size(); ++gi) {
      const Matrix& m = action_->generator_matrices[gi];
      if (!m.inverse().has_value()) {
        rep.fail("action matrix " + std::to_string(gi) + " is singular");
        continue;
      }
      if (m.apply(unit_) != unit_) rep.fail("action matrix " + std::to_string(gi) + " moves the unit");
      for (uint32_t i = 0; i < dim_; ++i)
        for (uint32_t j = 0; j < dim_; ++j) {
          Vec ei = vec_zero(field_, dim_), ej = vec_zero(field_, dim_);
          ei[i] = Scalar::one(field_);
          ej[j] = Scalar::one(field_);
          Vec lhs = m.apply(mul(ei, ej));
          Vec rhs = mul(m.apply(ei), m.apply(ej));
          if (lhs != rhs) {
            rep.fail("action matrix " + std::to_string(gi) + " is not multiplicative at (" +
                     std::to_string(i) + "," + std::to_string(j) + ")");
            i = static_cast<uint32_t>(dim_);  // one witness per generator is enough
            break;
          }
        }
    }
    try {
      action_element_matrices();
    } catch (const UsageError& e) {
      rep.fail(e.what());
    }
  }
  return rep;
}

Scalar StructureAlgebra::trace_of_mult(const Vec& v) const {
  Scalar t = Scalar::zero(field_);
  for (uint32_t j = 0; j < dim_; ++j) {
    for (uint32_t i = 0; i < dim_; ++i) {
      if (v[i].is_zero()) continue;
      for (const auto& [k, s] : basis_product(i, j))
        if (k == j) t += v[i] * s;
    }
  }
  return t;
}

Matrix StructureAlgebra::trace_form() const {
  Matrix t(field_, dim_, dim_);
  for (uint32_t i = 0; i < dim_; ++i) {
    Vec ei = vec_zero(field_, dim_);
    ei[i] = Scalar::one(field_);
    for (uint32_t j = 0; j <= i; ++j) {
      Vec ej = vec_zero(field_, dim_);
      ej[j] = Scalar::one(field_);
      Scalar v = trace_of_mult(mul(ei, ej));
      t.at(i, j) = v;
      t.at(j, i) = v;
    }
  }
  return t;
}

std::vector<Matrix> StructureAlgebra::action_element_matrices() const {
  check_usage(action_.has_value(), "algebra has no group action");
  const GroupAction& a = *action_;
  std::function<Matrix(const Matrix&, const Matrix&)> compose = [](const Matrix& x,
                                                                   const Matrix& y) {
    return x * y;
  };
  std::function<bool(const Matrix&, const Matrix&)> equal = [](const Matrix& x, const Matrix& y) {
    return x == y;
  };
  return a.group->map_elements<Matrix>(a.generator_matrices, Matrix::identity(field_, dim_),
                                       compose, equal, true);
}

StructureAlgebra StructureAlgebra::subalgebra(const std::vector<Vec>& span_basis, const Vec& unit,
                                              std::vector<std::string> labels) const {
  const size_t m = span_basis.size();
  RowSpan span(field_, dim_);
  for (const Vec& v : span_basis) check_internal(span.insert(v), "subalgebra basis is dependent");
  auto unit_coords = span.coordinates(unit);
  check_internal(unit_coords.has_value(), "subalgebra unit outside the span");

  // Express products in the echelonized span, then convert to the caller's
  // basis via the change of coordinates.
  Matrix to_span(field_, m, m);  // columns: span_basis vectors in echelon coordinates
  for (size_t c = 0; c < m; ++c) {
    auto coords = span.coordinates(span_basis[c]);
    check_internal(coords.has_value(), "span coordinates missing");
    for (size_t r = 0; r < m; ++r) to_span.at(r, c) = (*coords)[r];
  }
  auto inv = to_span.inverse();
  check_internal(inv.has_value(), "subalgebra basis change is singular");

  if (labels.empty()) labels = default_labels("s", m);
  StructureAlgebra out(field_, m, std::move(labels), vec_zero(field_, m));
  Vec u = inv->apply(*unit_coords);
  for (size_t i = 0; i < m; ++i) out.unit_[i] = u[i];
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j) {
      Vec prod = mul(span_basis[i], span_basis[j]);
      auto coords = span.coordinates(prod);
      check_internal(coords.has_value(), "subalgebra not closed under multiplication");
      Vec in_basis = inv->apply(*coords);
      SparseVec sv;
      for (uint32_t k = 0; k < m; ++k)
        if (!in_basis[k].is_zero()) sv.push_back({k, in_basis[k]});
      out.set_basis_product(i, j, std::move(sv));
    }
  if (grading_.has_value()) {
    // Only inherit a grading when every basis vector is homogeneous.
    std::vector<uint8_t> par(m, 0);
    bool homogeneous = true;
    for (size_t c = 0; c < m && homogeneous; ++c) {
      int seen = -1;
      for (uint32_t i = 0; i < dim_; ++i) {
        if (span_basis[c][i].is_zero()) continue;
        int pr = (*grading_)[i];
        if (seen == -1) seen = pr;
        if (seen != pr) homogeneous = false;
      }
      par[c] = seen <= 0 ? 0 : 1;
    }
    if (homogeneous) out.set_grading(std::move(par));
  }
  return out;
}

StructureAlgebra StructureAlgebra::idempotent_slice(const Vec& e) const {
  check_internal(mul(e, e) == e, "slice element is not idempotent");
  std::vector<Vec> basis;
  RowSpan span(field_, dim_);
  for (uint32_t i = 0; i < dim_; ++i) {
    Vec ei = vec_zero(field_, dim_);
    ei[i] = Scalar::one(field_);
    Vec v = mul(e, ei);
    if (span.insert(v)) basis.push_back(std::move(v));
  }
  if (basis.empty()) return zero_algebra(field_);
  return subalgebra(basis, e);
}

StructureAlgebra StructureAlgebra::change_of_basis(const Matrix& basis_in_old,
                                                   std::vector<std::string> labels) const {
  check_usage(basis_in_old.rows() == dim_ && basis_in_old.cols() == dim_,
              "change of basis must be square of the algebra dimension");
  auto inv = basis_in_old.inverse();
  check_usage(inv.has_value(), "change of basis is singular");
  if (labels.empty()) labels = labels_;
  StructureAlgebra out(field_, dim_, std::move(labels), inv->apply(unit_));
  for (uint32_t i = 0; i < dim_; ++i) {
    Vec bi(dim_, Scalar::zero(field_));
    for (uint32_t r = 0; r < dim_; ++r) bi[r] = basis_in_old.at(r, i);
    for (uint32_t j = 0; j < dim_; ++j) {
      Vec bj(dim_, Scalar::zero(field_));
      for (uint32_t r = 0; r < dim_; ++r) bj[r] = basis_in_old.at(r, j);
      Vec prod = inv->apply(mul(bi, bj));
      SparseVec sv;
      for (uint32_t k = 0; k < dim_; ++k)
        if (!prod[k].is_zero()) sv.push_back({k, prod[k]});
      out.set_basis_product(i, j, std::move(sv));
    }
  }
  // A grading survives only if the new basis is homogeneous; recompute.
  if (grading_.has_value()) {
    std::vector<uint8_t> par(dim_, 0);
    bool homogeneous = true;
    for (uint32_t c = 0; c < dim_ && homogeneous; ++c) {
      int seen = -1;
      for (uint32_t r = 0; r < dim_; ++r) {
        if (basis_in_old.at(r, c).is_zero()) continue;
        int pr = (*grading_)[r];
        if (seen == -1) seen = pr;
        if (seen != pr) homogeneous = false;
      }
      par[c] = seen <= 0 ? 0 : 1;
    }
    if (homogeneous) out.set_grading(std::move(par));
  }
  return out;
}

StructureAlgebra StructureAlgebra::tensor_product(const StructureAlgebra& a,
                                                  const StructureAlgebra& b) {
  check_usage(a.field()->same_as(*b.field()), "tensor product needs a common field");
  const FieldRef& f = a.field();
  size_t n = a.dim() * b.dim();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < b.dim(); ++j)
      labels.push_back(a.basis_labels()[i] + "@" + b.basis_labels()[j]);
  Vec unit = vec_zero(f, n);
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < b.dim(); ++j) {
      Scalar c = a.unit()[i] * b.unit()[j];
      if (!c.is_zero()) unit[i * b.dim() + j] = c;
    }
  StructureAlgebra t(f, n, std::move(labels), std::move(unit));
  for (uint32_t ia = 0; ia < a.dim(); ++ia)
    for (uint32_t ja = 0; ja < a.dim(); ++ja) {
      const SparseVec& pa = a.basis_product(ia, ja);
      if (pa.empty()) continue;
      for (uint32_t ib = 0; ib < b.dim(); ++ib)
        for (uint32_t jb = 0; jb < b.dim(); ++jb) {
          const SparseVec& pb = b.basis_product(ib, jb);
          if (pb.empty()) continue;
          uint32_t row = static_cast<uint32_t>(ia * b.dim() + ib);
          uint32_t col = static_cast<uint32_t>(ja * b.dim() + jb);
          SparseVec sv;
          for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : pb)
              sv.push_back({static_cast<uint32_t>(ka * b.dim() + kb), ca * cb});
          t.set_basis_product(row, col, std::move(sv));
        }
    }
  if (a.action().has_value() && b.action().has_value() &&
      a.action()->group == b.action()->group) {
    // Diagonal action on pure tensors.
    GroupAction act;
    act.group = a.action()->group;
    for (size_t g = 0; g < a.action()->generator_matrices.size(); ++g) {
      const Matrix& ma = a.action()->generator_matrices[g];
      const Matrix& mb = b.action()->generator_matrices[g];
      Matrix m(f, n, n);
      for (size_t r1 = 0; r1 < a.dim(); ++r1)
        for (size_t r2 = 0; r2 < b.dim(); ++r2)
          for (size_t c1 = 0; c1 < a.dim(); ++c1)
            for (size_t c2 = 0; c2 < b.dim(); ++c2) {
              Scalar v = ma.at(r1, c1) * mb.at(r2, c2);
              if (!v.is_zero()) m.at(r1 * b.dim() + r2, c1 * b.dim() + c2) = v;
            }
      act.generator_matrices.push_back(std::move(m));
    }
    t.set_action(std::move(act));
  }
  return t;
}

StructureAlgebra StructureAlgebra::direct_product(const StructureAlgebra& a,
                                                  const StructureAlgebra& b) {
  check_usage(a.field()->same_as(*b.field()), "direct product needs a common field");
  const FieldRef& f = a.field();
  size_t n = a.dim() + b.dim();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& l : a.basis_labels()) labels.push_back("l." + l);
  for (const auto& l : b.basis_labels()) labels.push_back("r." + l);
  Vec unit = vec_zero(f, n);
  for (size_t i = 0; i < a.dim(); ++i) unit[i] = a.unit()[i];
  for (size_t j = 0; j < b.dim(); ++j) unit[a.dim() + j] = b.unit()[j];
  StructureAlgebra d(f, n, std::move(labels), std::move(unit));
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.dim(); ++j) {
      SparseVec sv = a.basis_product(i, j);
      d.set_basis_product(i, j, std::move(sv));
    }
  for (uint32_t i = 0; i < b.dim(); ++i)
    for (uint32_t j = 0; j < b.dim(); ++j) {
      SparseVec sv;
      for (const auto& [k, c] : b.basis_product(i, j))
        sv.push_back({static_cast<uint32_t>(a.dim() + k), c});
      d.set_basis_product(static_cast<uint32_t>(a.dim() + i), static_cast<uint32_t>(a.dim() + j),
                          std::move(sv));
    }
  if (a.grading().has_value() && b.grading().has_value()) {
    std::vector<uint8_t> par = *a.grading();
    par.insert(par.end(), b.grading()->begin(), b.grading()->end());
    d.set_grading(std::move(par));
  }
  return d;
}

bool morphism_is_valid(const AlgebraMorphism& m) {
  const StructureAlgebra& a = *m.source;
  const StructureAlgebra& b = *m.target;
  if (!a.field()->same_as(*b.field())) return false;
  if (m.matrix.rows() != b.dim() || m.matrix.cols() != a.dim()) return false;
  if (m.apply(a.unit()) != b.unit()) return false;
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.dim(); ++j) {
      Vec ei = vec_zero(a.field(), a.dim()), ej = vec_zero(a.field(), a.dim());
      ei[i] = Scalar::one(a.field());
      ej[j] = Scalar::one(a.field());
      if (m.apply(a.mul(ei, ej)) != b.mul(m.apply(ei), m.apply(ej))) return false;
    }
  return true;
}

}  // namespace sepalg

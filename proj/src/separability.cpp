#include "sepalg/separability.hpp"

namespace sepalg {

namespace {

bool is_graded_commutative(const StructureAlgebra& a) {
  check_usage(a.is_graded(), "graded check on an ungraded algebra");
  const auto& par = *a.grading();
  const FieldRef& f = a.field();
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = i; j < a.dim(); ++j) {
      Vec ei = vec_zero(f, a.dim()), ej = vec_zero(f, a.dim());
      ei[i] = Scalar::one(f);
      ej[j] = Scalar::one(f);
      Vec lhs = a.mul(ei, ej);
      Vec rhs = a.mul(ej, ei);
      if (par[i] && par[j]) rhs = vec_scale(-Scalar::one(f), rhs);
      if (lhs != rhs) return false;
    }
  return true;
}

// Coefficient matrix of the witness system. Rows: dim equations for
// mu(e) = 1, then dim^3 centrality equations. Columns: dim^2 unknowns.
// When graded, the right action carries the Koszul sign.
std::pair<Matrix, Vec> witness_system(const StructureAlgebra& a, bool graded) {
  const FieldRef& f = a.field();
  const size_t n = a.dim();
  const size_t cols = n * n;
  Matrix m(f, n + n * cols, cols);
  Vec rhs = vec_zero(f, n + n * cols);
  // mu(e) = 1.
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.basis_product(i, j)) m.at(k, i * n + j) += c;
  for (uint32_t k = 0; k < n; ++k) rhs[k] = a.unit()[k];
  // (b_m (x) 1) e = (1 (x) b_m) e, coefficientwise at (k, l).
  const auto* par = graded ? &*a.grading() : nullptr;
  for (uint32_t bm = 0; bm < n; ++bm) {
    size_t base = n + bm * cols;
    for (uint32_t i = 0; i < n; ++i) {
      // Left side: contributes c_{bm,i}^k at rows (k, l), columns (i, l).
      for (const auto& [k, c] : a.basis_product(bm, i))
        for (uint32_t l = 0; l < n; ++l) m.at(base + k * n + l, i * n + l) += c;
      // Right side: contributes c_{bm,j}^l at rows (k, l), columns (k, j),
      // with sign (-1)^{|bm||k|} in the graded case.
      for (const auto& [l, c] : a.basis_product(bm, i))
        for (uint32_t kk = 0; kk < n; ++kk) {
          Scalar v = c;
          if (par && (*par)[bm] && (*par)[kk]) v = -v;
          m.at(base + kk * n + l, kk * n + i) -= v;
        }
    }
  }
  return {std::move(m), std::move(rhs)};
}

std::optional<SeparabilityWitness> solve_witness(const StructureAlgebra& a, bool graded) {
  if (a.is_zero_algebra()) {
    // The zero algebra is separable with the empty witness (mu(0) = 0 = unit).
    return SeparabilityWitness{Vec{}};
  }
  auto [m, rhs] = witness_system(a, graded);
  auto sol = solve_linear(m, rhs);
  if (!sol.has_value()) return std::nullopt;
  check_internal(sol->kernel.empty(),
                 "separability witness is not unique on a commutative algebra");
  SeparabilityWitness w{sol->particular};
  check_internal(verify_witness(a, w), "solved witness failed verification");
  return w;
}

}  // namespace

StructureAlgebra tensor_square(const StructureAlgebra& a) {
  if (!a.is_graded()) return StructureAlgebra::tensor_product(a, a);
  const FieldRef& f = a.field();
  const auto& par = *a.grading();
  size_t n = a.dim();
  size_t nn = n * n;
  Vec unit = vec_zero(f, nn);
  std::vector<std::string> labels;
  labels.reserve(nn);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      labels.push_back(a.basis_labels()[i] + "@" + a.basis_labels()[j]);
      Scalar c = a.unit()[i] * a.unit()[j];
      if (!c.is_zero()) unit[i * n + j] = c;
    }
  StructureAlgebra t(f, nn, std::move(labels), std::move(unit));
  // (x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'.
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      for (uint32_t i2 = 0; i2 < n; ++i2)
        for (uint32_t j2 = 0; j2 < n; ++j2) {
          const SparseVec& pa = a.basis_product(i, i2);
          if (pa.empty()) continue;
          const SparseVec& pb = a.basis_product(j, j2);
          if (pb.empty()) continue;
          bool neg = par[j] && par[i2];
          SparseVec sv;
          for (const auto& [ka, ca] : pa)
            for (const auto& [kb, cb] : pb) {
              Scalar c = ca * cb;
              if (neg) c = -c;
              sv.push_back({static_cast<uint32_t>(ka * n + kb), c});
            }
          t.set_basis_product(i * n + j, i2 * n + j2, std::move(sv));
        }
  std::vector<uint8_t> tpar(nn);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) tpar[i * n + j] = (par[i] + par[j]) % 2;
  t.set_grading(std::move(tpar));
  return t;
}

std::optional<SeparabilityWitness> separability_idempotent(const StructureAlgebra& a) {
  check_usage(a.is_commutative(), "separability idempotent is defined here for commutative input");
  return solve_witness(a, false);
}

std::optional<SeparabilityWitness> graded_separability_idempotent(const StructureAlgebra& a) {
  check_usage(a.is_graded(), "graded solver needs a graded algebra");
  check_usage(is_graded_commutative(a), "input is not graded-commutative");
  auto w = solve_witness(a, true);
  if (w.has_value() && !a.is_zero_algebra()) {
    // Witness found: the odd part must be zero and the even part etale.
    const auto& par = *a.grading();
    size_t odd = 0;
    for (uint8_t p : par) odd += p;
    check_internal(odd == 0, "graded witness found despite a nonzero odd part");
    check_internal(etale_via_trace_form(a), "graded witness found on a non-etale even part");
  }
  return w;
}

std::optional<size_t> witness_solution_space_dim(const StructureAlgebra& a, bool graded) {
  if (a.is_zero_algebra()) return 0;
  auto [m, rhs] = witness_system(a, graded);
  auto sol = solve_linear(m, rhs);
  if (!sol.has_value()) return std::nullopt;
  return sol->kernel.size();
}

bool etale_via_trace_form(const StructureAlgebra& a) {
  if (a.is_zero_algebra()) return true;
  return !a.trace_form().determinant().is_zero();
}

bool verify_witness(const StructureAlgebra& a, const SeparabilityWitness& w) {
  const FieldRef& f = a.field();
  size_t n = a.dim();
  if (n == 0) return w.e.empty();
  if (w.e.size() != n * n) return false;
  // mu(e) = 1.
  Vec mu = vec_zero(f, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      const Scalar& c = w.e[i * n + j];
      if (c.is_zero()) continue;
      for (const auto& [k, s] : a.basis_product(i, j)) mu[k] += c * s;
    }
  if (mu != a.unit()) return false;
  StructureAlgebra t = tensor_square(a);
  // Centrality and idempotency inside the tensor square.
  for (uint32_t bm = 0; bm < n; ++bm) {
    Vec bl = vec_zero(f, n * n), br = vec_zero(f, n * n);
    for (uint32_t j = 0; j < n; ++j) {
      // b_m (x) 1 and 1 (x) b_m in tensor coordinates.
      if (!a.unit()[j].is_zero()) {
        bl[bm * n + j] = a.unit()[j];
        br[j * n + bm] = a.unit()[j];
      }
    }
    if (t.mul(bl, w.e) != t.mul(br, w.e)) return false;
  }
  return t.mul(w.e, w.e) == w.e;
}

SeparabilityWitness combine_tensor_witnesses(const StructureAlgebra& a,
                                             const SeparabilityWitness& wa,
                                             const StructureAlgebra& b,
                                             const SeparabilityWitness& wb) {
  // e_{a(x)b} = sum e_a[i,j] e_b[k,l] (b_i (x) c_k) (x) (b_j (x) c_l).
  const FieldRef& f = a.field();
  size_t na = a.dim(), nb = b.dim();
  size_t n = na * nb;
  Vec e = vec_zero(f, n * n);
  for (uint32_t i = 0; i < na; ++i)
    for (uint32_t j = 0; j < na; ++j) {
      const Scalar& ca = wa.e[i * na + j];
      if (ca.is_zero()) continue;
      for (uint32_t k = 0; k < nb; ++k)
        for (uint32_t l = 0; l < nb; ++l) {
          const Scalar& cb = wb.e[k * nb + l];
          if (cb.is_zero()) continue;
          size_t row = i * nb + k, col = j * nb + l;
          e[row * n + col] += ca * cb;
        }
    }
  return {std::move(e)};
}

SeparabilityWitness combine_product_witnesses(const StructureAlgebra& a,
                                              const SeparabilityWitness& wa,
                                              const StructureAlgebra& b,
                                              const SeparabilityWitness& wb) {
  const FieldRef& f = a.field();
  size_t na = a.dim(), nb = b.dim();
  size_t n = na + nb;
  Vec e = vec_zero(f, n * n);
  for (uint32_t i = 0; i < na; ++i)
    for (uint32_t j = 0; j < na; ++j) e[i * n + j] = wa.e[i * na + j];
  for (uint32_t i = 0; i < nb; ++i)
    for (uint32_t j = 0; j < nb; ++j) e[(na + i) * n + (na + j)] = wb.e[i * nb + j];
  return {std::move(e)};
}

ValidationReport validate_module(const StructureAlgebra& a, const AlgebraModule& m) {
  ValidationReport rep;
  if (m.basis_action.size() != a.dim()) {
    rep.fail("one action matrix per algebra basis vector required");
    return rep;
  }
  const FieldRef& f = a.field();
  for (const Matrix& mat : m.basis_action)
    if (mat.rows() != m.dim || mat.cols() != m.dim) {
      rep.fail("module action matrix shape mismatch");
      return rep;
    }
  // Unit acts as the identity.
  Matrix unit_act(f, m.dim, m.dim);
  for (uint32_t i = 0; i < a.dim(); ++i) {
    if (a.unit()[i].is_zero()) continue;
    for (size_t r = 0; r < m.dim; ++r)
      for (size_t c = 0; c < m.dim; ++c)
        unit_act.at(r, c) += a.unit()[i] * m.basis_action[i].at(r, c);
  }
  if (!(unit_act == Matrix::identity(f, m.dim))) rep.fail("module unit law fails");
  // Action respects products.
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t j = 0; j < a.dim(); ++j) {
      Matrix lhs = m.basis_action[i] * m.basis_action[j];
      Matrix rhs(f, m.dim, m.dim);
      for (const auto& [k, c] : a.basis_product(i, j))
        for (size_t r = 0; r < m.dim; ++r)
          for (size_t cc = 0; cc < m.dim; ++cc) rhs.at(r, cc) += c * m.basis_action[k].at(r, cc);
      if (!(lhs == rhs)) {
        rep.fail("module action violates product at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
        return rep;
      }
    }
  return rep;
}

bool counit_section_check(const StructureAlgebra& a, const SeparabilityWitness& w,
                          const AlgebraModule& m) {
  check_usage(validate_module(a, m).ok, "invalid module");
  check_usage(verify_witness(a, w), "invalid separability witness");
  const FieldRef& f = a.field();
  size_t n = a.dim(), d = m.dim;
  // xi: M -> A (x) M, v -> sum e[i,j] b_i (x) (b_j . v).
  Matrix xi(f, n * d, d);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      const Scalar& c = w.e[i * n + j];
      if (c.is_zero()) continue;
      for (size_t r = 0; r < d; ++r)
        for (size_t cc = 0; cc < d; ++cc) xi.at(i * d + r, cc) += c * m.basis_action[j].at(r, cc);
    }
  // eps: A (x) M -> M, b_i (x) v -> b_i . v.
  Matrix eps(f, d, n * d);
  for (uint32_t i = 0; i < n; ++i)
    for (size_t r = 0; r < d; ++r)
      for (size_t cc = 0; cc < d; ++cc) eps.at(r, i * d + cc) = m.basis_action[i].at(r, cc);
  if (!(eps * xi == Matrix::identity(f, d))) return false;
  // A-linearity: xi(b_t . v) = (b_t (x) 1) . xi(v).
  for (uint32_t t = 0; t < n; ++t) {
    Matrix lhs = xi * m.basis_action[t];
    Matrix bt(f, n * d, n * d);
    for (uint32_t i = 0; i < n; ++i)
      for (const auto& [k, c] : a.basis_product(t, i))
        for (size_t r = 0; r < d; ++r) bt.at(k * d + r, i * d + r) += c;
    Matrix rhs = bt * xi;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace sepalg

#include "sepalg/tower.hpp"

#include <algorithm>

namespace sepalg {

namespace {

Vec basis_vec(const FieldRef& f, size_t n, size_t i) {
  Vec v = vec_zero(f, n);
  v[i] = Scalar::one(f);
  return v;
}

// x (x) 1 in tensor-square coordinates (index i*dim + j).
Vec left_tensor(const StructureAlgebra& b, const Vec& x) {
  const FieldRef& f = b.field();
  size_t d = b.dim();
  Vec v = vec_zero(f, d * d);
  for (size_t i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t u = 0; u < d; ++u) {
      const Scalar& c = b.unit()[u];
      if (!c.is_zero()) v[i * d + u] += x[i] * c;
    }
  }
  return v;
}

Vec right_tensor(const StructureAlgebra& b, const Vec& x) {
  const FieldRef& f = b.field();
  size_t d = b.dim();
  Vec v = vec_zero(f, d * d);
  for (size_t j = 0; j < d; ++j) {
    if (x[j].is_zero()) continue;
    for (size_t u = 0; u < d; ++u) {
      const Scalar& c = b.unit()[u];
      if (!c.is_zero()) v[u * d + j] += x[j] * c;
    }
  }
  return v;
}

}  // namespace

RelativeAlgebra make_relative(StructureAlgebra base, StructureAlgebra total,
                              Matrix structure_map) {
  RelativeAlgebra rel{std::move(base), std::move(total), std::move(structure_map)};
  AlgebraMorphism m{&rel.base, &rel.total, rel.structure_map};
  check_usage(morphism_is_valid(m), "structure map is not a unital algebra homomorphism");
  return rel;
}

RelativeAlgebra over_ground_field(StructureAlgebra total) {
  const FieldRef& f = total.field();
  StructureAlgebra base = StructureAlgebra::base_field(f);
  Matrix map(f, total.dim(), 1);
  for (size_t i = 0; i < total.dim(); ++i) map.at(i, 0) = total.unit()[i];
  return make_relative(std::move(base), std::move(total), std::move(map));
}

RelativeTensorSquare relative_tensor_square(const RelativeAlgebra& rel) {
  const StructureAlgebra& bb = rel.total;
  const StructureAlgebra& rr = rel.base;
  const FieldRef& f = bb.field();
  size_t n = bb.dim();
  StructureAlgebra amb = StructureAlgebra::tensor_product(bb, bb);

  // Relativization ideal: (r x) (x) y - x (x) (r y).
  std::vector<Vec> gens;
  for (size_t r = 0; r < rr.dim(); ++r) {
    Vec rim(n, Scalar::zero(f));
    for (size_t i = 0; i < n; ++i) rim[i] = rel.structure_map.at(i, r);
    for (size_t x = 0; x < n; ++x) {
      Vec rx = bb.mul(rim, basis_vec(f, n, x));
      for (size_t y = 0; y < n; ++y) {
        Vec ry = bb.mul(rim, basis_vec(f, n, y));
        Vec v = vec_zero(f, n * n);
        for (size_t i = 0; i < n; ++i) {
          if (!rx[i].is_zero()) v[i * n + y] += rx[i];
          if (!ry[i].is_zero()) v[x * n + i] -= ry[i];
        }
        if (!vec_is_zero(v)) gens.push_back(std::move(v));
      }
    }
  }
  QuotientData q = quotient_by_ideal(amb, gens);

  RelativeTensorSquare out{std::move(q.algebra), Matrix(f, 0, 0), Matrix(f, 0, 0),
                           Matrix(f, 0, 0)};
  size_t m = out.algebra.dim();
  out.left_map = Matrix(f, m, n);
  out.right_map = Matrix(f, m, n);
  for (size_t x = 0; x < n; ++x) {
    Vec l = q.projection.apply(left_tensor(bb, basis_vec(f, n, x)));
    Vec r = q.projection.apply(right_tensor(bb, basis_vec(f, n, x)));
    for (size_t i = 0; i < m; ++i) {
      out.left_map.at(i, x) = l[i];
      out.right_map.at(i, x) = r[i];
    }
  }
  // Multiplication B (x)_R B -> B on quotient representatives.
  out.mult_map = Matrix(f, n, m);
  for (size_t c = 0; c < m; ++c) {
    Vec rep(n * n, Scalar::zero(f));
    for (size_t i = 0; i < n * n; ++i) rep[i] = q.section.at(i, c);
    Vec mu = vec_zero(f, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (rep[i * n + j].is_zero()) continue;
        Vec prod = bb.mul(basis_vec(f, n, i), basis_vec(f, n, j));
        mu = vec_add(mu, vec_scale(rep[i * n + j], prod));
      }
    for (size_t i = 0; i < n; ++i) out.mult_map.at(i, c) = mu[i];
  }
  return out;
}

SplittingStep splitting_step(const RelativeAlgebra& rel) {
  const FieldRef& f = rel.total.field();
  size_t nb = rel.total.dim();
  if (nb == 0) return {StructureAlgebra::zero_algebra(f), Matrix(f, 0, 0)};
  RelativeTensorSquare t = relative_tensor_square(rel);
  const StructureAlgebra& T = t.algebra;
  size_t N = T.dim();

  // Relative separability system: mult(e) = 1, (b (x) 1) e = (1 (x) b) e.
  Matrix sys(f, nb + nb * N, N);
  Vec rhs = vec_zero(f, nb + nb * N);
  for (size_t r = 0; r < nb; ++r) {
    for (size_t c = 0; c < N; ++c) sys.at(r, c) = t.mult_map.at(r, c);
    rhs[r] = rel.total.unit()[r];
  }
  for (size_t b = 0; b < nb; ++b) {
    Vec lb(N, Scalar::zero(f)), rb(N, Scalar::zero(f));
    for (size_t i = 0; i < N; ++i) {
      lb[i] = t.left_map.at(i, b);
      rb[i] = t.right_map.at(i, b);
    }
    Matrix diff = T.left_mult_matrix(lb) - T.left_mult_matrix(rb);
    for (size_t i = 0; i < N; ++i)
      for (size_t c = 0; c < N; ++c) sys.at(nb + b * N + i, c) = diff.at(i, c);
  }
  auto sol = solve_linear(sys, rhs);
  if (!sol.has_value()) throw DomainError("not separable over base");
  check_internal(sol->kernel.empty(), "relative separability witness is not unique");
  const Vec& e = sol->particular;
  check_internal(T.mul(e, e) == e, "relative separability witness is not idempotent");

  // Assert the splitting B (x)_R B = B x A' with first projection mu:
  // b -> e (b (x) 1) is inverse to mu on the e-part.
  Matrix phi(f, N, nb);
  for (size_t b = 0; b < nb; ++b) {
    Vec lb(N, Scalar::zero(f));
    for (size_t i = 0; i < N; ++i) lb[i] = t.left_map.at(i, b);
    Vec img = T.mul(e, lb);
    Vec back = t.mult_map.apply(img);
    check_internal(back == basis_vec(f, nb, b), "mu does not invert e(b (x) 1)");
    for (size_t i = 0; i < N; ++i) phi.at(i, b) = img[i];
  }
  check_internal(phi.rank() == nb, "e-part is not isomorphic to the total algebra");

  Vec comp = vec_sub(T.unit(), e);
  if (vec_is_zero(comp)) {
    return {StructureAlgebra::zero_algebra(f), Matrix(f, 0, rel.total.dim())};
  }
  // Slice (1-e) T with explicit basis bookkeeping for the structure map.
  RowSpan span(f, N);
  std::vector<Vec> basis;
  for (size_t i = 0; i < N; ++i) {
    Vec v = T.mul(comp, basis_vec(f, N, i));
    if (span.insert(v)) basis.push_back(std::move(v));
  }
  StructureAlgebra next = T.subalgebra(basis, comp, default_labels("a", basis.size()));
  // Coordinates in `basis` = inv(to_span) * span.coordinates(.).
  Matrix to_span(f, basis.size(), basis.size());
  for (size_t c = 0; c < basis.size(); ++c) {
    auto coords = span.coordinates(basis[c]);
    check_internal(coords.has_value(), "slice coordinates missing");
    for (size_t r = 0; r < basis.size(); ++r) to_span.at(r, c) = (*coords)[r];
  }
  auto inv = to_span.inverse();
  check_internal(inv.has_value(), "slice basis change is singular");
  Matrix map(f, basis.size(), nb);
  for (size_t b = 0; b < nb; ++b) {
    Vec lb(N, Scalar::zero(f));
    for (size_t i = 0; i < N; ++i) lb[i] = t.left_map.at(i, b);
    Vec img = T.mul(comp, lb);
    auto coords = span.coordinates(img);
    check_internal(coords.has_value(), "structure map image outside the slice");
    Vec cc = inv->apply(*coords);
    for (size_t r = 0; r < basis.size(); ++r) map.at(r, b) = cc[r];
  }
  return {std::move(next), std::move(map)};
}

namespace {

struct TowerComponent {
  FieldRef field;
  StructureAlgebra fiber;
  size_t field_dim_over_ground = 1;
};

struct SliceFiber {
  FieldRef field;
  size_t field_dim_over_prime = 1;
  StructureAlgebra fiber;
};

// Minimal polynomial over the prime field of an element u of a commutative
// algebra over F = F_{p^s}, with u^0 taken as the given local unit.
Poly min_poly_over_prime(const StructureAlgebra& amb, const Vec& u, const Vec& local_unit) {
  const FieldRef& F = amb.field();
  check_internal(F->is_finite(), "prime-field minimal polynomial needs a finite field");
  FieldRef fp = Field::prime(F->p());
  size_t s = F->kind() == Field::Kind::Extension ? F->degree() : 1;
  size_t n = amb.dim();
  auto flatten = [&](const Vec& v) {
    Vec out = vec_zero(fp, n * s);
    for (size_t i = 0; i < n; ++i) {
      if (F->kind() == Field::Kind::Extension) {
        const auto& coords = v[i].ext_value();
        for (size_t t = 0; t < s; ++t) out[i * s + t] = Scalar::residue(fp, coords[t]);
      } else {
        out[i] = Scalar::residue(fp, v[i].residue_value());
      }
    }
    return out;
  };
  std::vector<Vec> powers;
  Vec cur = local_unit;
  while (true) {
    Vec flat = flatten(cur);
    Matrix m(fp, n * s, powers.size());
    for (size_t c = 0; c < powers.size(); ++c)
      for (size_t r = 0; r < n * s; ++r) m.at(r, c) = powers[c][r];
    auto sol = solve_linear(m, flat);
    if (sol.has_value()) {
      std::vector<Scalar> cs(powers.size() + 1, Scalar::zero(fp));
      for (size_t i = 0; i < powers.size(); ++i) cs[i] = -sol->particular[i];
      cs[powers.size()] = Scalar::one(fp);
      return Poly(fp, std::move(cs));
    }
    powers.push_back(flat);
    cur = amb.mul(cur, u);
    check_internal(powers.size() <= n * s + 1, "minimal polynomial search exceeded dimension");
  }
}

// Rebases the slice z * amb as an algebra over its residue field. The field
// is F itself when e_deg == 1; otherwise it is the degree-e_deg extension
// generated by one of the supplied candidates.
SliceFiber rebase_slice(const StructureAlgebra& amb, const Vec& z,
                        const std::vector<Vec>& field_gen_candidates, size_t e_deg, Rng& rng) {
  const FieldRef& F = amb.field();
  size_t n = amb.dim();
  size_t s = F->kind() == Field::Kind::Extension ? F->degree() : 1;

  RowSpan span(F, n);
  for (size_t i = 0; i < n; ++i) span.insert(amb.mul(z, basis_vec(F, n, i)));
  size_t m = span.dim();
  if (m == 0)
    return {F, F->kind() == Field::Kind::Extension ? static_cast<size_t>(F->degree()) : 1,
            StructureAlgebra::zero_algebra(F)};

  if (e_deg == 1) {
    SliceFiber out{F, s, StructureAlgebra::zero_algebra(F)};
    std::vector<Vec> basis = span.basis();
    out.fiber = amb.subalgebra(basis, z, default_labels("w", basis.size()));
    return out;
  }

  check_internal(e_deg >= 2, "bad residue degree");
  if (!F->is_finite())
    throw CapacityError("tower stage has a number-field component; only Q itself is supported");
  size_t total_deg = s * e_deg;
  if (total_deg > 8)
    throw CapacityError("tower residue field exceeds the F_{p^8} extension bound");

  // Find a field generator among the candidates (they span the residue field
  // together with seeded combinations).
  Vec gen;
  Poly modulus;
  bool found = false;
  std::vector<Vec> pool = field_gen_candidates;
  for (int attempt = 0; attempt < 400 && !found; ++attempt) {
    Vec u;
    if (static_cast<size_t>(attempt) < pool.size()) {
      u = pool[attempt];
    } else {
      u = vec_zero(F, n);
      for (const Vec& c : pool) {
        uint64_t r = rng.below(F->is_finite() ? F->p() : 7);
        u = vec_add(u, vec_scale(Scalar::of_int(F, static_cast<long>(r)), c));
      }
    }
    if (vec_is_zero(u)) continue;
    Poly mp = min_poly_over_prime(amb, u, z);
    if (mp.degree() == static_cast<int>(total_deg)) {
      gen = u;
      modulus = mp;
      found = true;
    }
  }
  check_internal(found, "no generator found for the residue field");

  std::vector<uint64_t> mod_coeffs;
  for (int i = 0; i <= modulus.degree(); ++i) mod_coeffs.push_back(modulus.coeff(i).residue_value());
  FieldRef Fp = Field::extension(F->p(), static_cast<int>(total_deg), mod_coeffs);

  // Embed F into F' when F is itself an extension: send F's generator to a
  // root of its modulus in F'.
  Scalar gen_image = Scalar::zero(Fp);
  if (F->kind() == Field::Kind::Extension) {
    std::vector<Scalar> cs;
    for (uint64_t c : F->modulus()) cs.push_back(Scalar::of_int(Fp, static_cast<long>(c)));
    Poly fmod(Fp, cs);
    Rng det_rng(12345);
    auto factors = factor_polynomial(fmod, det_rng);
    std::vector<Scalar> roots;
    for (const auto& [fac, mult] : factors) {
      (void)mult;
      if (fac.degree() == 1) roots.push_back(-fac.coeff(0));
    }
    check_internal(!roots.empty(), "base field modulus has no root in the residue field");
    std::sort(roots.begin(), roots.end(),
              [](const Scalar& a, const Scalar& b) { return a.ext_value() < b.ext_value(); });
    gen_image = roots[0];
  }
  auto embed = [&](const Scalar& lam) {
    if (F->kind() == Field::Kind::Prime)
      return Scalar::of_int(Fp, static_cast<long>(lam.residue_value()));
    Scalar acc = Scalar::zero(Fp);
    Scalar pw = Scalar::one(Fp);
    for (uint64_t c : lam.ext_value()) {
      acc += Scalar::of_int(Fp, static_cast<long>(c)) * pw;
      pw *= gen_image;
    }
    return acc;
  };

  // Multiplication by the generator on the slice, in slice coordinates.
  auto to_slice = [&](const Vec& v) {
    auto c = span.coordinates(v);
    check_internal(c.has_value(), "vector outside the slice");
    return *c;
  };
  auto from_slice = [&](const Vec& c) {
    Vec v = vec_zero(F, n);
    for (size_t r = 0; r < m; ++r) v = vec_add(v, vec_scale(c[r], span.basis()[r]));
    return v;
  };
  Matrix U(F, m, m);
  for (size_t c = 0; c < m; ++c) {
    Vec img = to_slice(amb.mul(gen, span.basis()[c]));
    for (size_t r = 0; r < m; ++r) U.at(r, c) = img[r];
  }

  // Pick an F'-basis of the slice greedily; each pick spans e_deg columns.
  std::vector<size_t> picks;
  RowSpan orbit(F, m);
  for (size_t cand = 0; cand < m; ++cand) {
    Vec v = basis_vec(F, m, cand);
    if (orbit.contains(v)) continue;
    picks.push_back(cand);
    Vec cur = v;
    for (size_t i = 0; i < e_deg; ++i) {
      orbit.insert(cur);
      cur = U.apply(cur);
    }
  }
  check_internal(picks.size() * e_deg == m, "slice dimension is not divisible by residue degree");
  size_t fdim = picks.size();

  Matrix C(F, m, m);
  for (size_t r = 0; r < fdim; ++r) {
    Vec cur = basis_vec(F, m, picks[r]);
    for (size_t i = 0; i < e_deg; ++i) {
      for (size_t row = 0; row < m; ++row) C.at(row, r * e_deg + i) = cur[row];
      cur = U.apply(cur);
    }
  }
  auto Cinv = C.inverse();
  check_internal(Cinv.has_value(), "residue-field coordinate change is singular");

  auto to_fiber_coords = [&](const Vec& slice_coords) {
    Vec lam = Cinv->apply(slice_coords);
    Vec out = vec_zero(Fp, fdim);
    Scalar tau = Scalar::ext_coords(Fp, [&] {
      std::vector<uint64_t> t(total_deg, 0);
      if (total_deg > 1) t[1] = 1;
      return t;
    }());
    for (size_t r = 0; r < fdim; ++r) {
      Scalar acc = Scalar::zero(Fp);
      Scalar pw = Scalar::one(Fp);
      for (size_t i = 0; i < e_deg; ++i) {
        acc += embed(lam[r * e_deg + i]) * pw;
        pw *= tau;
      }
      out[r] = acc;
    }
    return out;
  };

  Vec unit_fiber = to_fiber_coords(to_slice(z));
  StructureAlgebra fiber(Fp, fdim, default_labels("w", fdim), unit_fiber);
  for (uint32_t r = 0; r < fdim; ++r) {
    Vec wr = from_slice(basis_vec(F, m, picks[r]));
    for (uint32_t t = 0; t < fdim; ++t) {
      Vec wt = from_slice(basis_vec(F, m, picks[t]));
      Vec prod = to_fiber_coords(to_slice(amb.mul(wr, wt)));
      SparseVec sv;
      for (uint32_t k = 0; k < fdim; ++k)
        if (!prod[k].is_zero()) sv.push_back({k, prod[k]});
      fiber.set_basis_product(r, t, std::move(sv));
    }
  }
  return {Fp, total_deg, std::move(fiber)};
}

// One splitting step on a single fiber over its field; returns the new
// components (the fibers of A' over the field components of the old fiber).
std::vector<TowerComponent> component_step(const TowerComponent& comp, Rng& rng) {
  const StructureAlgebra& B = comp.fiber;
  const FieldRef& F = comp.field;
  size_t d = B.dim();
  check_internal(d > 0, "stepping an empty component");

  Matrix tf = B.trace_form();
  auto tf_inv = tf.inverse();
  if (!tf_inv.has_value()) throw DomainError("not separable over base");

  StructureAlgebra T = StructureAlgebra::tensor_product(B, B);
  size_t N = d * d;
  // Trace-dual separability idempotent e = sum b_i (x) b_i^*.
  Vec e = vec_zero(F, N);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) e[i * d + j] = tf_inv->at(j, i);
  // Verify the witness exactly.
  Vec mu = vec_zero(F, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      if (e[i * d + j].is_zero()) continue;
      for (const auto& [k, s] : B.basis_product(static_cast<uint32_t>(i), static_cast<uint32_t>(j)))
        mu[k] += e[i * d + j] * s;
    }
  check_internal(mu == B.unit(), "trace-dual element does not section the multiplication");
  check_internal(T.mul(e, e) == e, "trace-dual element is not idempotent");
  for (size_t bm = 0; bm < d; ++bm) {
    Vec bl = left_tensor(B, basis_vec(F, d, bm));
    Vec br = right_tensor(B, basis_vec(F, d, bm));
    check_internal(T.mul(bl, e) == T.mul(br, e), "trace-dual element is not central");
  }

  Vec comp_idem = vec_sub(T.unit(), e);
  std::vector<TowerComponent> out;
  if (vec_is_zero(comp_idem)) return out;

  IdempotentDecomposition dec = primitive_idempotents(B, rng);
  for (const Vec& eps : dec.idempotents) {
    // Residue field degree: dimension of eps * B.
    RowSpan eps_span(F, d);
    for (size_t i = 0; i < d; ++i) eps_span.insert(B.mul(eps, basis_vec(F, d, i)));
    size_t e_deg = eps_span.dim();

    Vec z = T.mul(comp_idem, left_tensor(B, eps));
    if (vec_is_zero(z)) continue;
    std::vector<Vec> candidates;
    for (const Vec& v : eps_span.basis()) candidates.push_back(T.mul(z, left_tensor(B, v)));
    SliceFiber sf = rebase_slice(T, z, candidates, e_deg, rng);
    if (sf.fiber.dim() == 0) continue;
    // field_dim_over_ground is filled in by the tower driver, which knows the
    // ground field; store the prime-field degree for now.
    out.push_back({sf.field, std::move(sf.fiber), sf.field_dim_over_prime});
  }
  return out;
}

// Restriction of scalars of a fiber over F_{p^s} down to F_p.
StructureAlgebra restrict_scalars(const StructureAlgebra& fiber, const FieldRef& ground) {
  const FieldRef& Fp = fiber.field();
  if (Fp->same_as(*ground)) return fiber;
  check_internal(Fp->kind() == Field::Kind::Extension && ground->kind() == Field::Kind::Prime &&
                     Fp->p() == ground->p(),
                 "restriction of scalars only from an extension to its prime field");
  size_t s = Fp->degree();
  size_t n = fiber.dim() * s;
  auto expand = [&](const Scalar& c, size_t base_index, Vec& into) {
    const auto& coords = c.ext_value();
    for (size_t t = 0; t < s; ++t)
      into[base_index + t] += Scalar::residue(ground, coords[t]);
  };
  Vec unit = vec_zero(ground, n);
  for (size_t r = 0; r < fiber.dim(); ++r) expand(fiber.unit()[r], r * s, unit);
  std::vector<std::string> labels;
  for (size_t r = 0; r < fiber.dim(); ++r)
    for (size_t t = 0; t < s; ++t)
      labels.push_back(fiber.basis_labels()[r] + (t == 0 ? "" : ".t" + std::to_string(t)));
  StructureAlgebra out(ground, n, std::move(labels), std::move(unit));
  Scalar tau = Scalar::ext_coords(Fp, [&] {
    std::vector<uint64_t> t(s, 0);
    if (s > 1) t[1] = 1;
    return t;
  }());
  for (uint32_t r = 0; r < fiber.dim(); ++r)
    for (uint32_t t = 0; t < fiber.dim(); ++t) {
      const SparseVec& prod = fiber.basis_product(r, t);
      if (prod.empty()) continue;
      for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) {
          Scalar ti = Scalar::one(Fp);
          for (size_t w = 0; w < i + j; ++w) ti *= tau;
          Vec row = vec_zero(ground, n);
          for (const auto& [k, c] : prod) expand(c * ti, k * s, row);
          SparseVec sv;
          for (uint32_t k = 0; k < n; ++k)
            if (!row[k].is_zero()) sv.push_back({k, row[k]});
          out.set_basis_product(r * s + static_cast<uint32_t>(i), t * s + static_cast<uint32_t>(j),
                                std::move(sv));
        }
    }
  return out;
}

TowerStage stage_from_components(const std::vector<TowerComponent>& comps, const FieldRef& ground,
                                 size_t materialize_cap) {
  TowerStage st;
  bool can_materialize = ground->kind() != Field::Kind::Extension;
  for (const auto& c : comps) {
    st.dim_over_ground += c.fiber.dim() * c.field_dim_over_ground;
    st.components.push_back({c.field->describe(), c.field_dim_over_ground, c.fiber.dim()});
    if (!c.field->same_as(*ground) && ground->kind() == Field::Kind::Extension)
      can_materialize = false;
  }
  if (can_materialize && st.dim_over_ground <= materialize_cap && st.dim_over_ground > 0) {
    StructureAlgebra acc = StructureAlgebra::zero_algebra(ground);
    bool first = true;
    for (const auto& c : comps) {
      StructureAlgebra part = restrict_scalars(c.fiber, ground);
      if (first) {
        acc = std::move(part);
        first = false;
      } else {
        acc = StructureAlgebra::direct_product(acc, part);
      }
    }
    st.materialized = std::move(acc);
  }
  return st;
}

}  // namespace

SplittingTowerRecord splitting_tower(const StructureAlgebra& a, Rng& rng, int max_steps,
                                     size_t materialize_cap) {
  check_usage(a.is_commutative(), "splitting tower needs a commutative algebra");
  const FieldRef& ground = a.field();
  if (max_steps < 0) max_steps = static_cast<int>(a.dim()) + 1;

  SplittingTowerRecord rec;
  TowerStage base;
  base.dim_over_ground = 1;
  base.components.push_back({ground->describe(), 1, 1});
  base.materialized = StructureAlgebra::base_field(ground);
  rec.stages.push_back(std::move(base));

  size_t ground_deg =
      ground->kind() == Field::Kind::Extension ? static_cast<size_t>(ground->degree()) : 1;
  std::vector<TowerComponent> comps;
  if (a.dim() > 0) comps.push_back({ground, a, 1});
  rec.stages.push_back(stage_from_components(comps, ground, materialize_cap));

  int steps = 0;
  while (!comps.empty()) {
    if (steps >= max_steps)
      throw CapacityError("splitting tower exceeded the step bound");
    std::vector<TowerComponent> next;
    for (const auto& c : comps) {
      std::vector<TowerComponent> pieces = component_step(c, rng);
      for (auto& p : pieces) {
        // component_step reports the residue field degree over the prime
        // field; convert to a degree over the ground field.
        if (p.field->kind() != Field::Kind::Rationals) {
          check_internal(p.field_dim_over_ground % ground_deg == 0,
                         "residue field does not contain the ground field");
          p.field_dim_over_ground /= ground_deg;
        }
        next.push_back(std::move(p));
      }
    }
    comps = std::move(next);
    rec.stages.push_back(stage_from_components(comps, ground, materialize_cap));
    ++steps;
  }
  rec.degree = 0;
  for (size_t i = 0; i < rec.stages.size(); ++i)
    if (rec.stages[i].dim_over_ground > 0) rec.degree = static_cast<int>(i);
  return rec;
}

int balmer_degree(const StructureAlgebra& a, Rng& rng) {
  return splitting_tower(a, rng, -1, 0).degree;
}

DegreeFunction degree_function(const RelativeAlgebra& rel, Rng& rng) {
  check_usage(etale_via_trace_form(rel.base), "degree function needs an etale base");
  const FieldRef& F = rel.base.field();
  DegreeFunction out;
  IdempotentDecomposition dec = primitive_idempotents(rel.base, rng);
  for (const Vec& eps : dec.idempotents) {
    RowSpan eps_span(F, rel.base.dim());
    for (size_t i = 0; i < rel.base.dim(); ++i)
      eps_span.insert(rel.base.mul(eps, basis_vec(F, rel.base.dim(), i)));
    size_t e_deg = eps_span.dim();
    Vec z = rel.structure_map.apply(eps);
    std::vector<Vec> candidates;
    for (const Vec& v : eps_span.basis()) candidates.push_back(rel.structure_map.apply(v));
    std::string fdesc;
    int local = 0;
    if (vec_is_zero(z)) {
      fdesc = F->describe() + (e_deg > 1 ? "-ext" : "");
      local = 0;
    } else {
      SliceFiber sf = rebase_slice(rel.total, z, candidates, e_deg, rng);
      fdesc = sf.field->describe();
      local = sf.fiber.dim() == 0 ? 0 : balmer_degree(sf.fiber, rng);
    }
    out.local.push_back({fdesc, local});
    out.global = std::max(out.global, local);
  }
  return out;
}

StructureAlgebra split_retraction(const StructureAlgebra& b, const AlgebraMorphism& g,
                                  const AlgebraMorphism& f, Rng& rng) {
  check_usage(b.is_commutative(), "split retraction needs a commutative algebra");
  check_usage(g.source == &b && f.target == &b && g.target == f.source,
              "retraction morphisms do not line up");
  check_usage(morphism_is_valid(g) && morphism_is_valid(f), "invalid morphism");
  const StructureAlgebra& a = *g.target;
  check_usage(g.matrix * f.matrix == Matrix::identity(b.field(), a.dim()),
              "g o f is not the identity");

  IdempotentDecomposition dec = primitive_idempotents(b, rng);
  Vec e = vec_zero(b.field(), b.dim());
  for (const Vec& eps : dec.idempotents)
    if (!vec_is_zero(g.apply(eps))) e = vec_add(e, eps);
  check_internal(g.apply(e) == a.unit(), "no idempotent maps to the unit under the retraction");

  // g restricted to e*b must be an isomorphism onto a.
  RowSpan span(b.field(), b.dim());
  std::vector<Vec> ebasis;
  for (size_t i = 0; i < b.dim(); ++i) {
    Vec v = b.mul(e, basis_vec(b.field(), b.dim(), i));
    if (span.insert(v)) ebasis.push_back(std::move(v));
  }
  check_internal(ebasis.size() == a.dim(), "e-part dimension does not match the retract");
  Matrix g_on_e(b.field(), a.dim(), ebasis.size());
  for (size_t c = 0; c < ebasis.size(); ++c) {
    Vec img = g.apply(ebasis[c]);
    for (size_t r = 0; r < a.dim(); ++r) g_on_e.at(r, c) = img[r];
  }
  check_internal(g_on_e.rank() == a.dim(), "retraction is not an isomorphism on the e-part");

  Vec comp = vec_sub(b.unit(), e);
  if (vec_is_zero(comp)) return StructureAlgebra::zero_algebra(b.field());
  return b.idempotent_slice(comp);
}

GaloisCheckReport galois_check(const StructureAlgebra& a) {
  check_usage(a.action().has_value(), "galois check needs a group action");
  GaloisCheckReport rep;
  const FieldRef& f = a.field();
  size_t n = a.dim();
  rep.nonzero = n > 0;
  if (!rep.nonzero) {
    rep.detail = "algebra is zero";
    return rep;
  }
  std::vector<Matrix> mats = a.action_element_matrices();
  const GroupRef& g = a.action()->group;

  // Strict invariants must be exactly the line through the unit.
  size_t ngen = a.action()->generator_matrices.size();
  Matrix stacked(f, ngen * n, n);
  for (size_t t = 0; t < ngen; ++t) {
    Matrix diff = a.action()->generator_matrices[t] - Matrix::identity(f, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) stacked.at(t * n + r, c) = diff.at(r, c);
  }
  auto fixed = stacked.kernel_basis();
  rep.invariants_are_base = fixed.size() == 1 && !vec_is_zero(a.unit());
  if (!rep.invariants_are_base)
    rep.detail = "strict invariants have dimension " + std::to_string(fixed.size());

  // Shear map h(a1 (x) a2) = (a1 g(a2))_g as a |G| n x n^2 matrix.
  size_t order = g->order();
  if (order * n != n * n) {
    rep.shear_is_isomorphism = false;
    if (rep.detail.empty()) rep.detail = "shear map is not square";
  } else {
    Matrix h(f, order * n, n * n);
    for (size_t gi = 0; gi < order; ++gi)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          Vec gij = mats[gi].apply(basis_vec(f, n, j));
          Vec prod = a.mul(basis_vec(f, n, i), gij);
          for (size_t r = 0; r < n; ++r)
            if (!prod[r].is_zero()) h.at(gi * n + r, i * n + j) += prod[r];
        }
    rep.shear_is_isomorphism = h.rank() == n * n;
    if (!rep.shear_is_isomorphism && rep.detail.empty()) rep.detail = "shear map is singular";
  }
  rep.ok = rep.invariants_are_base && rep.shear_is_isomorphism && rep.nonzero;
  return rep;
}

StructureAlgebra fixed_subalgebra(const StructureAlgebra& a, const Subgroup& k_sub) {
  check_usage(a.action().has_value(), "fixed subalgebra needs a group action");
  check_usage(k_sub.parent() == a.action()->group, "subgroup of a different group");
  const FieldRef& f = a.field();
  size_t n = a.dim();
  std::vector<Matrix> mats = a.action_element_matrices();
  std::vector<uint32_t> gens = k_sub.generators();
  if (gens.empty()) return a;  // trivial subgroup fixes everything
  Matrix stacked(f, gens.size() * n, n);
  for (size_t t = 0; t < gens.size(); ++t) {
    Matrix diff = mats[gens[t]] - Matrix::identity(f, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) stacked.at(t * n + r, c) = diff.at(r, c);
  }
  std::vector<Vec> basis = stacked.kernel_basis();
  if (basis.empty()) return StructureAlgebra::zero_algebra(f);
  return a.subalgebra(basis, a.unit(), default_labels("f", basis.size()));
}

}  // namespace sepalg

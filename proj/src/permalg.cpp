#include "sepalg/permalg.hpp"

#include <algorithm>

namespace sepalg {

namespace {

Vec basis_vec(const FieldRef& f, size_t n, size_t i) {
  Vec v = vec_zero(f, n);
  v[i] = Scalar::one(f);
  return v;
}

Matrix perm_matrix(const FieldRef& f, const Perm& p) {
  Matrix m(f, p.size(), p.size());
  for (size_t j = 0; j < p.size(); ++j) m.at(p[j], j) = Scalar::one(f);
  return m;
}

}  // namespace

PermutationAlgebra permutation_algebra(const PermutationAlgebraSpec& spec) {
  const FieldRef& f = spec.field;
  const GSet& x = spec.xset;
  check_usage(x.group == spec.group, "G-set belongs to a different group");
  size_t n = x.size();
  Vec unit(n, Scalar::one(f));  // eta(1) = sum_x x
  StructureAlgebra a(f, n, x.points, std::move(unit));
  for (uint32_t i = 0; i < n; ++i) a.add_structure_entry(i, i, i, Scalar::one(f));
  GroupAction act;
  act.group = spec.group;
  for (const Perm& p : x.generator_action) act.generator_matrices.push_back(perm_matrix(f, p));
  a.set_action(std::move(act));

  SeparabilityWitness w;
  w.e = vec_zero(f, n * n);
  for (size_t i = 0; i < n; ++i) w.e[i * n + i] = Scalar::one(f);
  check_internal(verify_witness(a, w), "diagonal witness failed verification");
  return {std::move(a), std::move(w)};
}

std::vector<Matrix> GModule::element_matrices() const {
  check_usage(generator_matrices.size() == group->generators().size(),
              "one matrix per group generator required");
  for (const Matrix& m : generator_matrices)
    check_usage(m.rows() == dim && m.cols() == dim, "module matrix shape mismatch");
  std::function<Matrix(const Matrix&, const Matrix&)> compose = [](const Matrix& a,
                                                                   const Matrix& b) {
    return a * b;
  };
  std::function<bool(const Matrix&, const Matrix&)> equal = [](const Matrix& a, const Matrix& b) {
    return a == b;
  };
  return group->map_elements<Matrix>(generator_matrices, Matrix::identity(field, dim), compose,
                                     equal, true);
}

GModule permutation_module(const GroupRef& g, const GSet& x, const FieldRef& field) {
  GModule m;
  m.group = g;
  m.field = field;
  m.dim = x.size();
  for (const Perm& p : x.generator_action) m.generator_matrices.push_back(perm_matrix(field, p));
  return m;
}

TateH0 tate_h0(const GModule& m) {
  check_usage(m.field->characteristic() != 0,
              "Tate cohomology here needs a field of characteristic p");
  const FieldRef& f = m.field;
  size_t n = m.dim;
  std::vector<Matrix> elems = m.element_matrices();

  // Invariants: common kernel of (gen - id).
  size_t ngen = m.generator_matrices.size();
  Matrix stacked(f, std::max<size_t>(1, ngen) * n, n);
  for (size_t t = 0; t < ngen; ++t) {
    Matrix diff = m.generator_matrices[t] - Matrix::identity(f, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) stacked.at(t * n + r, c) = diff.at(r, c);
  }
  std::vector<Vec> inv = stacked.kernel_basis();

  // Norm operator and its image.
  Matrix norm(f, n, n);
  for (const Matrix& e : elems) norm = norm + e;
  RowSpan image(f, n);
  for (size_t c = 0; c < n; ++c) image.insert(norm.apply(basis_vec(f, n, c)));

  // The image must land in the invariants.
  RowSpan inv_span(f, n);
  for (const Vec& v : inv) inv_span.insert(v);
  for (const Vec& v : image.basis())
    check_internal(inv_span.contains(v), "norm image escapes the invariants");

  TateH0 out;
  out.invariant_dim = inv.size();
  out.norm_image_dim = image.dim();
  out.dim = out.invariant_dim - out.norm_image_dim;
  return out;
}

TateH0Ring tate_h0_ring(const StructureAlgebra& a) {
  check_usage(a.action().has_value(), "Tate ring needs an algebra with a group action");
  check_usage(a.field()->characteristic() != 0,
              "Tate cohomology here needs a field of characteristic p");
  const FieldRef& f = a.field();
  size_t n = a.dim();
  GModule m{a.action()->group, f, n, a.action()->generator_matrices};
  std::vector<Matrix> elems = m.element_matrices();

  size_t ngen = m.generator_matrices.size();
  Matrix stacked(f, std::max<size_t>(1, ngen) * n, n);
  for (size_t t = 0; t < ngen; ++t) {
    Matrix diff = m.generator_matrices[t] - Matrix::identity(f, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) stacked.at(t * n + r, c) = diff.at(r, c);
  }
  std::vector<Vec> inv = stacked.kernel_basis();
  StructureAlgebra invariants =
      inv.empty() ? StructureAlgebra::zero_algebra(f)
                  : a.subalgebra(inv, a.unit(), default_labels("i", inv.size()));

  Matrix norm(f, n, n);
  for (const Matrix& e : elems) norm = norm + e;
  SpanBasis inv_basis(f, inv);
  std::vector<Vec> norm_in_inv;
  for (size_t c = 0; c < n; ++c) {
    Vec img = norm.apply(basis_vec(f, n, c));
    if (vec_is_zero(img)) continue;
    auto coords = inv_basis.coordinates(img);
    check_internal(coords.has_value(), "norm image escapes the invariants");
    norm_in_inv.push_back(*coords);
  }
  QuotientData q = quotient_by_ideal(invariants, norm_in_inv);

  TateH0Ring out;
  out.dims.invariant_dim = inv.size();
  out.dims.dim = q.algebra.dim();
  out.dims.norm_image_dim = inv.size() - q.algebra.dim();
  out.is_ground_field = q.algebra.dim() == 1 && !vec_is_zero(q.algebra.unit());
  out.ring = std::move(q.algebra);
  return out;
}

namespace {

// Independent oracle: largest subset of points whose common stabilizer has
// order divisible by p, found by subset search with divisibility pruning.
int stable_degree_oracle(const GSet& x, uint64_t p) {
  const GroupRef& g = x.group;
  std::vector<Perm> acts = x.element_action();
  size_t n = x.size();
  std::vector<std::vector<uint32_t>> stabs(n);
  for (uint32_t pt = 0; pt < n; ++pt)
    for (uint32_t e = 0; e < g->order(); ++e)
      if (acts[e][pt] == pt) stabs[pt].push_back(e);

  int best = 0;
  std::function<void(size_t, std::vector<uint32_t>&, int)> dfs =
      [&](size_t start, std::vector<uint32_t>& inter, int count) {
        best = std::max(best, count);
        if (count + static_cast<int>(n - start) <= best) return;
        for (size_t i = start; i < n; ++i) {
          std::vector<uint32_t> next;
          std::set_intersection(inter.begin(), inter.end(), stabs[i].begin(), stabs[i].end(),
                                std::back_inserter(next));
          if (next.size() % p != 0) continue;
          dfs(i + 1, next, count + 1);
        }
      };
  std::vector<uint32_t> all(g->order());
  for (uint32_t e = 0; e < g->order(); ++e) all[e] = e;
  dfs(0, all, 0);
  return best;
}

}  // namespace

StmodReport stmod_degree(const GSet& x, uint64_t p, size_t oracle_cutoff) {
  check_usage(is_prime_u64(p), "p must be prime");
  const GroupRef& g = x.group;
  StmodReport rep;
  if (g->order() % p != 0) {
    rep.trivial_category = true;
    rep.degree = 0;
    return rep;
  }
  std::vector<Subgroup> qs = order_p_subgroups(g, p);
  for (Subgroup& q : qs) {
    FixedPointData fp = fixed_points(x, q);
    if (static_cast<int>(fp.points.size()) > rep.degree) {
      rep.degree = static_cast<int>(fp.points.size());
      rep.maximizing_q = q;
      rep.witness_points = fp.points;
    }
  }
  if (x.size() <= oracle_cutoff) {
    rep.oracle_ran = true;
    rep.oracle_degree = stable_degree_oracle(x, p);
    check_internal(rep.oracle_degree == rep.degree,
                   "fixed-point degree formula disagrees with the subset oracle");
  }
  return rep;
}

StmodReport stmod_degree(const Subgroup& h, uint64_t p, size_t oracle_cutoff) {
  return stmod_degree(coset_gset(h), p, oracle_cutoff);
}

ProjectiveSplit strip_projective_summands(const GSet& x, uint64_t p) {
  OrbitData orbits = orbit_decomposition(x);
  ProjectiveSplit out;
  for (size_t i = 0; i < orbits.orbits.size(); ++i) {
    if (orbits.stabilizers[i].order() % p == 0)
      out.nonprojective.push_back(i);
    else
      out.projective.push_back(i);
  }
  return out;
}

GaloisVerificationReport verify_rank_one_galois(const GroupRef& g, uint64_t p,
                                                const FieldRef& field) {
  check_usage(field->characteristic() == p, "coefficient field characteristic must equal p");
  check_usage(p_rank(g, p) == 1, "group does not have p-rank one");
  GaloisVerificationReport rep;
  rep.p_subgroup = order_p_subgroups(g, p)[0];
  NormalizerWeyl nw = normalizer_and_weyl(g, rep.p_subgroup);
  rep.normalizer = nw.normalizer;
  rep.weyl_order = nw.weyl.group->order();

  const FieldRef& f = field;
  CosetSpace cs = left_cosets(rep.p_subgroup);
  size_t m = cs.count();
  const std::vector<uint32_t>& wreps = nw.weyl.cosets.reps;  // one element of N per W-element
  size_t w = wreps.size();
  check_internal(w == rep.weyl_order, "Weyl representative count mismatch");

  // h([x] (x) [y])_w = [x] * [y g_w];  tau([x] (x) [y])_w = [x] iff
  // y^{-1} x g_w^{-1} in P. Both as (w*m) x m^2 matrices over k.
  Matrix h(f, w * m, m * m), tau(f, w * m, m * m);
  for (size_t wi = 0; wi < w; ++wi) {
    uint32_t gw = wreps[wi];
    uint32_t gw_inv = g->inv(gw);
    for (size_t xi = 0; xi < m; ++xi)
      for (size_t yi = 0; yi < m; ++yi) {
        // h: [y g_w] equals [x]?
        uint32_t ygw = g->mul(cs.reps[yi], gw);
        if (cs.elem_to_coset[ygw] == xi) h.at(wi * m + xi, xi * m + yi) = Scalar::one(f);
        // tau: y^{-1} x g_w^{-1} in P?
        uint32_t t = g->mul(g->mul(g->inv(cs.reps[yi]), cs.reps[xi]), gw_inv);
        if (rep.p_subgroup.contains(t)) tau.at(wi * m + xi, xi * m + yi) = Scalar::one(f);
      }
  }
  rep.h_equals_tau = h == tau;

  // Double-coset ledger: exactly |W| classes with intersection P (orbits
  // isomorphic to G/P) and all remaining classes free.
  DoubleCosetDecomposition dc = double_coset_decomposition(g, rep.p_subgroup, rep.p_subgroup);
  size_t weyl_orbits = 0, free_orbits = 0;
  bool clean = true;
  for (const auto& cls : dc.classes) {
    if (cls.intersection.order() == rep.p_subgroup.order())
      ++weyl_orbits;
    else if (cls.intersection.order() == 1)
      ++free_orbits;
    else
      clean = false;
  }
  rep.weyl_orbit_count = weyl_orbits;
  rep.free_orbit_count = free_orbits;
  rep.double_coset_ledger_ok =
      clean && weyl_orbits == rep.weyl_order && m * m == weyl_orbits * m + free_orbits * g->order();

  StmodReport sd = stmod_degree(coset_gset(rep.p_subgroup), p);
  rep.stable_degree = sd.degree;
  rep.degree_equals_weyl_order = sd.degree == static_cast<int>(rep.weyl_order);

  PermutationAlgebra pa =
      permutation_algebra({g, coset_gset(rep.p_subgroup), field});
  TateH0Ring t = tate_h0_ring(pa.algebra);
  rep.tate_pi0_is_k = t.is_ground_field;

  rep.ok = rep.h_equals_tau && rep.double_coset_ledger_ok && rep.degree_equals_weyl_order &&
           rep.tate_pi0_is_k;
  return rep;
}

RankOneClassificationReport classify_rank_one(const GroupRef& g, uint64_t p,
                                              const FieldRef& field) {
  check_usage(p_rank(g, p) == 1, "group does not have p-rank one");
  RankOneClassificationReport rep;
  rep.p_subgroup = order_p_subgroups(g, p)[0];
  NormalizerWeyl nw = normalizer_and_weyl(g, rep.p_subgroup);
  rep.normalizer = nw.normalizer;
  rep.weyl_order = nw.weyl.group->order();

  std::vector<Subgroup> wsubs = all_subgroups(nw.weyl.group);
  rep.weyl_subgroup_count = wsubs.size();

  // Conjugacy classes of subgroups of W.
  std::vector<int> cls(wsubs.size(), -1);
  int next_class = 0;
  for (size_t i = 0; i < wsubs.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next_class;
    for (size_t j = i + 1; j < wsubs.size(); ++j) {
      if (cls[j] >= 0 || wsubs[j].order() != wsubs[i].order()) continue;
      for (uint32_t e = 0; e < nw.weyl.group->order(); ++e)
        if (wsubs[i].conjugate(e).same_as(wsubs[j])) {
          cls[j] = next_class;
          break;
        }
    }
    ++next_class;
  }

  for (size_t i = 0; i < wsubs.size(); ++i) {
    // Pull the subgroup of W back to P <= V <= N.
    std::vector<uint32_t> velems;
    for (uint32_t e : nw.normalizer.elements())
      if (wsubs[i].contains(nw.weyl.elem_image[e])) velems.push_back(e);
    Subgroup v = Subgroup::from_elements(g, std::move(velems));
    RankOneCover cover;
    cover.v = v;
    cover.v_order = v.order();
    cover.index_in_g = g->order() / v.order();
    cover.w_set_size = rep.weyl_order / wsubs[i].order();
    cover.conjugacy_class = static_cast<size_t>(cls[i]);
    rep.covers.push_back(cover);
  }
  std::sort(rep.covers.begin(), rep.covers.end(), [](const RankOneCover& a, const RankOneCover& b) {
    if (a.v_order != b.v_order) return a.v_order < b.v_order;
    return a.v.elements() < b.v.elements();
  });
  for (const RankOneCover& cover : rep.covers)
    rep.algebras.push_back(permutation_algebra({g, coset_gset(cover.v), field}));
  return rep;
}

bool ModGGaloisData::accepts(const GSet& x) const {
  check_usage(x.group == np.parent(), "G-set belongs to a different group");
  std::vector<Perm> acts = x.element_action();
  for (uint32_t e : np.generators())
    if (acts[e] != perm_identity(static_cast<uint32_t>(x.size()))) return false;
  return true;
}

size_t ModGGaloisData::modg_degree(const GSet& x) const {
  check_usage(accepts(x), "G-set is not a cover: N_p(G) acts nontrivially");
  return gset_rank(x);
}

ModGGaloisData modg_galois_data(const GroupRef& g, uint64_t p) {
  ModGGaloisData out;
  out.np = np_closure(g, p);
  out.quotient = quotient_group(Subgroup::whole(g), out.np);
  return out;
}

}  // namespace sepalg

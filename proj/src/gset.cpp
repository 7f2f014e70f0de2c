#include "sepalg/gset.hpp"

#include <algorithm>

namespace sepalg {

std::vector<Perm> GSet::element_action() const {
  check_usage(generator_action.size() == group->generators().size(),
              "one point permutation per group generator required");
  for (const Perm& p : generator_action) {
    check_usage(p.size() == points.size(), "action permutation degree mismatch");
    check_usage(perm_is_bijection(p), "action permutation is not a bijection");
  }
  std::function<Perm(const Perm&, const Perm&)> compose = perm_compose;
  std::function<bool(const Perm&, const Perm&)> equal = [](const Perm& a, const Perm& b) {
    return a == b;
  };
  return group->map_elements<Perm>(generator_action, perm_identity(static_cast<uint32_t>(points.size())),
                                   compose, equal, true);
}

GSet regular_gset(const GroupRef& g) {
  GSet x;
  x.group = g;
  for (size_t i = 0; i < g->order(); ++i) x.points.push_back("g" + std::to_string(i));
  for (const Perm& gen : g->generators()) {
    uint32_t gi = g->index_of(gen);
    Perm p(g->order());
    for (uint32_t e = 0; e < g->order(); ++e) p[e] = g->mul(gi, e);
    x.generator_action.push_back(std::move(p));
  }
  return x;
}

GSet coset_gset(const Subgroup& h) {
  const GroupRef& g = h.parent();
  CosetSpace cs = left_cosets(h);
  GSet x;
  x.group = g;
  for (size_t i = 0; i < cs.count(); ++i)
    x.points.push_back("[" + std::to_string(cs.reps[i]) + "]");
  for (const Perm& gen : g->generators()) {
    uint32_t gi = g->index_of(gen);
    Perm p(cs.count());
    for (uint32_t c = 0; c < cs.count(); ++c)
      p[c] = cs.elem_to_coset[g->mul(gi, cs.reps[c])];
    x.generator_action.push_back(std::move(p));
  }
  return x;
}

GSet trivial_gset(const GroupRef& g, size_t n) {
  GSet x;
  x.group = g;
  for (size_t i = 0; i < n; ++i) x.points.push_back("p" + std::to_string(i));
  for (size_t t = 0; t < g->generators().size(); ++t)
    x.generator_action.push_back(perm_identity(static_cast<uint32_t>(n)));
  return x;
}

GSet gset_product(const GSet& x, const GSet& y) {
  check_usage(x.group == y.group, "product needs a common group");
  GSet p;
  p.group = x.group;
  for (const auto& a : x.points)
    for (const auto& b : y.points) p.points.push_back(a + "*" + b);
  size_t ny = y.size();
  for (size_t t = 0; t < x.generator_action.size(); ++t) {
    Perm q(x.size() * ny);
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < ny; ++j)
        q[i * ny + j] = x.generator_action[t][i] * ny + y.generator_action[t][j];
    p.generator_action.push_back(std::move(q));
  }
  return p;
}

GSet gset_disjoint_union(const GSet& x, const GSet& y) {
  check_usage(x.group == y.group, "disjoint union needs a common group");
  GSet u;
  u.group = x.group;
  u.points = x.points;
  for (const auto& b : y.points) u.points.push_back(b);
  size_t nx = x.size();
  for (size_t t = 0; t < x.generator_action.size(); ++t) {
    Perm q(nx + y.size());
    for (size_t i = 0; i < nx; ++i) q[i] = x.generator_action[t][i];
    for (size_t j = 0; j < y.size(); ++j) q[nx + j] = static_cast<uint32_t>(nx + y.generator_action[t][j]);
    u.generator_action.push_back(std::move(q));
  }
  return u;
}

OrbitData orbit_decomposition(const GSet& x) {
  std::vector<Perm> acts = x.element_action();
  const GroupRef& g = x.group;
  OrbitData out;
  std::vector<bool> seen(x.size(), false);
  for (uint32_t p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    std::vector<uint32_t> orbit;
    std::vector<uint32_t> stab;
    for (uint32_t e = 0; e < g->order(); ++e) {
      uint32_t q = acts[e][p];
      if (!seen[q]) {
        seen[q] = true;
        orbit.push_back(q);
      }
      if (q == p) stab.push_back(e);
    }
    std::sort(orbit.begin(), orbit.end());
    Subgroup st = Subgroup::from_elements(g, std::move(stab));
    check_internal(orbit.size() * st.order() == g->order(), "orbit-stabilizer count mismatch");
    out.orbits.push_back(std::move(orbit));
    out.stabilizers.push_back(std::move(st));
  }
  return out;
}

size_t gset_rank(const GSet& x) { return x.size(); }

size_t groupoid_rank(const std::vector<GSet>& components) {
  size_t r = 0;
  for (const auto& c : components) r = std::max(r, c.size());
  return r;
}

bool torsor_check(const GSet& x, const GroupRef& gamma, const std::vector<Perm>& gamma_action) {
  std::vector<Perm> gacts = x.element_action();
  GSet gx{gamma, x.points, gamma_action};
  std::vector<Perm> cacts = gx.element_action();
  // The two actions must commute.
  for (const Perm& a : x.generator_action)
    for (const Perm& b : gamma_action)
      check_usage(perm_compose(a, b) == perm_compose(b, a),
                  "auxiliary action does not commute with the group action");
  // Free and transitive.
  if (x.size() == 0) return false;
  for (uint32_t e = 1; e < gamma->order(); ++e)
    for (uint32_t p = 0; p < x.size(); ++p)
      if (cacts[e][p] == p) return false;
  std::vector<bool> hit(x.size(), false);
  for (uint32_t e = 0; e < gamma->order(); ++e) hit[cacts[e][0]] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

FixedPointData fixed_points(const GSet& x, const Subgroup& q) {
  check_usage(q.parent() == x.group, "subgroup of a different group");
  std::vector<Perm> acts = x.element_action();
  FixedPointData out;
  for (uint32_t p = 0; p < x.size(); ++p) {
    bool fixed = true;
    for (uint32_t e : q.elements())
      if (acts[e][p] != p) {
        fixed = false;
        break;
      }
    if (fixed) out.points.push_back(p);
  }
  // Stable under G? Then package as a G-set of its own.
  std::vector<int32_t> pos(x.size(), -1);
  for (size_t i = 0; i < out.points.size(); ++i) pos[out.points[i]] = static_cast<int32_t>(i);
  bool stable = true;
  for (const Perm& gp : x.generator_action)
    for (uint32_t p : out.points)
      if (pos[gp[p]] < 0) stable = false;
  if (stable && !out.points.empty()) {
    GSet sub;
    sub.group = x.group;
    for (uint32_t p : out.points) sub.points.push_back(x.points[p]);
    for (const Perm& gp : x.generator_action) {
      Perm q2(out.points.size());
      for (size_t i = 0; i < out.points.size(); ++i)
        q2[i] = static_cast<uint32_t>(pos[gp[out.points[i]]]);
      sub.generator_action.push_back(std::move(q2));
    }
    out.as_gset = std::move(sub);
  }
  return out;
}

bool burnside_check(const GSet& x) {
  std::vector<Perm> acts = x.element_action();
  size_t total = 0;
  for (const Perm& a : acts)
    for (uint32_t p = 0; p < x.size(); ++p)
      if (a[p] == p) ++total;
  return total == x.group->order() * orbit_decomposition(x).orbits.size();
}

}  // namespace sepalg

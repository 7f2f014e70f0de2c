#pragma once

#include "sepalg/perm_group.hpp"

namespace sepalg {

// Finite left G-set: labeled points with one point-permutation per group
// generator. Element-level action is derived and checked against relations.
struct GSet {
  GroupRef group;
  std::vector<std::string> points;
  std::vector<Perm> generator_action;

  size_t size() const { return points.size(); }
  // Action of every group element (BFS order); relation-consistency checked.
  std::vector<Perm> element_action() const;
};

GSet regular_gset(const GroupRef& g);
GSet coset_gset(const Subgroup& h);  // G/H with left translation
GSet trivial_gset(const GroupRef& g, size_t n);
GSet gset_product(const GSet& x, const GSet& y);
GSet gset_disjoint_union(const GSet& x, const GSet& y);

struct OrbitData {
  std::vector<std::vector<uint32_t>> orbits;
  std::vector<Subgroup> stabilizers;  // stabilizer of the first point of each orbit
};
// Orbits partition the points and |orbit| * |stabilizer| = |G| is asserted.
OrbitData orbit_decomposition(const GSet& x);

// rk(X) = |X| for a single group.
size_t gset_rank(const GSet& x);
// A finite groupoid is a list of (group, G-set) components; rank is the sup.
size_t groupoid_rank(const std::vector<GSet>& components);

// True iff the auxiliary action is free and transitive; the gamma-action must
// commute with the G-action (checked).
bool torsor_check(const GSet& x, const GroupRef& gamma, const std::vector<Perm>& gamma_action);

struct FixedPointData {
  std::vector<uint32_t> points;
  // Present when the fixed set is G-stable (e.g. q normal), as its own G-set.
  std::optional<GSet> as_gset;
};
FixedPointData fixed_points(const GSet& x, const Subgroup& q);

// Orbit-counting canary: sum over g of |x^g| equals |G| times the orbit count.
bool burnside_check(const GSet& x);

}  // namespace sepalg

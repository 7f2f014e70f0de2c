#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sepalg/errors.hpp"

namespace sepalg {

// Permutation in one-line form on [0, degree).
using Perm = std::vector<uint32_t>;

Perm perm_identity(uint32_t degree);
bool perm_is_bijection(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
// Parses cycle notation like "(0 1 2)(3 4)" or "(0,1,2)"; "()" is the identity.
Perm perm_from_cycles(const std::string& s, uint32_t degree);
std::string perm_to_cycles(const Perm& p);

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (uint32_t v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

class PermGroup;
using GroupRef = std::shared_ptr<const PermGroup>;

// Finite permutation group with a fully enumerated element list.
// Elements are addressed by their index in BFS order (identity first).
class PermGroup {
 public:
  static GroupRef from_generators(uint32_t degree, std::vector<Perm> generators,
                                  std::string name = "", size_t capacity = 200000);

  uint32_t degree() const { return degree_; }
  size_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(uint32_t i) const { return elements_[i]; }

  uint32_t index_of(const Perm& p) const;
  bool contains(const Perm& p) const { return index_.count(p) > 0; }

  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t conj(uint32_t g, uint32_t x) const { return mul(mul(g, x), inv(g)); }
  int element_order(uint32_t a) const;

  // Images of all elements under the homomorphism determined by generator
  // images; consistency across relations is verified exactly when `check`.
  template <typename T>
  std::vector<T> map_elements(const std::vector<T>& gen_images, const T& id,
                              const std::function<T(const T&, const T&)>& compose,
                              const std::function<bool(const T&, const T&)>& equal,
                              bool check = true) const {
    check_usage(gen_images.size() == generators_.size(), "generator image count mismatch");
    std::vector<T> out(elements_.size(), id);
    for (size_t i = 1; i < elements_.size(); ++i)
      out[i] = compose(gen_images[bfs_gen_[i]], out[bfs_parent_[i]]);
    if (check) {
      for (size_t i = 0; i < elements_.size(); ++i)
        for (size_t g = 0; g < generators_.size(); ++g) {
          uint32_t t = index_of(perm_compose(generators_[g], elements_[i]));
          if (!equal(out[t], compose(gen_images[g], out[i])))
            throw UsageError("generator images do not respect the group relations");
        }
    }
    return out;
  }

 private:
  PermGroup() = default;
  uint32_t degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, uint32_t, PermHash> index_;
  std::vector<uint32_t> bfs_parent_;  // elements_[i] = gen[bfs_gen_[i]] * elements_[bfs_parent_[i]]
  std::vector<uint32_t> bfs_gen_;
  std::vector<uint32_t> inverse_;     // cached inverse indices
};

// Subgroup as an explicit closed subset of a parent group's elements.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup from_elements(GroupRef parent, std::vector<uint32_t> elems);
  static Subgroup generated_by(GroupRef parent, const std::vector<uint32_t>& gens);
  static Subgroup trivial(GroupRef parent);
  static Subgroup whole(GroupRef parent);

  const GroupRef& parent() const { return parent_; }
  size_t order() const { return elements_.size(); }
  const std::vector<uint32_t>& elements() const { return elements_; }
  bool contains(uint32_t e) const;
  bool same_as(const Subgroup& o) const { return elements_ == o.elements_; }

  // Small generating set, found greedily.
  std::vector<uint32_t> generators() const;
  Subgroup conjugate(uint32_t g) const;
  Subgroup intersect(const Subgroup& o) const;
  bool is_normal_in_parent() const;
  bool contains_subgroup(const Subgroup& o) const;

 private:
  GroupRef parent_;
  std::vector<uint32_t> elements_;  // sorted
};

// Left cosets of a subgroup, with the quotient realized as a permutation
// group acting on the cosets (only a group when the subgroup is normal).
struct CosetSpace {
  std::vector<uint32_t> reps;              // one representative per coset
  std::vector<uint32_t> elem_to_coset;     // parent element index -> coset index
  size_t count() const { return reps.size(); }
};
CosetSpace left_cosets(const Subgroup& h);

struct QuotientGroup {
  GroupRef group;                       // permutation group on the cosets
  CosetSpace cosets;
  // Image of a parent element (must normalize the subgroup) in the quotient.
  std::vector<uint32_t> elem_image;     // parent element -> quotient element index
};
// N/P as a concrete permutation group; P must be normal in N.
QuotientGroup quotient_group(const Subgroup& n, const Subgroup& p);

Subgroup sylow_subgroup(const GroupRef& g, uint64_t p);
int p_rank(const GroupRef& g, uint64_t p);
Subgroup np_closure(const GroupRef& g, uint64_t p);
Subgroup normalizer(const GroupRef& g, const Subgroup& p_sub);

struct NormalizerWeyl {
  Subgroup normalizer;
  QuotientGroup weyl;
};
NormalizerWeyl normalizer_and_weyl(const GroupRef& g, const Subgroup& p_sub);

struct DoubleCosetClass {
  uint32_t rep;              // element index
  Subgroup intersection;     // H ∩ K^rep  (K^g = g K g^{-1})
  size_t size;               // |H rep K|
};
struct DoubleCosetDecomposition {
  std::vector<DoubleCosetClass> classes;
};
// H\G/K with the cardinality identity sum |G| / |H ∩ K^g| = [G:H][G:K] checked.
DoubleCosetDecomposition double_coset_decomposition(const GroupRef& g, const Subgroup& h,
                                                    const Subgroup& k);

enum class RankOneKind { Cyclic, GeneralizedQuaternion };

struct RankOneClassification {
  RankOneKind kind;
  Subgroup sylow;
  // Maximal elementary abelian p-subgroups, with elements conjugating the
  // first onto each of the others.
  std::vector<Subgroup> maximal_elementary;
  std::vector<uint32_t> conjugators;
};
RankOneClassification rank_one_classification(const GroupRef& g, uint64_t p);

// Every subgroup, enumerated by closing generator sets; desk scale only.
std::vector<Subgroup> all_subgroups(const GroupRef& g);

std::vector<uint32_t> elements_of_order(const GroupRef& g, uint64_t n);
// Distinct subgroups of order p (each generated by one order-p element).
std::vector<Subgroup> order_p_subgroups(const GroupRef& g, uint64_t p);

}  // namespace sepalg

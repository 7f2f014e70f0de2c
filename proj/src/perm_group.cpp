#include "sepalg/perm_group.hpp"

#include "sepalg/field.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace sepalg {

Perm perm_identity(uint32_t degree) {
  Perm p(degree);
  for (uint32_t i = 0; i < degree; ++i) p[i] = i;
  return p;
}

bool perm_is_bijection(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (uint32_t v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  check_internal(a.size() == b.size(), "composing permutations of different degree");
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<uint32_t>(i);
  return r;
}

Perm perm_from_cycles(const std::string& s, uint32_t degree) {
  Perm p = perm_identity(degree);
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == ',')) ++i;
    if (i >= s.size()) break;
    check_usage(s[i] == '(', "cycle notation must use parentheses: " + s);
    ++i;
    std::vector<uint32_t> cycle;
    std::string num;
    while (i < s.size() && s[i] != ')') {
      if (isdigit(s[i])) {
        num += s[i];
      } else {
        check_usage(s[i] == ' ' || s[i] == ',', "bad character in cycle notation: " + s);
        if (!num.empty()) {
          cycle.push_back(static_cast<uint32_t>(std::stoul(num)));
          num.clear();
        }
      }
      ++i;
    }
    check_usage(i < s.size(), "unterminated cycle in: " + s);
    ++i;
    if (!num.empty()) cycle.push_back(static_cast<uint32_t>(std::stoul(num)));
    for (uint32_t v : cycle) check_usage(v < degree, "cycle point out of range in: " + s);
    for (size_t j = 0; j < cycle.size(); ++j) {
      uint32_t from = cycle[j];
      uint32_t to = cycle[(j + 1) % cycle.size()];
      check_usage(p[from] == from, "point repeated across cycles in: " + s);
      p[from] = to;
    }
  }
  check_usage(perm_is_bijection(p), "cycles do not define a permutation: " + s);
  return p;
}

std::string perm_to_cycles(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (uint32_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    any = true;
    os << "(";
    uint32_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << " ";
      first = false;
      os << j;
      j = p[j];
    }
    os << ")";
  }
  if (!any) return "()";
  return os.str();
}

GroupRef PermGroup::from_generators(uint32_t degree, std::vector<Perm> generators,
                                    std::string name, size_t capacity) {
  for (const Perm& g : generators) {
    check_usage(g.size() == degree, "generator degree mismatch");
    check_usage(perm_is_bijection(g), "generator is not a bijection");
  }
  auto grp = std::shared_ptr<PermGroup>(new PermGroup());
  grp->degree_ = degree;
  grp->name_ = std::move(name);
  grp->generators_ = std::move(generators);

  Perm id = perm_identity(degree);
  grp->elements_.push_back(id);
  grp->index_[id] = 0;
  grp->bfs_parent_.push_back(0);
  grp->bfs_gen_.push_back(0);
  std::deque<uint32_t> frontier{0};
  while (!frontier.empty()) {
    uint32_t cur = frontier.front();
    frontier.pop_front();
    for (uint32_t gi = 0; gi < grp->generators_.size(); ++gi) {
      Perm next = perm_compose(grp->generators_[gi], grp->elements_[cur]);
      if (grp->index_.count(next)) continue;
      if (grp->elements_.size() >= capacity)
        throw CapacityError("group closure exceeds the element cap");
      uint32_t idx = static_cast<uint32_t>(grp->elements_.size());
      grp->index_[next] = idx;
      grp->elements_.push_back(std::move(next));
      grp->bfs_parent_.push_back(cur);
      grp->bfs_gen_.push_back(gi);
      frontier.push_back(idx);
    }
  }
  grp->inverse_.resize(grp->elements_.size());
  for (uint32_t i = 0; i < grp->elements_.size(); ++i)
    grp->inverse_[i] = grp->index_.at(perm_inverse(grp->elements_[i]));
  return grp;
}

uint32_t PermGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  check_internal(it != index_.end(), "permutation not in group");
  return it->second;
}

uint32_t PermGroup::mul(uint32_t a, uint32_t b) const {
  return index_.at(perm_compose(elements_[a], elements_[b]));
}

uint32_t PermGroup::inv(uint32_t a) const { return inverse_[a]; }

int PermGroup::element_order(uint32_t a) const {
  int n = 1;
  uint32_t cur = a;
  while (cur != 0) {
    cur = mul(cur, a);
    ++n;
  }
  return n;
}

Subgroup Subgroup::from_elements(GroupRef parent, std::vector<uint32_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup s;
  s.parent_ = std::move(parent);
  s.elements_ = std::move(elems);
  check_internal(!s.elements_.empty() && s.elements_[0] == 0, "subgroup misses the identity");
  check_internal(s.parent_->order() % s.elements_.size() == 0, "subgroup order violates Lagrange");
  for (uint32_t a : s.elements_) {
    check_internal(s.contains(s.parent_->inv(a)), "subgroup not closed under inverse");
    for (uint32_t b : s.elements_)
      check_internal(s.contains(s.parent_->mul(a, b)), "subgroup not closed under product");
  }
  return s;
}

Subgroup Subgroup::generated_by(GroupRef parent, const std::vector<uint32_t>& gens) {
  std::set<uint32_t> closure{0};
  std::deque<uint32_t> frontier{0};
  while (!frontier.empty()) {
    uint32_t cur = frontier.front();
    frontier.pop_front();
    for (uint32_t g : gens) {
      uint32_t next = parent->mul(g, cur);
      if (closure.insert(next).second) frontier.push_back(next);
    }
  }
  Subgroup s;
  s.parent_ = std::move(parent);
  s.elements_.assign(closure.begin(), closure.end());
  return s;
}

Subgroup Subgroup::trivial(GroupRef parent) {
  Subgroup s;
  s.parent_ = std::move(parent);
  s.elements_ = {0};
  return s;
}

Subgroup Subgroup::whole(GroupRef parent) {
  Subgroup s;
  s.parent_ = parent;
  s.elements_.resize(parent->order());
  for (uint32_t i = 0; i < s.elements_.size(); ++i) s.elements_[i] = i;
  return s;
}

bool Subgroup::contains(uint32_t e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

std::vector<uint32_t> Subgroup::generators() const {
  std::vector<uint32_t> gens;
  Subgroup cur = trivial(parent_);
  for (uint32_t e : elements_) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = generated_by(parent_, gens);
    if (cur.order() == order()) break;
  }
  return gens;
}

Subgroup Subgroup::conjugate(uint32_t g) const {
  std::vector<uint32_t> elems;
  elems.reserve(elements_.size());
  for (uint32_t e : elements_) elems.push_back(parent_->conj(g, e));
  std::sort(elems.begin(), elems.end());
  Subgroup s;
  s.parent_ = parent_;
  s.elements_ = std::move(elems);
  return s;
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
  std::vector<uint32_t> elems;
  std::set_intersection(elements_.begin(), elements_.end(), o.elements_.begin(),
                        o.elements_.end(), std::back_inserter(elems));
  Subgroup s;
  s.parent_ = parent_;
  s.elements_ = std::move(elems);
  return s;
}

bool Subgroup::is_normal_in_parent() const {
  for (uint32_t g = 0; g < parent_->order(); ++g)
    if (!conjugate(g).same_as(*this)) return false;
  return true;
}

bool Subgroup::contains_subgroup(const Subgroup& o) const {
  return std::includes(elements_.begin(), elements_.end(), o.elements_.begin(),
                       o.elements_.end());
}

CosetSpace left_cosets(const Subgroup& h) {
  const GroupRef& g = h.parent();
  CosetSpace cs;
  cs.elem_to_coset.assign(g->order(), UINT32_MAX);
  for (uint32_t e = 0; e < g->order(); ++e) {
    if (cs.elem_to_coset[e] != UINT32_MAX) continue;
    uint32_t idx = static_cast<uint32_t>(cs.reps.size());
    cs.reps.push_back(e);
    for (uint32_t x : h.elements()) cs.elem_to_coset[g->mul(e, x)] = idx;
  }
  return cs;
}

QuotientGroup quotient_group(const Subgroup& n, const Subgroup& p) {
  const GroupRef& g = n.parent();
  check_usage(n.contains_subgroup(p), "quotient needs the subgroup inside the group");
  for (uint32_t a : n.generators())
    check_usage(p.conjugate(a).same_as(p), "subgroup is not normal in the group");

  // Cosets of p inside n only.
  std::vector<uint32_t> coset_of(g->order(), UINT32_MAX);
  std::vector<uint32_t> reps;
  for (uint32_t e : n.elements()) {
    if (coset_of[e] != UINT32_MAX) continue;
    uint32_t idx = static_cast<uint32_t>(reps.size());
    reps.push_back(e);
    for (uint32_t x : p.elements()) coset_of[g->mul(e, x)] = idx;
  }
  uint32_t m = static_cast<uint32_t>(reps.size());

  // Left-multiplication action of n's generators on the cosets.
  std::vector<uint32_t> ngens = n.generators();
  std::vector<Perm> qgens;
  for (uint32_t a : ngens) {
    Perm q(m);
    for (uint32_t c = 0; c < m; ++c) q[c] = coset_of[g->mul(a, reps[c])];
    qgens.push_back(std::move(q));
  }
  if (qgens.empty()) qgens.push_back(perm_identity(m));
  GroupRef qg = PermGroup::from_generators(m, qgens);
  check_internal(qg->order() == m, "quotient group order mismatch");

  QuotientGroup out;
  out.group = qg;
  out.cosets.reps = reps;
  out.cosets.elem_to_coset = coset_of;
  out.elem_image.assign(g->order(), UINT32_MAX);
  for (uint32_t e : n.elements()) {
    Perm q(m);
    for (uint32_t c = 0; c < m; ++c) q[c] = coset_of[g->mul(e, reps[c])];
    out.elem_image[e] = qg->index_of(q);
  }
  return out;
}

static uint64_t p_part(uint64_t n, uint64_t p) {
  uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

std::vector<uint32_t> elements_of_order(const GroupRef& g, uint64_t n) {
  std::vector<uint32_t> out;
  for (uint32_t e = 0; e < g->order(); ++e)
    if (static_cast<uint64_t>(g->element_order(e)) == n) out.push_back(e);
  return out;
}

std::vector<Subgroup> order_p_subgroups(const GroupRef& g, uint64_t p) {
  std::vector<Subgroup> out;
  std::set<std::vector<uint32_t>> seen;
  for (uint32_t e : elements_of_order(g, p)) {
    Subgroup s = Subgroup::generated_by(g, {e});
    if (seen.insert(s.elements()).second) out.push_back(std::move(s));
  }
  return out;
}

Subgroup sylow_subgroup(const GroupRef& g, uint64_t p) {
  check_usage(is_prime_u64(p), "p must be prime");
  uint64_t target = p_part(g->order(), p);
  if (target == 1) return Subgroup::trivial(g);
  // Seed with any subgroup of order p (Cauchy guarantees one exists).
  uint32_t seed = 0;
  bool found = false;
  for (uint32_t e = 1; e < g->order() && !found; ++e) {
    uint64_t ord = g->element_order(e);
    if (ord % p != 0) continue;
    uint32_t acc = 0;  // e^(ord/p) has order exactly p
    for (uint64_t i = 0; i < ord / p; ++i) acc = g->mul(acc, e);
    seed = acc;
    found = true;
  }
  check_internal(found, "no element of order divisible by p");
  Subgroup current = Subgroup::generated_by(g, {seed});
  // Normalizer climbing: while |P| < p-part, N(P)/P contains an order-p
  // element whose preimage enlarges P.
  while (current.order() < target) {
    Subgroup n = normalizer(g, current);
    check_internal(n.order() > current.order(), "normalizer climb stalled");
    bool grown = false;
    for (uint32_t x : n.elements()) {
      if (current.contains(x)) continue;
      // Order of the coset xP in N/P.
      uint64_t m = 1;
      uint32_t cur = x;
      while (!current.contains(cur)) {
        cur = g->mul(cur, x);
        ++m;
      }
      if (m % p != 0) continue;
      uint32_t y = 0;
      for (uint64_t i = 0; i < m / p; ++i) y = g->mul(y, x);
      std::vector<uint32_t> gens = current.generators();
      gens.push_back(y);
      Subgroup bigger = Subgroup::generated_by(g, gens);
      if (bigger.order() == current.order() * p) {
        current = std::move(bigger);
        grown = true;
        break;
      }
    }
    check_internal(grown, "Sylow climb found no enlargement");
  }
  return current;
}

int p_rank(const GroupRef& g, uint64_t p) {
  check_usage(is_prime_u64(p), "p must be prime");
  if (g->order() % p != 0) return 0;
  // Every elementary abelian p-subgroup is conjugate into a Sylow p-subgroup,
  // so it is enough to search inside one.
  Subgroup syl = sylow_subgroup(g, p);
  std::vector<uint32_t> ordp;
  for (uint32_t e : syl.elements())
    if (g->element_order(e) == static_cast<int>(p)) ordp.push_back(e);
  int best = 0;
  std::vector<uint32_t> chosen;
  std::function<void(size_t, const Subgroup&)> dfs = [&](size_t start, const Subgroup& span) {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (size_t i = start; i < ordp.size(); ++i) {
      uint32_t x = ordp[i];
      if (span.contains(x)) continue;
      bool commutes = true;
      for (uint32_t c : chosen)
        if (g->mul(c, x) != g->mul(x, c)) {
          commutes = false;
          break;
        }
      if (!commutes) continue;
      std::vector<uint32_t> gens = chosen;
      gens.push_back(x);
      Subgroup bigger = Subgroup::generated_by(g, gens);
      chosen.push_back(x);
      dfs(i + 1, bigger);
      chosen.pop_back();
    }
  };
  dfs(0, Subgroup::trivial(g));
  return best;
}

Subgroup np_closure(const GroupRef& g, uint64_t p) {
  check_usage(is_prime_u64(p), "p must be prime");
  std::vector<uint32_t> gens = elements_of_order(g, p);
  Subgroup s = gens.empty() ? Subgroup::trivial(g) : Subgroup::generated_by(g, gens);
  // The generating set is closed under conjugation, so s is normal; verify.
  check_internal(s.is_normal_in_parent(), "N_p(G) failed the normality check");
  return s;
}

Subgroup normalizer(const GroupRef& g, const Subgroup& p_sub) {
  std::vector<uint32_t> gens = p_sub.generators();
  std::vector<uint32_t> elems;
  for (uint32_t x = 0; x < g->order(); ++x) {
    bool normalizes = true;
    for (uint32_t h : gens)
      if (!p_sub.contains(g->conj(x, h))) {
        normalizes = false;
        break;
      }
    if (normalizes && !p_sub.conjugate(x).same_as(p_sub)) normalizes = false;
    if (normalizes) elems.push_back(x);
  }
  return Subgroup::from_elements(g, std::move(elems));
}

NormalizerWeyl normalizer_and_weyl(const GroupRef& g, const Subgroup& p_sub) {
  NormalizerWeyl out;
  out.normalizer = normalizer(g, p_sub);
  out.weyl = quotient_group(out.normalizer, p_sub);
  return out;
}

DoubleCosetDecomposition double_coset_decomposition(const GroupRef& g, const Subgroup& h,
                                                    const Subgroup& k) {
  DoubleCosetDecomposition out;
  std::vector<bool> seen(g->order(), false);
  size_t total = 0;
  for (uint32_t e = 0; e < g->order(); ++e) {
    if (seen[e]) continue;
    DoubleCosetClass cls;
    cls.rep = e;
    size_t size = 0;
    for (uint32_t a : h.elements())
      for (uint32_t b : k.elements()) {
        uint32_t x = g->mul(g->mul(a, e), b);
        if (!seen[x]) {
          seen[x] = true;
          ++size;
        }
      }
    cls.size = size;
    cls.intersection = h.intersect(k.conjugate(e));
    out.classes.push_back(std::move(cls));
    total += size;
  }
  check_internal(total == g->order(), "double cosets do not partition the group");
  // Cardinality identity: sum |G| / |H ∩ K^g| = [G:H] [G:K].
  size_t lhs = 0;
  for (const auto& cls : out.classes) lhs += g->order() / cls.intersection.order();
  size_t rhs = (g->order() / h.order()) * (g->order() / k.order());
  check_internal(lhs == rhs, "double coset cardinality identity failed");
  return out;
}

RankOneClassification rank_one_classification(const GroupRef& g, uint64_t p) {
  check_usage(p_rank(g, p) == 1, "group does not have p-rank one");
  RankOneClassification out;
  out.sylow = sylow_subgroup(g, p);
  uint64_t q = out.sylow.order();

  bool cyclic = false;
  for (uint32_t e : out.sylow.elements())
    if (static_cast<uint64_t>(g->element_order(e)) == q) {
      cyclic = true;
      break;
    }
  if (cyclic) {
    out.kind = RankOneKind::Cyclic;
  } else {
    // Generalized quaternion: order 2^k >= 8, a unique involution, and a
    // presentation <a, b | a^{2^{k-1}}, b^2 = a^{2^{k-2}}, bab^{-1} = a^{-1}>.
    check_internal(p == 2 && q >= 8 && (q & (q - 1)) == 0,
                   "rank-one Sylow is neither cyclic nor quaternion-sized");
    size_t involutions = 0;
    for (uint32_t e : out.sylow.elements())
      if (e != 0 && g->element_order(e) == 2) ++involutions;
    check_internal(involutions == 1, "quaternion candidate has extra involutions");
    bool matched = false;
    for (uint32_t a : out.sylow.elements()) {
      if (static_cast<uint64_t>(g->element_order(a)) != q / 2) continue;
      uint32_t a_half = 0;  // a^{2^{k-2}}
      for (uint64_t i = 0; i < q / 4; ++i) a_half = g->mul(a_half, a);
      for (uint32_t b : out.sylow.elements()) {
        Subgroup asub = Subgroup::generated_by(g, {a});
        if (asub.contains(b)) continue;
        if (g->mul(b, b) != a_half) continue;
        if (g->conj(b, a) != g->inv(a)) continue;
        matched = true;
        break;
      }
      if (matched) break;
    }
    check_internal(matched, "quaternion presentation not matched");
    out.kind = RankOneKind::GeneralizedQuaternion;
  }

  // All maximal elementary abelian p-subgroups (order p at rank one) must be
  // conjugate; find explicit conjugators from the first one.
  out.maximal_elementary = order_p_subgroups(g, p);
  check_internal(!out.maximal_elementary.empty(), "no order-p subgroup at rank one");
  const Subgroup& first = out.maximal_elementary[0];
  for (const Subgroup& other : out.maximal_elementary) {
    bool found = false;
    for (uint32_t x = 0; x < g->order(); ++x)
      if (first.conjugate(x).same_as(other)) {
        out.conjugators.push_back(x);
        found = true;
        break;
      }
    check_internal(found, "maximal elementary abelian subgroups are not all conjugate");
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupRef& g) {
  check_usage(g->order() <= 2000, "subgroup enumeration capped at order 2000");
  std::set<std::vector<uint32_t>> seen;
  std::deque<Subgroup> frontier;
  Subgroup triv = Subgroup::trivial(g);
  seen.insert(triv.elements());
  frontier.push_back(triv);
  std::vector<Subgroup> out{triv};
  while (!frontier.empty()) {
    Subgroup cur = frontier.front();
    frontier.pop_front();
    if (cur.order() == g->order()) continue;
    std::vector<uint32_t> gens = cur.generators();
    for (uint32_t e = 1; e < g->order(); ++e) {
      if (cur.contains(e)) continue;
      std::vector<uint32_t> bigger_gens = gens;
      bigger_gens.push_back(e);
      Subgroup bigger = Subgroup::generated_by(g, bigger_gens);
      if (seen.insert(bigger.elements()).second) {
        frontier.push_back(bigger);
        out.push_back(bigger);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

}  // namespace sepalg

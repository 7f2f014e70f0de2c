#include "sepalg/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sepalg {

Poly::Poly(const FieldRef& f, std::vector<Scalar> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::zero(const FieldRef& f) { return Poly(f, {}); }

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::x(const FieldRef& f) { return Poly(f, {Scalar::zero(f), Scalar::one(f)}); }

Poly Poly::from_ints(const FieldRef& f, const std::vector<long>& coeffs) {
  std::vector<Scalar> cs;
  cs.reserve(coeffs.size());
  for (long c : coeffs) cs.push_back(Scalar::of_int(f, c));
  return Poly(f, std::move(cs));
}

Scalar Poly::leading() const {
  check_internal(!is_zero(), "leading coefficient of zero polynomial");
  return coeffs_.back();
}

Scalar Poly::coeff(size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(field_);
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> cs(std::max(coeffs_.size(), o.coeffs_.size()), Scalar::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] += o.coeffs_[i];
  return Poly(field_, std::move(cs));
}

Poly Poly::operator-() const {
  std::vector<Scalar> cs = coeffs_;
  for (auto& c : cs) c = -c;
  return Poly(field_, std::move(cs));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return zero(field_);
  std::vector<Scalar> cs(coeffs_.size() + o.coeffs_.size() - 1, Scalar::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Poly(field_, std::move(cs));
}

bool Poly::operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

Poly Poly::scale(const Scalar& c) const {
  std::vector<Scalar> cs = coeffs_;
  for (auto& a : cs) a *= c;
  return Poly(field_, std::move(cs));
}

Poly Poly::monic() const {
  check_internal(!is_zero(), "monic form of zero polynomial");
  return scale(leading().inverse());
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return zero(field_);
  std::vector<Scalar> cs(coeffs_.size() - 1, Scalar::zero(field_));
  for (size_t i = 1; i < coeffs_.size(); ++i) cs[i - 1] = coeffs_[i] * Scalar::of_int(field_, static_cast<long>(i));
  return Poly(field_, std::move(cs));
}

PolyDivMod Poly::divmod(const Poly& d) const {
  check_usage(!d.is_zero(), "division by zero polynomial");
  Poly rem = *this;
  Poly quot = zero(field_);
  Scalar lead_inv = d.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Scalar c = rem.leading() * lead_inv;
    std::vector<Scalar> qc(shift + 1, Scalar::zero(field_));
    qc[shift] = c;
    Poly term(field_, std::move(qc));
    quot = quot + term;
    rem = rem - term * d;
  }
  return {quot, rem};
}

Poly Poly::mod(const Poly& d) const { return divmod(d).rem; }

Poly Poly::pow_mod(mpz_class e, const Poly& m) const {
  Poly r = constant(Scalar::one(field_));
  Poly b = mod(m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b).mod(m);
    b = (b * b).mod(m);
    e >>= 1;
  }
  return r;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !coeffs_[i].is_one()) os << coeffs_[i].str();
    if (i >= 1) {
      if (!coeffs_[i].is_one()) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = a.monic();
  return a;
}

Poly poly_inverse_mod(const Poly& g, const Poly& m) {
  const FieldRef& k = g.field();
  check_usage(m.degree() >= 1, "modulus must have positive degree");
  int d = m.degree();
  // Solve g * x = 1 mod m on coefficient vectors.
  Matrix mat(k, d, d);
  for (int c = 0; c < d; ++c) {
    std::vector<Scalar> xc(c + 1, Scalar::zero(k));
    xc[c] = Scalar::one(k);
    Poly col = (Poly(k, xc) * g).mod(m);
    for (int r = 0; r < d; ++r) mat.at(r, c) = col.coeff(r);
  }
  Vec e1 = vec_zero(k, d);
  e1[0] = Scalar::one(k);
  auto sol = solve_linear(mat, e1);
  check_usage(sol.has_value(), "polynomial is not invertible modulo the modulus");
  return Poly(k, sol->particular);
}

namespace {

// ---- finite field factorization -----------------------------------------

// Coefficientwise p-th root of f(x) = g(x^p); valid over F_{p^d}.
Poly pth_root(const Poly& f) {
  const FieldRef& k = f.field();
  uint64_t p = k->p();
  std::vector<Scalar> cs;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
    Scalar c = f.coeff(i);
    if (k->kind() == Field::Kind::Extension && k->degree() > 1) {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, k->degree() - 1);
      c = c.pow(e);  // p-th root via Frobenius in F_{p^d}
    }
    cs.push_back(c);
  }
  return Poly(k, std::move(cs));
}

void squarefree_decomp(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  const FieldRef& k = f.field();
  if (f.degree() <= 0) return;
  Poly df = f.derivative();
  if (df.is_zero()) {
    squarefree_decomp(pth_root(f), mult * static_cast<int>(k->p()), out);
    return;
  }
  Poly c = poly_gcd(f, df);
  Poly w = f.divmod(c).quot;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, c);
    Poly z = w.divmod(y).quot;
    if (z.degree() > 0) out.push_back({z.monic(), mult * i});
    w = std::move(y);
    c = c.divmod(w).quot;
    ++i;
  }
  if (c.degree() > 0) squarefree_decomp(pth_root(c), mult * static_cast<int>(k->p()), out);
}

Poly random_poly_below(const FieldRef& k, int deg, Rng& rng) {
  std::vector<Scalar> cs;
  for (int i = 0; i < deg; ++i) {
    if (k->kind() == Field::Kind::Prime) {
      cs.push_back(Scalar::residue(k, rng.below(k->p())));
    } else {
      std::vector<uint64_t> coords(k->degree());
      for (auto& c : coords) c = rng.below(k->p());
      cs.push_back(Scalar::ext_coords(k, std::move(coords)));
    }
  }
  return Poly(k, std::move(cs));
}

// Equal-degree splitting (Cantor-Zassenhaus): f monic squarefree, all
// irreducible factors of degree d.
void equal_degree_split(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
  const FieldRef& k = f.field();
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  mpz_class q = k->size();
  while (true) {
    Poly a = random_poly_below(k, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly g = poly_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f.divmod(g).quot.monic(), d, rng, out);
      return;
    }
    Poly b;
    if (k->p() == 2) {
      // Trace map over F_2 on the degree-d factor field.
      int m = d * k->degree();
      Poly t = a.mod(f);
      Poly acc = t;
      for (int i = 1; i < m; ++i) {
        t = (t * t).mod(f);
        acc = (acc + t).mod(f);
      }
      b = acc;
    } else {
      mpz_class e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), d);
      e = (e - 1) / 2;
      b = a.pow_mod(e, f) - Poly::constant(Scalar::one(k));
    }
    Poly g2 = poly_gcd(b, f);
    if (g2.degree() > 0 && g2.degree() < f.degree()) {
      equal_degree_split(g2, d, rng, out);
      equal_degree_split(f.divmod(g2).quot.monic(), d, rng, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree f.
std::vector<Poly> factor_squarefree_finite(Poly f, Rng& rng) {
  const FieldRef& k = f.field();
  std::vector<Poly> irred;
  mpz_class q = k->size();
  Poly h = Poly::x(k);
  int d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      irred.push_back(f.monic());
      break;
    }
    h = h.pow_mod(q, f);
    Poly g = poly_gcd(h - Poly::x(k), f);
    if (g.degree() > 0) {
      equal_degree_split(g.monic(), d, rng, irred);
      f = f.divmod(g).quot.monic();
      h = h.mod(f);
    }
  }
  return irred;
}

// ---- rational factorization ----------------------------------------------

using ZPoly = std::vector<mpz_class>;  // little-endian

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

mpz_class zcontent(const ZPoly& f) {
  mpz_class c = 0;
  for (const auto& a : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
  return c;
}

// Exact division check: does d divide f in Z[x]? Returns quotient on success.
std::optional<ZPoly> zdivide_exact(ZPoly f, const ZPoly& d) {
  ztrim(f);
  if (d.empty()) return std::nullopt;
  if (f.empty()) return ZPoly{};
  if (f.size() < d.size()) return std::nullopt;
  ZPoly q(f.size() - d.size() + 1, mpz_class(0));
  while (!f.empty() && f.size() >= d.size()) {
    mpz_class c, rem_c;
    mpz_tdiv_qr(c.get_mpz_t(), rem_c.get_mpz_t(), f.back().get_mpz_t(), d.back().get_mpz_t());
    if (rem_c != 0) return std::nullopt;
    size_t shift = f.size() - d.size();
    q[shift] = c;
    for (size_t i = 0; i < d.size(); ++i) f[shift + i] -= c * d[i];
    ztrim(f);
  }
  if (!f.empty()) return std::nullopt;
  return q;
}

Poly zpoly_to_field(const ZPoly& f, const FieldRef& k) {
  std::vector<Scalar> cs;
  cs.reserve(f.size());
  for (const auto& c : f) cs.push_back(Scalar::of_mpq(k, mpq_class(c)));
  return Poly(k, std::move(cs));
}

ZPoly field_poly_to_z_mod(const Poly& f, const mpz_class& m) {
  ZPoly r;
  for (int i = 0; i <= f.degree(); ++i) {
    uint64_t v = f.coeff(i).residue_value();
    r.push_back(mpz_class(static_cast<unsigned long>(v)) % m);
  }
  ztrim(r);
  return r;
}

// Symmetric representative in (-m/2, m/2].
mpz_class zsym(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

// Multifactor linear Hensel lifting of a monic factorization.
// S monic in Z[x], S = prod(g_i) mod p with g_i monic, pairwise coprime mod p.
// Lifts to S = prod(G_i) mod p^K.
std::vector<ZPoly> hensel_lift(const ZPoly& S, const std::vector<Poly>& gs, uint64_t p, int K) {
  FieldRef fp = Field::prime(p);
  size_t r = gs.size();
  // Bezout data mod p: sigma_i = (prod_{j!=i} g_j)^{-1} mod g_i.
  std::vector<Poly> sigma;
  for (size_t i = 0; i < r; ++i) {
    Poly h = Poly::constant(Scalar::one(fp));
    for (size_t j = 0; j < r; ++j)
      if (j != i) h = (h * gs[j]).mod(gs[i]);
    // Invert h mod g_i by extended Euclid via linear solve on coefficients.
    int d = gs[i].degree();
    Matrix m(fp, d, d);
    for (int c = 0; c < d; ++c) {
      std::vector<Scalar> xc(c + 1, Scalar::zero(fp));
      xc[c] = Scalar::one(fp);
      Poly col = (Poly(fp, xc) * h).mod(gs[i]);
      for (int row = 0; row < d; ++row) m.at(row, c) = col.coeff(row);
    }
    Vec e1 = vec_zero(fp, d);
    e1[0] = Scalar::one(fp);
    auto sol = solve_linear(m, e1);
    check_internal(sol.has_value(), "Hensel Bezout inversion failed");
    sigma.push_back(Poly(fp, sol->particular));
  }

  mpz_class p_mpz(static_cast<unsigned long>(p));
  std::vector<ZPoly> G;
  for (const auto& g : gs) G.push_back(field_poly_to_z_mod(g, p_mpz));
  mpz_class pk = p_mpz;
  for (int step = 1; step < K; ++step) {
    ZPoly prod{mpz_class(1)};
    for (const auto& g : G) prod = zmul(prod, g);
    ZPoly err = zsub(S, prod);
    // err is divisible by p^step
    ZPoly e_over;
    for (auto& c : err) {
      mpz_class q = c / pk;
      check_internal(q * pk == c, "Hensel error not divisible by p^k");
      e_over.push_back(q);
    }
    ztrim(e_over);
    Poly e_mod_p = zpoly_to_field(e_over, fp);
    for (size_t i = 0; i < r; ++i) {
      Poly delta = (sigma[i] * e_mod_p).mod(gs[i]);
      ZPoly dz = field_poly_to_z_mod(delta, p_mpz);
      if (G[i].size() < dz.size()) G[i].resize(dz.size(), mpz_class(0));
      for (size_t t = 0; t < dz.size(); ++t) G[i][t] += pk * dz[t];
    }
    pk *= p_mpz;
  }
  // Normalize coefficients into [0, p^K).
  for (auto& g : G)
    for (auto& c : g) {
      c %= pk;
      if (c < 0) c += pk;
    }
  return G;
}

// Factor a primitive squarefree monic polynomial over Z (degree >= 1) into
// irreducible monic rational factors.
std::vector<ZPoly> factor_squarefree_monic_z(const ZPoly& S, Rng& rng) {
  int n = static_cast<int>(S.size()) - 1;
  if (n == 1) return {S};
  // Pick a good prime: S stays squarefree mod p.
  uint64_t p = 0;
  for (uint64_t cand : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                        37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull}) {
    FieldRef fp = Field::prime(cand);
    Poly sp = zpoly_to_field(S, fp);
    if (sp.degree() != n) continue;  // lc vanished (cannot happen: monic)
    if (poly_gcd(sp, sp.derivative()).degree() == 0) {
      p = cand;
      break;
    }
  }
  check_internal(p != 0, "no good prime found for rational factorization");
  FieldRef fp = Field::prime(p);
  Poly sp = zpoly_to_field(S, fp).monic();
  std::vector<std::pair<Poly, int>> sq;
  squarefree_decomp(sp, 1, sq);
  check_internal(sq.size() == 1 && sq[0].second == 1, "good prime lost squarefreeness");
  std::vector<Poly> modular = factor_squarefree_finite(sq[0].first, rng);
  std::sort(modular.begin(), modular.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
      uint64_t x = a.coeff(i).residue_value(), y = b.coeff(i).residue_value();
      if (x != y) return x < y;
    }
    return false;
  });
  if (modular.size() == 1) return {S};

  // Mignotte-style bound on factor coefficients: 2^n * sqrt(sum a_i^2).
  mpz_class norm2 = 0;
  for (const auto& c : S) norm2 += c * c;
  mpz_class bound = 1;
  mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
  bound += 1;
  bound <<= n;
  mpz_class need = 2 * bound + 1;
  int K = 1;
  mpz_class pk(static_cast<unsigned long>(p));
  while (pk < need) {
    pk *= static_cast<unsigned long>(p);
    ++K;
  }
  std::vector<ZPoly> lifted = hensel_lift(S, modular, p, K);
  mpz_class pK = 1;
  for (int i = 0; i < K; ++i) pK *= static_cast<unsigned long>(p);

  // Recombination over subsets of the lifted factors.
  std::vector<ZPoly> result;
  std::vector<bool> used(lifted.size(), false);
  ZPoly remaining = S;
  size_t live = lifted.size();
  for (size_t take = 1; take <= live && 2 * take <= live; ++take) {
    std::vector<size_t> idx;
    std::function<bool(size_t)> search = [&](size_t start) -> bool {
      if (idx.size() == take) {
        ZPoly cand{mpz_class(1)};
        for (size_t i : idx) cand = zmul(cand, lifted[i]);
        for (auto& c : cand) c = zsym(c, pK);
        // Quick test: constant term must divide remaining's constant term.
        if (!remaining.empty() && remaining[0] != 0 && cand[0] != 0) {
          mpz_class rmod = remaining[0] % cand[0];
          if (rmod != 0) return false;
        }
        auto quot = zdivide_exact(remaining, cand);
        if (!quot.has_value()) return false;
        result.push_back(cand);
        remaining = *quot;
        for (size_t i : idx) used[i] = true;
        live -= take;
        return true;
      }
      for (size_t i = start; i < lifted.size(); ++i) {
        if (used[i]) continue;
        idx.push_back(i);
        bool ok = search(i + 1);
        idx.pop_back();
        if (ok) return true;
      }
      return false;
    };
    // Retry the same size until no further factor of this size splits off.
    while (2 * take <= live) {
      idx.clear();
      if (!search(0)) break;
    }
  }
  ztrim(remaining);
  if (remaining.size() > 1) result.push_back(remaining);
  return result;
}

std::vector<PolyFactor> factor_rational(const Poly& f, Rng& rng, int degree_cap) {
  if (f.degree() > degree_cap)
    throw CapacityError("rational factorization degree above configured bound");
  const FieldRef& k = f.field();
  std::vector<PolyFactor> out;
  Poly work = f.monic();
  // Squarefree part, then per-factor multiplicity by trial division.
  Poly sq = work.divmod(poly_gcd(work, work.derivative())).quot.monic();
  // Monicize with integer coefficients: T(x) = lc^{n-1} sq(x / lc) is monic.
  // sq is already monic over Q; clear denominators of the squarefree part by
  // substitution x -> x/c with c the lcm of coefficient denominators.
  mpz_class den = 1;
  for (int i = 0; i <= sq.degree(); ++i)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), sq.coeff(i).rational_value().get_den().get_mpz_t());
  // g(x) = den^n sq(x/den) is monic with integer coefficients.
  int n = sq.degree();
  ZPoly S(n + 1);
  mpz_class powc = 1;
  for (int i = n; i >= 0; --i) {
    mpq_class c = sq.coeff(i).rational_value() * mpq_class(powc);
    check_internal(c.get_den() == 1, "monicization failed");
    S[i] = c.get_num();
    powc *= den;
  }
  std::vector<ZPoly> zfactors = n >= 1 ? factor_squarefree_monic_z(S, rng) : std::vector<ZPoly>{};
  for (const auto& zf : zfactors) {
    // Undo substitution: factor of sq is zf(den * x) made monic.
    std::vector<Scalar> cs(zf.size(), Scalar::zero(k));
    mpz_class dp = 1;
    for (size_t i = 0; i < zf.size(); ++i) {
      cs[i] = Scalar::of_mpq(k, mpq_class(zf[i] * dp));
      dp *= den;
    }
    Poly g = Poly(k, std::move(cs)).monic();
    int mult = 0;
    while (true) {
      auto dm = work.divmod(g);
      if (!dm.rem.is_zero()) break;
      work = dm.quot;
      ++mult;
    }
    check_internal(mult >= 1, "recombined factor does not divide input");
    out.push_back({g, mult});
  }
  check_internal(work.degree() == 0, "rational factorization incomplete");
  return out;
}

}  // namespace

std::vector<PolyFactor> factor_polynomial(const Poly& f, Rng& rng, int rational_degree_cap) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  const FieldRef& k = f.field();
  if (f.degree() == 0) return {};
  if (k->kind() == Field::Kind::Rationals) return factor_rational(f, rng, rational_degree_cap);
  std::vector<std::pair<Poly, int>> sq;
  squarefree_decomp(f.monic(), 1, sq);
  std::vector<PolyFactor> out;
  for (auto& [g, mult] : sq)
    for (Poly& irr : factor_squarefree_finite(g, rng)) out.push_back({irr.monic(), mult});
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    return a.factor.degree() < b.factor.degree();
  });
  return out;
}

bool poly_is_irreducible(const Poly& f, Rng& rng) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  auto fs = factor_polynomial(f, rng);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

Poly minimal_polynomial(const Matrix& action) {
  check_usage(action.rows() == action.cols(), "minimal polynomial needs a square matrix");
  const FieldRef& k = action.field();
  size_t n = action.rows();
  if (n == 0) return Poly::x(k);  // convention: min poly of the empty matrix
  // Krylov in the n^2-dimensional matrix space: find the first power of the
  // matrix that is a combination of the lower ones.
  std::vector<Matrix> powers;
  Matrix cur = Matrix::identity(k, n);
  while (true) {
    Vec flat;
    flat.reserve(n * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) flat.push_back(cur.at(i, j));
    Matrix coords_m(k, n * n, powers.size());
    for (size_t c = 0; c < powers.size(); ++c)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) coords_m.at(i * n + j, c) = powers[c].at(i, j);
    auto sol = solve_linear(coords_m, flat);
    if (sol.has_value()) {
      std::vector<Scalar> cs(powers.size() + 1, Scalar::zero(k));
      for (size_t i = 0; i < powers.size(); ++i) cs[i] = -sol->particular[i];
      cs[powers.size()] = Scalar::one(k);
      return Poly(k, std::move(cs));
    }
    powers.push_back(cur);
    cur = cur * action;
    check_internal(powers.size() <= n + 1, "minimal polynomial search exceeded dimension");
  }
}

Poly minimal_polynomial_of_vector(const Vec& v, const std::function<Vec(const Vec&)>& mul_by_v,
                                  const Vec& one) {
  check_internal(!one.empty(), "minimal polynomial over the zero algebra");
  const FieldRef& k = one[0].field();
  std::vector<Vec> powers;
  Vec cur = one;
  while (true) {
    Matrix coords_m(k, cur.size(), powers.size());
    for (size_t c = 0; c < powers.size(); ++c)
      for (size_t i = 0; i < cur.size(); ++i) coords_m.at(i, c) = powers[c][i];
    auto sol = solve_linear(coords_m, cur);
    if (sol.has_value()) {
      std::vector<Scalar> cs(powers.size() + 1, Scalar::zero(k));
      for (size_t i = 0; i < powers.size(); ++i) cs[i] = -sol->particular[i];
      cs[powers.size()] = Scalar::one(k);
      return Poly(k, std::move(cs));
    }
    powers.push_back(cur);
    cur = mul_by_v(cur);
    check_internal(powers.size() <= one.size() + 1, "element minimal polynomial exceeded dimension");
  }
}

}  // namespace sepalg

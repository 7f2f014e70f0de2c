#include "sepalg/field.hpp"

#include <algorithm>
#include <sstream>

namespace sepalg {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

uint64_t inv_mod_p(uint64_t a, uint64_t p) {
  if (a == 0) throw DomainError("inverse of zero in F_p");
  // p is prime, so Fermat suffices.
  return powmod_u64(a, p - 2, p);
}

// Dense F_p polynomial helpers used for modulus handling (little-endian).
using PVec = std::vector<uint64_t>;

void ptrim(PVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

PVec pmul(const PVec& a, const PVec& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  ptrim(r);
  return r;
}

PVec pmod(PVec a, const PVec& m, uint64_t p) {
  ptrim(a);
  uint64_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() >= m.size()) {
    uint64_t c = mulmod_u64(a.back(), lead_inv, p);
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      uint64_t sub = mulmod_u64(c, m[i], p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

PVec pgcd(PVec a, PVec b, uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PVec r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    uint64_t inv = inv_mod_p(a.back(), p);
    for (auto& c : a) c = mulmod_u64(c, inv, p);
  }
  return a;
}

PVec ppow_mod(PVec base, mpz_class e, const PVec& m, uint64_t p) {
  PVec r{1};
  base = pmod(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// f monic over F_p: irreducible iff x^(p^d) = x mod f and gcd(x^(p^(d/l)) - x, f) = 1
// for every prime l | d.
bool is_irreducible_mod_p(const PVec& f, uint64_t p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, d);
  PVec x{0, 1};
  PVec xq = ppow_mod(x, q, f, p);
  // x^(p^d) - x must be 0 mod f
  PVec diff = xq;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  ptrim(diff);
  if (!diff.empty()) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool lprime = true;
    for (int m = 2; m * m <= l; ++m)
      if (l % m == 0) lprime = false;
    if (!lprime) continue;
    mpz_class ql;
    mpz_ui_pow_ui(ql.get_mpz_t(), p, d / l);
    PVec xql = ppow_mod(x, ql, f, p);
    PVec g = xql;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    ptrim(g);
    PVec gc = pgcd(g, f, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t s : {2ull, 3ull, 5ull, 7ull}) {
    if (n % s == 0) return n == s;
  }
  // Deterministic Miller-Rabin for n < 3,215,031,751 with bases 2,3,5,7.
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldRef Field::rationals() {
  static FieldRef q(new Field(Kind::Rationals, 0, 1, {}));
  return q;
}

FieldRef Field::prime(uint64_t p) {
  check_usage(p < (1ull << 31), "prime field characteristic too large");
  check_usage(is_prime_u64(p), "field characteristic must be prime");
  return FieldRef(new Field(Kind::Prime, p, 1, {}));
}

FieldRef Field::extension(uint64_t p, int deg, std::vector<uint64_t> modulus) {
  check_usage(p < (1ull << 31), "prime field characteristic too large");
  check_usage(is_prime_u64(p), "field characteristic must be prime");
  check_usage(deg >= 1 && deg <= 8, "extension degree must be in [1, 8]");
  check_usage(static_cast<int>(modulus.size()) == deg + 1,
              "modulus must have degree equal to the extension degree");
  for (auto& c : modulus) c %= p;
  check_usage(modulus.back() == 1, "modulus must be monic");
  check_usage(is_irreducible_mod_p(modulus, p), "modulus is not irreducible over F_p");
  return FieldRef(new Field(Kind::Extension, p, deg, std::move(modulus)));
}

mpz_class Field::size() const {
  check_internal(kind_ != Kind::Rationals, "size of an infinite field");
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, deg_);
  return q;
}

bool Field::same_as(const Field& o) const {
  return kind_ == o.kind_ && p_ == o.p_ && deg_ == o.deg_ && modulus_ == o.modulus_;
}

std::string Field::describe() const {
  switch (kind_) {
    case Kind::Rationals:
      return "Q";
    case Kind::Prime:
      return "F_" + std::to_string(p_);
    case Kind::Extension: {
      mpz_class q;
      mpz_ui_pow_ui(q.get_mpz_t(), p_, deg_);
      return "F_" + q.get_str();
    }
  }
  return "?";
}

static void require_same_field(const Scalar& a, const Scalar& b) {
  check_internal(a.valid() && b.valid() && a.field()->same_as(*b.field()),
                 "scalar arithmetic across different fields");
}

Scalar Scalar::zero(const FieldRef& f) {
  Scalar s;
  s.field_ = f;
  if (f->kind() == Field::Kind::Extension) s.ext_.assign(f->degree(), 0);
  return s;
}

Scalar Scalar::one(const FieldRef& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldRef& f, long v) {
  Scalar s = zero(f);
  switch (f->kind()) {
    case Field::Kind::Rationals:
      s.q_ = v;
      break;
    case Field::Kind::Prime: {
      long m = v % static_cast<long>(f->p());
      if (m < 0) m += f->p();
      s.r_ = static_cast<uint64_t>(m);
      break;
    }
    case Field::Kind::Extension: {
      long m = v % static_cast<long>(f->p());
      if (m < 0) m += f->p();
      s.ext_[0] = static_cast<uint64_t>(m);
      break;
    }
  }
  return s;
}

Scalar Scalar::of_mpq(const FieldRef& f, const mpq_class& v) {
  if (f->kind() == Field::Kind::Rationals) {
    Scalar s = zero(f);
    s.q_ = v;
    s.q_.canonicalize();
    return s;
  }
  // Reduce numerator/denominator mod p (denominator must be invertible).
  mpz_class p(static_cast<unsigned long>(f->p()));
  mpz_class num = v.get_num() % p, den = v.get_den() % p;
  if (num < 0) num += p;
  if (den < 0) den += p;
  check_usage(den != 0, "rational with denominator divisible by p");
  uint64_t n = num.get_ui(), d = den.get_ui();
  uint64_t r = mulmod_u64(n, inv_mod_p(d, f->p()), f->p());
  if (f->kind() == Field::Kind::Prime) return residue(f, r);
  Scalar s = zero(f);
  s.ext_[0] = r;
  return s;
}

Scalar Scalar::residue(const FieldRef& f, uint64_t r) {
  check_internal(f->kind() == Field::Kind::Prime, "residue scalar needs a prime field");
  Scalar s;
  s.field_ = f;
  s.r_ = r % f->p();
  return s;
}

Scalar Scalar::ext_coords(const FieldRef& f, std::vector<uint64_t> coords) {
  check_internal(f->kind() == Field::Kind::Extension, "coordinate scalar needs an extension field");
  check_internal(coords.size() == static_cast<size_t>(f->degree()), "coordinate length mismatch");
  Scalar s;
  s.field_ = f;
  for (auto& c : coords) c %= f->p();
  s.ext_ = std::move(coords);
  return s;
}

bool Scalar::is_zero() const {
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      return q_ == 0;
    case Field::Kind::Prime:
      return r_ == 0;
    case Field::Kind::Extension:
      return std::all_of(ext_.begin(), ext_.end(), [](uint64_t c) { return c == 0; });
  }
  return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(*this, o);
  Scalar s = *this;
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      s.q_ += o.q_;
      break;
    case Field::Kind::Prime:
      s.r_ = (r_ + o.r_) % field_->p();
      break;
    case Field::Kind::Extension:
      for (size_t i = 0; i < ext_.size(); ++i) s.ext_[i] = (ext_[i] + o.ext_[i]) % field_->p();
      break;
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      s.q_ = -q_;
      break;
    case Field::Kind::Prime:
      s.r_ = r_ == 0 ? 0 : field_->p() - r_;
      break;
    case Field::Kind::Extension:
      for (size_t i = 0; i < ext_.size(); ++i) s.ext_[i] = ext_[i] == 0 ? 0 : field_->p() - ext_[i];
      break;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(*this, o);
  Scalar s = *this;
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      s.q_ *= o.q_;
      break;
    case Field::Kind::Prime:
      s.r_ = mulmod_u64(r_, o.r_, field_->p());
      break;
    case Field::Kind::Extension: {
      uint64_t p = field_->p();
      PVec prod = pmul(ext_, o.ext_, p);
      prod = pmod(std::move(prod), field_->modulus(), p);
      prod.resize(field_->degree(), 0);
      s.ext_ = std::move(prod);
      break;
    }
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  Scalar s = *this;
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      s.q_ = 1 / q_;
      break;
    case Field::Kind::Prime:
      s.r_ = inv_mod_p(r_, field_->p());
      break;
    case Field::Kind::Extension: {
      // a^(q-2) = a^{-1} in F_q.
      mpz_class e = field_->size() - 2;
      s = pow(e);
      break;
    }
  }
  return s;
}

Scalar Scalar::pow(const mpz_class& e) const {
  check_internal(e >= 0, "negative exponent in Scalar::pow");
  Scalar r = one(field_);
  Scalar b = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  require_same_field(*this, o);
  switch (field_->kind()) {
    case Field::Kind::Rationals:
      return q_ == o.q_;
    case Field::Kind::Prime:
      return r_ == o.r_;
    case Field::Kind::Extension:
      return ext_ == o.ext_;
  }
  return false;
}

uint64_t Scalar::residue_value() const {
  check_internal(field_->kind() == Field::Kind::Prime, "residue_value on non-prime field");
  return r_;
}

const mpq_class& Scalar::rational_value() const {
  check_internal(field_->kind() == Field::Kind::Rationals, "rational_value on non-rational field");
  return q_;
}

const std::vector<uint64_t>& Scalar::ext_value() const {
  check_internal(field_->kind() == Field::Kind::Extension, "ext_value on non-extension field");
  return ext_;
}

std::string Scalar::str() const {
  switch (field_->kind()) {
    case Field::Kind::Rationals: {
      std::ostringstream os;
      os << q_;
      return os.str();
    }
    case Field::Kind::Prime:
      return std::to_string(r_);
    case Field::Kind::Extension: {
      std::ostringstream os;
      bool first = true;
      for (size_t i = 0; i < ext_.size(); ++i) {
        if (ext_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || ext_[i] != 1) os << ext_[i];
        if (i >= 1) {
          if (ext_[i] != 1) os << "*";
          os << "t";
          if (i > 1) os << "^" << i;
        }
      }
      if (first) os << "0";
      return os.str();
    }
  }
  return "?";
}

Scalar scalar_from_string(const FieldRef& f, const std::string& s) {
  check_usage(!s.empty(), "empty coefficient string");
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class v(s);
      v.canonicalize();
      return Scalar::of_mpq(f, v);
    }
    mpq_class v(s.substr(0, slash) + "/" + s.substr(slash + 1));
    check_usage(v.get_den() != 0, "zero denominator");
    v.canonicalize();
    return Scalar::of_mpq(f, v);
  } catch (const std::invalid_argument&) {
    throw UsageError("bad coefficient string: " + s);
  }
}

}  // namespace sepalg

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sepalg/errors.hpp"

namespace sepalg {

class Field;
using FieldRef = std::shared_ptr<const Field>;

// An exact field of scalars: a prime field F_p, an extension F_{p^d} given by
// an explicit irreducible modulus over F_p, or the rationals.
class Field {
 public:
  enum class Kind { Prime, Extension, Rationals };

  static FieldRef rationals();
  static FieldRef prime(uint64_t p);
  // modulus: monic irreducible of degree `deg` over F_p, little-endian,
  // length deg + 1. Irreducibility is checked at construction.
  static FieldRef extension(uint64_t p, int deg, std::vector<uint64_t> modulus);

  Kind kind() const { return kind_; }
  uint64_t p() const { return p_; }
  int degree() const { return deg_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }

  bool is_finite() const { return kind_ != Kind::Rationals; }
  // Characteristic (0 for the rationals).
  uint64_t characteristic() const { return kind_ == Kind::Rationals ? 0 : p_; }
  // Field size q = p^deg; only valid for finite fields.
  mpz_class size() const;

  bool same_as(const Field& other) const;
  std::string describe() const;

 private:
  Field(Kind k, uint64_t p, int deg, std::vector<uint64_t> modulus)
      : kind_(k), p_(p), deg_(deg), modulus_(std::move(modulus)) {}

  Kind kind_;
  uint64_t p_ = 0;
  int deg_ = 1;
  std::vector<uint64_t> modulus_;
};

// Deterministic primality test, valid for all p < 2^31.
bool is_prime_u64(uint64_t n);

// An element of a Field, always kept in canonical form: residues in [0,p),
// extension coordinates reduced mod the modulus, fractions reduced with
// positive denominator. Arithmetic is total and exact.
class Scalar {
 public:
  Scalar() = default;  // invalid until assigned; field() == nullptr

  static Scalar zero(const FieldRef& f);
  static Scalar one(const FieldRef& f);
  static Scalar of_int(const FieldRef& f, long v);
  static Scalar of_mpq(const FieldRef& f, const mpq_class& v);
  // Residue in [0,p) for prime fields.
  static Scalar residue(const FieldRef& f, uint64_t r);
  // Coordinates over F_p, little-endian in the extension generator.
  static Scalar ext_coords(const FieldRef& f, std::vector<uint64_t> coords);

  const FieldRef& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar inverse() const;  // DomainError on zero
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar pow(const mpz_class& e) const;

  // Prime-field residue / rational value accessors (checked).
  uint64_t residue_value() const;
  const mpq_class& rational_value() const;
  const std::vector<uint64_t>& ext_value() const;

  // Decimal rendering: residue, "a/b", or comma-free coordinate tuple for
  // extension elements ("c0+c1*t+..." form).
  std::string str() const;

 private:
  FieldRef field_;
  uint64_t r_ = 0;             // prime field residue
  std::vector<uint64_t> ext_;  // extension coordinates over F_p
  mpq_class q_;                // rational value

  friend class Field;
};

// Parses "a", "-a" or "a/b" into a scalar of f (usage error on bad syntax).
Scalar scalar_from_string(const FieldRef& f, const std::string& s);

}  // namespace sepalg

// hopfkit: exact linear algebra over Q, GF(p) and cyclotomic fields.
//
// This header provides the scalar layer used everywhere else in the
// library.  Three base fields are supported:
//
//   * Rationals       -- arbitrary precision, backed by GMP's mpq_class.
//   * Prime           -- GF(p) for a prime p, residues stored in uint64.
//   * Cyclotomic(N)   -- Q[z]/Phi_N(z), elements stored as coefficient
//                        vectors of length deg Phi_N with exact rational
//                        entries.
//
// All arithmetic is exact; there is no floating point anywhere in the
// library.  Scalars carry their field, and mixing fields throws
// FieldMismatchError.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfkit {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldMismatchError : FieldError {
  using FieldError::FieldError;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { Rational, Prime, Cyclotomic };

// Cached data for a cyclotomic field Q[z]/Phi_N(z).
struct CycloInfo {
  unsigned N = 1;
  unsigned deg = 1;                 // deg Phi_N = phi(N)
  std::vector<mpq_class> phi;       // Phi_N, monic, size deg+1 (integer entries)
  // red[j] = z^(deg+j) reduced mod Phi_N, for j = 0 .. deg-2.
  std::vector<std::vector<mpq_class>> red;
};

// Computes the N-th cyclotomic polynomial (monic, integer coefficients,
// returned over mpq for convenience).
std::vector<mpq_class> cyclotomic_polynomial(unsigned N);

class FieldSpec {
 public:
  FieldSpec() : kind_(FieldKind::Rational) {}

  static FieldSpec rationals();
  static FieldSpec prime(unsigned long p);      // p must be prime
  static FieldSpec cyclotomic(unsigned N);      // N >= 1

  FieldKind kind() const { return kind_; }
  unsigned long p() const { return p_; }
  unsigned N() const { return N_; }
  unsigned long characteristic() const {
    return kind_ == FieldKind::Prime ? p_ : 0;
  }
  unsigned degree() const {       // dimension over the prime field / Q
    return kind_ == FieldKind::Cyclotomic ? cyclo_->deg : 1;
  }
  const CycloInfo& cyclo() const;

  bool operator==(const FieldSpec& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && N_ == o.N_;
  }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  // "QQ", "GF(p)", "Cyclotomic(N)" -- the names used in .hopf files.
  std::string name() const;
  static FieldSpec from_name(const std::string& name);

 private:
  FieldKind kind_;
  unsigned long p_ = 0;
  unsigned N_ = 0;
  std::shared_ptr<const CycloInfo> cyclo_;
};

class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const FieldSpec& F);
  static Scalar one(const FieldSpec& F);
  // Embeds an integer (resp. rational) into F.
  static Scalar from_int(const FieldSpec& F, long v);
  static Scalar from_rational(const FieldSpec& F, const mpq_class& v);
  // The generator z of a cyclotomic field.
  static Scalar gen(const FieldSpec& F);
  // z^k (k may be negative; z is a root of unity of order N).
  static Scalar root_of_unity_power(const FieldSpec& F, long k);

  const FieldSpec& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on division by zero
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;
  Scalar pow(long e) const;  // e may be negative for invertible scalars

  // The rational payload (Rational fields only).
  const mpq_class& rational() const;
  // The residue payload (Prime fields only).
  unsigned long residue() const;
  // Coefficient vector of length deg (Cyclotomic fields only).
  const std::vector<mpq_class>& coeffs() const;

  // Canonical text form, e.g. "5/6", "1/2*z^3 - 2", "3".  Inverse of
  // parse_scalar below.
  std::string str() const;

  // Total order used only for deterministic tie-breaking in containers.
  bool operator<(const Scalar& o) const;

 private:
  friend Scalar parse_scalar(const FieldSpec&, const std::string&);
  FieldSpec field_;
  mpq_class rat_;
  unsigned long res_ = 0;
  std::vector<mpq_class> coef_;  // size field_.degree() when cyclotomic

  void check_same(const Scalar& o) const;
  void reduce_cyclo(std::vector<mpq_class>& c) const;
};

// Parses the scalar grammar:
//   rational fields:   "a", "a/b"
//   prime fields:      integer literals (reduced mod p)
//   cyclotomic fields: polynomials in z, e.g. "1/2*z^3 - 2", "-z + 1"
// Whitespace is allowed between tokens.  Throws ParseError on bad input.
Scalar parse_scalar(const FieldSpec& F, const std::string& text);

}  // namespace hopfkit

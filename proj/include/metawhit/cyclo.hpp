#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// Elements are stored in the power basis 1, zeta, ..., zeta^{phi(N)-1} modulo
// the N-th cyclotomic polynomial, as an integer numerator vector over one
// positive common denominator. The representation is canonical: the
// denominator is coprime to the content of the numerator, and zero is stored
// with denominator 1. Equality is therefore coefficient equality.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace metawhit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Integer polynomial, coefficient of X^i at index i.
using IntPolynomial = std::vector<Integer>;

/// Phi_N by exact division of X^N - 1 by the Phi_d for proper divisors d.
IntPolynomial cyclotomic_polynomial(unsigned N);

unsigned euler_phi(unsigned N);

class CycloNum;

/// Shared, immutable description of Q(zeta_N): Phi_N, reduction tables and the
/// reduced powers zeta^k for 0 <= k < N. Obtain through field().
class CyclotomicField {
 public:
  explicit CyclotomicField(unsigned N);

  unsigned modulus() const noexcept { return modulus_; }
  unsigned degree() const noexcept { return degree_; }
  const IntPolynomial& minimal_polynomial() const noexcept { return phi_; }

  /// Coordinates of zeta^k, k in [0, N).
  std::span<const std::int64_t> power(unsigned k) const {
    return {powers_.data() + static_cast<std::size_t>(k) * degree_, degree_};
  }
  /// Coordinates of X^d mod Phi_N for d in [phi, 2 phi - 2].
  std::span<const std::int64_t> high_power(unsigned d) const {
    return {high_powers_.data() + static_cast<std::size_t>(d - degree_) * degree_,
            degree_};
  }
  /// log2 bound on the coefficient growth factor of reducing a product.
  unsigned reduction_growth_bits() const noexcept { return growth_bits_; }

 private:
  unsigned modulus_;
  unsigned degree_;
  IntPolynomial phi_;
  std::vector<std::int64_t> powers_;
  std::vector<std::int64_t> high_powers_;
  unsigned growth_bits_ = 0;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// Process-wide cache of fields by modulus. Thread-safe.
FieldPtr field(unsigned N);

class CycloNum {
 public:
  /// Zero of Q(zeta_N).
  explicit CycloNum(FieldPtr field);
  CycloNum(FieldPtr field, const Rational& value);
  /// From rational power-basis coordinates; length must be <= phi(N).
  CycloNum(FieldPtr field, std::span<const Rational> coeffs);

  static CycloNum zero(FieldPtr f) { return CycloNum(std::move(f)); }
  static CycloNum one(FieldPtr f) { return CycloNum(std::move(f), Rational(1)); }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  unsigned modulus() const noexcept { return field_->modulus(); }
  unsigned degree() const noexcept { return field_->degree(); }

  Rational coeff(unsigned i) const;
  std::vector<Rational> coeffs() const;
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Rational value; throws DomainError unless is_rational().
  Rational to_rational() const;

  CycloNum operator-() const;
  friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(const CycloNum& a, const Rational& r);
  friend CycloNum operator*(const Rational& r, const CycloNum& a) { return a * r; }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b);
  CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
  CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
  CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }

  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// Multiplicative inverse via extended Euclid against Phi_N.
  CycloNum inv() const;
  /// The automorphism zeta -> zeta^{-1} (complex conjugation).
  CycloNum conj() const { return galois(field_->modulus() - 1); }
  /// The automorphism zeta -> zeta^a, gcd(a, N) = 1.
  CycloNum galois(unsigned a) const;
  /// this * zeta^k, cheaper than a general product.
  CycloNum times_root(long long k) const;
  CycloNum pow(long long e) const;

  std::complex<double> complex_embed() const;
  /// "[c0, c1, ...]" with each ci a reduced fraction.
  std::string to_string() const;

 private:
  CycloNum(FieldPtr field, std::vector<Integer> num, Integer den);
  void normalize();
  void require_same_field(const CycloNum& other) const;

  FieldPtr field_;
  std::vector<Integer> num_;
  Integer den_;
};

CycloNum root_of_unity(const FieldPtr& f, long long k);
inline CycloNum root_of_unity(unsigned N, long long k) { return root_of_unity(field(N), k); }

std::complex<double> complex_embed(const CycloNum& z);

/// Multiplicative order of a root of unity z in Q(zeta_N), or 0 if z is not
/// an N-th root of unity.
unsigned root_order(const CycloNum& z);

/// Exponent k in [0, N) with z = zeta_N^k, or -1 when z is not a root of unity.
long long root_exponent(const CycloNum& z);

}  // namespace metawhit

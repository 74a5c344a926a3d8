#pragma once

// Laurent polynomials and rational functions in one variable X with
// coefficients in Q(zeta_N).

#include <algorithm>
#include <string>
#include <vector>

#include "metawhit/cyclo.hpp"

namespace metawhit {

/// sum_k c_k X^k over a finite range of integer k; trailing and leading zero
/// coefficients are trimmed so the representation is unique.
class LaurentPoly {
 public:
  explicit LaurentPoly(FieldPtr field);
  LaurentPoly(FieldPtr field, long long low, std::vector<CycloNum> coeffs);

  static LaurentPoly constant(const CycloNum& c) { return monomial(c, 0); }
  static LaurentPoly monomial(const CycloNum& c, long long k);
  /// X^k.
  static LaurentPoly power(const FieldPtr& f, long long k);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Lowest and highest exponent; both 0 for the zero polynomial.
  long long low() const noexcept { return low_; }
  long long high() const noexcept { return low_ + static_cast<long long>(c_.size()) - 1; }
  const std::vector<CycloNum>& coeffs() const noexcept { return c_; }
  CycloNum coeff(long long k) const;
  bool is_monomial() const noexcept { return c_.size() == 1; }

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const CycloNum& c);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  /// Multiply by X^k.
  LaurentPoly shifted(long long k) const;
  /// X -> c X (sign = +1) or X -> c X^{-1} (sign = -1); c nonzero.
  LaurentPoly substitute(const CycloNum& c, int sign) const;
  /// Value at x; x must be nonzero when negative exponents occur.
  CycloNum evaluate(const CycloNum& x) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();

  FieldPtr field_;
  long long low_ = 0;
  std::vector<CycloNum> c_;
};

/// num / den with den nonzero. Canonical form: the common polynomial factor
/// is cancelled and den has lowest exponent 0 with constant term 1.
class LaurentRat {
 public:
  explicit LaurentRat(const LaurentPoly& num);
  LaurentRat(const LaurentPoly& num, const LaurentPoly& den);

  static LaurentRat constant(const CycloNum& c) { return LaurentRat(LaurentPoly::constant(c)); }

  const FieldPtr& field_ptr() const noexcept { return num_.field_ptr(); }
  const LaurentPoly& numerator() const noexcept { return num_; }
  const LaurentPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the function is c X^m.
  bool is_monomial() const noexcept { return den_.is_monomial() && num_.is_monomial(); }

  LaurentRat operator-() const { return LaurentRat(-num_, den_); }
  friend LaurentRat operator+(const LaurentRat& a, const LaurentRat& b);
  friend LaurentRat operator-(const LaurentRat& a, const LaurentRat& b);
  friend LaurentRat operator*(const LaurentRat& a, const LaurentRat& b);
  friend LaurentRat operator*(const LaurentRat& a, const CycloNum& c);
  friend LaurentRat operator/(const LaurentRat& a, const LaurentRat& b);
  friend bool operator==(const LaurentRat& a, const LaurentRat& b);
  LaurentRat inv() const;

  LaurentRat substitute(const CycloNum& c, int sign) const;

  /// Value at X = x. Throws PoleError carrying the pole order when x is a
  /// root of the denominator.
  CycloNum evaluate_at(const CycloNum& x) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  struct Canonical {};
  LaurentRat(LaurentPoly num, LaurentPoly den, Canonical);
  void canonicalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

/// q^{-s} for s an integer or half-integer, as an element of Q(zeta_N);
/// sqrt_q is the positive square root of q there.
CycloNum q_to_minus_s(const CycloNum& sqrt_q, unsigned q, const Rational& s);

/// f evaluated at X = q^{-s}, s with denominator 1 or 2.
CycloNum evaluate(const LaurentRat& f, const Rational& s, const CycloNum& sqrt_q, unsigned q);

}  // namespace metawhit

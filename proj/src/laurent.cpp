#include "metawhit/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "metawhit/errors.hpp"

namespace metawhit {

namespace {

using Poly = std::vector<CycloNum>;  // ordinary polynomial, index = exponent

void trim_high(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

/// a = q b + r; b nonzero.
void divmod(Poly a, const Poly& b, Poly& quot, Poly& rem) {
  const FieldPtr& f = b.front().field_ptr();
  trim_high(a);
  quot.clear();
  if (a.size() < b.size()) {
    rem = std::move(a);
    return;
  }
  quot.assign(a.size() - b.size() + 1, CycloNum(f));
  const CycloNum lead_inv = b.back().inv();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i].is_zero()) continue;
    const CycloNum t = a[i] * lead_inv;
    const std::size_t shift = i - (b.size() - 1);
    quot[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
  }
  a.resize(b.size() - 1, CycloNum(f));
  trim_high(a);
  rem = std::move(a);
}

Poly make_monic(Poly a) {
  const CycloNum inv = a.back().inv();
  for (auto& c : a) c *= inv;
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim_high(a);
  trim_high(b);
  while (!b.empty()) {
    Poly quot, rem;
    divmod(std::move(a), b, quot, rem);
    a = std::move(b);
    b = std::move(rem);
  }
  return make_monic(std::move(a));
}

Poly to_poly(const LaurentPoly& p) { return p.coeffs(); }

}  // namespace

LaurentPoly::LaurentPoly(FieldPtr field) : field_(std::move(field)) {}

LaurentPoly::LaurentPoly(FieldPtr field, long long low, std::vector<CycloNum> coeffs)
    : field_(std::move(field)), low_(low), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field_ptr() != field_) throw IncompatibleModulus("Laurent coefficient from another field");
  trim();
}

void LaurentPoly::trim() {
  trim_high(c_);
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<long long>(lead);
  }
  if (c_.empty()) low_ = 0;
}

LaurentPoly LaurentPoly::monomial(const CycloNum& c, long long k) {
  return LaurentPoly(c.field_ptr(), k, {c});
}

LaurentPoly LaurentPoly::power(const FieldPtr& f, long long k) { return monomial(CycloNum::one(f), k); }

CycloNum LaurentPoly::coeff(long long k) const {
  if (k < low_ || k > high() || c_.empty()) return CycloNum(field_);
  return c_[static_cast<std::size_t>(k - low_)];
}

LaurentPoly LaurentPoly::operator-() const {
  auto c = c_;
  for (auto& x : c) x = -x;
  return {field_, low_, std::move(c)};
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.field_ != b.field_) throw IncompatibleModulus("Laurent polynomials over different fields");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long long lo = std::min(a.low_, b.low_), hi = std::max(a.high(), b.high());
  std::vector<CycloNum> c(static_cast<std::size_t>(hi - lo + 1), CycloNum(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[static_cast<std::size_t>(a.low_ - lo) + i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[static_cast<std::size_t>(b.low_ - lo) + i] += b.c_[i];
  return {a.field_, lo, std::move(c)};
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.field_ != b.field_) throw IncompatibleModulus("Laurent polynomials over different fields");
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.field_);
  std::vector<CycloNum> c(a.c_.size() + b.c_.size() - 1, CycloNum(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return {a.field_, a.low_ + b.low_, std::move(c)};
}

LaurentPoly operator*(const LaurentPoly& a, const CycloNum& s) {
  auto c = a.c_;
  for (auto& x : c) x *= s;
  return {a.field_, a.low_, std::move(c)};
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.field_ == b.field_ && a.low_ == b.low_ && a.c_ == b.c_;
}

LaurentPoly LaurentPoly::shifted(long long k) const {
  if (is_zero()) return *this;
  return {field_, low_ + k, c_};
}

LaurentPoly LaurentPoly::substitute(const CycloNum& c, int sign) const {
  if (c.is_zero()) throw DivisionByZero("substitution by zero scale");
  if (is_zero()) return *this;
  std::vector<CycloNum> out = c_;
  CycloNum scale = c.pow(low_);
  for (auto& x : out) {
    x *= scale;
    scale *= c;
  }
  if (sign > 0) return {field_, low_, std::move(out)};
  std::reverse(out.begin(), out.end());
  return {field_, -high(), std::move(out)};
}

CycloNum LaurentPoly::evaluate(const CycloNum& x) const {
  if (is_zero()) return CycloNum(field_);
  CycloNum acc(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return low_ == 0 ? acc : acc * x.pow(low_);
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].to_string();
    const long long k = low_ + static_cast<long long>(i);
    if (k != 0) os << "*" << var << "^" << k;
  }
  return os.str();
}

LaurentRat::LaurentRat(const LaurentPoly& num)
    : num_(num), den_(LaurentPoly::constant(CycloNum::one(num.field_ptr()))) {
  canonicalize();
}

LaurentRat::LaurentRat(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  if (num.field_ptr() != den.field_ptr()) throw IncompatibleModulus("rational function over two fields");
  canonicalize();
}

LaurentRat::LaurentRat(LaurentPoly num, LaurentPoly den, Canonical)
    : num_(std::move(num)), den_(std::move(den)) {}

void LaurentRat::canonicalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  const FieldPtr& f = den_.field_ptr();
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(CycloNum::one(f));
    return;
  }
  const long long shift = num_.low() - den_.low();
  Poly a = to_poly(num_), b = to_poly(den_);
  if (b.size() > 1 && a.size() > 1) {
    Poly g = poly_gcd(a, b);
    if (g.size() > 1) {
      Poly rem, qa, qb;
      divmod(a, g, qa, rem);
      divmod(b, g, qb, rem);
      a = std::move(qa);
      b = std::move(qb);
    }
  }
  const CycloNum c0 = b.front().inv();
  for (auto& x : a) x *= c0;
  for (auto& x : b) x *= c0;
  num_ = LaurentPoly(f, shift, std::move(a));
  den_ = LaurentPoly(f, 0, std::move(b));
}

LaurentRat operator+(const LaurentRat& a, const LaurentRat& b) {
  if (a.den_ == b.den_) return LaurentRat(a.num_ + b.num_, a.den_);
  return LaurentRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

LaurentRat operator-(const LaurentRat& a, const LaurentRat& b) { return a + (-b); }

LaurentRat operator*(const LaurentRat& a, const LaurentRat& b) {
  if (a.is_monomial() && b.is_monomial())
    return LaurentRat(a.num_ * b.num_, a.den_ * b.den_, LaurentRat::Canonical{});
  return LaurentRat(a.num_ * b.num_, a.den_ * b.den_);
}

LaurentRat operator*(const LaurentRat& a, const CycloNum& c) {
  if (c.is_zero()) return LaurentRat(LaurentPoly(a.field_ptr()));
  return LaurentRat(a.num_ * c, a.den_, LaurentRat::Canonical{});
}

LaurentRat operator/(const LaurentRat& a, const LaurentRat& b) { return a * b.inv(); }

bool operator==(const LaurentRat& a, const LaurentRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

LaurentRat LaurentRat::inv() const {
  if (num_.is_zero()) throw DivisionByZero("inverse of the zero rational function");
  return LaurentRat(den_, num_);
}

LaurentRat LaurentRat::substitute(const CycloNum& c, int sign) const {
  return LaurentRat(num_.substitute(c, sign), den_.substitute(c, sign));
}

CycloNum LaurentRat::evaluate_at(const CycloNum& x) const {
  if (x.is_zero()) throw DomainError("rational function evaluated at X = 0");
  const CycloNum d = den_.evaluate(x);
  if (!d.is_zero()) return num_.evaluate(x) / d;
  // numerator and denominator are coprime, so the pole order is the
  // multiplicity of x in the denominator
  Poly b = to_poly(den_);
  const Poly lin{-x, CycloNum::one(x.field_ptr())};
  int order = 0;
  for (;;) {
    Poly quot, rem;
    divmod(b, lin, quot, rem);
    if (!rem.empty()) break;
    ++order;
    b = std::move(quot);
  }
  throw PoleError("pole of order " + std::to_string(order) + " at X = " + x.to_string(), order);
}

std::string LaurentRat::to_string(const std::string& var) const {
  if (den_.is_monomial() && den_.low() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

CycloNum q_to_minus_s(const CycloNum& sqrt_q, unsigned q, const Rational& s) {
  const Rational two_s = s * 2;
  if (two_s.get_den() != 1) throw DomainError("s must be an integer or a half-integer");
  const long long m = -two_s.get_num().get_si();
  if (m >= 0) return sqrt_q.pow(m);
  return (sqrt_q * Rational(1, q)).pow(-m);
}

CycloNum evaluate(const LaurentRat& f, const Rational& s, const CycloNum& sqrt_q, unsigned q) {
  return f.evaluate_at(q_to_minus_s(sqrt_q, q, s));
}

}  // namespace metawhit

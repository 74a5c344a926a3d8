#include "metawhit/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "metawhit/errors.hpp"

namespace metawhit {

namespace {

using i128 = __int128;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

// Exact quotient of a by the monic polynomial b.
IntPolynomial divide_exact(IntPolynomial a, const IntPolynomial& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  IntPolynomial quot(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t j = 0; j < db; ++j) {
    if (a[j] != 0) throw std::logic_error("cyclotomic division is not exact");
  }
  return quot;
}

IntPolynomial cyclotomic_uncached(unsigned N,
                                  const std::map<unsigned, IntPolynomial>& known) {
  IntPolynomial xn(N + 1, Integer(0));
  xn[0] = -1;
  xn[N] = 1;
  for (unsigned d = 1; d < N; ++d) {
    if (N % d == 0) xn = divide_exact(std::move(xn), known.at(d));
  }
  return xn;
}

unsigned bit_length(const Integer& x) {
  return x == 0 ? 0u : static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

unsigned max_bits(const std::vector<Integer>& v) {
  unsigned m = 0;
  for (const auto& x : v) m = std::max(m, bit_length(x));
  return m;
}

unsigned bits_u64(std::uint64_t x) {
  unsigned b = 0;
  while (x) {
    ++b;
    x >>= 1;
  }
  return b;
}

Integer from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  const auto lo = static_cast<std::uint64_t>(u);
  Integer r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hi);
  r <<= 64;
  Integer l;
  mpz_import(l.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &lo);
  r += l;
  if (neg) r = -r;
  return r;
}

// Q[X] helpers for the extended Euclidean inverse.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// r0 <- r0 - q * r1 and s0 <- s0 - q * s1 where q = r0 div r1.
void euclid_step(QPoly& r0, const QPoly& r1, QPoly& s0, const QPoly& s1) {
  const std::size_t d1 = r1.size() - 1;
  const Rational lead_inv = 1 / r1.back();
  QPoly quot(r0.size() - d1, Rational(0));
  while (r0.size() >= r1.size()) {
    const std::size_t shift = r0.size() - r1.size();
    Rational c = r0.back() * lead_inv;
    quot[shift] = c;
    for (std::size_t j = 0; j <= d1; ++j) r0[shift + j] -= c * r1[j];
    r0.pop_back();
    trim(r0);
  }
  QPoly qs(quot.size() + s1.size() - 1, Rational(0));
  for (std::size_t i = 0; i < quot.size(); ++i) {
    if (quot[i] == 0) continue;
    for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += quot[i] * s1[j];
  }
  if (s0.size() < qs.size()) s0.resize(qs.size(), Rational(0));
  for (std::size_t i = 0; i < qs.size(); ++i) s0[i] -= qs[i];
  trim(s0);
}

}  // namespace

IntPolynomial cyclotomic_polynomial(unsigned N) {
  if (N == 0) throw DomainError("cyclotomic_polynomial: N must be positive");
  static std::map<unsigned, IntPolynomial> cache;
  std::lock_guard lock(cache_mutex());
  if (auto it = cache.find(N); it != cache.end()) return it->second;
  for (unsigned d = 1; d <= N; ++d) {
    if (N % d == 0 && !cache.contains(d)) cache.emplace(d, cyclotomic_uncached(d, cache));
  }
  return cache.at(N);
}

unsigned euler_phi(unsigned N) {
  unsigned result = N;
  unsigned m = N;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

CyclotomicField::CyclotomicField(unsigned N)
    : modulus_(N), phi_(cyclotomic_polynomial(N)) {
  degree_ = static_cast<unsigned>(phi_.size() - 1);
  std::vector<std::int64_t> phi_low(degree_);
  for (unsigned i = 0; i < degree_; ++i) {
    if (!phi_[i].fits_slong_p()) throw std::overflow_error("Phi_N coefficient too large");
    phi_low[i] = phi_[i].get_si();
  }
  const unsigned top = std::max(N, 2 * degree_ - 1);
  std::vector<std::int64_t> table(static_cast<std::size_t>(top) * degree_, 0);
  std::vector<std::int64_t> cur(degree_, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < top; ++k) {
    std::copy(cur.begin(), cur.end(), table.begin() + static_cast<std::ptrdiff_t>(k) * degree_);
    // multiply by X and reduce with X^degree = -sum phi_i X^i
    const std::int64_t carry = cur[degree_ - 1];
    for (unsigned i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (unsigned i = 0; i < degree_; ++i) {
      const i128 v = static_cast<i128>(cur[i]) - static_cast<i128>(carry) * phi_low[i];
      if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("power table overflow");
      cur[i] = static_cast<std::int64_t>(v);
    }
  }
  powers_.assign(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(N) * degree_);
  if (degree_ >= 2) {
    high_powers_.assign(table.begin() + static_cast<std::ptrdiff_t>(degree_) * degree_,
                        table.begin() + static_cast<std::ptrdiff_t>(2 * degree_ - 1) * degree_);
  }
  std::uint64_t growth = 1;
  for (std::size_t d = 0; d + 1 < degree_; ++d) {
    std::int64_t m = 0;
    for (unsigned i = 0; i < degree_; ++i) m = std::max(m, std::abs(high_powers_[d * degree_ + i]));
    growth += static_cast<std::uint64_t>(m);
  }
  growth_bits_ = bits_u64(growth);
}

FieldPtr field(unsigned N) {
  if (N == 0) throw DomainError("cyclotomic field modulus must be positive");
  static std::map<unsigned, FieldPtr> cache;
  static std::mutex m;
  {
    std::lock_guard lock(m);
    if (auto it = cache.find(N); it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const CyclotomicField>(N);
  std::lock_guard lock(m);
  return cache.emplace(N, std::move(f)).first->second;
}

// ---------------------------------------------------------------------------

CycloNum::CycloNum(FieldPtr f) : field_(std::move(f)), num_(field_->degree()), den_(1) {}

CycloNum::CycloNum(FieldPtr f, const Rational& value) : CycloNum(std::move(f)) {
  if (value.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  num_[0] = value.get_num();
  den_ = value.get_den();
  normalize();
}

CycloNum::CycloNum(FieldPtr f, std::span<const Rational> coeffs) : CycloNum(std::move(f)) {
  if (coeffs.size() > num_.size()) throw DomainError("too many power-basis coordinates");
  for (const auto& c : coeffs)
    if (c.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  for (const auto& c : coeffs) den_ = lcm(den_, Integer(c.get_den()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num_[i] = coeffs[i].get_num() * (den_ / coeffs[i].get_den());
  }
  normalize();
}

CycloNum::CycloNum(FieldPtr f, std::vector<Integer> num, Integer den)
    : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void CycloNum::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  Integer g = den_;
  bool all_zero = true;
  for (const auto& x : num_) {
    if (x == 0) continue;
    all_zero = false;
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (all_zero) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void CycloNum::require_same_field(const CycloNum& other) const {
  if (field_->modulus() != other.field_->modulus()) {
    throw IncompatibleModulus("cyclotomic moduli differ: " + std::to_string(modulus()) +
                              " vs " + std::to_string(other.modulus()));
  }
}

Rational CycloNum::coeff(unsigned i) const {
  Rational r(num_.at(i), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> CycloNum::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (unsigned i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycloNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& x) { return x == 0; });
}

bool CycloNum::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& x) { return x == 0; });
}

Rational CycloNum::to_rational() const {
  if (!is_rational()) throw DomainError("cyclotomic number is not rational");
  return coeff(0);
}

CycloNum CycloNum::operator-() const {
  std::vector<Integer> n = num_;
  for (auto& x : n) x = -x;
  CycloNum r(field_);
  r.num_ = std::move(n);
  r.den_ = den_;
  return r;
}

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
  a.require_same_field(b);
  if (a.den_ == b.den_) {
    std::vector<Integer> n(a.num_.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num_[i] + b.num_[i];
    return CycloNum(a.field_, std::move(n), a.den_);
  }
  Integer g = gcd(a.den_, b.den_);
  Integer fa = b.den_ / g;
  Integer fb = a.den_ / g;
  std::vector<Integer> n(a.num_.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num_[i] * fa + b.num_[i] * fb;
  return CycloNum(a.field_, std::move(n), a.den_ * fa);
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

CycloNum operator*(const CycloNum& a, const Rational& r) {
  std::vector<Integer> n = a.num_;
  for (auto& x : n) x *= r.get_num();
  return CycloNum(a.field_, std::move(n), a.den_ * r.get_den());
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  a.require_same_field(b);
  const CyclotomicField& F = *a.field_;
  const unsigned d = F.degree();
  if (a.is_zero() || b.is_zero()) return CycloNum(a.field_);
  if (d == 1) {
    return CycloNum(a.field_, std::vector<Integer>{Integer(a.num_[0] * b.num_[0])},
                    Integer(a.den_ * b.den_));
  }
  const unsigned ba = max_bits(a.num_);
  const unsigned bb = max_bits(b.num_);
  std::vector<Integer> out(d);
  if (ba <= 62 && bb <= 62 && ba + bb + bits_u64(d) + F.reduction_growth_bits() <= 125) {
    std::vector<std::int64_t> x(d), y(d);
    for (unsigned i = 0; i < d; ++i) {
      x[i] = a.num_[i].get_si();
      y[i] = b.num_[i].get_si();
    }
    std::vector<i128> prod(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      for (unsigned j = 0; j < d; ++j) prod[i + j] += static_cast<i128>(x[i]) * y[j];
    }
    for (unsigned hi = d; hi < 2 * d - 1; ++hi) {
      if (prod[hi] == 0) continue;
      auto row = F.high_power(hi);
      for (unsigned i = 0; i < d; ++i) prod[i] += prod[hi] * row[i];
    }
    for (unsigned i = 0; i < d; ++i) out[i] = from_i128(prod[i]);
  } else {
    std::vector<Integer> prod(2 * d - 1);
    for (unsigned i = 0; i < d; ++i) {
      if (a.num_[i] == 0) continue;
      for (unsigned j = 0; j < d; ++j) {
        mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
      }
    }
    for (unsigned hi = d; hi < 2 * d - 1; ++hi) {
      if (prod[hi] == 0) continue;
      auto row = F.high_power(hi);
      for (unsigned i = 0; i < d; ++i) {
        if (row[i] > 0) {
          mpz_addmul_ui(prod[i].get_mpz_t(), prod[hi].get_mpz_t(), static_cast<unsigned long>(row[i]));
        } else if (row[i] < 0) {
          mpz_submul_ui(prod[i].get_mpz_t(), prod[hi].get_mpz_t(), static_cast<unsigned long>(-row[i]));
        }
      }
    }
    for (unsigned i = 0; i < d; ++i) out[i] = std::move(prod[i]);
  }
  return CycloNum(a.field_, std::move(out), a.den_ * b.den_);
}

CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inv(); }

bool operator==(const CycloNum& a, const CycloNum& b) {
  a.require_same_field(b);
  return a.den_ == b.den_ && a.num_ == b.num_;
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(modulus()) + ")");
  const unsigned d = degree();
  if (is_rational()) {
    return CycloNum(field_, Rational(1) / to_rational());
  }
  // Elements with rational norm z * conj(z) (roots of unity, Gauss sums and
  // their rational multiples) invert without a Euclidean pass.
  {
    const CycloNum c = conj();
    const CycloNum norm = *this * c;
    if (norm.is_rational()) return c * (Rational(1) / norm.to_rational());
  }
  QPoly r0(field_->minimal_polynomial().begin(), field_->minimal_polynomial().end());
  QPoly r1(num_.begin(), num_.end());
  trim(r1);
  QPoly s0{Rational(0)};
  QPoly s1{Rational(1)};
  trim(s0);
  while (r1.size() > 1) {
    euclid_step(r0, r1, s0, s1);
    std::swap(r0, r1);
    std::swap(s0, s1);
    // keep the remainder monic to limit growth
    if (r1.empty()) throw std::logic_error("Phi_N is not irreducible?");
    const Rational lc = r1.back();
    for (auto& c : r1) c /= lc;
    for (auto& c : s1) c /= lc;
  }
  // now s1 * a == r1[0] (mod Phi) with r1 constant; r1 was made monic so r1 == 1
  std::vector<Rational> coeffs(s1.begin(), s1.end());
  coeffs.resize(d, Rational(0));
  Rational scale = Rational(den_) / r1[0];
  CycloNum r(field_, std::span<const Rational>(coeffs));
  return r * scale;
}

namespace {

// sum_i coef_i * table_row(map(i)), all rows from the power table.
template <class RowOf>
std::vector<Integer> combine_rows(const CyclotomicField& F, const std::vector<Integer>& coef,
                                  RowOf row_of) {
  const unsigned d = F.degree();
  std::vector<Integer> out(d);
  const unsigned bc = max_bits(coef);
  std::int64_t row_max = 0;
  for (unsigned i = 0; i < d; ++i) {
    if (coef[i] == 0) continue;
    for (auto v : row_of(i)) row_max = std::max(row_max, std::abs(v));
  }
  if (bc <= 62 && bc + bits_u64(static_cast<std::uint64_t>(row_max)) + bits_u64(d) <= 125) {
    std::vector<i128> acc(d, 0);
    for (unsigned i = 0; i < d; ++i) {
      if (coef[i] == 0) continue;
      const std::int64_t c = coef[i].get_si();
      auto row = row_of(i);
      for (unsigned j = 0; j < d; ++j) acc[j] += static_cast<i128>(c) * row[j];
    }
    for (unsigned j = 0; j < d; ++j) out[j] = from_i128(acc[j]);
    return out;
  }
  for (unsigned i = 0; i < d; ++i) {
    if (coef[i] == 0) continue;
    auto row = row_of(i);
    for (unsigned j = 0; j < d; ++j) {
      if (row[j] > 0) {
        mpz_addmul_ui(out[j].get_mpz_t(), coef[i].get_mpz_t(), static_cast<unsigned long>(row[j]));
      } else if (row[j] < 0) {
        mpz_submul_ui(out[j].get_mpz_t(), coef[i].get_mpz_t(), static_cast<unsigned long>(-row[j]));
      }
    }
  }
  return out;
}

unsigned mod_exponent(long long k, unsigned N) {
  long long r = k % static_cast<long long>(N);
  if (r < 0) r += N;
  return static_cast<unsigned>(r);
}

}  // namespace

CycloNum CycloNum::galois(unsigned a) const {
  const unsigned N = modulus();
  if (std::gcd(a % N, N) != 1 && N > 1) throw DomainError("galois: exponent not coprime to N");
  const CyclotomicField& F = *field_;
  auto n = combine_rows(F, num_, [&](unsigned i) {
    return F.power(static_cast<unsigned>((static_cast<unsigned long long>(a) * i) % N));
  });
  return CycloNum(field_, std::move(n), den_);
}

CycloNum CycloNum::times_root(long long k) const {
  const unsigned N = modulus();
  const unsigned shift = mod_exponent(k, N);
  if (shift == 0) return *this;
  const CyclotomicField& F = *field_;
  auto n = combine_rows(F, num_, [&](unsigned i) { return F.power((i + shift) % N); });
  return CycloNum(field_, std::move(n), den_);
}

CycloNum CycloNum::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  CycloNum result = one(field_);
  CycloNum base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::complex<double> CycloNum::complex_embed() const {
  const unsigned N = modulus();
  std::complex<long double> acc = 0;
  for (unsigned i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * i / N;
    acc += static_cast<long double>(num_[i].get_d()) *
           std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  acc /= static_cast<long double>(den_.get_d());
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < num_.size(); ++i) {
    if (i) os << ", ";
    os << coeff(i).get_str();
  }
  os << ']';
  return os.str();
}

CycloNum root_of_unity(const FieldPtr& f, long long k) {
  const unsigned e = mod_exponent(k, f->modulus());
  auto row = f->power(e);
  std::vector<Rational> c(row.begin(), row.end());
  return CycloNum(f, std::span<const Rational>(c));
}

std::complex<double> complex_embed(const CycloNum& z) { return z.complex_embed(); }

long long root_exponent(const CycloNum& z) {
  if (z.denominator() != 1) return -1;
  const auto& F = *z.field_ptr();
  for (unsigned k = 0; k < F.modulus(); ++k) {
    auto row = F.power(k);
    bool eq = true;
    for (unsigned i = 0; i < F.degree() && eq; ++i) eq = (z.numerators()[i] == row[i]);
    if (eq) return k;
  }
  return -1;
}

unsigned root_order(const CycloNum& z) {
  const long long e = root_exponent(z);
  if (e < 0) return 0;
  const unsigned N = z.modulus();
  return N / std::gcd(static_cast<unsigned>(e), N);
}

}  // namespace metawhit

#include "metawhit/finite_field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "metawhit/errors.hpp"

namespace metawhit {

namespace {

using Poly = std::vector<std::int64_t>;  // over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr) {
    std::int64_t qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("not invertible mod p");
  return (t % p + p) % p;
}

Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  trim(a);
  const std::int64_t lc_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t c = a.back() * lc_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, m, p);
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or: m of degree f is irreducible iff gcd(X^{p^k} - X, m) = 1 for k <= f/2.
bool is_irreducible(const Poly& m, std::int64_t p) {
  const std::size_t f = m.size() - 1;
  Poly xpk{0, 1};
  for (std::size_t k = 1; k <= f / 2; ++k) {
    xpk = poly_powmod(xpk, static_cast<std::uint64_t>(p), m, p);
    Poly d = xpk;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    Poly g = poly_gcd(d, m, p);
    if (g.size() > 1) return false;
  }
  return true;
}

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  std::int64_t r = 1, b = a;
  std::uint64_t e = static_cast<std::uint64_t>(p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool FqElem::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

FqDescriptor::FqDescriptor(unsigned p, unsigned f, std::optional<std::vector<std::int64_t>> modulus_poly)
    : p_(p), f_(f) {
  if (p < 3 || !is_prime(p)) throw InvalidDatum("p must be an odd prime, got " + std::to_string(p));
  if (f < 1) throw InvalidDatum("f must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    q *= p;
    if (q > 2'000'000) throw InvalidDatum("residue field too large for table-based arithmetic");
  }
  q_ = static_cast<unsigned>(q);

  if (f == 1) {
    modulus_ = {0, 1};
  } else {
    if (!modulus_poly) throw InvalidDatum("modulus polynomial required when f > 1");
    if (modulus_poly->size() != f + 1) throw InvalidDatum("modulus polynomial must have f + 1 coefficients");
    Poly m(modulus_poly->begin(), modulus_poly->end());
    for (auto& c : m) c = mod_ll(c, p);
    if (m.back() != 1) throw InvalidDatum("modulus polynomial must be monic");
    if (!is_irreducible(m, p)) throw InvalidDatum("modulus polynomial is reducible over F_p");
    modulus_.assign(m.begin(), m.end());
  }

  const unsigned N = std::lcm(std::lcm(4u, p), q_ - 1);
  ambient_ = field(N);

  generator_ = find_generator();
  exp_.resize(q_ - 1);
  log_.assign(q_, -1);
  std::uint32_t cur = 1;
  const std::uint32_t g = encode(generator_);
  for (unsigned i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur;
    if (log_[cur] != -1) throw InvalidDatum("generator order check failed");
    log_[cur] = static_cast<std::int32_t>(i);
    cur = mul_codes_slow(cur, g);
  }

  trace_.assign(q_, 0);
  for (std::uint32_t c = 1; c < q_; ++c) {
    const FqElem x = decode(c);
    FqElem acc = zero();
    FqElem xp = x;
    for (unsigned i = 0; i < f_; ++i) {
      acc = add(acc, xp);
      xp = pow(xp, p_);
    }
    for (unsigned i = 1; i < f_; ++i)
      if (acc.coeffs[i] != 0) throw std::logic_error("trace left the prime field");
    trace_[c] = acc.coeffs[0];
  }

  const FieldPtr& F = ambient_;
  CycloNum tau(F);
  for (unsigned t = 1; t < p; ++t) {
    const CycloNum z = root_of_unity(F, static_cast<long long>(N / p) * t);
    tau = legendre(t, p) > 0 ? tau + z : tau - z;
  }
  CycloNum sp = (p % 4 == 1) ? tau : tau.times_root(-static_cast<long long>(N / 4));
  if (sp.complex_embed().real() < 0) sp = -sp;
  if (!(sp * sp == CycloNum(F, Rational(p)))) throw std::logic_error("sqrt_p construction failed");
  CycloNum sq = sp.pow(f);
  if (!(sq * sq == CycloNum(F, Rational(q_))) || sq.complex_embed().real() <= 0)
    throw std::logic_error("sqrt_q construction failed");
  sqrt_p_ = std::move(sp);
  sqrt_q_ = std::move(sq);
}

void FqDescriptor::check(const FqElem& x) const {
  if (x.coeffs.size() != f_) throw DomainError("element has wrong number of coefficients");
  for (auto c : x.coeffs)
    if (c >= p_) throw DomainError("element coefficient out of range");
}

FqElem FqDescriptor::element(std::uint32_t constant) const {
  FqElem x{std::vector<std::uint32_t>(f_, 0)};
  x.coeffs[0] = constant % p_;
  return x;
}

FqElem FqDescriptor::element(std::vector<std::uint32_t> coeffs) const {
  coeffs.resize(f_, 0);
  for (auto& c : coeffs) c %= p_;
  return FqElem{std::move(coeffs)};
}

std::uint32_t FqDescriptor::encode(const FqElem& x) const {
  check(x);
  std::uint32_t code = 0;
  for (unsigned i = f_; i-- > 0;) code = code * p_ + x.coeffs[i];
  return code;
}

FqElem FqDescriptor::decode(std::uint32_t code) const {
  if (code >= q_) throw DomainError("code out of range");
  FqElem x{std::vector<std::uint32_t>(f_, 0)};
  for (unsigned i = 0; i < f_; ++i) {
    x.coeffs[i] = code % p_;
    code /= p_;
  }
  return x;
}

std::uint32_t FqDescriptor::mul_codes_slow(std::uint32_t a, std::uint32_t b) const {
  const FqElem x = decode(a), y = decode(b);
  Poly px(x.coeffs.begin(), x.coeffs.end()), py(y.coeffs.begin(), y.coeffs.end());
  trim(px);
  trim(py);
  Poly m(modulus_.begin(), modulus_.end());
  Poly r = (f_ == 1) ? Poly{} : poly_mulmod(px, py, m, p_);
  if (f_ == 1) {
    r = {static_cast<std::int64_t>(x.coeffs[0]) * y.coeffs[0] % p_};
  }
  std::vector<std::uint32_t> c(f_, 0);
  for (std::size_t i = 0; i < r.size() && i < f_; ++i) c[i] = static_cast<std::uint32_t>(r[i]);
  return encode(FqElem{std::move(c)});
}

FqElem FqDescriptor::add(const FqElem& a, const FqElem& b) const {
  check(a);
  check(b);
  FqElem r{std::vector<std::uint32_t>(f_)};
  for (unsigned i = 0; i < f_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
  return r;
}

FqElem FqDescriptor::neg(const FqElem& a) const {
  check(a);
  FqElem r{std::vector<std::uint32_t>(f_)};
  for (unsigned i = 0; i < f_; ++i) r.coeffs[i] = (p_ - a.coeffs[i]) % p_;
  return r;
}

FqElem FqDescriptor::mul(const FqElem& a, const FqElem& b) const {
  const std::uint32_t ca = encode(a), cb = encode(b);
  if (ca == 0 || cb == 0) return zero();
  if (exp_.empty()) return decode(mul_codes_slow(ca, cb));
  return decode(exp_[(static_cast<std::uint64_t>(log_[ca]) + log_[cb]) % (q_ - 1)]);
}

FqElem FqDescriptor::inv(const FqElem& a) const {
  const std::uint32_t c = encode(a);
  if (c == 0) throw DivisionByZero("inverse of 0 in F_q");
  return gen_pow(-static_cast<long long>(dlog(a)));
}

FqElem FqDescriptor::pow(const FqElem& a, std::uint64_t e) const {
  const std::uint32_t c = encode(a);
  if (c == 0) return e == 0 ? one() : zero();
  if (exp_.empty()) {
    std::uint32_t result = 1, base = c;
    while (e) {
      if (e & 1) result = mul_codes_slow(result, base);
      e >>= 1;
      if (e) base = mul_codes_slow(base, base);
    }
    return decode(result);
  }
  const std::uint64_t l = static_cast<std::uint64_t>(log_[c]) * (e % (q_ - 1)) % (q_ - 1);
  return decode(exp_[l]);
}

FqElem FqDescriptor::gen_pow(long long e) const {
  return decode(exp_[static_cast<std::size_t>(mod_ll(e, q_ - 1))]);
}

std::uint64_t FqDescriptor::order(const FqElem& x) const {
  if (x.is_zero()) throw DomainError("order of 0 is undefined");
  std::uint64_t ord = q_ - 1;
  for (auto r : prime_factors(q_ - 1)) {
    while (ord % r == 0 && pow(x, ord / r) == one()) ord /= r;
  }
  return ord;
}

FqElem FqDescriptor::find_generator() const {
  for (std::uint32_t c = 1; c < q_; ++c) {
    const FqElem x = decode(c);
    if (order(x) == q_ - 1) return x;
  }
  throw InvalidDatum("no generator found: modulus does not define a field");
}

unsigned FqDescriptor::dlog(const FqElem& x) const {
  const std::uint32_t c = encode(x);
  if (c == 0) throw DomainError("dlog(0) is undefined");
  return static_cast<unsigned>(log_[c]);
}

unsigned FqDescriptor::trace_to_prime_field(const FqElem& x) const { return trace_[encode(x)]; }

unsigned FqDescriptor::additive_exponent(const FqElem& x) const {
  const unsigned N = ambient_modulus();
  return static_cast<unsigned>((static_cast<std::uint64_t>(N / p_) * trace_to_prime_field(x)) % N);
}

unsigned FqDescriptor::mult_exponent(long long k, const FqElem& x) const {
  if (x.is_zero()) throw DomainError("multiplicative character evaluated at 0");
  const unsigned N = ambient_modulus();
  const long long e = mod_ll(mod_ll(k, q_ - 1) * dlog(x), q_ - 1);
  return static_cast<unsigned>((static_cast<std::uint64_t>(N / (q_ - 1)) * e) % N);
}

CycloNum FqDescriptor::residue_additive_value(const FqElem& x) const {
  return root_of_unity(ambient_, additive_exponent(x));
}

CycloNum FqDescriptor::residue_mult_value(long long k, const FqElem& x) const {
  return root_of_unity(ambient_, mult_exponent(k, x));
}

CycloNum FqDescriptor::gauss_sum(long long k, const FqElem& w) const {
  if (w.is_zero()) throw DomainError("gauss_sum: w must be a unit");
  const unsigned N = ambient_modulus();
  const unsigned step_mult = N / (q_ - 1);
  const unsigned step_add = N / p_;
  const long long kk = mod_ll(k, q_ - 1);
  const unsigned wl = dlog(w);
  std::vector<long long> counts(N, 0);
  for (unsigned i = 0; i < q_ - 1; ++i) {
    // t = g^i, w t = g^{i + dlog w}
    const std::uint32_t wt = exp_[(i + wl) % (q_ - 1)];
    const std::uint64_t e = static_cast<std::uint64_t>(step_mult) * ((kk * i) % (q_ - 1)) +
                            static_cast<std::uint64_t>(step_add) * trace_[wt];
    ++counts[e % N];
  }
  const auto& F = *ambient_;
  std::vector<Rational> acc(F.degree(), Rational(0));
  std::vector<long long> sum(F.degree(), 0);
  for (unsigned e = 0; e < N; ++e) {
    if (!counts[e]) continue;
    auto row = F.power(e);
    for (unsigned j = 0; j < F.degree(); ++j) sum[j] += counts[e] * row[j];
  }
  for (unsigned j = 0; j < F.degree(); ++j) acc[j] = Rational(static_cast<long>(sum[j]));
  return CycloNum(ambient_, std::span<const Rational>(acc));
}

}  // namespace metawhit

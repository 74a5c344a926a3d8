#include "metawhit/characters.hpp"

#include "metawhit/errors.hpp"

namespace metawhit {

namespace {

unsigned mod_u(long long a, long long m) {
  long long r = a % m;
  return static_cast<unsigned>(r < 0 ? r + m : r);
}

}  // namespace

TameMultChar::TameMultChar(DatumPtr datum, long long k, long long w_exponent)
    : datum_(std::move(datum)),
      k_(mod_u(k, datum_->q() - 1)),
      w_(mod_u(w_exponent, datum_->N())) {}

TameMultChar TameMultChar::theta_unramified(const DatumPtr& d) { return {d, 0, d->N() / 2}; }

TameMultChar TameMultChar::theta_ramified(const DatumPtr& d, int sign) {
  return {d, (d->q() - 1) / 2, sign > 0 ? 0 : d->N() / 2};
}

CycloNum TameMultChar::w_value() const { return datum_->zeta(w_); }

bool TameMultChar::is_quadratic() const {
  return (2ull * k_) % (datum_->q() - 1) == 0 && (2ull * w_) % datum_->N() == 0;
}

unsigned TameMultChar::value_exponent(const FStarElem& x) const {
  const long long N = datum_->N();
  const long long from_unit = datum_->residue_field().mult_exponent(k_, x.unit);
  return mod_u(static_cast<long long>(w_) * (x.valuation % N) + from_unit, N);
}

CycloNum TameMultChar::operator()(const FStarElem& x) const { return datum_->zeta(value_exponent(x)); }

TameMultChar TameMultChar::operator*(const TameMultChar& o) const {
  if (datum_ != o.datum_) throw IncompatibleModulus("characters over different data");
  return {datum_, static_cast<long long>(k_) + o.k_, static_cast<long long>(w_) + o.w_};
}

TameMultChar TameMultChar::inverse() const { return {datum_, -static_cast<long long>(k_), -static_cast<long long>(w_)}; }

TameMultChar TameMultChar::pow(long long e) const {
  const long long qm1 = datum_->q() - 1, N = datum_->N();
  const long long ek = static_cast<long long>(k_) * (e % qm1) % qm1;
  const long long ew = static_cast<long long>(w_) * (e % N) % N;
  return {datum_, ek, ew};
}

std::string TameMultChar::to_string() const {
  return "chi(k=" + std::to_string(k_) + ", w=zeta_" + std::to_string(datum_->N()) + "^" + std::to_string(w_) + ")";
}

AdditiveCharData::AdditiveCharData(DatumPtr datum, long long conductor, FqElem twist)
    : datum_(std::move(datum)), e_(conductor), twist_(std::move(twist)) {
  if (twist_.is_zero()) throw DomainError("additive character twist must be a unit");
  datum_->residue_field().encode(twist_);
}

AdditiveCharData::AdditiveCharData(DatumPtr datum, long long conductor)
    : AdditiveCharData(datum, conductor, datum->residue_field().one()) {}

AdditiveCharData AdditiveCharData::twisted(const FStarElem& c) const {
  return {datum_, e_ - c.valuation, datum_->residue_field().mul(twist_, c.unit)};
}

AdditiveCharData AdditiveCharData::scaled_by_n() const {
  return twisted(datum_->make(0, datum_->n() % datum_->p()));
}

std::string AdditiveCharData::to_string() const {
  std::string t;
  for (std::size_t i = 0; i < twist_.coeffs.size(); ++i) t += (i ? "," : "") + std::to_string(twist_.coeffs[i]);
  return "psi(e=" + std::to_string(e_) + ", twist=[" + t + "])";
}

}  // namespace metawhit

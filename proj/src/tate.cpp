#include "metawhit/tate.hpp"

namespace metawhit {

LaurentRat l_factor(const TameMultChar& chi) {
  const auto& f = chi.datum()->ambient();
  if (chi.is_ramified()) return LaurentRat::constant(CycloNum::one(f));
  const LaurentPoly den = LaurentPoly::constant(CycloNum::one(f)) - LaurentPoly::monomial(chi.w_value(), 1);
  return LaurentRat(LaurentPoly::constant(CycloNum::one(f)), den);
}

LaurentRat epsilon_factor(const TameMultChar& chi, const AdditiveCharData& psi) {
  const TameLocalDatum& d = *chi.datum();
  const long long e = psi.conductor();
  // chi(uniformizer^{-e} twist) * q^{-e/2}
  CycloNum c = chi(d.make(-e, psi.twist()));
  const CycloNum sq_inv = d.sqrt_q() * Rational(1, d.q());
  c *= e >= 0 ? sq_inv.pow(e) : d.sqrt_q().pow(-e);
  long long degree = -e;
  if (chi.is_ramified()) {
    c *= chi.w_value() * d.gauss(-static_cast<long long>(chi.k()));
    degree += 1;
  }
  return LaurentRat(LaurentPoly::monomial(c, degree));
}

LaurentRat gamma_factor(const TameMultChar& chi, const AdditiveCharData& psi) {
  const LaurentRat eps = epsilon_factor(chi, psi);
  if (chi.is_ramified()) return eps;
  return eps * reflect_s(l_factor(chi.inverse()), *chi.datum()) / l_factor(chi);
}

LaurentRat shift_s(const LaurentRat& f, long long t, const TameLocalDatum& datum) {
  const Rational q(datum.q());
  Rational c = 1;
  for (long long i = 0; i < (t >= 0 ? t : -t); ++i) c *= q;
  if (t > 0) c = 1 / c;
  return f.substitute(datum.rational(c), +1);
}

LaurentRat reflect_s(const LaurentRat& f, const TameLocalDatum& datum) {
  return f.substitute(datum.rational(Rational(1, datum.q())), -1);
}

CycloNum q_to_minus_s(const TameLocalDatum& datum, const Rational& s) {
  return q_to_minus_s(datum.sqrt_q(), datum.q(), s);
}

CycloNum evaluate(const LaurentRat& f, const Rational& s, const TameLocalDatum& datum) {
  return f.evaluate_at(q_to_minus_s(datum, s));
}

}  // namespace metawhit

#include "doctest.h"
#include "metawhit/errors.hpp"
#include "metawhit/tate.hpp"

using namespace metawhit;

namespace {

DatumPtr make_datum(unsigned p, unsigned n) { return TameLocalDatum::create(FqDescriptor(p, 1), n); }

LaurentPoly poly(const FieldPtr& f, long long low, std::vector<long> c) {
  std::vector<CycloNum> v;
  for (long x : c) v.emplace_back(f, Rational(x));
  return LaurentPoly(f, low, std::move(v));
}

// characters sampled with several values at the uniformizer
std::vector<TameMultChar> sample_characters(const DatumPtr& d) {
  std::vector<TameMultChar> out;
  for (unsigned k = 0; k < d->q() - 1; ++k)
    for (long long w : {0ll, 1ll, static_cast<long long>(d->N() / 2), 7ll})
      out.emplace_back(d, k, w);
  return out;
}

}  // namespace

TEST_CASE("Laurent arithmetic") {
  auto f = field(12);
  const auto one_minus_x = poly(f, 0, {1, -1});
  const LaurentRat r(poly(f, 0, {1}), one_minus_x);
  CHECK(r * LaurentRat(one_minus_x) == LaurentRat(poly(f, 0, {1})));
  // (1 - X^2) / (1 - X) cancels to 1 + X
  const LaurentRat c(poly(f, 0, {1, 0, -1}), one_minus_x);
  CHECK(c.denominator() == poly(f, 0, {1}));
  CHECK(c.numerator() == poly(f, 0, {1, 1}));
  // X^{-1} (2 - 2X) / (4 - 4X^2) = X^{-1} / (2 + 2X) -> den normalized to 1 + X
  const LaurentRat d(poly(f, -1, {2, -2}), poly(f, 0, {4, 0, -4}));
  CHECK(d.denominator() == poly(f, 0, {1, 1}));
  CHECK(d.numerator().low() == -1);
  CHECK(d.numerator().coeff(-1) == CycloNum(f, Rational(1, 2)));
  CHECK(r + r == LaurentRat(poly(f, 0, {2}), one_minus_x));
  CHECK((r - r).is_zero());
  CHECK(r / r == LaurentRat::constant(CycloNum::one(f)));
  // substitution X -> 2 X^{-1}: 1 - X -> 1 - 2 X^{-1}
  CHECK(LaurentRat(one_minus_x).substitute(CycloNum(f, Rational(2)), -1) == LaurentRat(poly(f, -1, {-2, 1})));
  CHECK_THROWS_AS(LaurentRat(poly(f, 0, {1}), LaurentPoly(f)), DivisionByZero);
}

TEST_CASE("evaluation") {
  auto d = make_datum(7, 3);
  auto f = d->ambient();
  const LaurentRat geo(poly(f, 0, {1}), poly(f, 0, {1, -1}));
  CHECK(evaluate(geo, 1, *d) == d->rational(Rational(7, 6)));
  const LaurentRat x(poly(f, 1, {1}));
  CHECK(evaluate(x, Rational(1, 2), *d) == d->sqrt_q().inv());
  CHECK(evaluate(x, Rational(-3, 2), *d) == d->sqrt_q().pow(3));
  try {
    evaluate(geo, 0, *d);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.order() == 1);
  }
  try {
    evaluate(geo * geo * LaurentRat(poly(f, 0, {1, 1})), 0, *d);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.order() == 2);
  }
  CHECK_THROWS_AS(evaluate(geo, Rational(1, 3), *d), DomainError);
}

TEST_CASE("L, epsilon and gamma examples") {
  auto d = make_datum(7, 3);
  auto f = d->ambient();
  const auto Lt = l_factor(TameMultChar::trivial(d));
  CHECK(Lt == LaurentRat(poly(f, 0, {1}), poly(f, 0, {1, -1})));
  CHECK(l_factor(TameMultChar::theta_unramified(d)) == LaurentRat(poly(f, 0, {1}), poly(f, 0, {1, 1})));
  CHECK(l_factor(TameMultChar::theta_ramified(d, 1)) == LaurentRat::constant(d->rational(1)));

  AdditiveCharData psi(d, 0);
  for (unsigned k = 0; k < 6; ++k) {
    TameMultChar chi(d, k, 5);
    if (!chi.is_ramified()) {
      CHECK(epsilon_factor(chi, psi) == LaurentRat::constant(d->rational(1)));
    } else {
      const auto expect = LaurentPoly::monomial(chi.w_value() * d->gauss(-static_cast<long long>(k)), 1);
      CHECK(epsilon_factor(chi, psi) == LaurentRat(expect));
      CHECK(gamma_factor(chi, psi) == epsilon_factor(chi, psi));
    }
  }
  // gamma(1, theta_u, psi) = (1/2)(1 + 1/q)
  CHECK(evaluate(gamma_factor(TameMultChar::theta_unramified(d), psi), 1, *d) == d->rational(Rational(4, 7)));
  // trivial character: (1 - X) / (1 - q^{-1} X^{-1})
  const LaurentRat expect(poly(f, 0, {1, -1}), LaurentPoly::constant(d->rational(1)) -
                                                  LaurentPoly::monomial(d->rational(Rational(1, 7)), -1));
  CHECK(gamma_factor(TameMultChar::trivial(d), psi) == expect);
  for (unsigned p : {7u, 13u}) {
    auto dd = make_datum(p, 3);
    CHECK(evaluate(gamma_factor(TameMultChar::theta_unramified(dd), AdditiveCharData(dd, 0)), 1, *dd) ==
          dd->rational(Rational(p + 1, 2 * p)));
  }
}

TEST_CASE("epsilon functional equations") {
  for (unsigned p : {7u, 13u}) {
    auto d = make_datum(p, 3);
    const auto& F = d->residue_field();
    const Rational q(d->q());
    for (long long e : {-1, 0, 1, 2})
      for (std::uint32_t u : {1u, 2u, p - 1}) {
        AdditiveCharData psi(d, e, F.element(u));
        for (const auto& chi : sample_characters(d)) {
          const auto eps = epsilon_factor(chi, psi);
          const auto chi_m1 = chi(d->minus_one());
          CHECK(eps.is_monomial());
          // (1) eps(1 - s, chi^{-1}) = chi(-1) eps(s, chi)^{-1}
          CHECK(reflect_s(epsilon_factor(chi.inverse(), psi), *d) == eps.inv() * chi_m1);
          // (2) eps(s, chi, psi_c) = chi(c) |c|^{s - 1/2} eps(s, chi, psi)
          for (auto c : {d->uniformizer(), d->inv(d->uniformizer()), d->make(0, 3u), d->make(2, p - 2),
                         d->make(-1, 5u)}) {
            const auto abs_c = LaurentRat(LaurentPoly::monomial(d->sqrt_q().pow(c.valuation), c.valuation));
            CHECK(epsilon_factor(chi, psi.twisted(c)) == eps * abs_c * chi(c));
          }
          // (3) eps(s + 1) = q^{e(psi) - e(chi)} eps(s)
          const long long ex = e - chi.conductor();
          Rational qe = 1;
          for (long long i = 0; i < (ex >= 0 ? ex : -ex); ++i) qe *= q;
          if (ex < 0) qe = 1 / qe;
          CHECK(shift_s(eps, 1, *d) == eps * d->rational(qe));
          CHECK(shift_s(eps, -1, *d) * d->rational(qe) == eps);
          // (5) eps(1 - s, chi^{-1}) eps(1 + s, chi) = chi(-1) q^{e(psi) - e(chi)}
          CHECK(reflect_s(epsilon_factor(chi.inverse(), psi), *d) * shift_s(eps, 1, *d) ==
                LaurentRat::constant(chi_m1 * d->rational(qe)));
        }
      }
  }
}

TEST_CASE("gamma functional equation") {
  // gamma(s, chi) gamma(1 - s, chi^{-1}) = chi(-1)
  auto d = make_datum(13, 3);
  for (long long e : {0, 1}) {
    AdditiveCharData psi(d, e);
    for (const auto& chi : sample_characters(d)) {
      const auto g = gamma_factor(chi, psi) * reflect_s(gamma_factor(chi.inverse(), psi), *d);
      CHECK(g == LaurentRat::constant(chi(d->minus_one())));
    }
  }
}

#pragma once

// Tate L-, epsilon- and gamma-factors of tame characters as rational
// functions of X = q^{-s}.

#include "metawhit/characters.hpp"
#include "metawhit/laurent.hpp"

namespace metawhit {

/// 1 / (1 - chi(uniformizer) X) for unramified chi, 1 otherwise.
LaurentRat l_factor(const TameMultChar& chi);

/// The monomial epsilon(s, chi, psi). With psi = psi0(uniformizer^{-e} u .):
///   unramified chi: chi(uniformizer^{-e} u) q^{-e/2} X^{-e}
///   ramified chi:   the same factor times chi(uniformizer) G(chi^{-1}) X,
/// where G(chi^{-1}) = sum_t chi^{-1}(t) zeta_p^{Tr t}.
LaurentRat epsilon_factor(const TameMultChar& chi, const AdditiveCharData& psi);

/// epsilon(s, chi, psi) L(1 - s, chi^{-1}) / L(s, chi).
LaurentRat gamma_factor(const TameMultChar& chi, const AdditiveCharData& psi);

/// f(s + t) as a function of s: X -> q^{-t} X.
LaurentRat shift_s(const LaurentRat& f, long long t, const TameLocalDatum& datum);
/// f(1 - s) as a function of s: X -> q^{-1} X^{-1}.
LaurentRat reflect_s(const LaurentRat& f, const TameLocalDatum& datum);

/// f at X = q^{-s}, s an integer or half-integer.
CycloNum evaluate(const LaurentRat& f, const Rational& s, const TameLocalDatum& datum);

/// q^{-s}.
CycloNum q_to_minus_s(const TameLocalDatum& datum, const Rational& s);

}  // namespace metawhit

#pragma once

// Partial gamma factors, the scattering matrix of the self-intertwining
// operator at a nontrivial quadratic character, its normalization, Whittaker
// dimensions, the Plancherel function and the GL2 / parity predicates.

#include <optional>
#include <string>
#include <vector>

#include "metawhit/characters.hpp"
#include "metawhit/laurent.hpp"
#include "metawhit/linalg.hpp"
#include "metawhit/local_field.hpp"

namespace metawhit {

/// gamma_J(s, chi, psi, k) = n^{-1} sum_{j in J} gamma(s, chi eta_j, psi) eta_k(j).
/// Propagates PoleError from any summand.
CycloNum partial_gamma(const TameMultChar& chi, const AdditiveCharData& psi, const ClassModN& k,
                       const IsotropicPair& pair, const Rational& s);

/// gamma(1, theta eta_x, psi) for every class x, indexed by a * n + b.
std::vector<CycloNum> gamma_table(const TameMultChar& theta, const AdditiveCharData& psi);

/// M(a, b) = gamma_J(1, theta eta_{b - a}, psi, -(a + b)), rows and columns in
/// the order of pair.K_elements. Parallel, from a shared gamma table.
Matrix scattering_matrix(const TameMultChar& theta, const AdditiveCharData& psi, const IsotropicPair& pair);
/// Same, from a table already built by gamma_table(theta, psi).
Matrix scattering_matrix(const TameLocalDatum& datum, const std::vector<CycloNum>& table, const IsotropicPair& pair);
/// Reference implementation: every entry from partial_gamma, single-threaded.
Matrix scattering_matrix_serial(const TameMultChar& theta, const AdditiveCharData& psi,
                                const IsotropicPair& pair);

/// |c|^{-1/2} M(theta, psi_c) = sqrt_q^{v(c)} M(theta, psi_c).
Matrix psi_c_matrix(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                    const IsotropicPair& pair);
/// Same, with twisted_table = gamma_table(theta, psi.twisted(c)).
Matrix psi_c_matrix(const TameMultChar& theta, const FStarElem& c, const IsotropicPair& pair,
                    const std::vector<CycloNum>& twisted_table);

/// gamma(1, theta, psi)^{-1} psi_c_matrix.
Matrix normalized_operator(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                           const IsotropicPair& pair);

struct WhittakerDims {
  std::size_t plus = 0;   // rank (I + A) / 2
  std::size_t minus = 0;  // rank (I - A) / 2
  std::size_t closed_plus = 0;   // (n + theta(c)) / 2
  std::size_t closed_minus = 0;  // (n - theta(c)) / 2
  bool matches() const { return plus == closed_plus && minus == closed_minus; }
};

WhittakerDims whittaker_dims(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                             const IsotropicPair& pair);
/// Ranks of (I +- A) / 2 for a given normalized operator A.
WhittakerDims whittaker_dims(const Matrix& normalized, const TameMultChar& theta, const FStarElem& c);

/// chi^n(-1) gamma(1 + ns, chi^n, psi_n) gamma(1 - ns, chi^{-n}, psi_n) as a
/// rational function of Y = q^{-ns}.
LaurentRat plancherel(const TameMultChar& chi, const AdditiveCharData& psi);

/// chi^n is a nontrivial quadratic character.
bool reducibility_test(const TameMultChar& chi);

struct ConductorSum {
  Rational lhs;  // n^{-2} sum_eta q^{-e(theta eta)}
  Rational rhs;  // q^{-1}
  bool holds() const { return lhs == rhs; }
};
/// Throws DomainError unless theta is ramified.
ConductorSum conductor_sum_check(const TameMultChar& theta);

enum class Gl2Action { fix, swap };
/// Fix iff theta(c) = 1.
Gl2Action gl2_action_predict(const TameMultChar& theta, const FStarElem& c);

enum class RepLabel { plus, minus };
struct UnramifiedLabels {
  RepLabel v1;
  RepLabel v2;
  /// eigenvalue of the normalized operator for theta_u on v1
  int eigen_sign;
};
UnramifiedLabels unramified_labels(long long e_psi);

/// r = theta(n) gamma(1, theta, psi_n) / gamma(1, theta, psi); throws
/// IdentityViolation unless r^2 = 1.
int normalizer_compare(const TameMultChar& theta, const AdditiveCharData& psi);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on success
};

struct ScatteringReport {
  IsotropicPair pair;
  TameMultChar theta;
  AdditiveCharData psi;
  FStarElem c;
  Matrix matrix;      // psi_c_matrix
  Matrix normalized;  // normalized_operator
  CycloNum gamma_1;   // gamma(1, theta, psi)
  CycloNum trace;
  WhittakerDims dims;
  std::vector<Check> checks;

  bool all_pass() const;
};

/// Computes the psi_c matrix and runs the trace, involution, non-scalar,
/// eigenvalue and rank checks on it.
ScatteringReport analyze(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                         const IsotropicPair& pair);
/// Reuses twisted_table = gamma_table(theta, psi.twisted(c)) across pairs.
ScatteringReport analyze(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                         const IsotropicPair& pair, const std::vector<CycloNum>& twisted_table);

std::string to_string(Gl2Action a);
std::string to_string(RepLabel l);

}  // namespace metawhit

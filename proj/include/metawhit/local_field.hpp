#pragma once

// Tame model of a p-adic field F containing the n-th roots of unity:
// F^* modulo 1 + P, the quotient F^*/F^{*n} = (Z/n)^2, the n-th power Hilbert
// symbol, and maximal isotropic subgroup pairs.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metawhit/cyclo.hpp"
#include "metawhit/finite_field.hpp"

namespace metawhit {

/// x = uniformizer^valuation * unit, modulo 1 + P.
struct FStarElem {
  long long valuation = 0;
  FqElem unit;

  friend bool operator==(const FStarElem&, const FStarElem&) = default;
};

/// Class of F^*/F^{*n}: (valuation mod n, dlog(unit) mod n).
struct ClassModN {
  unsigned a = 0;
  unsigned b = 0;

  friend bool operator==(const ClassModN&, const ClassModN&) = default;
  friend auto operator<=>(const ClassModN&, const ClassModN&) = default;
};

struct IsotropicPair {
  std::vector<ClassModN> J_gens;
  std::vector<ClassModN> K_gens;
  std::vector<ClassModN> J_elements;  // lexicographic
  std::vector<ClassModN> K_elements;  // lexicographic; row/column order of M

  std::string label() const;
  friend bool operator==(const IsotropicPair& x, const IsotropicPair& y) {
    return x.J_elements == y.J_elements && x.K_elements == y.K_elements;
  }
};

/// Test-only perturbations used to check that the verification suite notices
/// broken inputs.
enum class FaultInjection { none, gauss_sum };

class TameMultChar;

class TameLocalDatum : public std::enable_shared_from_this<TameLocalDatum> {
 public:
  /// n odd, n >= 3, n | q - 1. Throws InvalidDatum otherwise.
  static std::shared_ptr<const TameLocalDatum> create(FqDescriptor residue_field, unsigned n,
                                                      FaultInjection fault = FaultInjection::none);

  const FqDescriptor& residue_field() const noexcept { return fq_; }
  unsigned p() const noexcept { return fq_.p(); }
  unsigned f() const noexcept { return fq_.f(); }
  unsigned q() const noexcept { return fq_.q(); }
  unsigned n() const noexcept { return n_; }
  unsigned N() const noexcept { return fq_.ambient_modulus(); }
  const FieldPtr& ambient() const noexcept { return fq_.ambient(); }
  const CycloNum& sqrt_q() const noexcept { return fq_.sqrt_q(); }
  FaultInjection fault() const noexcept { return fault_; }

  CycloNum rational(const Rational& r) const { return CycloNum(ambient(), r); }
  CycloNum zeta(long long k) const { return root_of_unity(ambient(), k); }

  // F^* modulo 1 + P
  FStarElem make(long long valuation, const FqElem& unit) const;
  FStarElem make(long long valuation, std::uint32_t unit_constant) const;
  FStarElem one() const { return make(0, 1u); }
  FStarElem uniformizer() const { return make(1, 1u); }
  FStarElem minus_one() const { return make(0, p() - 1); }
  FStarElem mul(const FStarElem& x, const FStarElem& y) const;
  FStarElem inv(const FStarElem& x) const;
  FStarElem pow(const FStarElem& x, long long e) const;

  // F^*/F^{*n}
  ClassModN class_of(const FStarElem& x) const;
  /// Canonical lift (a, b) -> uniformizer^a * generator^b.
  FStarElem lift(const ClassModN& c) const;
  ClassModN class_add(const ClassModN& x, const ClassModN& y) const;
  ClassModN class_neg(const ClassModN& x) const;
  ClassModN class_scale(const ClassModN& x, long long k) const;
  std::vector<ClassModN> all_classes() const;

  /// Cached G(k, 1) for k in [0, q-1); honours fault injection.
  const CycloNum& gauss(long long k) const;

  /// Every maximal isotropic subgroup, each as a lexicographically sorted list.
  const std::vector<std::vector<ClassModN>>& maximal_isotropics() const { return isotropics_; }
  const std::vector<IsotropicPair>& pairs() const { return pairs_; }
  /// The pair (units, <uniformizer>).
  const IsotropicPair& standard_pair() const;

 private:
  TameLocalDatum(FqDescriptor fq, unsigned n, FaultInjection fault);
  void build_caches();

  FqDescriptor fq_;
  unsigned n_;
  FaultInjection fault_;
  std::vector<CycloNum> gauss_;
  std::vector<std::vector<ClassModN>> isotropics_;
  std::vector<IsotropicPair> pairs_;
  std::size_t standard_index_ = 0;
};

using DatumPtr = std::shared_ptr<const TameLocalDatum>;

ClassModN class_of(const TameLocalDatum& datum, const FStarElem& x);

/// Exponent m mod n with (x, y) = zeta_n^m, computed from the tame formula
/// ((-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)})^{(q-1)/n} on the residue.
unsigned hilbert_exponent(const TameLocalDatum& datum, const FStarElem& x, const FStarElem& y);
/// The n-th power Hilbert symbol as an element of mu_n in Q(zeta_N).
CycloNum hilbert_symbol(const TameLocalDatum& datum, const FStarElem& x, const FStarElem& y);
/// Symbol on classes, through canonical lifts.
unsigned pairing_exponent(const TameLocalDatum& datum, const ClassModN& x, const ClassModN& y);

/// eta_x : y -> (x, y).
TameMultChar eta_character(const DatumPtr& datum, const FStarElem& x);
TameMultChar eta_character(const DatumPtr& datum, const ClassModN& x);

std::vector<std::vector<ClassModN>> enumerate_maximal_isotropics(const TameLocalDatum& datum);
std::vector<IsotropicPair> isotropic_pairs(const TameLocalDatum& datum);

std::string to_string(const ClassModN& c);

}  // namespace metawhit

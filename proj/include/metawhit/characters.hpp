#pragma once

// Characters of F^* of conductor <= 1 and additive characters psi_c.

#include <string>

#include "metawhit/local_field.hpp"

namespace metawhit {

/// chi with chi(uniformizer) = zeta_N^{w_exponent} and
/// chi(u) = zeta_{q-1}^{k dlog u} on units.
class TameMultChar {
 public:
  TameMultChar(DatumPtr datum, long long k, long long w_exponent);

  static TameMultChar trivial(const DatumPtr& d) { return {d, 0, 0}; }
  /// x -> (-1)^{v(x)}.
  static TameMultChar theta_unramified(const DatumPtr& d);
  /// The ramified quadratic character with value +1 or -1 at the uniformizer.
  static TameMultChar theta_ramified(const DatumPtr& d, int sign);

  const DatumPtr& datum() const noexcept { return datum_; }
  unsigned k() const noexcept { return k_; }
  unsigned w_exponent() const noexcept { return w_; }
  CycloNum w_value() const;

  int conductor() const noexcept { return k_ == 0 ? 0 : 1; }
  bool is_ramified() const noexcept { return k_ != 0; }
  bool is_trivial() const noexcept { return k_ == 0 && w_ == 0; }
  bool is_quadratic() const;
  /// chi(-1) = (-1)^k.
  int sign() const noexcept { return (k_ % 2 == 0) ? 1 : -1; }

  /// Exponent of zeta_N giving chi(x).
  unsigned value_exponent(const FStarElem& x) const;
  CycloNum operator()(const FStarElem& x) const;

  TameMultChar operator*(const TameMultChar& o) const;
  TameMultChar inverse() const;
  TameMultChar pow(long long e) const;

  friend bool operator==(const TameMultChar& a, const TameMultChar& b) {
    return a.datum_ == b.datum_ && a.k_ == b.k_ && a.w_ == b.w_;
  }

  std::string to_string() const;

 private:
  DatumPtr datum_;
  unsigned k_;
  unsigned w_;
};

/// psi(x) = psi0(uniformizer^{-conductor} * twist * x), where psi0 is trivial on
/// O and nontrivial on P^{-1} with psi0(t / uniformizer) = zeta_p^{Tr t}.
/// `conductor` is the smallest k with psi trivial on P^k.
class AdditiveCharData {
 public:
  AdditiveCharData(DatumPtr datum, long long conductor, FqElem twist);
  AdditiveCharData(DatumPtr datum, long long conductor);

  const DatumPtr& datum() const noexcept { return datum_; }
  long long conductor() const noexcept { return e_; }
  const FqElem& twist() const noexcept { return twist_; }

  /// psi_c(x) = psi(c x): conductor e - v(c), twist multiplied by unit(c).
  AdditiveCharData twisted(const FStarElem& c) const;
  /// psi_n, n viewed as a unit of F.
  AdditiveCharData scaled_by_n() const;

  friend bool operator==(const AdditiveCharData& a, const AdditiveCharData& b) {
    return a.datum_ == b.datum_ && a.e_ == b.e_ && a.twist_ == b.twist_;
  }

  std::string to_string() const;

 private:
  DatumPtr datum_;
  long long e_;
  FqElem twist_;
};

}  // namespace metawhit

#pragma once

// The residue field F_q, q = p^f, with its discrete logarithm table, the
// residue additive character t -> zeta_p^{Tr t}, the tame multiplicative
// characters t -> zeta_{q-1}^{k dlog t}, and Gauss sums.
//
// All character values live in the ambient field Q(zeta_N), N = lcm(4, p, q-1).

#include <cstdint>
#include <optional>
#include <vector>

#include "metawhit/cyclo.hpp"

namespace metawhit {

/// Element of F_q as coefficients in [0, p) of 1, x, ..., x^{f-1}.
struct FqElem {
  std::vector<std::uint32_t> coeffs;

  bool is_zero() const;
  friend bool operator==(const FqElem&, const FqElem&) = default;
  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

class FqDescriptor {
 public:
  /// For f = 1 modulus_poly may be omitted. For f > 1 it must be the monic
  /// irreducible defining polynomial, coefficients low degree first
  /// (f + 1 entries). Throws InvalidDatum otherwise.
  FqDescriptor(unsigned p, unsigned f, std::optional<std::vector<std::int64_t>> modulus_poly = {});

  unsigned p() const noexcept { return p_; }
  unsigned f() const noexcept { return f_; }
  unsigned q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus_poly() const noexcept { return modulus_; }
  const FqElem& generator() const noexcept { return generator_; }

  /// Ambient cyclotomic modulus lcm(4, p, q - 1).
  unsigned ambient_modulus() const noexcept { return ambient_->modulus(); }
  const FieldPtr& ambient() const noexcept { return ambient_; }

  FqElem element(std::uint32_t constant) const;
  FqElem element(std::vector<std::uint32_t> coeffs) const;
  FqElem zero() const { return element(0u); }
  FqElem one() const { return element(1u); }

  // Integer encoding sum c_i p^i, a bijection F_q -> [0, q).
  std::uint32_t encode(const FqElem& x) const;
  FqElem decode(std::uint32_t code) const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem inv(const FqElem& a) const;
  FqElem pow(const FqElem& a, std::uint64_t e) const;
  /// generator^e, e taken mod q - 1.
  FqElem gen_pow(long long e) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(const FqElem& x) const;

  /// Exponent in [0, q-1) with generator^dlog = x. Throws DomainError on 0.
  unsigned dlog(const FqElem& x) const;
  unsigned trace_to_prime_field(const FqElem& x) const;

  /// zeta_p^{Tr x}.
  CycloNum residue_additive_value(const FqElem& x) const;
  /// zeta_{q-1}^{k dlog x}; x must be nonzero.
  CycloNum residue_mult_value(long long k, const FqElem& x) const;
  /// Exponent of zeta_N giving residue_additive_value / residue_mult_value.
  unsigned additive_exponent(const FqElem& x) const;
  unsigned mult_exponent(long long k, const FqElem& x) const;

  /// sum over t in F_q^* of residue_mult_value(k, t) residue_additive_value(w t).
  CycloNum gauss_sum(long long k, const FqElem& w) const;

  /// Positive square roots of p and q inside Q(zeta_N).
  const CycloNum& sqrt_p() const noexcept { return *sqrt_p_; }
  const CycloNum& sqrt_q() const noexcept { return *sqrt_q_; }

  /// Smallest element of order q - 1 in the encoding order.
  FqElem find_generator() const;

 private:
  std::uint32_t mul_codes_slow(std::uint32_t a, std::uint32_t b) const;
  void check(const FqElem& x) const;

  unsigned p_;
  unsigned f_;
  unsigned q_;
  std::vector<std::uint32_t> modulus_;
  FieldPtr ambient_;
  FqElem generator_;
  std::vector<std::int32_t> log_;   // by code, -1 at 0
  std::vector<std::uint32_t> exp_;  // generator^i as code
  std::vector<std::uint32_t> trace_;
  std::optional<CycloNum> sqrt_p_;
  std::optional<CycloNum> sqrt_q_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace metawhit

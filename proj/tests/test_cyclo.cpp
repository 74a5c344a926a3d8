#include <random>

#include "doctest.h"
#include "metawhit/cyclo.hpp"
#include "metawhit/errors.hpp"

using namespace metawhit;

namespace {

IntPolynomial ints(std::initializer_list<long> v) {
  IntPolynomial p;
  for (long x : v) p.emplace_back(x);
  return p;
}

CycloNum random_element(const FieldPtr& F, std::mt19937& rng, int spread = 5) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> c(F->degree());
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return CycloNum(F, std::span<const Rational>(c));
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == ints({1, 1}));
  CHECK(cyclotomic_polynomial(4) == ints({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == ints({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == ints({1, 0, -1, 0, 1}));
  // Phi_105 is the first with a coefficient -2
  auto p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(p105[7] == -2);
  for (unsigned N : {7u, 20u, 84u, 156u, 220u}) CHECK(cyclotomic_polynomial(N).size() - 1 == euler_phi(N));
}

TEST_CASE("roots of unity") {
  CHECK(root_of_unity(4, 2) == CycloNum(field(4), Rational(-1)));
  for (unsigned N : {1u, 3u, 84u}) CHECK(root_of_unity(N, 0) == CycloNum::one(field(N)));
  CHECK(root_of_unity(3, 1) * root_of_unity(3, 2) == CycloNum::one(field(3)));
  CHECK(root_of_unity(84, -5) == root_of_unity(84, 79));

  auto F = field(84);
  for (long long k = 0; k < 84; ++k) {
    auto z = root_of_unity(F, k);
    CHECK(z.pow(84) == CycloNum::one(F));
    CHECK(root_order(z) == 84 / std::gcd(84u, static_cast<unsigned>(k)));
    CHECK(root_exponent(z) == k);
  }
}

TEST_CASE("field examples") {
  auto F3 = field(3);
  auto z = root_of_unity(F3, 1);
  CHECK((CycloNum::one(F3) + z) * (-z) == CycloNum::one(F3));
  CHECK(root_of_unity(7, 1).conj() == root_of_unity(7, 6));
  auto two = CycloNum(field(12), Rational(2));
  CHECK(two.inv() == CycloNum(field(12), Rational(1, 2)));
  CHECK_THROWS_AS(CycloNum::zero(F3).inv(), DivisionByZero);
  CHECK_THROWS_AS(root_of_unity(3, 1) + root_of_unity(5, 1), IncompatibleModulus);
}

TEST_CASE("complex embedding") {
  auto i = root_of_unity(4, 1).complex_embed();
  CHECK(i.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(i.imag() == doctest::Approx(1.0).epsilon(1e-12));
  auto F = field(3);
  auto two = (CycloNum::one(F) + CycloNum::one(F)).complex_embed();
  CHECK(two.real() == doctest::Approx(2.0));
  auto s = (root_of_unity(F, 1) + root_of_unity(F, 2)).complex_embed();
  CHECK(s.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(s.imag()) < 1e-12);
}

TEST_CASE("field laws on random samples") {
  std::mt19937 rng(12345);
  for (unsigned N : {12u, 84u, 220u}) {
    auto F = field(N);
    for (int trial = 0; trial < 6; ++trial) {
      auto a = random_element(F, rng);
      auto b = random_element(F, rng);
      auto c = random_element(F, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == CycloNum::zero(F));
      if (!a.is_zero()) CHECK(a * a.inv() == CycloNum::one(F));
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a.conj().conj() == a);
      auto norm = (a * a.conj()).complex_embed();
      CHECK(norm.real() >= -1e-9);
      CHECK(std::abs(norm.imag()) < 1e-6 * (1 + std::abs(norm.real())));
      CHECK(a.times_root(13) == a * root_of_unity(F, 13));
    }
  }
}

TEST_CASE("large coefficients take the arbitrary precision path") {
  auto F = field(84);
  std::vector<Rational> c(F->degree());
  for (unsigned i = 0; i < c.size(); ++i) c[i] = Rational(Integer("123456789012345678901234567") + i, 7);
  CycloNum a(F, std::span<const Rational>(c));
  auto z = root_of_unity(F, 1);
  CHECK(a * z == a.times_root(1));
  CHECK(a * a.inv() == CycloNum::one(F));
}

TEST_CASE("canonical form") {
  auto F = field(12);
  std::vector<Rational> c{Rational(2, 4), Rational(0), Rational(3, 6), Rational(0)};
  CycloNum a(F, std::span<const Rational>(c));
  CHECK(a.coeff(0) == Rational(1, 2));
  CHECK(a.denominator() == 2);
  CHECK(a.to_string() == "[1/2, 0, 1/2, 0]");
  CHECK(CycloNum::zero(F).denominator() == 1);
}

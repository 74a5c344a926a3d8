#include <random>

#include "doctest.h"
#include "metawhit/characters.hpp"
#include "metawhit/errors.hpp"
#include "metawhit/local_field.hpp"

using namespace metawhit;

namespace {

DatumPtr make_datum(unsigned p, unsigned n) { return TameLocalDatum::create(FqDescriptor(p, 1), n); }

FStarElem random_elem(const TameLocalDatum& d, std::mt19937& rng) {
  std::uniform_int_distribution<long long> v(-6, 6);
  std::uniform_int_distribution<std::uint32_t> u(1, d.q() - 1);
  return d.make(v(rng), d.residue_field().decode(u(rng)));
}

}  // namespace

TEST_CASE("class_of") {
  auto d = make_datum(7, 3);
  CHECK(d->residue_field().generator() == d->residue_field().element(3u));
  CHECK(d->class_of(d->make(4, 3u)) == ClassModN{1, 1});
  CHECK(d->class_of(d->one()) == ClassModN{0, 0});
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    auto x = random_elem(*d, rng);
    CHECK(d->class_of(d->pow(x, 3)) == ClassModN{0, 0});
    CHECK(d->class_of(d->lift(d->class_of(x))) == d->class_of(x));
  }
}

TEST_CASE("hilbert symbol examples") {
  auto d = make_datum(7, 3);
  const auto one = d->zeta(0);
  for (std::uint32_t a = 1; a < 7; ++a)
    for (std::uint32_t b = 1; b < 7; ++b) CHECK(hilbert_symbol(*d, d->make(0, a), d->make(0, b)) == one);
  CHECK(hilbert_symbol(*d, d->uniformizer(), d->uniformizer()) == one);
  const auto zeta3_inv = root_of_unity(d->ambient(), -static_cast<long long>(d->N() / 3));
  CHECK(hilbert_symbol(*d, d->uniformizer(), d->make(0, 3u)) == zeta3_inv);
  CHECK(root_order(hilbert_symbol(*d, d->uniformizer(), d->make(0, 3u))) == 3);
}

TEST_CASE("hilbert symbol laws") {
  for (auto [p, n] : {std::pair{7u, 3u}, {13u, 3u}, {11u, 5u}, {31u, 5u}, {29u, 7u}}) {
    auto d = make_datum(p, n);
    std::mt19937 rng(p * 100 + n);
    for (int t = 0; t < 30; ++t) {
      auto x = random_elem(*d, rng), x2 = random_elem(*d, rng), y = random_elem(*d, rng);
      auto z = random_elem(*d, rng);
      CHECK((hilbert_exponent(*d, d->mul(x, x2), y)) ==
            (hilbert_exponent(*d, x, y) + hilbert_exponent(*d, x2, y)) % n);
      CHECK((hilbert_exponent(*d, x, y) + hilbert_exponent(*d, y, x)) % n == 0);
      CHECK(hilbert_exponent(*d, x, d->mul(d->minus_one(), x)) == 0);
      CHECK(hilbert_exponent(*d, x, d->minus_one()) == 0);
      CHECK(hilbert_exponent(*d, d->mul(x, d->pow(z, n)), y) == hilbert_exponent(*d, x, y));
    }
    // kernel is exactly the n-th powers, checked on (Z/n)^2
    const auto classes = d->all_classes();
    for (const auto& x : classes) {
      bool trivial = true;
      for (const auto& y : classes) trivial = trivial && pairing_exponent(*d, x, y) == 0;
      CHECK(trivial == (x == ClassModN{0, 0}));
    }
  }
}

TEST_CASE("eta characters") {
  auto d = make_datum(7, 3);
  CHECK(eta_character(d, d->one()).is_trivial());
  auto eta_pi = eta_character(d, d->uniformizer());
  CHECK(eta_pi.is_ramified());
  CHECK((eta_pi.k() == 2 || eta_pi.k() == 4));
  CHECK(eta_pi.pow(3).is_trivial());
  std::mt19937 rng(3);
  for (int t = 0; t < 15; ++t) {
    auto x = random_elem(*d, rng), x2 = random_elem(*d, rng), y = random_elem(*d, rng);
    CHECK(eta_character(d, x)(y) == hilbert_symbol(*d, x, y));
    CHECK(eta_character(d, x) * eta_character(d, x2) == eta_character(d, d->mul(x, x2)));
  }
}

TEST_CASE("maximal isotropic subgroups and pairs") {
  auto d3 = make_datum(7, 3);
  CHECK(d3->maximal_isotropics().size() == 4);
  CHECK(d3->pairs().size() == 12);
  auto d5 = make_datum(11, 5);
  CHECK(d5->maximal_isotropics().size() == 6);
  CHECK(d5->pairs().size() == 30);
  for (const auto& d : {d3, d5}) {
    const auto& std_pair = d->standard_pair();
    CHECK(std_pair.K_elements.front() == ClassModN{0, 0});
    CHECK(std_pair.K_elements[1] == ClassModN{1, 0});
    CHECK(std_pair.J_elements[1] == ClassModN{0, 1});
    for (const auto& pr : d->pairs()) {
      CHECK(pr.J_elements != pr.K_elements);
      CHECK(pr.J_elements.size() == d->n());
      CHECK(std::is_sorted(pr.K_elements.begin(), pr.K_elements.end()));
      for (const auto& a : pr.J_elements)
        for (const auto& b : pr.J_elements) CHECK(pairing_exponent(*d, a, b) == 0);
    }
  }
  // n = 9 has non-cyclic maximal isotropics such as (3Z/9)^2
  auto d9 = make_datum(19, 9);
  bool has_noncyclic = false;
  for (const auto& S : d9->maximal_isotropics()) {
    CHECK(S.size() == 9);
    has_noncyclic = has_noncyclic || std::find(S.begin(), S.end(), ClassModN{3, 3}) != S.end() &&
                                         std::find(S.begin(), S.end(), ClassModN{0, 3}) != S.end();
  }
  CHECK(has_noncyclic);
  CHECK(!d9->pairs().empty());
}

TEST_CASE("datum validation rejects wild or even data") {
  CHECK_THROWS_AS(make_datum(7, 5), InvalidDatum);
  CHECK_THROWS_AS(make_datum(7, 2), InvalidDatum);
  CHECK_THROWS_AS(make_datum(5, 1), InvalidDatum);
  CHECK_THROWS_AS(make_datum(7, 7), InvalidDatum);
}

TEST_CASE("character basics") {
  auto d = make_datum(13, 3);
  auto tu = TameMultChar::theta_unramified(d);
  CHECK(tu.is_quadratic());
  CHECK(!tu.is_trivial());
  CHECK(tu(d->uniformizer()) == d->rational(-1));
  CHECK(tu(d->make(0, 2u)) == d->rational(1));
  auto tr = TameMultChar::theta_ramified(d, -1);
  CHECK(tr.is_quadratic());
  CHECK(tr.conductor() == 1);
  CHECK(tr(d->make(0, 2u)) == d->rational(-1));  // 2 generates F_13^*
  CHECK(tr.sign() == 1);                         // k = 6 even: -1 is a square mod 13
  CHECK((tr * tr).is_trivial());
  AdditiveCharData psi(d, 0);
  auto psic = psi.twisted(d->make(1, 2u));
  CHECK(psic.conductor() == -1);
  CHECK(psic.twist() == d->residue_field().element(2u));
  CHECK(psi.scaled_by_n().twist() == d->residue_field().element(3u));
}

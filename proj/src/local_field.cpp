#include "metawhit/local_field.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "metawhit/characters.hpp"
#include "metawhit/errors.hpp"

namespace metawhit {

namespace {

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<ClassModN> span_of(const TameLocalDatum& d, const std::vector<ClassModN>& gens) {
  std::set<ClassModN> elems{ClassModN{0, 0}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ClassModN> cur(elems.begin(), elems.end());
    for (const auto& x : cur)
      for (const auto& g : gens)
        if (elems.insert(d.class_add(x, g)).second) grew = true;
  }
  return {elems.begin(), elems.end()};
}

std::vector<ClassModN> minimal_generators(const TameLocalDatum& d, const std::vector<ClassModN>& group) {
  std::vector<ClassModN> gens;
  std::vector<ClassModN> spanned{ClassModN{0, 0}};
  for (const auto& x : group) {
    if (std::binary_search(spanned.begin(), spanned.end(), x)) continue;
    gens.push_back(x);
    spanned = span_of(d, gens);
    if (spanned.size() == group.size()) break;
  }
  return gens;
}

}  // namespace

std::string to_string(const ClassModN& c) {
  return "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

std::string IsotropicPair::label() const {
  std::ostringstream os;
  os << "J=<";
  for (std::size_t i = 0; i < J_gens.size(); ++i) os << (i ? "," : "") << to_string(J_gens[i]);
  os << "> K=<";
  for (std::size_t i = 0; i < K_gens.size(); ++i) os << (i ? "," : "") << to_string(K_gens[i]);
  os << ">";
  return os.str();
}

TameLocalDatum::TameLocalDatum(FqDescriptor fq, unsigned n, FaultInjection fault)
    : fq_(std::move(fq)), n_(n), fault_(fault) {}

std::shared_ptr<const TameLocalDatum> TameLocalDatum::create(FqDescriptor residue_field, unsigned n,
                                                             FaultInjection fault) {
  if (n < 3 || n % 2 == 0) throw InvalidDatum("n must be odd and at least 3, got " + std::to_string(n));
  if ((residue_field.q() - 1) % n != 0) {
    throw InvalidDatum("n = " + std::to_string(n) + " does not divide q - 1 = " +
                       std::to_string(residue_field.q() - 1));
  }
  std::shared_ptr<TameLocalDatum> d(new TameLocalDatum(std::move(residue_field), n, fault));
  d->build_caches();
  return d;
}

void TameLocalDatum::build_caches() {
  const unsigned qm1 = q() - 1;
  gauss_.reserve(qm1);
  for (unsigned k = 0; k < qm1; ++k) {
    CycloNum g = fq_.gauss_sum(k, fq_.one());
    if (fault_ == FaultInjection::gauss_sum && k != 0) g = g * Rational(2);
    gauss_.push_back(std::move(g));
  }
  isotropics_ = enumerate_maximal_isotropics(*this);
  pairs_ = isotropic_pairs(*this);
  if (pairs_.empty()) throw std::logic_error("no valid isotropic pair; datum inconsistent");
  std::vector<ClassModN> units, pi;
  for (unsigned i = 0; i < n_; ++i) {
    units.push_back({0, i});
    pi.push_back({i, 0});
  }
  auto it = std::find_if(pairs_.begin(), pairs_.end(), [&](const IsotropicPair& pr) {
    return pr.J_elements == units && pr.K_elements == pi;
  });
  if (it == pairs_.end()) throw std::logic_error("standard isotropic pair missing");
  standard_index_ = static_cast<std::size_t>(it - pairs_.begin());
}

const IsotropicPair& TameLocalDatum::standard_pair() const { return pairs_.at(standard_index_); }

const CycloNum& TameLocalDatum::gauss(long long k) const {
  return gauss_.at(static_cast<std::size_t>(mod_ll(k, q() - 1)));
}

FStarElem TameLocalDatum::make(long long valuation, const FqElem& unit) const {
  if (unit.is_zero()) throw DomainError("unit part of an element of F^* must be nonzero");
  fq_.encode(unit);  // range check
  return FStarElem{valuation, unit};
}

FStarElem TameLocalDatum::make(long long valuation, std::uint32_t unit_constant) const {
  return make(valuation, fq_.element(unit_constant));
}

FStarElem TameLocalDatum::mul(const FStarElem& x, const FStarElem& y) const {
  return FStarElem{x.valuation + y.valuation, fq_.mul(x.unit, y.unit)};
}

FStarElem TameLocalDatum::inv(const FStarElem& x) const { return FStarElem{-x.valuation, fq_.inv(x.unit)}; }

FStarElem TameLocalDatum::pow(const FStarElem& x, long long e) const {
  const long long l = mod_ll(static_cast<long long>(fq_.dlog(x.unit)) * mod_ll(e, q() - 1), q() - 1);
  return FStarElem{x.valuation * e, fq_.gen_pow(l)};
}

ClassModN TameLocalDatum::class_of(const FStarElem& x) const {
  return ClassModN{static_cast<unsigned>(mod_ll(x.valuation, n_)),
                   static_cast<unsigned>(fq_.dlog(x.unit) % n_)};
}

FStarElem TameLocalDatum::lift(const ClassModN& c) const {
  return FStarElem{static_cast<long long>(c.a), fq_.gen_pow(c.b)};
}

ClassModN TameLocalDatum::class_add(const ClassModN& x, const ClassModN& y) const {
  return {(x.a + y.a) % n_, (x.b + y.b) % n_};
}

ClassModN TameLocalDatum::class_neg(const ClassModN& x) const { return {(n_ - x.a) % n_, (n_ - x.b) % n_}; }

ClassModN TameLocalDatum::class_scale(const ClassModN& x, long long k) const {
  const long long kk = mod_ll(k, n_);
  return {static_cast<unsigned>(x.a * kk % n_), static_cast<unsigned>(x.b * kk % n_)};
}

std::vector<ClassModN> TameLocalDatum::all_classes() const {
  std::vector<ClassModN> out;
  for (unsigned a = 0; a < n_; ++a)
    for (unsigned b = 0; b < n_; ++b) out.push_back({a, b});
  return out;
}

ClassModN class_of(const TameLocalDatum& datum, const FStarElem& x) { return datum.class_of(x); }

unsigned hilbert_exponent(const TameLocalDatum& d, const FStarElem& x, const FStarElem& y) {
  const auto& F = d.residue_field();
  const long long vx = x.valuation, vy = y.valuation;
  FqElem u = F.one();
  if (mod_ll(vx * vy, 2) == 1) u = F.neg(u);
  const unsigned qm1 = d.q() - 1;
  u = F.mul(u, F.pow(x.unit, static_cast<std::uint64_t>(mod_ll(vy, qm1))));
  u = F.mul(u, F.pow(y.unit, static_cast<std::uint64_t>(mod_ll(-vx, qm1))));
  // omega(u)^{(q-1)/n} = zeta_{q-1}^{dlog(u) (q-1)/n} = zeta_n^{dlog u}
  return F.dlog(u) % d.n();
}

CycloNum hilbert_symbol(const TameLocalDatum& d, const FStarElem& x, const FStarElem& y) {
  return d.zeta(static_cast<long long>(hilbert_exponent(d, x, y)) * (d.N() / d.n()));
}

unsigned pairing_exponent(const TameLocalDatum& d, const ClassModN& x, const ClassModN& y) {
  return hilbert_exponent(d, d.lift(x), d.lift(y));
}

TameMultChar eta_character(const DatumPtr& d, const FStarElem& x) {
  const unsigned at_pi = hilbert_exponent(*d, x, d->uniformizer());
  const unsigned at_g = hilbert_exponent(*d, x, d->make(0, d->residue_field().generator()));
  const long long step_n = d->N() / d->n();
  const long long step_k = (d->q() - 1) / d->n();
  return TameMultChar(d, at_g * step_k, at_pi * step_n);
}

TameMultChar eta_character(const DatumPtr& d, const ClassModN& x) { return eta_character(d, d->lift(x)); }

std::vector<std::vector<ClassModN>> enumerate_maximal_isotropics(const TameLocalDatum& d) {
  const unsigned n = d.n();
  const auto classes = d.all_classes();
  const std::size_t m = classes.size();
  std::vector<unsigned> gram(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gram[i * m + j] = pairing_exponent(d, classes[i], classes[j]);
  auto index = [n](const ClassModN& c) { return static_cast<std::size_t>(c.a) * n + c.b; };

  std::set<std::vector<ClassModN>> subgroups;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      auto s = span_of(d, {classes[i], classes[j]});
      if (s.size() == n) subgroups.insert(std::move(s));
    }

  std::vector<std::vector<ClassModN>> out;
  for (const auto& S : subgroups) {
    // joint kernel of eta_x, x in S
    std::vector<ClassModN> kernel;
    for (const auto& y : classes) {
      bool in = std::all_of(S.begin(), S.end(), [&](const ClassModN& x) { return gram[index(x) * m + index(y)] == 0; });
      if (in) kernel.push_back(y);
    }
    if (kernel == S) out.push_back(S);
  }
  return out;
}

std::vector<IsotropicPair> isotropic_pairs(const TameLocalDatum& d) {
  const auto& iso = d.maximal_isotropics().empty() ? enumerate_maximal_isotropics(d) : d.maximal_isotropics();
  const unsigned n = d.n();
  std::vector<IsotropicPair> out;
  for (const auto& J : iso)
    for (const auto& K : iso) {
      // (1) J x K = F^*/F^{*n}
      std::set<ClassModN> sums;
      for (const auto& j : J)
        for (const auto& k : K) sums.insert(d.class_add(j, k));
      if (sums.size() != static_cast<std::size_t>(n) * n) continue;
      // (2) k -> eta_k|_J injective (hence an isomorphism onto the dual of J)
      std::set<std::vector<unsigned>> restrictions;
      for (const auto& k : K) {
        std::vector<unsigned> values;
        for (const auto& j : J) values.push_back(pairing_exponent(d, k, j));
        restrictions.insert(std::move(values));
      }
      if (restrictions.size() != K.size()) continue;
      out.push_back(IsotropicPair{minimal_generators(d, J), minimal_generators(d, K), J, K});
    }
  return out;
}

}  // namespace metawhit

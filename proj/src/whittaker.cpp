#include "metawhit/whittaker.hpp"

#include "metawhit/errors.hpp"
#include "metawhit/tate.hpp"

namespace metawhit {

namespace {

std::size_t class_index(const TameLocalDatum& d, const ClassModN& x) {
  return static_cast<std::size_t>(x.a) * d.n() + x.b;
}

// eta_k(j) as a power of zeta_N
long long eta_exponent(const TameLocalDatum& d, const ClassModN& k, const ClassModN& j) {
  return static_cast<long long>(pairing_exponent(d, k, j)) * (d.N() / d.n());
}

CycloNum gamma_at(const TameMultChar& chi, const AdditiveCharData& psi, const Rational& s) {
  return evaluate(gamma_factor(chi, psi), s, *chi.datum());
}

void require_quadratic(const TameMultChar& theta) {
  if (theta.is_trivial() || !theta.is_quadratic())
    throw DomainError("expected a nontrivial quadratic character, got " + theta.to_string());
}

std::string join_witness(const std::string& got, const std::string& want) {
  return "got " + got + ", expected " + want;
}

}  // namespace

CycloNum partial_gamma(const TameMultChar& chi, const AdditiveCharData& psi, const ClassModN& k,
                       const IsotropicPair& pair, const Rational& s) {
  const DatumPtr& d = chi.datum();
  CycloNum acc(d->ambient());
  for (const auto& j : pair.J_elements) {
    const CycloNum g = gamma_at(chi * eta_character(d, j), psi, s);
    acc += g.times_root(eta_exponent(*d, k, j));
  }
  return acc * Rational(1, d->n());
}

std::vector<CycloNum> gamma_table(const TameMultChar& theta, const AdditiveCharData& psi) {
  const DatumPtr& d = theta.datum();
  const auto classes = d->all_classes();
  std::vector<CycloNum> table(classes.size(), CycloNum(d->ambient()));
  const long long m = static_cast<long long>(classes.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < m; ++i) {
    const auto& x = classes[static_cast<std::size_t>(i)];
    table[class_index(*d, x)] = gamma_at(theta * eta_character(d, x), psi, 1);
  }
  return table;
}

Matrix scattering_matrix(const TameMultChar& theta, const AdditiveCharData& psi, const IsotropicPair& pair) {
  require_quadratic(theta);
  return scattering_matrix(*theta.datum(), gamma_table(theta, psi), pair);
}

Matrix scattering_matrix(const TameLocalDatum& datum, const std::vector<CycloNum>& table, const IsotropicPair& pair) {
  const TameLocalDatum* d = &datum;
  if (table.size() != static_cast<std::size_t>(d->n()) * d->n())
    throw DimensionMismatch("gamma table has " + std::to_string(table.size()) + " entries");
  const auto& K = pair.K_elements;
  const std::size_t n = K.size();
  Matrix M(d->ambient(), n, n);
  const long long total = static_cast<long long>(n * n);
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < total; ++idx) {
    const auto& a = K[static_cast<std::size_t>(idx) / n];
    const auto& b = K[static_cast<std::size_t>(idx) % n];
    const ClassModN diff = d->class_add(b, d->class_neg(a));
    const ClassModN weight = d->class_neg(d->class_add(a, b));
    CycloNum acc(d->ambient());
    for (const auto& j : pair.J_elements)
      acc += table[class_index(*d, d->class_add(diff, j))].times_root(eta_exponent(*d, weight, j));
    M(static_cast<std::size_t>(idx) / n, static_cast<std::size_t>(idx) % n) = acc * Rational(1, d->n());
  }
  return M;
}

Matrix scattering_matrix_serial(const TameMultChar& theta, const AdditiveCharData& psi,
                                const IsotropicPair& pair) {
  require_quadratic(theta);
  const DatumPtr& d = theta.datum();
  const auto& K = pair.K_elements;
  Matrix M(d->ambient(), K.size(), K.size());
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < K.size(); ++j) {
      const auto& a = K[i];
      const auto& b = K[j];
      const TameMultChar chi = theta * eta_character(d, d->class_add(b, d->class_neg(a)));
      M(i, j) = partial_gamma(chi, psi, d->class_neg(d->class_add(a, b)), pair, 1);
    }
  return M;
}

Matrix psi_c_matrix(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                    const IsotropicPair& pair) {
  require_quadratic(theta);
  return psi_c_matrix(theta, c, pair, gamma_table(theta, psi.twisted(c)));
}

Matrix psi_c_matrix(const TameMultChar& theta, const FStarElem& c, const IsotropicPair& pair,
                    const std::vector<CycloNum>& twisted_table) {
  require_quadratic(theta);
  const TameLocalDatum& d = *theta.datum();
  const Matrix M = scattering_matrix(d, twisted_table, pair);
  if (c.valuation == 0) return M;
  const CycloNum scale = c.valuation > 0 ? d.sqrt_q().pow(c.valuation)
                                         : (d.sqrt_q() * Rational(1, d.q())).pow(-c.valuation);
  return scalar_mul(scale, M);
}

Matrix normalized_operator(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                           const IsotropicPair& pair) {
  const CycloNum g = gamma_at(theta, psi, 1);
  if (g.is_zero()) throw DivisionByZero("gamma(1, theta, psi) vanishes");
  return scalar_mul(g.inv(), psi_c_matrix(theta, psi, c, pair));
}

WhittakerDims whittaker_dims(const Matrix& normalized, const TameMultChar& theta, const FStarElem& c) {
  const auto& f = normalized.field_ptr();
  const std::size_t n = normalized.rows();
  const Matrix I = identity(f, n);
  const CycloNum half(f, Rational(1, 2));
  WhittakerDims out;
  out.plus = rank(scalar_mul(half, mat_add(I, normalized)));
  out.minus = rank(scalar_mul(half, mat_sub(I, normalized)));
  const int tc = theta(c) == theta.datum()->rational(1) ? 1 : -1;
  out.closed_plus = (n + tc) / 2;
  out.closed_minus = (n - tc) / 2;
  return out;
}

WhittakerDims whittaker_dims(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                             const IsotropicPair& pair) {
  return whittaker_dims(normalized_operator(theta, psi, c, pair), theta, c);
}

LaurentRat plancherel(const TameMultChar& chi, const AdditiveCharData& psi) {
  const TameLocalDatum& d = *chi.datum();
  const TameMultChar chin = chi.pow(d.n());
  const AdditiveCharData psin = psi.scaled_by_n();
  const CycloNum q_inv = d.rational(Rational(1, d.q()));
  const LaurentRat forward = gamma_factor(chin, psin).substitute(q_inv, +1);
  const LaurentRat backward = gamma_factor(chin.inverse(), psin).substitute(q_inv, -1);
  return forward * backward * chin(d.minus_one());
}

bool reducibility_test(const TameMultChar& chi) {
  const TameMultChar chin = chi.pow(chi.datum()->n());
  return !chin.is_trivial() && chin.is_quadratic();
}

ConductorSum conductor_sum_check(const TameMultChar& theta) {
  if (!theta.is_ramified()) throw DomainError("conductor sum identity needs a ramified theta");
  const DatumPtr& d = theta.datum();
  Rational sum = 0;
  for (const auto& x : d->all_classes())
    sum += (theta * eta_character(d, x)).conductor() == 0 ? Rational(1) : Rational(1, d->q());
  ConductorSum out;
  out.lhs = sum / Rational(d->n() * d->n());
  out.rhs = Rational(1, d->q());
  return out;
}

Gl2Action gl2_action_predict(const TameMultChar& theta, const FStarElem& c) {
  require_quadratic(theta);
  return theta(c) == theta.datum()->rational(1) ? Gl2Action::fix : Gl2Action::swap;
}

UnramifiedLabels unramified_labels(long long e_psi) {
  const bool even = e_psi % 2 == 0;
  return even ? UnramifiedLabels{RepLabel::plus, RepLabel::minus, 1}
              : UnramifiedLabels{RepLabel::minus, RepLabel::plus, -1};
}

int normalizer_compare(const TameMultChar& theta, const AdditiveCharData& psi) {
  require_quadratic(theta);
  const TameLocalDatum& d = *theta.datum();
  const FStarElem n_unit = d.make(0, d.n() % d.p());
  const CycloNum r = theta(n_unit) * gamma_at(theta, psi.scaled_by_n(), 1) / gamma_at(theta, psi, 1);
  if (!(r * r == d.rational(1))) throw IdentityViolation("normalizer_sign", "r = " + r.to_string());
  return r == d.rational(1) ? 1 : -1;
}

bool ScatteringReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ScatteringReport analyze(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                         const IsotropicPair& pair) {
  require_quadratic(theta);
  return analyze(theta, psi, c, pair, gamma_table(theta, psi.twisted(c)));
}

ScatteringReport analyze(const TameMultChar& theta, const AdditiveCharData& psi, const FStarElem& c,
                         const IsotropicPair& pair, const std::vector<CycloNum>& twisted_table) {
  const TameLocalDatum& d = *theta.datum();
  const FieldPtr& f = d.ambient();
  const std::size_t n = d.n();
  Matrix P = psi_c_matrix(theta, c, pair, twisted_table);
  const CycloNum g = gamma_at(theta, psi, 1);
  Matrix A = scalar_mul(g.inv(), P);
  const CycloNum tr = trace(P);
  ScatteringReport rep{pair, theta, psi, c, P, A, g, tr, whittaker_dims(A, theta, c), {}};

  const CycloNum expect_tr = theta(c) * g;
  rep.checks.push_back({"trace_theorem", tr == expect_tr,
                        tr == expect_tr ? "" : join_witness(tr.to_string(), expect_tr.to_string())});

  const Matrix I = identity(f, n);
  const Matrix P2 = mat_mul(P, P);
  const bool invol = P2 == scalar_mul(g * g, I);
  rep.checks.push_back({"involution", invol, invol ? "" : "M^2 =\n" + to_string(P2)});

  const bool not_scalar = !is_scalar(A).has_value();
  rep.checks.push_back({"not_scalar", not_scalar, not_scalar ? "" : "normalized operator is scalar"});

  const auto& dims = rep.dims;
  const bool rank_sum = dims.plus + dims.minus == n;
  rep.checks.push_back({"rank_sum", rank_sum,
                        rank_sum ? "" : std::to_string(dims.plus) + " + " + std::to_string(dims.minus)});

  const CycloNum rank_diff = d.rational(static_cast<long>(dims.plus) - static_cast<long>(dims.minus));
  const CycloNum trA = trace(A);
  const bool rank_trace = rank_diff == trA;
  rep.checks.push_back({"rank_trace", rank_trace,
                        rank_trace ? "" : join_witness(rank_diff.to_string(), trA.to_string())});

  const bool closed = dims.matches();
  rep.checks.push_back(
      {"dimension_closed_form", closed,
       closed ? ""
              : join_witness("(" + std::to_string(dims.plus) + "," + std::to_string(dims.minus) + ")",
                             "(" + std::to_string(dims.closed_plus) + "," + std::to_string(dims.closed_minus) + ")")});
  return rep;
}

std::string to_string(Gl2Action a) { return a == Gl2Action::fix ? "fix" : "swap"; }
std::string to_string(RepLabel l) { return l == RepLabel::plus ? "pi+" : "pi-"; }

}  // namespace metawhit

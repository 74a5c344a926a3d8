#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "metawhit/errors.hpp"
#include "metawhit/tate.hpp"

namespace metawhit::cli {

using nlohmann::ordered_json;

namespace {

double rounded(double x) {
  if (std::fabs(x) < 1e-12) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string compact(const CycloNum& z) {
  if (z.is_rational()) return z.to_rational().get_str();
  std::string out;
  for (unsigned i = 0; i < z.degree(); ++i) {
    const Rational c = z.coeff(i);
    if (c == 0) continue;
    std::string term = i == 0 ? c.get_str() : (c == 1 ? "" : c == -1 ? "-" : c.get_str() + "*") + "z^" + std::to_string(i);
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out + " (z = zeta_" + std::to_string(z.modulus()) + ")";
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument("bad " + what + ": '" + s + "'");
  return static_cast<unsigned>(v);
}

ElemSpec unit_spec(const std::string& text, unsigned p) {
  ElemSpec e;
  e.unit.clear();
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const unsigned c = parse_unsigned(part, "unit coefficient");
      if (c >= p) throw std::invalid_argument("unit coefficient " + part + " not reduced mod p");
      e.unit.push_back(c);
    }
  } else {
    unsigned code = parse_unsigned(text, "unit");
    if (code == 0) throw std::invalid_argument("unit must be nonzero");
    while (code) {
      e.unit.push_back(code % p);
      code /= p;
    }
  }
  return e;
}

FqElem to_unit(const TameLocalDatum& d, const ElemSpec& e) {
  if (e.unit.size() > d.f()) throw std::invalid_argument("unit " + to_string(e) + " has more than f coefficients");
  auto coeffs = e.unit;
  coeffs.resize(d.f(), 0);
  FqElem u = d.residue_field().element(coeffs);
  if (u.is_zero()) throw std::invalid_argument("unit must be nonzero");
  return u;
}

FStarElem to_elem(const TameLocalDatum& d, const ElemSpec& e) { return d.make(e.valuation, to_unit(d, e)); }

DatumPtr build_datum(const AnalysisConfig& cfg) {
  FaultInjection fault = FaultInjection::none;
  if (cfg.fault == "gauss_sum") fault = FaultInjection::gauss_sum;
  else if (cfg.fault != "none") throw std::invalid_argument("unknown fault '" + cfg.fault + "'");
  return TameLocalDatum::create(FqDescriptor(cfg.p, cfg.f, cfg.modulus_poly), cfg.n, fault);
}

TameMultChar theta_from(const DatumPtr& d, const std::string& name) {
  if (name == "unramified") return TameMultChar::theta_unramified(d);
  if (name == "ramified_plus") return TameMultChar::theta_ramified(d, 1);
  if (name == "ramified_minus") return TameMultChar::theta_ramified(d, -1);
  throw std::invalid_argument("unknown theta '" + name + "'");
}

std::string theta_name(const TameMultChar& t) {
  if (!t.is_ramified()) return "unramified";
  return t.w_exponent() == 0 ? "ramified_plus" : "ramified_minus";
}

std::vector<IsotropicPair> select_pairs(const DatumPtr& d, const std::string& policy) {
  if (policy == "standard") return {d->standard_pair()};
  if (policy == "all") return d->pairs();
  const unsigned k = parse_unsigned(policy, "pair index");
  if (k >= d->pairs().size())
    throw std::invalid_argument("pair index " + policy + " out of range (" + std::to_string(d->pairs().size()) +
                                " pairs)");
  return {d->pairs()[k]};
}

std::vector<AdditiveCharData> select_psis(const DatumPtr& d, const AnalysisConfig& cfg,
                                          std::vector<long long> defaults) {
  const FqElem twist = cfg.psi_twist ? to_unit(*d, *cfg.psi_twist) : d->residue_field().one();
  if (cfg.psi_conductor) defaults = {*cfg.psi_conductor};
  std::vector<AdditiveCharData> out;
  for (long long e : defaults) out.emplace_back(d, e, twist);
  return out;
}

ordered_json class_json(const ClassModN& c) { return ordered_json::array({c.a, c.b}); }

ordered_json pair_json(const IsotropicPair& pr) {
  ordered_json j;
  j["label"] = pr.label();
  j["J"] = ordered_json::array();
  for (const auto& x : pr.J_elements) j["J"].push_back(class_json(x));
  j["K"] = ordered_json::array();
  for (const auto& x : pr.K_elements) j["K"].push_back(class_json(x));
  return j;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(exact_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json elem_json(const FStarElem& x) {
  ElemSpec e{x.valuation, x.unit.coeffs};
  while (e.unit.size() > 1 && e.unit.back() == 0) e.unit.pop_back();
  return to_string(e);
}

ordered_json theta_json(const TameMultChar& t) {
  return ordered_json{{"name", theta_name(t)}, {"k", t.k()}, {"w_exponent", t.w_exponent()}};
}

ordered_json psi_json(const AdditiveCharData& psi) {
  return ordered_json{{"conductor", psi.conductor()}, {"twist", psi.twist().coeffs}};
}

ordered_json datum_json(const TameLocalDatum& d) {
  const auto& F = d.residue_field();
  return ordered_json{{"p", d.p()},
                      {"f", d.f()},
                      {"q", d.q()},
                      {"n", d.n()},
                      {"N", d.N()},
                      {"modulus_poly", F.modulus_poly()},
                      {"generator", F.generator().coeffs},
                      {"sqrt_q", exact_json(d.sqrt_q())}};
}

ordered_json report_json(const ScatteringReport& r) {
  ordered_json j;
  j["theta"] = theta_json(r.theta);
  j["psi"] = psi_json(r.psi);
  j["c"] = elem_json(r.c);
  j["pair"] = pair_json(r.pair);
  j["gamma_1"] = exact_json(r.gamma_1);
  j["trace"] = exact_json(r.trace);
  j["theta_c"] = r.theta(r.c) == r.theta.datum()->rational(1) ? 1 : -1;
  j["dims"] = ordered_json{{"plus", r.dims.plus},
                           {"minus", r.dims.minus},
                           {"closed_plus", r.dims.closed_plus},
                           {"closed_minus", r.dims.closed_minus}};
  j["gl2_action"] = to_string(gl2_action_predict(r.theta, r.c));
  j["matrix"] = matrix_json(r.matrix);
  j["normalized"] = matrix_json(r.normalized);
  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back(ordered_json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return j;
}

ordered_json document(const std::string& command, const AnalysisConfig& cfg, const TameLocalDatum& d) {
  ordered_json doc;
  doc["format"] = "metawhit-report";
  doc["version"] = 1;
  doc["command"] = command;
  doc["config"] = config_to_json(cfg);
  doc["datum"] = datum_json(d);
  return doc;
}

std::string check_line(const ordered_json& c) {
  std::string s = std::string(c["pass"].get<bool>() ? "PASS " : "FAIL ") + c["name"].get<std::string>();
  if (c.contains("cases")) s += " (" + std::to_string(c["cases"].get<std::size_t>()) + " cases)";
  const auto w = c["witness"].get<std::string>();
  if (!w.empty()) s += "\n      witness: " + w;
  return s;
}

}  // namespace

ElemSpec parse_elem_spec(const std::string& text, unsigned p) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("element spec '" + text + "' is not of the form v:unit");
  const std::string v = text.substr(0, colon);
  long long val = 0;
  std::size_t pos = 0;
  try {
    val = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size()) throw std::invalid_argument("bad valuation in '" + text + "'");
  ElemSpec e = unit_spec(text.substr(colon + 1), p);
  e.valuation = val;
  return e;
}

std::string to_string(const ElemSpec& e) {
  std::string u;
  for (std::size_t i = 0; i < e.unit.size(); ++i) u += (i ? "," : "") + std::to_string(e.unit[i]);
  return std::to_string(e.valuation) + ":" + u;
}

ordered_json config_to_json(const AnalysisConfig& cfg) {
  ordered_json j;
  j["p"] = cfg.p;
  j["f"] = cfg.f;
  j["n"] = cfg.n;
  if (cfg.modulus_poly) j["modulus_poly"] = *cfg.modulus_poly;
  if (cfg.theta) j["theta"] = *cfg.theta;
  if (cfg.psi_conductor) j["psi_conductor"] = *cfg.psi_conductor;
  if (cfg.psi_twist) {
    std::string u;
    for (std::size_t i = 0; i < cfg.psi_twist->unit.size(); ++i)
      u += (i ? "," : "") + std::to_string(cfg.psi_twist->unit[i]);
    j["psi_twist"] = u;
  }
  if (!cfg.c_list.empty()) {
    j["c"] = ordered_json::array();
    for (const auto& c : cfg.c_list) j["c"].push_back(to_string(c));
  }
  if (cfg.pairs) j["pairs"] = *cfg.pairs;
  if (cfg.fault != "none") j["inject_fault"] = cfg.fault;
  return j;
}

AnalysisConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("configuration must be a JSON object");
  static const std::set<std::string> known{"p",   "f",      "n",     "modulus_poly", "theta", "psi_conductor",
                                           "psi_twist", "c", "pairs", "inject_fault"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw std::invalid_argument("unknown configuration key '" + key + "'");
  AnalysisConfig cfg;
  try {
    if (doc.contains("p")) cfg.p = doc["p"].get<unsigned>();
    if (doc.contains("f")) cfg.f = doc["f"].get<unsigned>();
    if (doc.contains("n")) cfg.n = doc["n"].get<unsigned>();
    if (doc.contains("modulus_poly")) cfg.modulus_poly = doc["modulus_poly"].get<std::vector<std::int64_t>>();
    if (doc.contains("theta")) cfg.theta = doc["theta"].get<std::string>();
    if (doc.contains("psi_conductor")) cfg.psi_conductor = doc["psi_conductor"].get<long long>();
    if (doc.contains("psi_twist")) {
      const auto& t = doc["psi_twist"];
      cfg.psi_twist = unit_spec(t.is_string() ? t.get<std::string>() : std::to_string(t.get<unsigned>()), cfg.p);
    }
    if (doc.contains("c"))
      for (const auto& c : doc["c"]) cfg.c_list.push_back(parse_elem_spec(c.get<std::string>(), cfg.p));
    if (doc.contains("pairs")) {
      const auto& pr = doc["pairs"];
      cfg.pairs = pr.is_string() ? pr.get<std::string>() : std::to_string(pr.get<unsigned>());
    }
    if (doc.contains("inject_fault")) cfg.fault = doc["inject_fault"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed configuration: ") + e.what());
  }
  return cfg;
}

ordered_json exact_json(const CycloNum& z) {
  const auto c = z.complex_embed();
  return ordered_json{{"exact", z.to_string()}, {"display", compact(z)}, {"approx", {rounded(c.real()), rounded(c.imag())}}};
}

ordered_json cmd_analyze(const AnalysisConfig& cfg, int& status) {
  const DatumPtr d = build_datum(cfg);
  const TameMultChar theta = theta_from(d, cfg.theta.value_or("unramified"));
  const auto psis = select_psis(d, cfg, {0});
  std::vector<FStarElem> cs;
  for (const auto& c : cfg.c_list) cs.push_back(to_elem(*d, c));
  if (cs.empty()) cs.push_back(d->one());
  const auto pairs = select_pairs(d, cfg.pairs.value_or("standard"));

  ordered_json doc = document("analyze", cfg, *d);
  ordered_json confs = ordered_json::array();
  bool ok = true;
  for (const auto& psi : psis) {
    for (const auto& c : cs)
      for (const auto& pr : pairs) {
        const auto rep = analyze(theta, psi, c, pr);
        ok = ok && rep.all_pass();
        confs.push_back(report_json(rep));
      }
  }
  doc["configurations"] = std::move(confs);

  ordered_json extra = ordered_json::array();
  for (const auto& psi : psis) {
    ordered_json e;
    e["theta"] = theta_json(theta);
    e["psi"] = psi_json(psi);
    const CycloNum g = evaluate(gamma_factor(theta, psi), 1, *d);
    e["gamma_1"] = exact_json(g);
    const CycloNum mu0 = plancherel(theta, psi).evaluate_at(d->rational(1));
    e["plancherel_at_0"] = exact_json(mu0);
    e["plancherel_consistent"] = g * g == theta(d->minus_one()) * mu0;
    ok = ok && e["plancherel_consistent"].get<bool>();
    e["normalizer_sign"] = normalizer_compare(theta, psi);
    if (!theta.is_ramified()) {
      const auto lab = unramified_labels(psi.conductor());
      e["unramified_labels"] = {{"V1", to_string(lab.v1)}, {"V2", to_string(lab.v2)}, {"eigen_sign", lab.eigen_sign}};
    } else {
      const auto cs_check = conductor_sum_check(theta);
      e["conductor_sum"] = {{"lhs", cs_check.lhs.get_str()}, {"rhs", cs_check.rhs.get_str()}, {"holds", cs_check.holds()}};
      ok = ok && cs_check.holds();
    }
    extra.push_back(std::move(e));
  }
  doc["characters"] = std::move(extra);
  doc["summary"] = {{"pass", ok}};
  status = ok ? pass : identity_violation;
  return doc;
}

ordered_json cmd_verify(const AnalysisConfig& cfg, int& status) {
  const DatumPtr d = build_datum(cfg);
  SuiteConfig suite = default_suite(d);
  if (cfg.theta) suite.thetas = {theta_from(d, *cfg.theta)};
  suite.psis = select_psis(d, cfg, {0, 1});
  if (!cfg.c_list.empty()) {
    suite.cs.clear();
    for (const auto& c : cfg.c_list) suite.cs.push_back(to_elem(*d, c));
  }
  suite.pairs = select_pairs(d, cfg.pairs.value_or("all"));
  const SuiteResult res = run_verification(suite);

  ordered_json doc = document("verify", cfg, *d);
  doc["configurations_checked"] = res.reports.size();
  ordered_json checks = ordered_json::array();
  ordered_json failed = ordered_json::array();
  for (const auto& c : res.checks) {
    checks.push_back(ordered_json{{"name", c.name}, {"pass", c.pass()}, {"cases", c.cases}, {"failures", c.failures},
                                  {"witness", c.witness}});
    if (!c.pass()) failed.push_back(c.name);
  }
  doc["checks"] = std::move(checks);
  ordered_json signs = ordered_json::array();
  std::size_t idx = 0;
  for (const auto& theta : suite.thetas)
    for (const auto& psi : suite.psis)
      signs.push_back(ordered_json{{"theta", theta_name(theta)}, {"psi", psi_json(psi)}, {"sign", res.normalizer_signs.at(idx++)}});
  doc["normalizer_signs"] = std::move(signs);
  doc["summary"] = {{"pass", res.all_pass()}, {"failed", failed}};
  status = res.all_pass() ? pass : identity_violation;
  return doc;
}

ordered_json cmd_pairing(const AnalysisConfig& cfg, int& status) {
  const DatumPtr d = build_datum(cfg);
  ordered_json doc = document("pairing", cfg, *d);
  const std::vector<ClassModN> gens{{1, 0}, {0, 1}};
  ordered_json gg = ordered_json::array();
  for (const auto& x : gens) {
    ordered_json row = ordered_json::array();
    for (const auto& y : gens) row.push_back(pairing_exponent(*d, x, y));
    gg.push_back(row);
  }
  doc["generators"] = {"uniformizer", "residue generator"};
  doc["gram_generators"] = gg;
  const auto classes = d->all_classes();
  ordered_json labels = ordered_json::array();
  for (const auto& x : classes) labels.push_back(class_json(x));
  doc["classes"] = labels;
  ordered_json gram = ordered_json::array();
  bool antisym = true;
  for (const auto& x : classes) {
    ordered_json row = ordered_json::array();
    for (const auto& y : classes) {
      const unsigned e = pairing_exponent(*d, x, y);
      antisym = antisym && (e + pairing_exponent(*d, y, x)) % d->n() == 0;
      row.push_back(e);
    }
    gram.push_back(row);
  }
  doc["gram"] = gram;
  doc["antisymmetric"] = antisym;
  ordered_json iso = ordered_json::array();
  for (const auto& S : d->maximal_isotropics()) {
    ordered_json s = ordered_json::array();
    for (const auto& x : S) s.push_back(class_json(x));
    iso.push_back(s);
  }
  doc["maximal_isotropics"] = iso;
  ordered_json prs = ordered_json::array();
  for (std::size_t i = 0; i < d->pairs().size(); ++i) {
    auto j = pair_json(d->pairs()[i]);
    j["index"] = i;
    j["standard"] = d->pairs()[i] == d->standard_pair();
    prs.push_back(j);
  }
  doc["pairs"] = prs;
  doc["summary"] = {{"pass", antisym},
                    {"isotropics", d->maximal_isotropics().size()},
                    {"pairs", d->pairs().size()}};
  status = antisym ? pass : identity_violation;
  return doc;
}

std::string render_text(const ordered_json& doc) {
  std::ostringstream os;
  const auto& dt = doc["datum"];
  os << doc["command"].get<std::string>() << ": p=" << dt["p"] << " f=" << dt["f"] << " q=" << dt["q"]
     << " n=" << dt["n"] << " N=" << dt["N"] << "\n";
  const std::string cmd = doc["command"];
  if (cmd == "analyze") {
    for (const auto& c : doc["configurations"]) {
      os << "\ntheta=" << c["theta"]["name"].get<std::string>() << " psi(e=" << c["psi"]["conductor"]
         << ", twist=" << c["psi"]["twist"].dump() << ") c=" << c["c"].get<std::string>() << " "
         << c["pair"]["label"].get<std::string>() << "\n";
      os << "  gamma(1,theta,psi) = " << c["gamma_1"]["display"].get<std::string>() << "\n";
      os << "  trace = " << c["trace"]["display"].get<std::string>() << "   theta(c) = " << c["theta_c"] << "\n";
      os << "  dims (plus, minus) = (" << c["dims"]["plus"] << ", " << c["dims"]["minus"] << ")   closed form ("
         << c["dims"]["closed_plus"] << ", " << c["dims"]["closed_minus"] << ")   GL2 action: "
         << c["gl2_action"].get<std::string>() << "\n";
      os << "  normalized operator:\n";
      for (const auto& row : c["normalized"]) {
        os << "    [";
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "; " : "") << row[j]["display"].get<std::string>();
        os << "]\n";
      }
      for (const auto& chk : c["checks"]) os << "  " << check_line(chk) << "\n";
    }
    for (const auto& e : doc["characters"]) {
      os << "\ncharacter " << e["theta"]["name"].get<std::string>() << " psi(e=" << e["psi"]["conductor"] << ")\n";
      os << "  Plancherel function at s=0: " << e["plancherel_at_0"]["display"].get<std::string>()
         << (e["plancherel_consistent"].get<bool>() ? "  (consistent with M^2)" : "  (INCONSISTENT)") << "\n";
      os << "  normalizer sign: " << e["normalizer_sign"] << "\n";
      if (e.contains("unramified_labels"))
        os << "  V1 = " << e["unramified_labels"]["V1"].get<std::string>()
           << ", V2 = " << e["unramified_labels"]["V2"].get<std::string>()
           << ", eigenvalue on V1 = " << e["unramified_labels"]["eigen_sign"] << "\n";
      if (e.contains("conductor_sum"))
        os << "  conductor sum: " << e["conductor_sum"]["lhs"].get<std::string>() << " = "
           << e["conductor_sum"]["rhs"].get<std::string>() << "\n";
    }
  } else if (cmd == "verify") {
    os << doc["configurations_checked"] << " scattering configurations\n";
    for (const auto& c : doc["checks"]) os << "  " << check_line(c) << "\n";
    for (const auto& s : doc["normalizer_signs"])
      os << "  normalizer sign " << s["theta"].get<std::string>() << " e(psi)=" << s["psi"]["conductor"] << ": "
         << s["sign"] << "\n";
  } else if (cmd == "pairing") {
    const auto& gg = doc["gram_generators"];
    os << "pairing exponents on (uniformizer, residue generator): " << gg.dump() << "\n";
    os << "gram table over (Z/n)^2, rows and columns:";
    for (const auto& x : doc["classes"]) os << " (" << x[0] << "," << x[1] << ")";
    os << "\n";
    for (const auto& row : doc["gram"]) {
      os << "  ";
      for (const auto& v : row) os << v << " ";
      os << "\n";
    }
    os << "antisymmetric: " << (doc["antisymmetric"].get<bool>() ? "yes" : "no") << "\n";
    os << doc["maximal_isotropics"].size() << " maximal isotropic subgroups\n";
    for (const auto& s : doc["maximal_isotropics"]) os << "  " << s.dump() << "\n";
    os << doc["pairs"].size() << " valid (J, K) pairs\n";
    for (const auto& p : doc["pairs"])
      os << "  [" << p["index"] << "] " << p["label"].get<std::string>() << (p["standard"].get<bool>() ? "  standard" : "")
         << "\n";
  }
  os << "\nresult: " << (doc["summary"]["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact scattering matrices and Whittaker dimensions for tame metaplectic SL2 covers", "metawhit"};
  app.require_subcommand(1);

  unsigned p = 0, f = 0, n = 0;
  std::vector<std::int64_t> modulus;
  std::string theta, psi_twist, pairs_policy, config_file, output_file, format = "text", fault = "none";
  long long psi_conductor = 0;
  std::vector<std::string> c_specs;

  std::vector<CLI::App*> subs{app.add_subcommand("analyze", "scattering matrix, trace and dimensions"),
                              app.add_subcommand("verify", "run the full identity suite"),
                              app.add_subcommand("pairing", "Hilbert pairing table and isotropic pairs")};
  for (CLI::App* s : subs) {
    s->add_option("--p", p, "residue characteristic (odd prime)");
    s->add_option("--f", f, "residue degree");
    s->add_option("--n", n, "cover degree (odd, divides q - 1)");
    s->add_option("--modulus-poly", modulus, "defining polynomial of F_q, low degree first (f > 1)")->delimiter(',');
    s->add_option("--theta", theta, "unramified | ramified_plus | ramified_minus")
        ->check(CLI::IsMember({"unramified", "ramified_plus", "ramified_minus"}));
    s->add_option("--psi-conductor", psi_conductor, "conductor of psi");
    s->add_option("--psi-twist", psi_twist, "unit twist of psi (integer code or c0,c1,...)");
    s->add_option("--c", c_specs, "twist c as v:unit; repeatable")->take_all();
    s->add_option("--pairs", pairs_policy, "standard | all | pair index");
    s->add_option("--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
    s->add_option("--output", output_file, "write the report here instead of stdout");
    s->add_option("--format", format, "text | machine")->check(CLI::IsMember({"text", "machine"}));
    s->add_option("--inject-fault", fault, "")->group("");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? pass : usage_error;
  }

  CLI::App* sub = nullptr;
  for (CLI::App* s : subs)
    if (s->parsed()) sub = s;

  AnalysisConfig cfg;
  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      cfg = config_from_json(nlohmann::json::parse(in));
    }
    if (sub->count("--p")) cfg.p = p;
    if (sub->count("--f")) cfg.f = f;
    if (sub->count("--n")) cfg.n = n;
    if (sub->count("--modulus-poly")) cfg.modulus_poly = modulus;
    if (sub->count("--theta")) cfg.theta = theta;
    if (sub->count("--psi-conductor")) cfg.psi_conductor = psi_conductor;
    if (sub->count("--psi-twist")) cfg.psi_twist = unit_spec(psi_twist, cfg.p);
    if (sub->count("--c")) {
      cfg.c_list.clear();
      for (const auto& s : c_specs) cfg.c_list.push_back(parse_elem_spec(s, cfg.p));
    }
    if (sub->count("--pairs")) cfg.pairs = pairs_policy;
    if (sub->count("--inject-fault")) cfg.fault = fault;
  } catch (const nlohmann::json::exception& e) {
    err << "error: cannot parse configuration: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  int status = internal_error;
  ordered_json doc;
  try {
    const std::string name = sub->get_name();
    if (name == "analyze") doc = cmd_analyze(cfg, status);
    else if (name == "verify") doc = cmd_verify(cfg, status);
    else doc = cmd_pairing(cfg, status);
  } catch (const DimensionMismatch& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const IncompatibleModulus& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const InvalidDatum& e) {
    err << "error: invalid datum: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const IdentityViolation& e) {
    err << "identity violation: " << e.what() << "\n";
    return identity_violation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }

  const std::string text = format == "machine" ? doc.dump(2) + "\n" : render_text(doc);
  if (output_file.empty()) {
    out << text;
  } else {
    std::ofstream o(output_file);
    if (!o) {
      err << "error: cannot write " << output_file << "\n";
      return usage_error;
    }
    o << text;
  }
  if (status == identity_violation && doc["summary"].contains("failed"))
    for (const auto& name : doc["summary"]["failed"]) err << "identity violated: " << name.get<std::string>() << "\n";
  return status;
}

}  // namespace metawhit::cli

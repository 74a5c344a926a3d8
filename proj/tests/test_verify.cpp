#include "doctest.h"
#include "metawhit/verify.hpp"

using namespace metawhit;

namespace {

std::string failing(const SuiteResult& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.pass()) out += c.name + ": " + c.witness + "\n";
  return out;
}

}  // namespace

TEST_CASE("suite passes at q = 7 and q = 13") {
  for (unsigned p : {7u, 13u}) {
    auto d = TameLocalDatum::create(FqDescriptor(p, 1), 3);
    const auto res = run_verification(default_suite(d));
    CHECK_MESSAGE(res.all_pass(), failing(res));
    for (const char* name : {"epsilon_eq_1", "epsilon_eq_2", "epsilon_eq_3", "epsilon_eq_5", "gauss_product",
                             "hilbert_bilinear", "fourier_inversion", "trace_theorem", "involution",
                             "choice_independence", "plancherel_consistency", "conductor_sum", "normalizer_sign",
                             "gl2_consistency", "unramified_labels"}) {
      const auto* c = res.find(name);
      REQUIRE_MESSAGE(c != nullptr, name);
      CHECK(c->cases > 0);
    }
    CHECK(res.find("fourier_inversion")->cases == 40);
    CHECK(res.reports.size() == 3 * 2 * 4 * 12);
  }
}

TEST_CASE("serial and parallel suites agree") {
  auto d = TameLocalDatum::create(FqDescriptor(7, 1), 3);
  auto cfg = default_suite(d);
  cfg.epsilon_conductors = {0};
  const auto par = run_verification(cfg);
  cfg.parallel = false;
  const auto ser = run_verification(cfg);
  REQUIRE(par.reports.size() == ser.reports.size());
  for (std::size_t i = 0; i < par.reports.size(); ++i) {
    CHECK(par.reports[i].matrix == ser.reports[i].matrix);
    CHECK(par.reports[i].pair == ser.reports[i].pair);
  }
  REQUIRE(par.checks.size() == ser.checks.size());
  for (std::size_t i = 0; i < par.checks.size(); ++i) {
    CHECK(par.checks[i].name == ser.checks[i].name);
    CHECK(par.checks[i].cases == ser.checks[i].cases);
  }
}

TEST_CASE("corrupted Gauss sums are detected") {
  auto d = TameLocalDatum::create(FqDescriptor(7, 1), 3, FaultInjection::gauss_sum);
  auto cfg = default_suite(d);
  cfg.pairs = {d->standard_pair()};
  const auto res = run_verification(cfg);
  CHECK(!res.all_pass());
  REQUIRE(res.find("epsilon_eq_1") != nullptr);
  CHECK(!res.find("epsilon_eq_1")->pass());
  CHECK(!res.find("epsilon_eq_1")->witness.empty());
  CHECK(res.find("hilbert_bilinear")->pass());
}

#pragma once

// The verification suite: every identity of the library checked exactly over
// a configurable set of characters, additive characters, twists and pairs.

#include <string>
#include <vector>

#include "metawhit/whittaker.hpp"

namespace metawhit {

struct SuiteConfig {
  DatumPtr datum;
  std::vector<TameMultChar> thetas;
  std::vector<AdditiveCharData> psis;
  std::vector<FStarElem> cs;
  std::vector<IsotropicPair> pairs;
  /// Conductors used for the epsilon functional equations.
  std::vector<long long> epsilon_conductors{-1, 0, 1, 2};
  std::size_t fourier_samples = 20;
  std::uint64_t seed = 1;
  bool parallel = true;
};

/// All three nontrivial quadratic characters, psi of conductor 0 and 1, c over
/// representatives of F^*/F^{*2}, every valid pair.
SuiteConfig default_suite(const DatumPtr& datum);

struct SuiteCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string witness;  // first failing case
  bool pass() const { return failures == 0; }
};

struct SuiteResult {
  std::vector<SuiteCheck> checks;  // fixed order
  std::vector<ScatteringReport> reports;
  std::vector<int> normalizer_signs;  // per (theta, psi)
  bool all_pass() const;
  const SuiteCheck* find(const std::string& name) const;
};

SuiteResult run_verification(const SuiteConfig& config);

/// Representatives of F^*/F^{*2}: 1, a non-square unit, the uniformizer and
/// their product.
std::vector<FStarElem> square_class_representatives(const TameLocalDatum& datum);

}  // namespace metawhit

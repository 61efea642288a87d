#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "berk/lyapunov.hpp"
#include "berk/preimage.hpp"
#include "berk/rmap.hpp"

namespace berk {

// Random points with p-adically small data, so exact arithmetic stays cheap.
BerkPoint random_type_ii(std::mt19937_64& rng, long p);
BerkPoint random_disc(std::mt19937_64& rng, long p);
BerkPoint random_type_i(std::mt19937_64& rng, long p);

struct CorpusEntry {
  std::string name;
  RationalMap map;
  std::vector<std::string> conjugates;  // conjugation candidates besides the identity
};

/// The maps exercised by `berkcli verify` when no corpus file is given.
std::vector<CorpusEntry> builtin_corpus();

struct SuiteOptions {
  long n_max = 4;
  long budget = kDefaultBudget;
  long type_ii_samples = 500;
  long lipschitz_pairs = 10000;
  long equi_points = 20;
  long equi_levels = 3;
  long invariance_levels = 3;
  std::uint64_t seed = 20240601;
  // Test fixture: the multiplicity oracle over-reports the first preimage by one.
  bool corrupt_multiplicity_oracle = false;
};

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct MapSuiteResult {
  std::string name;
  std::string map;
  long p = 2;
  bool bad_reduction = false;
  std::vector<CheckResult> checks;
  bool ok() const;
};

/// Oracle multiplicity m_phi(x): local degree with the directional stretch toward
/// infinity as a lower bound.
long multiplicity_oracle(const RationalMap& phi, const BerkPoint& x);

/// Every atom of every level pulled back again; the multiplicities of each preimage set
/// recomputed by the oracle must sum to d.
CheckResult check_multiplicities(const RationalMap& phi, const std::vector<PullbackLevel>& levels,
                                 bool corrupt = false);
CheckResult check_lemma43_random(const RationalMap& phi, long samples, std::mt19937_64& rng);
CheckResult check_lipschitz(const RationalMap& phi, long pairs, std::mt19937_64& rng);
CheckResult check_equidistribution(const RationalMap& phi, const std::vector<PullbackLevel>& levels,
                                   long points, long n_max, std::mt19937_64& rng);
CheckResult check_invariance(const RationalMap& phi, const std::vector<Mobius>& gens, long n_max, long budget);

MapSuiteResult run_map_suite(const CorpusEntry& entry, const SuiteOptions& opts);

}  // namespace berk

#pragma once

#include <vector>

#include "berk/measure.hpp"
#include "berk/rmap.hpp"

namespace berk {

struct WeightedPreimage {
  BerkPoint point;
  long multiplicity;
};

using WeightedPreimageSet = std::vector<WeightedPreimage>;

/// All points of H mapping to the disc target, with local degrees summing to deg(phi).
/// Throws RequiresExtension when some preimage has no Q_p-rational center.
WeightedPreimageSet preimages(const RationalMap& phi, const BerkPoint& target);

// Process-wide tally of preimages() calls.
struct PreimageStats {
  long calls = 0;
  long multiplicity_failures = 0;
  long extension_failures = 0;
};
PreimageStats preimage_stats();
void reset_preimage_stats();

DiscreteMeasure pullback_measure(const RationalMap& phi, const DiscreteMeasure& mu);
DiscreteMeasure pushforward_measure(const RationalMap& phi, const DiscreteMeasure& mu);

struct PullbackLevel {
  long n = 0;
  DiscreteMeasure measure;
};

constexpr long kDefaultBudget = 10000;

/// nu_0, ..., nu_{n_max} from the Dirac mass at base, checking unit mass and
/// push-forward consistency at every level. The budget caps the cumulative atom count.
std::vector<PullbackLevel> nu_levels(const RationalMap& phi, const BerkPoint& base, long n_max,
                                     long budget = kDefaultBudget);
PullbackLevel nu(const RationalMap& phi, const BerkPoint& base, long n, long budget = kDefaultBudget);

std::vector<Rational> g1_values(const RationalMap& phi, const BerkPoint& base,
                                const std::vector<BerkPoint>& queries);
Rational g1_sup(const RationalMap& phi, const BerkPoint& base);

/// |integral of log delta(., a)_{Gauss} d(nu_n - nu_m)|.
Rational equi_defect(const RationalMap& phi, const BerkPoint& base, const BerkPoint& a, long n, long m,
                     long budget = kDefaultBudget);
/// The same defect from precomputed levels.
Rational equi_defect(const std::vector<PullbackLevel>& levels, const BerkPoint& a, long n, long m);
/// 2 (2 d g1_sup / (d - 1)) d^{-n}.
Rational equi_rate_bound(long d, const Rational& g1sup, long n);

}  // namespace berk

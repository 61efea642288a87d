#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berk/preimage.hpp"
#include "berk/rmap.hpp"

namespace berk {

struct LevelRow {
  long n = 0;
  Rational est_prime;  // integral of log[phi'] against nu_n
  Rational est_sharp;  // integral of log[phi^#] against nu_n
  std::optional<Rational> I_n;  // integral of log diam against nu_{n-1} - nu_n (n >= 1)
  std::optional<bool> eq20_ok;  // est_prime >= kappa - (d+1) * lipschitz (n >= 1)
  std::optional<bool> prop45_ok;     // I_n >= -(d+1) * lipschitz
  std::optional<bool> prop45_g1_ok;  // I_n >= -(d+1) * g1_sup
  std::optional<bool> lemma_level_ok;  // est_prime >= kappa + I_n
  bool bracket_ok = true;       // |est_prime - est_sharp| within the B1/B2 bracket
  bool telescope_ok = true;     // atomwise distortion decomposition agrees
};

std::vector<LevelRow> lyap_estimates(const RationalMap& phi, const std::vector<PullbackLevel>& levels,
                                     const Rational& lipschitz, const std::optional<Rational>& g1sup);
std::vector<LevelRow> lyap_estimates(const RationalMap& phi, const BerkPoint& base, long n_max,
                                     long budget = kDefaultBudget);

struct Lemma43Report {
  std::vector<Rational> slacks;
  Rational min_slack;
  bool ok = true;
};
Lemma43Report verify_lemma43(const RationalMap& phi, const std::vector<BerkPoint>& samples);

struct Prop45Row {
  long n = 0;
  Rational I_n;
  Rational bound_lipschitz;
  Rational bound_g1;
  bool ok_lipschitz = true;
  bool ok_g1 = true;
};
struct Prop45Report {
  std::vector<Prop45Row> rows;
  bool ok = true;
};
Prop45Report verify_prop45(const RationalMap& phi, long n_max, long budget = kDefaultBudget);

enum class Verdict { Holds, Inconclusive, Fails, NotApplicable };
std::string to_string(Verdict v);

struct Theorem2Report {
  std::vector<Rational> min_log_diam;  // per level
  std::vector<bool> level_ok;          // est_prime(n) >= kappa + I_n, n >= 1
  Rational kappa;
  Rational last_estimate;
  Rational last_correction;  // I_{n_max}
  bool equality = false;     // est_prime == kappa at every level
  Verdict verdict = Verdict::Inconclusive;
};
Theorem2Report verify_theorem2_hypotheses(const RationalMap& phi, long n_max, long budget = kDefaultBudget);

struct Theorem1Candidate {
  std::string gamma;
  Rational lipschitz;
  Rational bound;  // kappa - (d+1) lipschitz
  bool ok = true;  // eq20 at every level for the conjugate
};
struct Theorem1Report {
  std::vector<Theorem1Candidate> candidates;
  Rational best_bound;
  std::string best_gamma;
  Rational own_estimate;   // est_prime(n_max) of phi
  bool own_meets_best = true;  // informational: finite-level estimate versus the best bound
  bool ok = true;
};
Theorem1Report verify_theorem1(const RationalMap& phi, const std::vector<Mobius>& candidates, long n_max,
                               long budget = kDefaultBudget);

struct Prop49Report {
  bool good_reduction = false;
  bool separable = false;
  bool applicable = false;
  Rational derivative_at_gauss;
  std::vector<Rational> estimates;
  Verdict verdict = Verdict::NotApplicable;
};
Prop49Report verify_prop49(const RationalMap& phi, long n_max, long budget = kDefaultBudget);

struct InvarianceRow {
  long n = 0;
  bool measures_equal = false;   // nu_n(phi^gamma, gamma^{-1} Gauss) == (gamma^{-1})_* nu_n(phi, Gauss)
  Rational est_conjugate;        // computed directly on phi^gamma
  Rational est_corrected;        // est(phi) + integral of h d(phi_* nu_n - nu_n)
  bool prime_ok = false;
  bool sharp_ok = false;
  bool cancellation_ok = false;  // the two outer chain-rule terms cancel exactly
};
struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  bool ok = true;
};
InvarianceReport verify_invariance(const RationalMap& phi, const Mobius& gamma, long n_max,
                                   long budget = kDefaultBudget);

struct AnalysisOptions {
  long n_max = 4;
  long budget = kDefaultBudget;
  std::vector<Mobius> candidates;  // identity is always added
};

struct LyapunovReport {
  std::string map;
  long p = 2;
  long d = 2;
  Rational kappa;
  Rational lipschitz_log;
  Rational g1_sup;
  bool good_reduction = false;
  bool separable = false;
  std::vector<LevelRow> rows;
  Lemma43Report lemma43;
  Theorem1Report theorem1;
  Theorem2Report theorem2;
  Prop49Report prop49;
  bool g1_within_lipschitz = true;
  bool eq20_ok = true;
  bool prop45_ok = true;
  bool ok = true;
};

LyapunovReport analyze(const RationalMap& phi, const AnalysisOptions& opts);

}  // namespace berk

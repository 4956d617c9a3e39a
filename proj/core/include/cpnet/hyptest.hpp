// Intersection hypothesis tests for core-periphery structure.
//
// Both nulls share the statistics T1 = T(A, c_hat) (the maximized sample
// metric) and T2 = p_hat_11 - p_hat_12 (core-core minus core-periphery edge
// density), and reject only when T1 > C1 AND T2 > C2.
//
// ER null:  C1 = sqrt(log(n*rho*alpha) / n),  C2 = 2*sqrt(2)*rho*log(n)/sqrt(k)
// CL null:  C1 = rho(P_hat, c_hat) + eps_tilde + eps_prime, same C2, where
//           P_hat_ij = d_i*d_j/(2m) clamped to [0,1],
//           eps_tilde = sqrt(alpha)*log(n*alpha) / (n^1.5 * sqrt(rho)),
//           eps_prime = sqrt(log(n*alpha*rho)) / n.
//
// The unobservable sparsity rho is replaced by p_hat = 2m/n^2 and alpha by
// k_hat/n from the detected labels. Both cutoffs need k_hat * p_hat > 1; when
// that guard fails the test is not applicable.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cpnet/detect.hpp"
#include "cpnet/graph.hpp"
#include "cpnet/labels.hpp"

namespace cpnet {

struct TestInputs {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double p_hat = 0.0;   // 2m / n^2
  int k_hat = 0;
  double alpha_hat = 0.0;
};

TestInputs make_test_inputs(const Graph& g, const LabelAssignment& c);

double t1_statistic(const Graph& g, const LabelAssignment& c);

// Requires 2 <= k_hat <= n-1 (p_hat_11 needs at least one core pair).
double t2_statistic(const Graph& g, const LabelAssignment& c);

struct ErCutoffs {
  double c1, c2;
};
// Throws std::domain_error when k_hat * p_hat <= 1.
ErCutoffs er_cutoffs(const TestInputs& in);

struct ClCutoffs {
  double c1, c2;
  double rho_hat;          // rho(P_hat, c_hat)
  double eps_tilde, eps_prime;
  std::int64_t clamped;    // P_hat entries clamped to 1
};
ClCutoffs cl_cutoffs(const Graph& g, const LabelAssignment& c,
                     const TestInputs& in);

// rho evaluated at the degree plug-in P_hat_ij = min(d_i*d_j/(2m), 1).
// Exact (clamped pairs are enumerated, never approximated) in
// O(n log n + #clamped).
double plug_in_rho(const Graph& g, const LabelAssignment& c,
                   std::int64_t* clamped_out = nullptr);

enum class NullModel { er, cl, both };

enum class Interpretation {
  no_significant_cp,
  cp_explained_by_degree_heterogeneity,
  endogenous_cp,
  not_applicable,
};
const char* to_string(Interpretation v);

struct NullOutcome {
  double c1 = 0.0, c2 = 0.0;
  bool reject_t1 = false, reject_t2 = false, reject = false;
};

struct TestReport {
  std::int64_t n = 0, m = 0;
  double p_hat = 0.0;
  int k_hat = 0;
  double alpha_hat = 0.0;
  double t1 = 0.0;
  std::optional<double> t2;        // absent iff the guard fails with k_hat < 2
  std::optional<NullOutcome> er;   // absent when not requested or guard fails
  std::optional<NullOutcome> cl;
  bool k_rho_ok = false;           // the k_hat * p_hat > 1 guard
  std::int64_t cl_clamped = 0;     // diagnostic only, not serialized
  Interpretation interpretation = Interpretation::not_applicable;

  std::string to_json() const;
  static TestReport from_json(const std::string& text);
};

// Remark-7 style reading of the outcomes; exposed for direct testing.
// ER not rejected -> no significant CP. ER rejected -> endogenous if CL also
// rejected, degree-heterogeneity otherwise. A rejected-CL-only run implies an
// endogenous structure (the CL cutoff dominates the ER one); anything else
// that lacks the information to classify is not_applicable.
Interpretation interpret(bool guard_ok, const std::optional<NullOutcome>& er,
                         const std::optional<NullOutcome>& cl);

// Detects labels with cfg, then evaluates the requested nulls. Guard
// violations are recorded in the report (not thrown).
TestReport run_test(const Graph& g, const DetectConfig& cfg, NullModel nulls);

// Same, for labels that were already detected on g.
TestReport evaluate_tests(const Graph& g, const LabelAssignment& c,
                          double t1_value, NullModel nulls);

}  // namespace cpnet

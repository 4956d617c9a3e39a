// The four generative models (ER, CP-SBM, CL, CP-DCBM), Bernoulli sampling,
// the population CP-strength parameter rho(P, c), its maximum over label
// assignments, and the inverse-SNR constant kappa(P) with the associated
// label-recovery error bound.
//
// Edge probabilities are sparsity * P_ij with
//   ER:      P_ij = p
//   CP-SBM:  P_ij = Omega[b_i][b_j],  b_i = (i < k), Omega = {{p11,p12},{p12,p22}}
//   CL:      P_ij = theta_i * theta_j
//   CP-DCBM: P_ij = theta_i * Omega[b_i][b_j] * theta_j
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpnet/graph.hpp"
#include "cpnet/labels.hpp"

namespace cpnet {

enum class ModelKind { er, cpsbm, cl, cpdcbm };

const char* to_string(ModelKind kind);

// Degree weights drawn i.i.d. per group: positions [0, k) from
// Uniform(core_lo, core_hi), positions [k, n) from Uniform(peri_lo, peri_hi).
struct ThetaIntervals {
  double core_lo, core_hi;
  double peri_lo, peri_hi;
  bool operator==(const ThetaIntervals&) const = default;
};

class ModelSpec {
 public:
  static ModelSpec erdos_renyi(int n, double p, double sparsity = 1.0);
  static ModelSpec cp_sbm(int n, int k, double p11, double p12, double p22,
                          double sparsity = 1.0);
  static ModelSpec chung_lu(int n, int k, std::vector<double> theta,
                            double sparsity = 1.0);
  static ModelSpec chung_lu(int n, int k, ThetaIntervals intervals,
                            double sparsity = 1.0);
  static ModelSpec cp_dcbm(int n, int k, std::vector<double> theta, double p11,
                           double p12, double p22, double sparsity = 1.0);
  static ModelSpec cp_dcbm(int n, int k, ThetaIntervals intervals, double p11,
                           double p12, double p22, double sparsity = 1.0);

  ModelKind kind() const { return kind_; }
  int node_count() const { return n_; }
  // Planted core size; 0 for ER.
  int core_size() const { return k_; }
  double core_fraction() const;
  double sparsity() const { return sparsity_; }

  double p() const { return p_; }
  double p11() const { return p11_; }
  double p12() const { return p12_; }
  double p22() const { return p22_; }

  // True when p11 > p12 > p22 for the block kinds. Construction does not
  // enforce this — disassortative settings are allowed — so callers that need
  // the CP ordering must check.
  bool cp_ordering_ok() const;

  bool has_theta() const { return kind_ == ModelKind::cl || kind_ == ModelKind::cpdcbm; }
  bool theta_is_interval() const;
  const std::vector<double>& theta() const;  // throws if not concrete
  const ThetaIntervals& theta_intervals() const;

  // Draws interval thetas into a concrete vector (deterministic in seed);
  // identity for specs that are already concrete.
  ModelSpec realized(std::uint64_t seed) const;

  std::string to_json() const;
  static ModelSpec from_json(const std::string& text);

  bool operator==(const ModelSpec&) const = default;

 private:
  ModelSpec() = default;
  void validate() const;

  ModelKind kind_ = ModelKind::er;
  int n_ = 0;
  int k_ = 0;
  double sparsity_ = 1.0;
  double p_ = 0.0;
  double p11_ = 0.0, p12_ = 0.0, p22_ = 0.0;
  std::variant<std::monostate, std::vector<double>, ThetaIntervals> theta_;
};

// The model's planted labels c*: positions [0, k) for the block kinds, the k
// largest-theta nodes for CL (ties broken by lower index). Requires a
// concrete-theta spec for CL; throws for ER, which has no planted labels.
LabelAssignment truth_labels(const ModelSpec& spec);

struct GroundTruth {
  // Empty for ER: the model has no true core-periphery structure.
  std::optional<LabelAssignment> labels;
};

struct SampleResult {
  Graph graph;
  GroundTruth truth;
  // Spec with interval thetas realized; equals the input spec otherwise.
  ModelSpec spec;
};

// sparsity * P_ij for i != j (throws on i == j). Requires concrete theta.
double prob_entry(const ModelSpec& spec, int i, int j);

// Independent Bernoulli(prob_entry) draw per unordered pair; deterministic in
// the seed. Interval thetas are realized first (also from the seed).
SampleResult sample(const ModelSpec& spec, std::uint64_t seed);

// Exact population parameter rho(P, c) evaluated over all i < j pairs via
// closed-form group sums (no n x n materialization). Throws on degenerate
// labels (k in {0, n}) or degenerate mean probability (Pbar in {0, 1}).
double pop_rho(const ModelSpec& spec, const LabelAssignment& c);

enum class MaxRhoMethod { er_null, closed_form, exhaustive };

struct MaxRho {
  double value = 0.0;
  MaxRhoMethod method = MaxRhoMethod::er_null;
  // The maximizing assignment; empty for ER.
  std::optional<LabelAssignment> argmax;
};

// max over c of rho(P, c). ER returns 0 (flagged er_null). For the other
// kinds the planted labels maximize rho whenever the model satisfies its
// ordering condition (CP-SBM: p11 > p12 > p22; CL: th(k)*th(n) >
// th(k+1)*th(k+2); CP-DCBM: the block ordering plus p12*th_c*th_p_min >
// p22*th_p_max^2). If the condition fails, falls back to exhaustive search
// for n <= 20 and throws std::domain_error otherwise.
MaxRho max_pop_rho(const ModelSpec& spec);

// Inverse signal-to-noise constant per model:
//   CP-SBM:  sqrt(p22) / (p12 - p22)
//   CL:      mean(theta) / (th(k)*th(n) - th(k+1)*th(k+2))
//   CP-DCBM: sqrt(mean P) / (p12*th_c*th_p_min - p22*th_p_max^2)
// Throws std::domain_error when the denominator is not positive (the model's
// recovery condition fails) or for ER.
double kappa(const ModelSpec& spec);

// kappa * alpha * sqrt((8 + eta) * log(n*sparsity*alpha) / (n*sparsity));
// the high-probability misclassification bound. Requires n*sparsity*alpha > 1.
double recovery_bound(const ModelSpec& spec, double eta);

}  // namespace cpnet

#include "cpnet/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "cpnet/rng.hpp"
#include "json.hpp"

namespace cpnet {

namespace {

constexpr std::uint64_t kThetaStream = 0x7e57a001;
constexpr std::uint64_t kEdgeStream = 0x7e57a002;

std::int64_t choose2(std::int64_t x) { return x > 1 ? x * (x - 1) / 2 : 0; }

// Largest and second-largest of a range; count must be >= 2 for top2.
double top1(std::span<const double> xs) {
  return *std::max_element(xs.begin(), xs.end());
}
double top2_product(std::span<const double> xs) {
  double a = 0.0, b = 0.0;
  for (double x : xs) {
    if (x > a) {
      b = a;
      a = x;
    } else if (x > b) {
      b = x;
    }
  }
  return a * b;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::er: return "er";
    case ModelKind::cpsbm: return "cpsbm";
    case ModelKind::cl: return "cl";
    case ModelKind::cpdcbm: return "cpdcbm";
  }
  return "?";
}

ModelSpec ModelSpec::erdos_renyi(int n, double p, double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::er;
  s.n_ = n;
  s.p_ = p;
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

ModelSpec ModelSpec::cp_sbm(int n, int k, double p11, double p12, double p22,
                            double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::cpsbm;
  s.n_ = n;
  s.k_ = k;
  s.p11_ = p11;
  s.p12_ = p12;
  s.p22_ = p22;
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

ModelSpec ModelSpec::chung_lu(int n, int k, std::vector<double> theta,
                              double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::cl;
  s.n_ = n;
  s.k_ = k;
  s.theta_ = std::move(theta);
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

ModelSpec ModelSpec::chung_lu(int n, int k, ThetaIntervals intervals,
                              double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::cl;
  s.n_ = n;
  s.k_ = k;
  s.theta_ = intervals;
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

ModelSpec ModelSpec::cp_dcbm(int n, int k, std::vector<double> theta,
                             double p11, double p12, double p22,
                             double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::cpdcbm;
  s.n_ = n;
  s.k_ = k;
  s.theta_ = std::move(theta);
  s.p11_ = p11;
  s.p12_ = p12;
  s.p22_ = p22;
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

ModelSpec ModelSpec::cp_dcbm(int n, int k, ThetaIntervals intervals,
                             double p11, double p12, double p22,
                             double sparsity) {
  ModelSpec s;
  s.kind_ = ModelKind::cpdcbm;
  s.n_ = n;
  s.k_ = k;
  s.theta_ = intervals;
  s.p11_ = p11;
  s.p12_ = p12;
  s.p22_ = p22;
  s.sparsity_ = sparsity;
  s.validate();
  return s;
}

void ModelSpec::validate() const {
  if (n_ < 1) throw std::invalid_argument("model: n must be >= 1");
  if (!(sparsity_ > 0.0))
    throw std::invalid_argument("model: sparsity must be > 0");

  const bool block = kind_ == ModelKind::cpsbm || kind_ == ModelKind::cpdcbm;
  if (kind_ != ModelKind::er) {
    if (k_ < 1 || k_ > n_ - 1)
      throw std::invalid_argument("model: core size k must lie in [1, n-1]");
  }
  if (block) {
    if (p11_ < 0.0 || p12_ < 0.0 || p22_ < 0.0)
      throw std::invalid_argument("model: block rates must be >= 0");
  }

  // Supremum of sparsity * P_ij over pairs must stay within [0, 1].
  double sup = 0.0;
  switch (kind_) {
    case ModelKind::er:
      if (p_ < 0.0) throw std::invalid_argument("model: p must be >= 0");
      sup = p_;
      break;
    case ModelKind::cpsbm:
      sup = std::max({p11_, p12_, p22_});
      break;
    case ModelKind::cl:
    case ModelKind::cpdcbm: {
      double cc = 0.0, cp = 0.0, pp = 0.0;  // sup theta products per block pair
      if (theta_is_interval()) {
        const auto& iv = theta_intervals();
        if (!(iv.core_lo > 0.0) || !(iv.peri_lo > 0.0))
          throw std::invalid_argument("model: theta must be > 0");
        if (iv.core_hi < iv.core_lo || iv.peri_hi < iv.peri_lo)
          throw std::invalid_argument("model: theta interval upside down");
        if (k_ >= 2) cc = iv.core_hi * iv.core_hi;
        cp = iv.core_hi * iv.peri_hi;
        if (n_ - k_ >= 2) pp = iv.peri_hi * iv.peri_hi;
      } else {
        const auto& th = theta();
        if (static_cast<int>(th.size()) != n_)
          throw std::invalid_argument("model: theta length != n");
        for (double t : th)
          if (!(t > 0.0))
            throw std::invalid_argument("model: theta must be > 0");
        std::span<const double> core(th.data(), k_);
        std::span<const double> peri(th.data() + k_, n_ - k_);
        if (k_ >= 2) cc = top2_product(core);
        cp = top1(core) * top1(peri);
        if (n_ - k_ >= 2) pp = top2_product(peri);
      }
      if (kind_ == ModelKind::cl)
        sup = std::max({cc, cp, pp});
      else
        sup = std::max({p11_ * cc, p12_ * cp, p22_ * pp});
      break;
    }
  }
  if (sparsity_ * sup > 1.0)
    throw std::invalid_argument(
        "model: sparsity * P_ij exceeds 1 for some pair");
}

double ModelSpec::core_fraction() const {
  return static_cast<double>(k_) / static_cast<double>(n_);
}

bool ModelSpec::cp_ordering_ok() const {
  if (kind_ != ModelKind::cpsbm && kind_ != ModelKind::cpdcbm) return false;
  return p11_ > p12_ && p12_ > p22_;
}

bool ModelSpec::theta_is_interval() const {
  return std::holds_alternative<ThetaIntervals>(theta_);
}

const std::vector<double>& ModelSpec::theta() const {
  if (const auto* v = std::get_if<std::vector<double>>(&theta_)) return *v;
  throw std::logic_error("model: theta not concrete (realize the spec first)");
}

const ThetaIntervals& ModelSpec::theta_intervals() const {
  if (const auto* v = std::get_if<ThetaIntervals>(&theta_)) return *v;
  throw std::logic_error("model: theta is not interval-valued");
}

ModelSpec ModelSpec::realized(std::uint64_t seed) const {
  if (!theta_is_interval()) return *this;
  const auto& iv = theta_intervals();
  Rng rng(seed);
  std::vector<double> th(n_);
  for (int i = 0; i < k_; ++i) th[i] = rng.uniform(iv.core_lo, iv.core_hi);
  for (int i = k_; i < n_; ++i) th[i] = rng.uniform(iv.peri_lo, iv.peri_hi);
  if (kind_ == ModelKind::cl) return chung_lu(n_, k_, std::move(th), sparsity_);
  return cp_dcbm(n_, k_, std::move(th), p11_, p12_, p22_, sparsity_);
}

LabelAssignment truth_labels(const ModelSpec& spec) {
  const int n = spec.node_count();
  const int k = spec.core_size();
  switch (spec.kind()) {
    case ModelKind::er:
      throw std::invalid_argument("truth_labels: ER has no planted labels");
    case ModelKind::cpsbm:
    case ModelKind::cpdcbm: {
      std::vector<std::uint8_t> bits(n, 0);
      std::fill(bits.begin(), bits.begin() + k, 1);
      return LabelAssignment(std::move(bits));
    }
    case ModelKind::cl: {
      const auto& th = spec.theta();
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return th[a] > th[b]; });
      std::vector<std::uint8_t> bits(n, 0);
      for (int i = 0; i < k; ++i) bits[order[i]] = 1;
      return LabelAssignment(std::move(bits));
    }
  }
  throw std::logic_error("truth_labels: unknown kind");
}

double prob_entry(const ModelSpec& spec, int i, int j) {
  if (i == j) throw std::invalid_argument("prob_entry: i == j");
  const int n = spec.node_count();
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::invalid_argument("prob_entry: node out of range");
  const double rho = spec.sparsity();
  switch (spec.kind()) {
    case ModelKind::er:
      return rho * spec.p();
    case ModelKind::cpsbm: {
      const bool ci = i < spec.core_size(), cj = j < spec.core_size();
      return rho * (ci && cj ? spec.p11() : (ci || cj ? spec.p12() : spec.p22()));
    }
    case ModelKind::cl:
      return rho * spec.theta()[i] * spec.theta()[j];
    case ModelKind::cpdcbm: {
      const bool ci = i < spec.core_size(), cj = j < spec.core_size();
      const double w =
          ci && cj ? spec.p11() : (ci || cj ? spec.p12() : spec.p22());
      return rho * spec.theta()[i] * w * spec.theta()[j];
    }
  }
  throw std::logic_error("prob_entry: unknown kind");
}

SampleResult sample(const ModelSpec& spec, std::uint64_t seed) {
  const ModelSpec rs = spec.realized(mix_seed(seed, kThetaStream));
  const int n = rs.node_count();
  const int k = rs.core_size();
  const double rho = rs.sparsity();

  Rng rng(mix_seed(seed, kEdgeStream));
  std::vector<std::pair<int, int>> edges;

  switch (rs.kind()) {
    case ModelKind::er: {
      const double q = rho * rs.p();
      if (q > 0.0) {
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < q) edges.emplace_back(i, j);
      }
      break;
    }
    case ModelKind::cpsbm: {
      const double q11 = rho * rs.p11(), q12 = rho * rs.p12(),
                   q22 = rho * rs.p22();
      for (int i = 0; i < n; ++i) {
        const bool ci = i < k;
        for (int j = i + 1; j < n; ++j) {
          const double q = ci ? (j < k ? q11 : q12) : q22;
          if (rng.uniform01() < q) edges.emplace_back(i, j);
        }
      }
      break;
    }
    case ModelKind::cl: {
      const auto& th = rs.theta();
      for (int i = 0; i < n; ++i) {
        const double wi = rho * th[i];
        for (int j = i + 1; j < n; ++j)
          if (rng.uniform01() < wi * th[j]) edges.emplace_back(i, j);
      }
      break;
    }
    case ModelKind::cpdcbm: {
      const auto& th = rs.theta();
      const double q11 = rho * rs.p11(), q12 = rho * rs.p12(),
                   q22 = rho * rs.p22();
      for (int i = 0; i < n; ++i) {
        const bool ci = i < k;
        const double wi = th[i];
        for (int j = i + 1; j < n; ++j) {
          const double q = (ci ? (j < k ? q11 : q12) : q22) * wi * th[j];
          if (rng.uniform01() < q) edges.emplace_back(i, j);
        }
      }
      break;
    }
  }

  GroundTruth truth;
  if (rs.kind() != ModelKind::er) truth.labels = truth_labels(rs);
  return SampleResult{Graph(n, std::move(edges)), std::move(truth), rs};
}

namespace {

// Shared tail of the rho evaluation once the pair sums are known.
double rho_from_sums(double sum_p, double sum_pd, std::int64_t pairs,
                     std::int64_t n, std::int64_t k_c) {
  if (k_c <= 0 || k_c >= n)
    throw std::invalid_argument("pop_rho: degenerate labels (k in {0, n})");
  const double pbar = sum_p / static_cast<double>(pairs);
  if (!(pbar > 0.0) || !(pbar < 1.0))
    throw std::invalid_argument("pop_rho: mean probability degenerate");
  const std::int64_t n1 = pairs - choose2(n - k_c);
  const double dbar = static_cast<double>(n1) / static_cast<double>(pairs);
  const double num = sum_pd - pbar * static_cast<double>(n1);
  const double den = static_cast<double>(pairs) *
                     std::sqrt(pbar * (1.0 - pbar) * dbar * (1.0 - dbar));
  return num / den;
}

// rho(P, c) with the labels supplied as a predicate, so the exhaustive search
// can evaluate bitmask assignments without building LabelAssignments.
template <class CoreFn>
double pop_rho_impl(const ModelSpec& spec, CoreFn is_core, int k_c) {
  const std::int64_t n = spec.node_count();
  const std::int64_t pairs = choose2(n);
  const double rho_n = spec.sparsity();

  switch (spec.kind()) {
    case ModelKind::er: {
      const double q = rho_n * spec.p();
      // P_ij - Pbar vanishes identically; keep the exact zero.
      if (k_c <= 0 || k_c >= n)
        throw std::invalid_argument("pop_rho: degenerate labels (k in {0, n})");
      if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("pop_rho: mean probability degenerate");
      return 0.0;
    }
    case ModelKind::cpsbm: {
      const std::int64_t k = spec.core_size();
      std::int64_t b = 0, d = 0;  // periphery-labeled counts per true block
      for (std::int64_t i = 0; i < n; ++i)
        if (!is_core(i)) (i < k ? b : d) += 1;
      const double q11 = rho_n * spec.p11(), q12 = rho_n * spec.p12(),
                   q22 = rho_n * spec.p22();
      const double cc = static_cast<double>(choose2(k));
      const double cp = static_cast<double>(k * (n - k));
      const double pp = static_cast<double>(choose2(n - k));
      const double sum_p = q11 * cc + q12 * cp + q22 * pp;
      const double sum_pd =
          q11 * (cc - static_cast<double>(choose2(b))) +
          q12 * (cp - static_cast<double>(b * d)) +
          q22 * (pp - static_cast<double>(choose2(d)));
      return rho_from_sums(sum_p, sum_pd, pairs, n, k_c);
    }
    case ModelKind::cl: {
      const auto& th = spec.theta();
      double s = 0.0, q = 0.0, sp = 0.0, qp = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double t = th[i];
        s += t;
        q += t * t;
        if (!is_core(i)) {
          sp += t;
          qp += t * t;
        }
      }
      const double sum_p = rho_n * 0.5 * (s * s - q);
      const double sum_pd = sum_p - rho_n * 0.5 * (sp * sp - qp);
      return rho_from_sums(sum_p, sum_pd, pairs, n, k_c);
    }
    case ModelKind::cpdcbm: {
      const auto& th = spec.theta();
      const std::int64_t k = spec.core_size();
      // S/Q per (true block, current label).
      double S[2][2] = {{0, 0}, {0, 0}}, Q[2][2] = {{0, 0}, {0, 0}};
      for (std::int64_t i = 0; i < n; ++i) {
        const int blk = i < k ? 0 : 1;
        const int lab = is_core(i) ? 1 : 0;
        S[blk][lab] += th[i];
        Q[blk][lab] += th[i] * th[i];
      }
      auto within = [](double sx, double qx) { return 0.5 * (sx * sx - qx); };
      const double sc = S[0][0] + S[0][1], qc = Q[0][0] + Q[0][1];
      const double sp = S[1][0] + S[1][1], qp = Q[1][0] + Q[1][1];
      const double sum_p = rho_n * (spec.p11() * within(sc, qc) +
                                    spec.p12() * sc * sp +
                                    spec.p22() * within(sp, qp));
      const double sum_p_pp =
          rho_n * (spec.p11() * within(S[0][0], Q[0][0]) +
                   spec.p12() * S[0][0] * S[1][0] +
                   spec.p22() * within(S[1][0], Q[1][0]));
      return rho_from_sums(sum_p, sum_p - sum_p_pp, pairs, n, k_c);
    }
  }
  throw std::logic_error("pop_rho: unknown kind");
}

}  // namespace

double pop_rho(const ModelSpec& spec, const LabelAssignment& c) {
  if (c.size() != spec.node_count())
    throw std::invalid_argument("pop_rho: label length != n");
  return pop_rho_impl(
      spec, [&](std::int64_t i) { return c.is_core(static_cast<int>(i)); },
      c.core_size());
}

namespace {

bool max_rho_condition(const ModelSpec& spec) {
  switch (spec.kind()) {
    case ModelKind::er:
      return true;
    case ModelKind::cpsbm:
      return spec.cp_ordering_ok();
    case ModelKind::cl: {
      const int n = spec.node_count(), k = spec.core_size();
      if (k > n - 2) return false;  // th(k+2) does not exist
      std::vector<double> th = spec.theta();
      std::sort(th.begin(), th.end(), std::greater<>());
      return th[k - 1] * th[n - 1] > th[k] * th[k + 1];
    }
    case ModelKind::cpdcbm: {
      if (!spec.cp_ordering_ok()) return false;
      const auto& th = spec.theta();
      const int k = spec.core_size();
      const double th_c = *std::min_element(th.begin(), th.begin() + k);
      const auto [pmin, pmax] = std::minmax_element(th.begin() + k, th.end());
      return spec.p12() * th_c * *pmin > spec.p22() * *pmax * *pmax;
    }
  }
  return false;
}

MaxRho exhaustive_max_rho(const ModelSpec& spec) {
  const int n = spec.node_count();
  if (n > 20)
    throw std::domain_error(
        "max_pop_rho: ordering condition fails and n > 20 makes exhaustive "
        "search infeasible");
  double best = -2.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t end = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask < end; ++mask) {
    const int k_c = std::popcount(mask);
    const double r = pop_rho_impl(
        spec, [mask](std::int64_t i) { return (mask >> i) & 1u; }, k_c);
    if (r > best) {
      best = r;
      best_mask = mask;
    }
  }
  std::vector<std::uint8_t> bits(n, 0);
  for (int i = 0; i < n; ++i) bits[i] = (best_mask >> i) & 1u;
  return MaxRho{best, MaxRhoMethod::exhaustive,
                LabelAssignment(std::move(bits))};
}

}  // namespace

MaxRho max_pop_rho(const ModelSpec& spec) {
  if (spec.kind() == ModelKind::er)
    return MaxRho{0.0, MaxRhoMethod::er_null, std::nullopt};
  if (max_rho_condition(spec)) {
    LabelAssignment c_star = truth_labels(spec);
    const double value = pop_rho(spec, c_star);
    return MaxRho{value, MaxRhoMethod::closed_form, std::move(c_star)};
  }
  return exhaustive_max_rho(spec);
}

double kappa(const ModelSpec& spec) {
  switch (spec.kind()) {
    case ModelKind::er:
      throw std::domain_error("kappa: undefined for the ER model");
    case ModelKind::cpsbm: {
      const double denom = spec.p12() - spec.p22();
      if (!(denom > 0.0))
        throw std::domain_error("kappa: requires p12 > p22");
      return std::sqrt(spec.p22()) / denom;
    }
    case ModelKind::cl: {
      const int n = spec.node_count(), k = spec.core_size();
      if (k > n - 2)
        throw std::domain_error("kappa: CL requires k <= n - 2");
      std::vector<double> th = spec.theta();
      const double mean =
          std::accumulate(th.begin(), th.end(), 0.0) / static_cast<double>(n);
      std::sort(th.begin(), th.end(), std::greater<>());
      const double denom = th[k - 1] * th[n - 1] - th[k] * th[k + 1];
      if (!(denom > 0.0))
        throw std::domain_error(
            "kappa: requires th(k)*th(n) > th(k+1)*th(k+2)");
      return mean / denom;
    }
    case ModelKind::cpdcbm: {
      const auto& th = spec.theta();
      const int n = spec.node_count(), k = spec.core_size();
      const double th_c = *std::min_element(th.begin(), th.begin() + k);
      const auto [pmin, pmax] = std::minmax_element(th.begin() + k, th.end());
      const double denom =
          spec.p12() * th_c * *pmin - spec.p22() * *pmax * *pmax;
      if (!(denom > 0.0))
        throw std::domain_error(
            "kappa: requires p12*th_c*th_p_min > p22*th_p_max^2");
      double sc = 0.0, qc = 0.0, sp = 0.0, qp = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i < k) {
          sc += th[i];
          qc += th[i] * th[i];
        } else {
          sp += th[i];
          qp += th[i] * th[i];
        }
      }
      const double sum_p = spec.p11() * 0.5 * (sc * sc - qc) +
                           spec.p12() * sc * sp +
                           spec.p22() * 0.5 * (sp * sp - qp);
      const double pbar = sum_p / static_cast<double>(choose2(n));
      return std::sqrt(pbar) / denom;
    }
  }
  throw std::logic_error("kappa: unknown kind");
}

double recovery_bound(const ModelSpec& spec, double eta) {
  const double n = static_cast<double>(spec.node_count());
  const double alpha = spec.core_fraction();
  const double rho_n = spec.sparsity();
  const double x = n * rho_n * alpha;
  if (!(x > 1.0))
    throw std::domain_error("recovery_bound: requires n*sparsity*alpha > 1");
  return kappa(spec) * alpha *
         std::sqrt((8.0 + eta) * std::log(x) / (n * rho_n));
}

// --- JSON -------------------------------------------------------------

std::string ModelSpec::to_json() const {
  nlohmann::json j;
  j["variant"] = cpnet::to_string(kind_);
  j["n"] = n_;
  j["sparsity"] = sparsity_;
  nlohmann::json params = nlohmann::json::object();
  switch (kind_) {
    case ModelKind::er:
      params["p"] = p_;
      break;
    case ModelKind::cpsbm:
    case ModelKind::cpdcbm:
      params["p11"] = p11_;
      params["p12"] = p12_;
      params["p22"] = p22_;
      params["k"] = k_;
      break;
    case ModelKind::cl:
      params["k"] = k_;
      break;
  }
  j["params"] = params;
  if (has_theta()) {
    if (theta_is_interval()) {
      const auto& iv = theta_intervals();
      j["theta"] = {{"core", {iv.core_lo, iv.core_hi}},
                    {"periphery", {iv.peri_lo, iv.peri_hi}}};
    } else {
      j["theta"] = theta();
    }
  }
  return j.dump();
}

ModelSpec ModelSpec::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string variant = j.at("variant").get<std::string>();
  const int n = j.at("n").get<int>();
  const double sparsity = j.value("sparsity", 1.0);
  const nlohmann::json& params = j.at("params");

  auto parse_theta = [&]() {
    const nlohmann::json& t = j.at("theta");
    if (t.is_array())
      return std::variant<std::vector<double>, ThetaIntervals>(
          t.get<std::vector<double>>());
    ThetaIntervals iv{};
    const auto core = t.at("core").get<std::vector<double>>();
    const auto peri = t.at("periphery").get<std::vector<double>>();
    if (core.size() != 2 || peri.size() != 2)
      throw std::runtime_error("model json: theta intervals need [lo, hi]");
    iv.core_lo = core[0];
    iv.core_hi = core[1];
    iv.peri_lo = peri[0];
    iv.peri_hi = peri[1];
    return std::variant<std::vector<double>, ThetaIntervals>(iv);
  };

  if (variant == "er") return erdos_renyi(n, params.at("p").get<double>(), sparsity);
  if (variant == "cpsbm")
    return cp_sbm(n, params.at("k").get<int>(), params.at("p11").get<double>(),
                  params.at("p12").get<double>(), params.at("p22").get<double>(),
                  sparsity);
  if (variant == "cl") {
    const int k = params.at("k").get<int>();
    auto th = parse_theta();
    if (std::holds_alternative<std::vector<double>>(th))
      return chung_lu(n, k, std::get<std::vector<double>>(std::move(th)),
                      sparsity);
    return chung_lu(n, k, std::get<ThetaIntervals>(th), sparsity);
  }
  if (variant == "cpdcbm") {
    const int k = params.at("k").get<int>();
    const double p11 = params.at("p11").get<double>();
    const double p12 = params.at("p12").get<double>();
    const double p22 = params.at("p22").get<double>();
    auto th = parse_theta();
    if (std::holds_alternative<std::vector<double>>(th))
      return cp_dcbm(n, k, std::get<std::vector<double>>(std::move(th)), p11,
                     p12, p22, sparsity);
    return cp_dcbm(n, k, std::get<ThetaIntervals>(th), p11, p12, p22, sparsity);
  }
  throw std::runtime_error("model json: unknown variant \"" + variant + "\"");
}

}  // namespace cpnet

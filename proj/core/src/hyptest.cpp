#include "cpnet/hyptest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cpnet/metric.hpp"
#include "json.hpp"

namespace cpnet {

namespace {

std::int64_t choose2(std::int64_t x) { return x > 1 ? x * (x - 1) / 2 : 0; }

}  // namespace

TestInputs make_test_inputs(const Graph& g, const LabelAssignment& c) {
  if (c.size() != g.node_count())
    throw std::invalid_argument("test inputs: label length != node count");
  TestInputs in;
  in.n = g.node_count();
  in.m = g.edge_count();
  in.p_hat = density(g);
  in.k_hat = c.core_size();
  in.alpha_hat = c.core_fraction();
  return in;
}

double t1_statistic(const Graph& g, const LabelAssignment& c) {
  return t_sample(g, c);
}

double t2_statistic(const Graph& g, const LabelAssignment& c) {
  const std::int64_t n = g.node_count();
  const std::int64_t k = c.core_size();
  if (k < 2)
    throw std::invalid_argument("t2: core too small (needs k_hat >= 2)");
  if (k > n - 1)
    throw std::invalid_argument("t2: periphery is empty");
  std::int64_t cc = 0, cp = 0;
  g.for_each_edge([&](int i, int j) {
    const int t = (c.is_core(i) ? 1 : 0) + (c.is_core(j) ? 1 : 0);
    if (t == 2)
      ++cc;
    else if (t == 1)
      ++cp;
  });
  const double p11_hat = static_cast<double>(cc) / static_cast<double>(choose2(k));
  const double p12_hat =
      static_cast<double>(cp) / static_cast<double>(k * (n - k));
  return p11_hat - p12_hat;
}

namespace {

void check_guard(const TestInputs& in) {
  if (!(static_cast<double>(in.k_hat) * in.p_hat > 1.0))
    throw std::domain_error(
        "cutoffs: k_hat * p_hat <= 1 (network too sparse or core too small)");
}

}  // namespace

ErCutoffs er_cutoffs(const TestInputs& in) {
  check_guard(in);
  const double n = static_cast<double>(in.n);
  const double c1 =
      std::sqrt(std::log(n * in.p_hat * in.alpha_hat) / n);
  const double c2 =
      2.0 * std::sqrt(2.0) * in.p_hat * std::log(n) /
      std::sqrt(static_cast<double>(in.k_hat));
  return ErCutoffs{c1, c2};
}

double plug_in_rho(const Graph& g, const LabelAssignment& c,
                   std::int64_t* clamped_out) {
  const int n = g.node_count();
  const std::int64_t m = g.edge_count();
  if (m <= 0) throw std::invalid_argument("plug_in_rho: graph has no edges");
  if (c.size() != n)
    throw std::invalid_argument("plug_in_rho: label length != node count");
  const int k = c.core_size();
  if (k == 0 || k == n)
    throw std::invalid_argument("plug_in_rho: degenerate labels");

  const double sqrt2m = std::sqrt(2.0 * static_cast<double>(m));
  std::vector<double> th(n);
  for (int i = 0; i < n; ++i) th[i] = static_cast<double>(g.degree(i)) / sqrt2m;

  double s = 0.0, q = 0.0, sp = 0.0, qp = 0.0;
  for (int i = 0; i < n; ++i) {
    s += th[i];
    q += th[i] * th[i];
    if (!c.is_core(i)) {
      sp += th[i];
      qp += th[i] * th[i];
    }
  }
  double sum_p = 0.5 * (s * s - q);
  double sum_pd = sum_p - 0.5 * (sp * sp - qp);

  // Entries with th_i*th_j > 1 are clamped; enumerate them exactly. Sorted
  // descending, the partners of position a form a prefix, so the scan costs
  // one failed probe per a plus one step per clamped pair.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return th[a] > th[b]; });
  std::int64_t clamped = 0;
  for (int a = 0; a < n; ++a) {
    const int i = order[a];
    if (th[i] * th[i] <= 1.0) break;  // no later pair can clamp either
    for (int b = a + 1; b < n; ++b) {
      const int j = order[b];
      const double v = th[i] * th[j];
      if (v <= 1.0) break;
      ++clamped;
      const double excess = v - 1.0;
      sum_p -= excess;
      if (c.is_core(i) || c.is_core(j)) sum_pd -= excess;
    }
  }
  if (clamped_out) *clamped_out = clamped;

  const std::int64_t pairs = g.pair_count();
  const double pbar = sum_p / static_cast<double>(pairs);
  if (!(pbar > 0.0) || !(pbar < 1.0))
    throw std::domain_error("plug_in_rho: degenerate mean plug-in probability");
  const std::int64_t n1 = pairs - choose2(n - k);
  const double dbar = static_cast<double>(n1) / static_cast<double>(pairs);
  const double num = sum_pd - pbar * static_cast<double>(n1);
  const double den = static_cast<double>(pairs) *
                     std::sqrt(pbar * (1.0 - pbar) * dbar * (1.0 - dbar));
  return num / den;
}

ClCutoffs cl_cutoffs(const Graph& g, const LabelAssignment& c,
                     const TestInputs& in) {
  check_guard(in);
  if (in.k_hat < 2)
    throw std::domain_error("cl_cutoffs: core too small (needs k_hat >= 2)");
  const double n = static_cast<double>(in.n);
  ClCutoffs out{};
  out.rho_hat = plug_in_rho(g, c, &out.clamped);
  out.eps_tilde = std::sqrt(in.alpha_hat) * std::log(n * in.alpha_hat) /
                  (std::pow(n, 1.5) * std::sqrt(in.p_hat));
  out.eps_prime = std::sqrt(std::log(n * in.alpha_hat * in.p_hat)) / n;
  out.c1 = out.rho_hat + out.eps_tilde + out.eps_prime;
  out.c2 = er_cutoffs(in).c2;  // shared second-arm threshold
  return out;
}

const char* to_string(Interpretation v) {
  switch (v) {
    case Interpretation::no_significant_cp: return "no-significant-cp";
    case Interpretation::cp_explained_by_degree_heterogeneity:
      return "cp-explained-by-degree-heterogeneity";
    case Interpretation::endogenous_cp: return "endogenous-cp";
    case Interpretation::not_applicable: return "not-applicable";
  }
  return "?";
}

Interpretation interpret(bool guard_ok, const std::optional<NullOutcome>& er,
                         const std::optional<NullOutcome>& cl) {
  if (!guard_ok) return Interpretation::not_applicable;
  if (er) {
    if (!er->reject) return Interpretation::no_significant_cp;
    if (cl)
      return cl->reject
                 ? Interpretation::endogenous_cp
                 : Interpretation::cp_explained_by_degree_heterogeneity;
    return Interpretation::not_applicable;  // second stage not run
  }
  if (cl && cl->reject) return Interpretation::endogenous_cp;
  return Interpretation::not_applicable;
}

TestReport evaluate_tests(const Graph& g, const LabelAssignment& c,
                          double t1_value, NullModel nulls) {
  TestReport rep;
  const TestInputs in = make_test_inputs(g, c);
  rep.n = in.n;
  rep.m = in.m;
  rep.p_hat = in.p_hat;
  rep.k_hat = in.k_hat;
  rep.alpha_hat = in.alpha_hat;
  rep.t1 = t1_value;
  rep.k_rho_ok = static_cast<double>(in.k_hat) * in.p_hat > 1.0;

  // k_hat*p_hat > 1 forces k_hat >= 2 (p_hat < 1 always), so T2 is defined
  // whenever the guard passes.
  if (rep.k_rho_ok) {
    rep.t2 = t2_statistic(g, c);
    auto outcome = [&](double c1, double c2) {
      NullOutcome o;
      o.c1 = c1;
      o.c2 = c2;
      o.reject_t1 = rep.t1 > c1;
      o.reject_t2 = *rep.t2 > c2;
      o.reject = o.reject_t1 && o.reject_t2;
      return o;
    };
    if (nulls == NullModel::er || nulls == NullModel::both) {
      const ErCutoffs er = er_cutoffs(in);
      rep.er = outcome(er.c1, er.c2);
    }
    if (nulls == NullModel::cl || nulls == NullModel::both) {
      const ClCutoffs cl = cl_cutoffs(g, c, in);
      rep.cl = outcome(cl.c1, cl.c2);
      rep.cl_clamped = cl.clamped;
    }
  } else if (in.k_hat >= 2) {
    rep.t2 = t2_statistic(g, c);
  }

  rep.interpretation = interpret(rep.k_rho_ok, rep.er, rep.cl);
  return rep;
}

TestReport run_test(const Graph& g, const DetectConfig& cfg, NullModel nulls) {
  const DetectResult det = detect(g, cfg);
  return evaluate_tests(g, det.labels, det.t_value, nulls);
}

// --- JSON -------------------------------------------------------------

namespace {

nlohmann::json outcome_json(const std::optional<NullOutcome>& o) {
  if (!o) return nullptr;
  return nlohmann::json{{"c1", o->c1},
                        {"c2", o->c2},
                        {"reject_t1", o->reject_t1},
                        {"reject_t2", o->reject_t2},
                        {"reject", o->reject}};
}

std::optional<NullOutcome> outcome_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  NullOutcome o;
  o.c1 = j.at("c1").get<double>();
  o.c2 = j.at("c2").get<double>();
  o.reject_t1 = j.at("reject_t1").get<bool>();
  o.reject_t2 = j.at("reject_t2").get<bool>();
  o.reject = j.at("reject").get<bool>();
  return o;
}

Interpretation interpretation_from_string(const std::string& s) {
  for (auto v : {Interpretation::no_significant_cp,
                 Interpretation::cp_explained_by_degree_heterogeneity,
                 Interpretation::endogenous_cp,
                 Interpretation::not_applicable})
    if (s == to_string(v)) return v;
  throw std::runtime_error("test report json: unknown interpretation \"" + s +
                           "\"");
}

}  // namespace

std::string TestReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["m"] = m;
  j["p_hat"] = p_hat;
  j["k_hat"] = k_hat;
  j["alpha_hat"] = alpha_hat;
  j["t1"] = t1;
  j["t2"] = t2 ? nlohmann::json(*t2) : nlohmann::json(nullptr);
  j["er"] = outcome_json(er);
  j["cl"] = outcome_json(cl);
  j["guards"] = {{"k_rho_ok", k_rho_ok}};
  j["interpretation"] = to_string(interpretation);
  return j.dump();
}

TestReport TestReport::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TestReport rep;
  rep.n = j.at("n").get<std::int64_t>();
  rep.m = j.at("m").get<std::int64_t>();
  rep.p_hat = j.at("p_hat").get<double>();
  rep.k_hat = j.at("k_hat").get<int>();
  rep.alpha_hat = j.at("alpha_hat").get<double>();
  rep.t1 = j.at("t1").get<double>();
  if (!j.at("t2").is_null()) rep.t2 = j.at("t2").get<double>();
  rep.er = outcome_from_json(j.at("er"));
  rep.cl = outcome_from_json(j.at("cl"));
  rep.k_rho_ok = j.at("guards").at("k_rho_ok").get<bool>();
  rep.interpretation =
      interpretation_from_string(j.at("interpretation").get<std::string>());
  return rep;
}

}  // namespace cpnet

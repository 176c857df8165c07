#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bethelab/bethe.hpp"
#include "bethelab/chain.hpp"
#include "bethelab/kernel.hpp"
#include "bethelab/onshell.hpp"
#include "bethelab/rmatrix.hpp"

namespace bethelab {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Batch-run configuration.  Everything beyond the task name has a sensible
/// default, so `{"task": "check-rtt"}` is a complete config.  Rationals are
/// written as "p/r" strings, complex numbers as [re, im] pairs.
struct RunConfig {
  std::string task;
  std::string backend = "exact";
  std::uint64_t seed = 1;
  std::string out;
  Json extra = Json::object();  // task-specific knobs (N, L, n, q, ...)

  static RunConfig from_json(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& key = it.key();
      if (key == "task")
        cfg.task = it.value().get<std::string>();
      else if (key == "backend")
        cfg.backend = it.value().get<std::string>();
      else if (key == "seed")
        cfg.seed = it.value().get<std::uint64_t>();
      else if (key == "out")
        cfg.out = it.value().get<std::string>();
      else
        cfg.extra[key] = it.value();
    }
    if (cfg.task.empty()) throw ConfigError("config needs a task");
    if (cfg.backend != "exact" && cfg.backend != "float")
      throw ConfigError("backend must be 'exact' or 'float'");
    return cfg;
  }

  int geti(const char* key, int fallback) const {
    if (!extra.contains(key)) return fallback;
    return extra.at(key).get<int>();
  }
  double getd(const char* key, double fallback) const {
    if (!extra.contains(key)) return fallback;
    return extra.at(key).get<double>();
  }
  Cardinalities get_counts(const Cardinalities& fallback) const {
    if (!extra.contains("n")) return fallback;
    return extra.at("n").get<Cardinalities>();
  }
};

struct CheckResult {
  std::string name;
  std::string residual;
  bool pass = false;
  double time_ms = 0.0;
  std::string error;
};

struct Report {
  std::string task;
  std::string backend;
  std::uint64_t seed = 0;
  Json inputs;
  std::vector<CheckResult> checks;
  Json counters = Json::object();  // term counts and similar task outputs
  double total_ms = 0.0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Json to_json(bool with_times = true) const {
    Json j;
    j["tool"] = "bethelab";
    j["version"] = kVersion;
    j["task"] = task;
    j["backend"] = backend;
    j["seed"] = seed;
    j["inputs"] = inputs;
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json cj;
      cj["name"] = c.name;
      cj["backend"] = backend;
      cj["residual"] = c.residual;
      cj["pass"] = c.pass;
      if (!c.error.empty()) cj["error"] = c.error;
      if (with_times) cj["time_ms"] = c.time_ms;
      arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    if (!counters.empty()) j["counters"] = counters;
    int passed = 0;
    for (const auto& c : checks) passed += c.pass ? 1 : 0;
    j["summary"] = {{"total", checks.size()}, {"passed", passed}, {"all_pass", all_pass()}};
    if (with_times) j["total_ms"] = total_ms;
    return j;
  }
};

namespace detail {

inline Rational parse_rational_json(const Json& j) {
  if (j.is_string()) return scalar_traits<Rational>::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ConfigError("expected a rational as \"p/r\" string or integer");
}

inline Cplx parse_complex_json(const Json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_string())
    return Cplx(scalar_traits<Rational>::parse(j.get<std::string>()).get_d(), 0.0);
  if (j.is_array() && j.size() == 2) return Cplx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("expected a complex number, \"p/r\" string, or [re, im] pair");
}

template <class S>
S parse_scalar_json(const Json& j);

template <>
inline Rational parse_scalar_json<Rational>(const Json& j) {
  return parse_rational_json(j);
}
template <>
inline Cplx parse_scalar_json<Cplx>(const Json& j) {
  return parse_complex_json(j);
}

inline std::string residual_str(const Rational& r) { return r.get_str(); }
inline std::string residual_str(const Cplx& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", std::abs(r));
  return buf;
}
inline std::string residual_str(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", r);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Runs one named check, recording residual/pass or the error message; a
/// failing check never aborts the remaining ones.
template <class Body>
void run_check(Report& report, const std::string& name, Body&& body) {
  Stopwatch clock;
  CheckResult result;
  result.name = name;
  try {
    auto [residual, pass] = body();
    result.residual = residual;
    result.pass = pass;
  } catch (const Error& e) {
    result.error = e.what();
    result.residual = "n/a";
    result.pass = false;
  }
  result.time_ms = clock.ms();
  report.checks.push_back(std::move(result));
}

/// Reruns a drawing body on accidental pole collisions so seeded runs always
/// complete; the sampler state advances deterministically across retries.
template <class S, class Fn>
std::pair<std::string, bool> retry_poles(typename sampler_for<S>::type&, Fn&& fn) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      return fn();
    } catch (const PoleCollision&) {
      continue;
    }
  }
  throw PoleCollision("persistent pole collisions in random sampling");
}

template <class S>
ChainModel<S> model_from_config(const RunConfig& cfg, typename sampler_for<S>::type& sampler,
                                int default_N, int default_L) {
  int N = cfg.geti("N", default_N);
  int L = cfg.geti("L", default_L);
  S q;
  if (cfg.extra.contains("q"))
    q = parse_scalar_json<S>(cfg.extra.at("q"));
  else
    q = sampler.next_q();
  std::vector<S> xi;
  if (cfg.extra.contains("inhomogeneities")) {
    for (const Json& j : cfg.extra.at("inhomogeneities")) xi.push_back(parse_scalar_json<S>(j));
    if (static_cast<int>(xi.size()) != L)
      throw ConfigError("need exactly L inhomogeneities");
  } else {
    for (int k = 0; k < L; ++k) xi.push_back(sampler.next());
  }
  return ChainModel<S>(N, q, L, xi);
}

template <class S>
BetheParams<S> params_from_config(const RunConfig& cfg, typename sampler_for<S>::type& sampler,
                                  int N, const Cardinalities& n) {
  std::vector<std::vector<S>> sets;
  if (cfg.extra.contains("bethe_parameters")) {
    for (const Json& row : cfg.extra.at("bethe_parameters")) {
      std::vector<S> list;
      for (const Json& j : row) list.push_back(parse_scalar_json<S>(j));
      sets.push_back(std::move(list));
    }
  } else {
    for (int nk : n) {
      std::vector<S> list;
      for (int c = 0; c < nk; ++c) list.push_back(sampler.next());
      sets.push_back(std::move(list));
    }
  }
  return make_bethe_params<S>(N, std::move(sets));
}

template <class S>
std::pair<std::string, bool> residual_verdict(const S& residual, double tol) {
  if constexpr (scalar_traits<S>::is_exact)
    return {residual_str(residual), is_zero(residual)};
  else
    return {residual_str(residual), scalar_traits<S>::abs_approx(residual) <= tol};
}

// ---------------------------------------------------------------------------
// task bodies

template <class S>
void task_check_rmatrix(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-12);
  std::vector<int> ranks;
  if (cfg.extra.contains("N"))
    ranks.push_back(cfg.geti("N", 3));
  else
    ranks = {2, 3, 4};
  const int points = cfg.geti("points", 10);
  static const char* names[] = {"unitarity", "double-transpose", "u-conjugation",
                                "argument-inversion", "q-inversion", "inverse-swap"};
  for (int N : ranks) {
    typename sampler_for<S>::type sampler(cfg.seed + N);
    std::vector<S> worst(6, scalar_traits<S>::zero());
    for (int p = 0; p < points; ++p) {
      retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
        S q = sampler.next_q(), u = sampler.next(), v = sampler.next();
        auto res = r_property_residuals(u, v, q, N);
        for (int k = 0; k < 6; ++k)
          if (scalar_traits<S>::less(worst[k], res[k])) worst[k] = res[k];
        return {"", true};
      });
    }
    for (int k = 0; k < 6; ++k) {
      run_check(report, "rmatrix N=" + std::to_string(N) + " " + names[k],
                [&]() { return residual_verdict(worst[k], tol); });
    }
  }
}

template <class S>
void task_check_rtt(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-12);
  const int points = cfg.geti("points", 10);
  const int N = cfg.geti("N", 2);
  const int L = cfg.geti("L", 2);
  typename sampler_for<S>::type sampler(cfg.seed);
  run_check(report, "rtt N=" + std::to_string(N) + " L=" + std::to_string(L),
            [&]() -> std::pair<std::string, bool> {
              S worst = scalar_traits<S>::zero();
              for (int p = 0; p < points; ++p) {
                retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
                  S q = sampler.next_q();
                  std::vector<S> xi;
                  for (int k = 0; k < L; ++k) xi.push_back(sampler.next());
                  ChainModel<S> model(N, q, L, xi);
                  S u = sampler.next(), v = sampler.next();
                  S res = rtt_residual(model, u, v);
                  if (scalar_traits<S>::less(worst, res)) worst = res;
                  return {"", true};
                });
              }
              return residual_verdict(worst, tol);
            });
}

template <class S>
void task_check_identities(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-12);
  const int points = cfg.geti("points", 10);
  const int nmax = cfg.geti("nmax", 4);
  for (int side : {1, 2}) {
    for (int n = 1; n <= nmax; ++n) {
      typename sampler_for<S>::type sampler(cfg.seed + 100 * side + n);
      run_check(report,
                "symmetrization side=" + std::to_string(side) + " n=" + std::to_string(n),
                [&]() -> std::pair<std::string, bool> {
                  S worst = scalar_traits<S>::zero();
                  for (int p = 0; p < points; ++p) {
                    retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
                      S q = sampler.next_q();
                      ParamSet<S> ys = sampler.take(n), xs = sampler.take(n);
                      S res = scalar_traits<S>::abs(ident_residual(side, ys, xs, q));
                      if (scalar_traits<S>::less(worst, res)) worst = res;
                      return {"", true};
                    });
                  }
                  return residual_verdict(worst, tol);
                });
    }
  }
  static const char* names[] = {"gl-inversion", "gl-argument-inversion", "f-inversion",
                                "f-argument-inversion", "izergin-inversion",
                                "izergin-argument-inversion"};
  typename sampler_for<S>::type sampler(cfg.seed + 999);
  std::vector<S> worst(6, scalar_traits<S>::zero());
  for (int p = 0; p < points; ++p) {
    retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
      S q = sampler.next_q();
      S qi = inverse(q);
      S u = sampler.next(), v = sampler.next();
      auto track = [&](int k, const S& a, const S& b) {
        S d = scalar_traits<S>::abs(a - b);
        if (scalar_traits<S>::less(worst[k], d)) worst[k] = d;
      };
      track(0, eval_g(v, u, qi, GKind::left), eval_g(u, v, q, GKind::right));
      track(1, eval_g(inverse(u), inverse(v), qi, GKind::left), eval_g(u, v, q, GKind::right));
      track(2, eval_f(v, u, qi), eval_f(u, v, q));
      track(3, eval_f(inverse(u), inverse(v), qi), eval_f(u, v, q));
      ParamSet<S> us = sampler.take(2), vs = sampler.take(2);
      ParamSet<S> ui(2), vi(2);
      for (int i = 0; i < 2; ++i) {
        ui[i] = inverse(us[i]);
        vi[i] = inverse(vs[i]);
      }
      track(4, izergin(vs, us, qi, IzKind::left), izergin(us, vs, q, IzKind::right));
      track(5, izergin(ui, vi, qi, IzKind::left), izergin(us, vs, q, IzKind::right));
      return {"", true};
    });
  }
  for (int k = 0; k < 6; ++k)
    run_check(report, std::string("function relation ") + names[k],
              [&]() { return residual_verdict(worst[k], tol); });
}

template <class S>
std::pair<std::string, bool> vectors_agree(const StateVector<S>& a, const StateVector<S>& b,
                                           double tol) {
  StateVector<S> diff = a;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
  return residual_verdict(max_abs_entry(diff), tol);
}

template <class S>
void task_compare_bv(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-10);
  const int N = cfg.geti("N", 3);
  const int L = cfg.geti("L", 2);
  Cardinalities n = cfg.get_counts(Cardinalities(N - 1, 1));
  typename sampler_for<S>::type sampler(cfg.seed);
  ChainModel<S> model = model_from_config<S>(cfg, sampler, N, L);
  BetheParams<S> t = params_from_config<S>(cfg, sampler, N, n);

  run_check(report, "right pre-BV presentations act equally on |0>",
            [&] { return vectors_agree(bv_right(model, PreBVKind::B, t),
                                       bv_right(model, PreBVKind::Bhat, t), tol); });
  run_check(report, "left pre-BV presentations act equally on <0|",
            [&] { return vectors_agree(bv_left(model, PreBVKind::C, t),
                                       bv_left(model, PreBVKind::Chat, t), tol); });
  if (t.total() <= 6) {
    run_check(report, "permutation oracle reproduces partition sum (raising)",
              [&]() -> std::pair<std::string, bool> {
                bool ok = sums_match(oracle_perm(PreBVKind::B, N, t, model.q).sum,
                                     prebv_B(N, t, model.q).sum);
                return {ok ? "0" : "mismatch", ok};
              });
    run_check(report, "permutation oracle reproduces partition sum (column variant)",
              [&]() -> std::pair<std::string, bool> {
                bool ok = sums_match(oracle_perm(PreBVKind::Bhat, N, t, model.q).sum,
                                     prebv_Bhat(N, t, model.q).sum);
                return {ok ? "0" : "mismatch", ok};
              });
  }
  if (N == 3) {
    const auto& us = t.sets[0];
    const auto& vs = t.sets[1];
    run_check(report, "rank-3 explicit form, right presentation 1",
              [&] { return vectors_agree(gl3_explicit(model, us, vs, Gl3Side::right1),
                                         bv_right(model, PreBVKind::B, t), tol); });
    run_check(report, "rank-3 explicit form, right presentation 2",
              [&] { return vectors_agree(gl3_explicit(model, us, vs, Gl3Side::right2),
                                         bv_right(model, PreBVKind::Bhat, t), tol); });
    run_check(report, "rank-3 explicit form, left presentation 1",
              [&] { return vectors_agree(gl3_explicit(model, us, vs, Gl3Side::left1),
                                         bv_left(model, PreBVKind::C, t), tol); });
    run_check(report, "rank-3 explicit form, left presentation 2",
              [&] { return vectors_agree(gl3_explicit(model, us, vs, Gl3Side::left2),
                                         bv_left(model, PreBVKind::Chat, t), tol); });
  }
}

template <class S>
void task_check_morphisms(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-10);
  const int N = cfg.geti("N", 3);
  const int L = cfg.geti("L", 2);
  std::vector<Cardinalities> cases;
  if (cfg.extra.contains("n"))
    cases.push_back(cfg.get_counts({}));
  else if (N == 3)
    cases = {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
  else
    cases.push_back(Cardinalities(N - 1, 1));

  for (const Cardinalities& n : cases) {
    typename sampler_for<S>::type sampler(cfg.seed);
    ChainModel<S> direct = model_from_config<S>(cfg, sampler, N, L);
    ChainModel<S> inverted(N, inverse(direct.q), L, direct.xi);
    BetheParams<S> t = params_from_config<S>(cfg, sampler, N, n);
    // the anti-isomorphism evaluates at inverted parameters, so those must
    // stay clear of the inhomogeneities as well
    for (int attempt = 0; attempt < 64; ++attempt) {
      bool clean = true;
      for (const auto& list : t.sets)
        for (const S& x : list)
          for (const S& xi : direct.xi)
            if (scalar_traits<S>::equal(inverse(x), xi, 0.0)) clean = false;
      if (clean) break;
      t = params_from_config<S>(cfg, sampler, N, n);
    }
    std::string label = " n=(";
    for (std::size_t k = 0; k < n.size(); ++k)
      label += std::to_string(n[k]) + (k + 1 < n.size() ? "," : ")");

    run_check(report, "isomorphism maps column variant to row variant" + label,
              [&]() -> std::pair<std::string, bool> {
                auto lhs = apply_phi(prebv_Bhat(N, t, direct.q).sum);
                auto rhs = prebv_B(N, omega_reverse(t), inverted.q).sum;
                Matrix<S> diff = evaluate_word_operator(inverted, lhs) -
                                 evaluate_word_operator(inverted, rhs);
                return residual_verdict(diff.max_abs_entry(), tol);
              });
    run_check(report, "anti-isomorphism maps raising to lowering" + label,
              [&]() -> std::pair<std::string, bool> {
                auto lhs = apply_psi(prebv_B(N, t, direct.q).sum);
                auto rhs = prebv_C(N, invert_params(t), inverted.q).sum;
                Matrix<S> diff = evaluate_word_operator(inverted, lhs) -
                                 evaluate_word_operator(inverted, rhs);
                return residual_verdict(diff.max_abs_entry(), tol);
              });
    run_check(report, "anti-isomorphism, column variants" + label,
              [&]() -> std::pair<std::string, bool> {
                auto lhs = apply_psi(prebv_Bhat(N, t, direct.q).sum);
                auto rhs = prebv_Chat(N, invert_params(t), inverted.q).sum;
                Matrix<S> diff = evaluate_word_operator(inverted, lhs) -
                                 evaluate_word_operator(inverted, rhs);
                return residual_verdict(diff.max_abs_entry(), tol);
              });
  }
}

template <class S>
void task_onshell(const RunConfig& cfg, Report& report) {
  const double tol = cfg.getd("tolerance", 1e-9);
  const int N = cfg.geti("N", 2);
  const int L = cfg.geti("L", 1);
  Cardinalities n = cfg.get_counts(Cardinalities(N - 1, 0));
  if (!cfg.extra.contains("n")) n[0] = 1;
  typename sampler_for<S>::type sampler(cfg.seed);
  ChainModel<S> model = model_from_config<S>(cfg, sampler, N, L);

  std::optional<BetheParams<S>> roots;
  if (cfg.extra.contains("bethe_parameters")) {
    roots = params_from_config<S>(cfg, sampler, N, n);
  } else if constexpr (!scalar_traits<S>::is_exact) {
    run_check(report, "bethe solver", [&]() -> std::pair<std::string, bool> {
      auto sol = solve_bethe(model, n,
                             default_guesses(model, n, cfg.seed, cfg.geti("starts", 24)),
                             cfg.getd("solver_tolerance", 1e-10), cfg.geti("max_iter", 300));
      roots = sol.roots;
      return {residual_str(max_abs_approx(sol.residuals)), sol.converged};
    });
  } else {
    throw ConfigError("onshell on the exact backend needs explicit bethe_parameters");
  }
  if (!roots) return;

  run_check(report, "bethe equation residuals", [&]() -> std::pair<std::string, bool> {
    auto res = bethe_residual(model, *roots);
    return residual_verdict(max_abs_entry(res), tol);
  });
  const int points = cfg.geti("points", 3);
  for (int p = 0; p < points; ++p) {
    run_check(report, "right eigenvector defect, point " + std::to_string(p),
              [&]() -> std::pair<std::string, bool> {
                return retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
                  S z = sampler.next();
                  return residual_verdict(eigen_residual_right(model, *roots, z), tol);
                });
              });
    run_check(report, "left eigenvector defect, point " + std::to_string(p),
              [&]() -> std::pair<std::string, bool> {
                return retry_poles<S>(sampler, [&]() -> std::pair<std::string, bool> {
                  S z = sampler.next();
                  return residual_verdict(eigen_residual_left(model, *roots, z), tol);
                });
              });
  }
}

template <class S>
void task_bench(const RunConfig& cfg, Report& report) {
  const int N = cfg.geti("N", 3);
  const int L = cfg.geti("L", 2);
  Cardinalities n = cfg.get_counts(Cardinalities(N - 1, 1));
  typename sampler_for<S>::type sampler(cfg.seed);
  ChainModel<S> model = model_from_config<S>(cfg, sampler, N, L);
  BetheParams<S> t = params_from_config<S>(cfg, sampler, N, n);

  unsigned long long expected = 0;
  for (const UpperPermissible& m : enumerate_upper(N, n))
    expected += count_assignments(N, n, subset_cardinalities(m));

  detail::Stopwatch build_clock;
  PreBV<S> pre = prebv_B(N, t, model.q);
  double build_ms = build_clock.ms();

  unsigned long long built = 0;
  for (const UpperPermissible& m : enumerate_upper(N, n))
    built += enumerate_assignments(t.sets, subset_cardinalities(m), N).size();

  detail::Stopwatch eval_clock;
  StateVector<S> vec = evaluate_word_right(model, pre.sum);
  double eval_ms = eval_clock.ms();

  report.counters["term_count"] = built;
  report.counters["term_count_expected"] = expected;
  report.counters["canonical_terms"] = pre.sum.terms.size();
  report.counters["build_ms"] = build_ms;
  report.counters["evaluate_ms"] = eval_ms;
  report.counters["vector_dim"] = vec.size();

  run_check(report, "partition term count matches multinomial oracle",
            [&]() -> std::pair<std::string, bool> {
              bool ok = built == expected;
              return {ok ? "0" : "mismatch", ok};
            });
}

}  // namespace detail

/// Dispatches a config to its task, collecting one pass/fail record per check.
/// Computation errors are recorded per-check; config errors throw.
inline Report run(const RunConfig& cfg) {
  detail::Stopwatch clock;
  Report report;
  report.task = cfg.task;
  report.backend = cfg.backend;
  report.seed = cfg.seed;
  report.inputs = cfg.extra;

  auto dispatch = [&](auto scalar_tag) {
    using S = decltype(scalar_tag);
    if (cfg.task == "check-rmatrix")
      detail::task_check_rmatrix<S>(cfg, report);
    else if (cfg.task == "check-rtt")
      detail::task_check_rtt<S>(cfg, report);
    else if (cfg.task == "check-identities")
      detail::task_check_identities<S>(cfg, report);
    else if (cfg.task == "compare-bv")
      detail::task_compare_bv<S>(cfg, report);
    else if (cfg.task == "check-morphisms")
      detail::task_check_morphisms<S>(cfg, report);
    else if (cfg.task == "onshell")
      detail::task_onshell<S>(cfg, report);
    else if (cfg.task == "bench")
      detail::task_bench<S>(cfg, report);
    else
      throw ConfigError("unknown task '" + cfg.task + "'");
  };
  if (cfg.backend == "exact")
    dispatch(Rational());
  else
    dispatch(Cplx());
  report.total_ms = clock.ms();
  return report;
}

}  // namespace bethelab

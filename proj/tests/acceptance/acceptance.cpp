// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boolsketch/errors.hpp"
#include "boolsketch/generators.hpp"
#include "boolsketch/gf2.hpp"
#include "boolsketch/hypergraph.hpp"
#include "boolsketch/ingestion.hpp"
#include "boolsketch/learners.hpp"
#include "commands.hpp"
#include "oracles.hpp"

using namespace boolsketch;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances and thresholds.
constexpr double kWhtTol = 1e-9;
constexpr double kCoeffTol = 1e-6;
constexpr double kPassRate = 0.90;
constexpr double kNoisyAlpha = 13.0;
constexpr double kScalingRatio = 8.0;
constexpr double kNoiseBand = 0.05;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double l2_distance(const SparsePolynomial& a, const SparsePolynomial& b) {
  double sum = 0.0;
  for (const auto& [set, c] : a.terms()) sum += std::pow(c - b.coefficient(set), 2);
  for (const auto& [set, c] : b.terms()) {
    if (a.coefficient(set) == 0.0) sum += c * c;
  }
  return std::sqrt(sum);
}

bool exact_match(const SparsePolynomial& got, const SparsePolynomial& want) {
  if (got.support() != want.support()) return false;
  for (const auto& [set, c] : want.terms()) {
    if (std::abs(got.coefficient(set) - c) > kCoeffTol) return false;
  }
  return true;
}

double cut_oracle(const Hypergraph& g, PointView x) { return c_cut_value(g, x); }

// 1
Verdict oracle_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(101);
  std::size_t bad = 0, total = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t s = 1; s <= 4; ++s) {
      for (int rep = 0; rep < 5; ++rep) {
        if (s >= (std::size_t{1} << n)) continue;
        const auto f = plant_polynomial(n, s, Condition::kPerturbed, rng);
        const auto got = brute_force_wht(evaluation_table(f));
        bool ok = got.support() == f.support();
        for (const auto& [set, c] : f.terms()) ok = ok && std::abs(got.coefficient(set) - c) <= kWhtTol;
        bad += !ok;
        ++total;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 1.0, fmt("%zu/%zu polynomials match to %.0e, %.3f s", total - bad, total, kWhtTol, secs)};
}

// 2
Verdict gf2_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(202);
  std::size_t bad = 0;
  const std::size_t systems = 200;
  for (std::size_t t = 0; t < systems; ++t) {
    const std::size_t n = 1 + rng.below(14);
    const std::size_t rows = 1 + rng.below(2 * n);
    gf2::BitMatrix m(rows, n);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.below(3) == 0);
    }
    gf2::BitVector b(rows);
    if (rng.next_bool()) {
      const std::uint64_t p = rng.below(std::uint64_t{1} << n);
      for (std::size_t r = 0; r < rows; ++r) b.set(r, oracle::mat_vec_bit(m, r, p));
    } else {
      for (std::size_t r = 0; r < rows; ++r) b.set(r, rng.next_bool());
    }
    const auto got = gf2::solve_affine_all(m, b, std::uint64_t{1} << 15);
    std::set<std::uint64_t> got_set;
    for (const auto& v : got) got_set.insert(oracle::to_int(v));
    const auto want = oracle::solve_all(m, b);
    bad += got.size() != want.size() || got_set != std::set<std::uint64_t>(want.begin(), want.end());
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 10.0, fmt("%zu/%zu systems match, %.2f s", systems - bad, systems, secs)};
}

struct NoiselessStats {
  std::string detail;
  bool rates_ok = true;
  std::size_t identified = 0;     // trials whose identification stage completed
  std::size_t within_bound = 0;   // of those, |S| <= 2^(s+1)
  std::size_t successes = 0;
  std::size_t contained = 0;      // successes with I subset of S
  double seconds = 0.0;
};

NoiselessStats run_noiseless() {
  NoiselessStats st;
  const auto t0 = Clock::now();
  const std::size_t n = 30, trials = 50;
  std::ostringstream detail;
  for (auto cond : {Condition::kPerturbed, Condition::kIndependent, Condition::kPositive}) {
    for (std::size_t s = 2; s <= 4; ++s) {
      std::size_t ok = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng(303).split(static_cast<std::uint64_t>(cond) * 100000 + s * 1000 + t);
        const auto f = plant_polynomial(n, s, cond, rng);
        PolynomialOracle oracle(f);
        LearnConfig cfg;
        cfg.s = s;
        cfg.m = 16 * n * s;
        try {
          const auto out = learn_bool(oracle, cfg, rng);
          ++st.identified;
          st.within_bound += out.candidates.size() <= (std::size_t{1} << (s + 1));
          if (exact_match(out.v_opt, f)) {
            ++ok;
            ++st.successes;
            bool all = true;
            for (const auto& set : f.support()) all = all && out.candidates.contains(set);
            st.contained += all;
          }
        } catch (const LearnFailed& e) {
          if (std::string(e.stage()) != "candidate_support") ++st.identified;
        }
      }
      const double rate = static_cast<double>(ok) / trials;
      st.rates_ok = st.rates_ok && rate >= kPassRate;
      detail << to_string(cond) << "/s=" << s << ":" << ok << "/" << trials << " ";
    }
  }
  st.seconds = seconds_since(t0);
  detail << fmt("(%.1f s)", st.seconds);
  st.detail = detail.str();
  return st;
}

// 3
Verdict noiseless_learning(const NoiselessStats& st) {
  return {st.rates_ok && st.seconds < 300.0, st.detail};
}

// 4
Verdict candidate_bound(const NoiselessStats& st) {
  const double share = st.identified ? static_cast<double>(st.within_bound) / st.identified : 0.0;
  return {share >= kPassRate && st.contained == st.successes,
          fmt("|S| <= 2^(s+1) in %zu/%zu identifications; I in S in %zu/%zu successes", st.within_bound,
              st.identified, st.contained, st.successes)};
}

// 5
Verdict noisy_bound() {
  const auto t0 = Clock::now();
  const double eps = 0.05, nu = 0.05;
  const std::size_t n = 20, s = 2, trials = 25;
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng(505).split(t);
    SparsePolynomial f1;
    do {
      f1 = plant_polynomial(n, s, Condition::kPerturbed, rng);
    } while (!is_mu_separated(f1.coefficients(), 4 * (eps + nu)));
    NoiseSpec noise;
    noise.epsilon = eps;
    noise.nu = nu;
    SparsePolynomial tail(n);
    while (tail.sparsity() < 2) {
      const auto p = random_parity(n, rng);
      if (f1.coefficient(p) == 0.0) tail.set(p, (rng.next_bool() ? 1 : -1) * 0.4 * nu);
    }
    noise.tail = tail;
    NoisyPolynomialOracle oracle(f1, noise);
    LearnConfig cfg;
    cfg.s = s;
    cfg.epsilon = eps;
    cfg.nu = nu;
    try {
      const auto out = learn_bool_noisy(oracle, cfg, rng);
      const double err = l2_distance(out.v_opt, oracle.full_polynomial());
      worst = std::max(worst, err);
      ok += err <= kNoisyAlpha * (eps + nu);
    } catch (const Error&) {
    }
  }
  const double secs = seconds_since(t0);
  return {static_cast<double>(ok) / trials >= kPassRate && secs < 300.0,
          fmt("%zu/%zu within %.2f, worst error %.4f, %.1f s", ok, trials, kNoisyAlpha * (eps + nu), worst, secs)};
}

// 6
Verdict c_cut_expansion() {
  const auto t0 = Clock::now();
  Rng rng(606);
  std::size_t bad_value = 0, bad_sparsity = 0;
  const std::size_t graphs = 100;
  for (std::size_t t = 0; t < graphs; ++t) {
    const std::size_t n = 5 + rng.below(8);
    const std::size_t d = 2 + rng.below(4);
    const std::size_t s = 1 + rng.below(6);
    const auto g = random_hypergraph(n, s, d, rng);
    const auto f = c_cut_polynomial(g);
    bad_sparsity += f.sparsity() > s * (std::size_t{1} << (d - 1)) + 1;
    bool ok = true;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n) && ok; ++idx) {
      const InputPoint x(gf2::BitVector::from_indices(n, [&] {
        std::vector<std::size_t> ones;
        for (std::size_t j = 0; j < n; ++j) {
          if ((idx >> j) & 1u) ones.push_back(j);
        }
        return ones;
      }()));
      ok = eval_poly(f, x) == static_cast<double>(c_cut_value(g, x));
    }
    bad_value += !ok;
  }
  const double secs = seconds_since(t0);
  return {bad_value == 0 && bad_sparsity == 0 && secs < 30.0,
          fmt("%zu/%zu exact over the cube, %zu sparsity violations, %.2f s", graphs - bad_value, graphs,
              bad_sparsity, secs)};
}

// 7
Verdict learn_graph_recovery() {
  const auto t0 = Clock::now();
  const std::size_t n = 200, d = 4, trials = 20;
  std::size_t ok = 0, round_trips = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng(707).split(t);
    const std::size_t s = 1 + t % 3;
    const auto g = random_hypergraph(n, s, d, rng);
    const auto truth = c_cut_polynomial(g);
    try {
      round_trips += edges_from_polynomial(truth, d) == g;
    } catch (const Error&) {
    }
    FunctionOracle oracle(n, [&g](PointView x) { return cut_oracle(g, x); });
    GraphLearnConfig cfg;
    cfg.s = s;
    try {
      const auto r = learn_graph(oracle, cfg, rng);
      ok += r.edges == g && r.polynomial == truth;
    } catch (const Error&) {
    }
  }
  const double secs = seconds_since(t0);
  return {static_cast<double>(ok) / trials >= kPassRate && round_trips == trials && secs < 600.0,
          fmt("%zu/%zu recovered, round trip %zu/%zu, %.1f s", ok, trials, round_trips, trials, secs)};
}

// 8
Verdict scaling_trend() {
  const std::size_t d = 3, reps = 20;
  auto mean_time = [&](std::size_t n) {
    double total = 0.0;
    for (std::size_t t = 0; t < reps; ++t) {
      Rng rng = Rng(808).split(n * 100 + t);
      const auto g = random_hypergraph(n, 1, d, rng);
      FunctionOracle oracle(n, [&g](PointView x) { return cut_oracle(g, x); });
      GraphLearnConfig cfg;
      cfg.s = 1;
      const auto batch = draw_batch(oracle, cfg.m1_for(n, d), rng);
      const auto t0 = Clock::now();
      try {
        learn_graph_from_samples(batch, cfg, d);
      } catch (const Error&) {
      }
      total += seconds_since(t0);
    }
    return total / reps;
  };
  mean_time(88);  // warm-up
  const double small = mean_time(88);
  const double large = mean_time(1221);
  const double ratio = large / small;
  return {ratio < kScalingRatio, fmt("n=88: %.4f s, n=1221: %.4f s, ratio %.2f", small, large, ratio)};
}

// 9
Verdict error_vs_samples() {
  cli::BenchConfig cfg;
  cfg.algo = "graph";
  cfg.sweep = "alpha";
  cfg.alphas = {0.004, 0.008, 0.016, 0.032};
  cfg.ns = {200};
  cfg.s = 2;
  cfg.d = 3;
  cfg.trials = 50;
  cfg.seed = 909;
  const auto report = cli::run_bench(cfg);
  bool monotone = report.points.size() == cfg.alphas.size();
  std::ostringstream detail;
  detail << "failure rates";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    detail << fmt(" %.3g:%.2f", report.points[i].alpha, report.points[i].failure_rate);
    if (i > 0) {
      monotone = monotone &&
                 report.points[i].failure_rate <= report.points[i - 1].failure_rate + kNoiseBand;
    }
  }
  return {monotone, detail.str()};
}

// 10
Verdict ingestion_pipeline() {
  SynthParams params;
  params.days = 5;
  params.rate = 2.0;
  params.max_bursts = 3;
  params.max_fanout = 4;
  const auto log = synth_log(params, 1010);
  std::istringstream in(log.text);
  const auto records = parse_log(in);
  std::set<std::string> zips;
  for (std::size_t z = 0; z < params.zipcodes; ++z) zips.insert(std::to_string(10000 + z));
  std::size_t windows = 0, ok = 0;
  for (const auto& truth : log.truth) {
    if (windows == 20) break;
    if (truth.bursts.empty()) continue;
    ++windows;
    WindowSpec spec;
    spec.dt = params.dt;
    spec.day = truth.day;
    spec.index = truth.index;
    spec.zipcodes = zips;
    const auto wg = build_window_hypergraph(records, spec);
    const auto expected = truth_hypergraph(truth, zips, wg.nodes);
    FunctionOracle oracle(wg.graph.vertex_count(), [&wg](PointView x) { return cut_oracle(wg.graph, x); });
    GraphLearnConfig cfg;
    cfg.s = wg.graph.edge_count();
    Rng rng = Rng(1010).split(static_cast<std::uint64_t>(truth.day) * 1000 + static_cast<std::uint64_t>(truth.index));
    try {
      ok += learn_graph(oracle, cfg, rng).edges == expected;
    } catch (const Error&) {
    }
  }
  return {windows == 20 && static_cast<double>(ok) / windows >= kPassRate,
          fmt("%zu/%zu windows recovered", ok, windows)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Verdict& v) {
    std::printf("%s %2d %-28s %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  };
  auto guarded = [](const std::function<Verdict()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Verdict{false, std::string("exception: ") + e.what()};
    }
  };
  report(1, "oracle-equivalence", guarded(oracle_equivalence));
  report(2, "gf2-solver-equivalence", guarded(gf2_equivalence));
  NoiselessStats st;
  const auto c3 = guarded([&] {
    st = run_noiseless();
    return noiseless_learning(st);
  });
  report(3, "noiseless-exact-learning", c3);
  report(4, "candidate-set-bound", guarded([&] { return candidate_bound(st); }));
  report(5, "noisy-error-bound", guarded(noisy_bound));
  report(6, "c-cut-expansion", guarded(c_cut_expansion));
  report(7, "learn-graph-recovery", guarded(learn_graph_recovery));
  report(8, "scaling-trend", guarded(scaling_trend));
  report(9, "error-vs-samples", guarded(error_vs_samples));
  report(10, "ingestion-pipeline", guarded(ingestion_pipeline));
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

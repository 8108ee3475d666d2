#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "boolsketch/errors.hpp"
#include "boolsketch/generators.hpp"
#include "boolsketch/ingestion.hpp"
#include "boolsketch/learners.hpp"
#include "boolsketch/sampling.hpp"

namespace boolsketch::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double l2_distance(const SparsePolynomial& a, const SparsePolynomial& b) {
  double sum = 0.0;
  for (const auto& [set, c] : a.terms()) {
    const double diff = c - b.coefficient(set);
    sum += diff * diff;
  }
  for (const auto& [set, c] : b.terms()) {
    if (a.coefficient(set) == 0.0) sum += c * c;
  }
  return std::sqrt(sum);
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

void emit(const std::string& path, Json doc) {
  doc["timestamp"] = timestamp();
  write_text(path, doc.dump(2) + "\n");
}

TrialRow graph_trial(const BenchConfig& config, std::size_t n, double alpha, std::size_t trial) {
  TrialRow row;
  row.alpha = alpha;
  row.n = n;
  row.trial = trial;
  // The instance and sample stream depend on the trial only, so sweep points share them.
  Rng rng = Rng(config.seed).split(trial);
  row.seed = rng.seed();
  const auto g = random_hypergraph(n, config.s, config.d, rng);
  const auto truth = c_cut_polynomial(g);
  FunctionOracle oracle(n, [&g](PointView x) { return static_cast<double>(c_cut_value(g, x)); });
  GraphLearnConfig cfg;
  cfg.s = config.s;
  cfg.d_hint = config.d;
  cfg.m1_scale = alpha;
  cfg.retries = 0;
  Rng draw = rng.split(0);
  for (std::size_t attempt = 0; attempt <= config.retries; ++attempt) {
    const std::size_t m1 = cfg.m1_for(n, config.d) << attempt;
    const auto batch = draw_batch(oracle, m1, draw);
    row.samples += m1;
    const auto t0 = Clock::now();
    try {
      const auto result = learn_graph_from_samples(batch, cfg, config.d);
      row.seconds += seconds_since(t0);
      row.error = l2_distance(result.polynomial, truth);
      row.success = result.edges == g;
      if (!row.success) row.failure = "wrong edges";
      return row;
    } catch (const Error& e) {
      row.seconds += seconds_since(t0);
      row.failure = e.what();
    }
  }
  return row;
}

TrialRow bool_trial(const BenchConfig& config, std::size_t n, double alpha, std::size_t trial) {
  TrialRow row;
  row.alpha = alpha;
  row.n = n;
  row.trial = trial;
  Rng rng = Rng(config.seed).split(trial);
  row.seed = rng.seed();
  const auto f = plant_polynomial(n, config.s, parse_condition(config.condition), rng);
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.s = config.s;
  cfg.m1 = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(cfg.m1_for(n)))));
  cfg.m = 16 * n * config.s;
  cfg.retries = config.retries;
  Rng learn = rng.split(0);
  const auto t0 = Clock::now();
  try {
    const auto out = learn_bool(oracle, cfg, learn);
    row.seconds = seconds_since(t0);
    row.samples = out.diagnostics.m1_used + out.diagnostics.m_used;
    row.error = l2_distance(out.v_opt, f);
    row.success = out.v_opt.sparsity() == f.sparsity() && row.error <= 1e-6;
    if (!row.success) row.failure = "wrong coefficients";
  } catch (const Error& e) {
    row.seconds = seconds_since(t0);
    row.failure = e.what();
  }
  return row;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void setup_logging() {
  auto logger = spdlog::get("boolsketch");
  if (!logger) logger = spdlog::stderr_color_mt("boolsketch");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("BOOLSKETCH_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  if (config.trials < 1) throw InvalidArgument("bench: trials must be >= 1");
  if (config.algo != "graph" && config.algo != "bool") {
    throw InvalidArgument("bench: algo must be graph or bool");
  }
  std::vector<std::pair<double, std::size_t>> grid;
  if (config.sweep == "alpha") {
    if (config.ns.empty()) throw InvalidArgument("bench: need an n");
    for (double a : config.alphas) grid.emplace_back(a, config.ns.front());
  } else if (config.sweep == "n") {
    if (config.alphas.empty()) throw InvalidArgument("bench: need an alpha");
    for (std::size_t n : config.ns) grid.emplace_back(config.alphas.front(), n);
  } else {
    throw InvalidArgument("bench: sweep must be alpha or n");
  }
  for (const auto& [a, n] : grid) {
    if (!(a > 0.0) || n < 2) throw InvalidArgument("bench: alpha must be > 0 and n >= 2");
  }

  BenchReport report;
  report.rows.resize(grid.size() * config.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < report.rows.size();) {
      const std::size_t point = job / config.trials;
      const std::size_t trial = job % config.trials;
      const auto [alpha, n] = grid[point];
      auto row = config.algo == "graph" ? graph_trial(config, n, alpha, trial)
                                        : bool_trial(config, n, alpha, trial);
      row.point = point;
      report.rows[job] = std::move(row);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, report.rows.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t p = 0; p < grid.size(); ++p) {
    BenchPoint pt;
    pt.alpha = grid[p].first;
    pt.n = grid[p].second;
    pt.trials = config.trials;
    double total = 0.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto& row = report.rows[p * config.trials + t];
      pt.successes += row.success ? 1 : 0;
      total += row.seconds;
    }
    pt.failure_rate = 1.0 - static_cast<double>(pt.successes) / static_cast<double>(pt.trials);
    pt.mean_seconds = total / static_cast<double>(pt.trials);
    report.points.push_back(pt);
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "point,alpha,n,trial,seed,success,error,samples,seconds,failure\n";
  for (const auto& r : report.rows) {
    out << r.point << ',' << r.alpha << ',' << r.n << ',' << r.trial << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << r.error << ',' << r.samples << ',' << r.seconds << ','
        << csv_field(r.failure) << '\n';
  }
}

Json bench_json(const BenchReport& report, const BenchConfig& config) {
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back({{"alpha", p.alpha},
                      {"n", p.n},
                      {"trials", p.trials},
                      {"successes", p.successes},
                      {"failure_rate", p.failure_rate},
                      {"mean_seconds", p.mean_seconds}});
  }
  return {{"algo", config.algo},
          {"sweep", config.sweep},
          {"s", config.s},
          {"d", config.d},
          {"seed", config.seed},
          {"points", std::move(points)}};
}

int run(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Sparse Boolean polynomial learning and hypergraph sketching"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  std::string out_path;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_path, "Output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a planted polynomial, hypergraph or message log");
  std::string kind = "poly";
  std::size_t n = 30, s = 3, d = 3, samples = 0;
  std::string condition = "positive", samples_out, truth_out;
  SynthParams synth;
  gen->add_option("--kind", kind, "poly | graph | log")
      ->check(CLI::IsMember({"poly", "graph", "log"}))
      ->capture_default_str();
  gen->add_option("--n", n, "Variables / vertices")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--s", s, "Sparsity / edge count")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--d", d, "Max edge size")->check(CLI::Range(2, 30))->capture_default_str();
  gen->add_option("--condition", condition, "perturbed | independent | positive")
      ->check(CLI::IsMember({"perturbed", "independent", "positive"}))
      ->capture_default_str();
  gen->add_option("--samples", samples, "Also draw this many labeled samples");
  gen->add_option("--samples-out", samples_out, "CSV file for the samples");
  gen->add_option("--truth", truth_out, "Ground-truth JSON for --kind log");
  gen->add_option("--transmitters", synth.transmitters)->capture_default_str();
  gen->add_option("--receivers", synth.receivers)->capture_default_str();
  gen->add_option("--zipcodes", synth.zipcodes)->capture_default_str();
  gen->add_option("--rate", synth.rate, "Expected bursts per window")->capture_default_str();
  gen->add_option("--max-fanout", synth.max_fanout)->capture_default_str();
  gen->add_option("--days", synth.days)->capture_default_str();
  gen->add_option("--duration", synth.duration, "Seconds per day")->capture_default_str();
  gen->add_option("--dt", synth.dt, "Window length in seconds")->capture_default_str();

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a sparse polynomial from a planted oracle");
  std::string poly_path;
  std::optional<std::size_t> m1, m;
  double eps = 0.0, nu = 0.0;
  std::size_t learn_s = 0;
  learn->add_option("--input", poly_path, "Planted polynomial JSON")->required();
  learn->add_option("--s", learn_s, "Sparsity bound (default: planted sparsity)");
  learn->add_option("--m1", m1, "Identification samples")->check(CLI::PositiveNumber);
  learn->add_option("--m", m, "Recovery samples")->check(CLI::PositiveNumber);
  learn->add_option("--eps", eps, "Observation noise bound")->check(CLI::NonNegativeNumber);
  learn->add_option("--nu", nu, "Tail bound")->check(CLI::NonNegativeNumber);

  // sketch
  auto* sketch = app.add_subcommand("sketch", "Learn a hypergraph from c-cut queries");
  std::string graph_path;
  std::optional<std::size_t> sketch_d, sketch_m1;
  sketch->add_option("--input", graph_path, "Hypergraph JSON")->required();
  sketch->add_option("--d", sketch_d, "Known max edge size")->check(CLI::Range(2, 30));
  sketch->add_option("--m1", sketch_m1, "Sample count override")->check(CLI::PositiveNumber);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Build window hypergraphs from a message log");
  std::string log_path, zip_list;
  WindowSpec spec;
  bool ingest_learn = false;
  std::optional<std::int64_t> window;
  ingest->add_option("--log", log_path, "Message log")->required();
  ingest->add_option("--dt", spec.dt, "Window length in seconds")->check(CLI::PositiveNumber)->capture_default_str();
  ingest->add_option("--day", spec.day)->check(CLI::PositiveNumber)->capture_default_str();
  ingest->add_option("--window", window, "Window index (default: every occupied window)");
  ingest->add_option("--zip", zip_list, "Comma-separated zipcodes (default: all)");
  ingest->add_option("--ambient", spec.ambient, "Windows whose receivers form the nodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ingest->add_flag("--learn", ingest_learn, "Also sketch each window hypergraph");

  // bench
  auto* bench = app.add_subcommand("bench", "Seeded trial sweeps (CSV rows, JSON aggregate)");
  BenchConfig bc;
  std::string alpha_list = "1", n_list = "200", csv_path;
  bench->add_option("--algo", bc.algo, "graph | bool")
      ->check(CLI::IsMember({"graph", "bool"}))
      ->capture_default_str();
  bench->add_option("--sweep", bc.sweep, "alpha | n")
      ->check(CLI::IsMember({"alpha", "n"}))
      ->capture_default_str();
  bench->add_option("--alpha", alpha_list, "Comma-separated sample multipliers")->capture_default_str();
  bench->add_option("--n", n_list, "Comma-separated sizes")->capture_default_str();
  bench->add_option("--s", bc.s)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--d", bc.d)->check(CLI::Range(2, 30))->capture_default_str();
  bench->add_option("--trials", bc.trials)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--jobs", bc.jobs)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--retries", bc.retries)->capture_default_str();
  bench->add_option("--condition", bc.condition)
      ->check(CLI::IsMember({"perturbed", "independent", "positive"}))
      ->capture_default_str();
  bench->add_option("--csv", csv_path, "Per-trial CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Rng rng(seed);
    if (gen->parsed()) {
      if (kind == "poly") {
        const auto f = plant_polynomial(n, s, parse_condition(condition), rng);
        Json doc = to_json(f);
        doc["condition"] = condition;
        doc["seed"] = seed;
        emit(out_path, doc);
        if (samples > 0) {
          PolynomialOracle oracle(f);
          Rng sub = rng.split(1);
          const auto batch = draw_batch(oracle, samples, sub);
          std::ostringstream csv;
          write_csv(csv, batch);
          write_text(samples_out.empty() ? "-" : samples_out, csv.str());
        }
      } else if (kind == "graph") {
        if (d > n) throw InvalidArgument("gen: d must not exceed n");
        const auto g = random_hypergraph(n, s, d, rng);
        Json doc = to_json(g);
        doc["seed"] = seed;
        emit(out_path, doc);
      } else {
        const auto log = synth_log(synth, seed);
        write_text(out_path, log.text);
        if (!truth_out.empty()) {
          Json truth = Json::array();
          for (const auto& w : log.truth) {
            Json bursts = Json::array();
            for (const auto& b : w.bursts) {
              bursts.push_back({{"tx", b.tx_id}, {"zipcode", b.zipcode}, {"receivers", b.receivers}});
            }
            truth.push_back({{"day", w.day}, {"index", w.index}, {"bursts", std::move(bursts)}});
          }
          emit(truth_out, {{"dt", synth.dt}, {"windows", std::move(truth)}});
        }
      }
      return kOk;
    }

    if (learn->parsed()) {
      const auto f = polynomial_from_json(read_json(poly_path));
      LearnConfig cfg;
      cfg.s = learn_s > 0 ? learn_s : std::max<std::size_t>(1, f.sparsity());
      cfg.m1 = m1;
      cfg.m = m;
      cfg.epsilon = eps;
      cfg.nu = nu;
      NoiseSpec noise;
      noise.epsilon = eps;
      noise.nu = nu;
      NoisyPolynomialOracle oracle(f, noise);
      try {
        const auto t0 = Clock::now();
        const auto outcome = learn_bool_noisy(oracle, cfg, rng);
        Json doc = to_json(outcome);
        doc["seconds"] = seconds_since(t0);
        doc["planted_error"] = l2_distance(outcome.v_opt, f);
        emit(out_path, doc);
      } catch (const LearnFailed& e) {
        spdlog::error("{}", e.what());
        emit(out_path, {{"error", e.what()}, {"stage", e.stage()}});
        return kAlgorithm;
      }
      return kOk;
    }

    if (sketch->parsed()) {
      const auto g = hypergraph_from_json(read_json(graph_path));
      FunctionOracle oracle(g.vertex_count(),
                            [&g](PointView x) { return static_cast<double>(c_cut_value(g, x)); });
      GraphLearnConfig cfg;
      cfg.s = std::max<std::size_t>(1, g.edge_count());
      cfg.d_hint = sketch_d;
      cfg.m1 = sketch_m1;
      try {
        const auto t0 = Clock::now();
        const auto result = learn_graph(oracle, cfg, rng);
        Json doc = to_json(result);
        doc["seconds"] = seconds_since(t0);
        doc["match"] = result.edges == g;
        emit(out_path, doc);
      } catch (const Error& e) {
        if (dynamic_cast<const InvalidArgument*>(&e)) throw;
        spdlog::error("{}", e.what());
        emit(out_path, {{"error", e.what()}, {"stage", "learn_graph"}});
        return kAlgorithm;
      }
      return kOk;
    }

    if (ingest->parsed()) {
      std::ifstream in(log_path);
      if (!in) throw IoError("cannot open " + log_path);
      const auto records = parse_log(in);
      std::set<std::string> zips;
      for (const auto& z : split_list(zip_list)) zips.insert(z);
      if (zips.empty()) {
        for (const auto& r : records) zips.insert(r.zipcode);
      }
      spec.zipcodes = zips;
      std::vector<std::int64_t> indices;
      if (window) {
        indices.push_back(*window);
      } else {
        for (const auto& w : list_windows(records, spec.dt)) {
          if (w.day == spec.day) indices.push_back(w.index);
        }
      }
      Json windows = Json::array();
      int status = kOk;
      for (std::int64_t idx : indices) {
        spec.index = idx;
        if (spec.zipcodes.empty()) break;
        const auto wg = build_window_hypergraph(records, spec);
        Json entry = to_json(wg, spec);
        if (ingest_learn && wg.graph.edge_count() > 0) {
          const auto& g = wg.graph;
          FunctionOracle oracle(g.vertex_count(), [&g](PointView x) {
            return static_cast<double>(c_cut_value(g, x));
          });
          GraphLearnConfig cfg;
          cfg.s = g.edge_count();
          Rng wrng = rng.split(static_cast<std::uint64_t>(idx));
          try {
            const auto result = learn_graph(oracle, cfg, wrng);
            entry["sketch"] = to_json(result);
            entry["match"] = result.edges == g;
          } catch (const Error& e) {
            if (dynamic_cast<const InvalidArgument*>(&e)) throw;
            entry["error"] = e.what();
            status = kAlgorithm;
          }
        }
        windows.push_back(std::move(entry));
      }
      emit(out_path, {{"log", log_path}, {"records", records.size()}, {"windows", std::move(windows)}});
      return status;
    }

    if (bench->parsed()) {
      bc.seed = seed;
      bc.alphas.clear();
      for (const auto& a : split_list(alpha_list)) bc.alphas.push_back(std::stod(a));
      bc.ns.clear();
      for (const auto& v : split_list(n_list)) bc.ns.push_back(std::stoul(v));
      const auto report = run_bench(bc);
      std::ostringstream csv;
      write_bench_csv(csv, report);
      write_text(csv_path.empty() ? "-" : csv_path, csv.str());
      if (!out_path.empty()) emit(out_path, bench_json(report, bc));
      return kOk;
    }
  } catch (const InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const MalformedLine& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("bad number: {}", e.what());
    return kUsage;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kAlgorithm;
  }
  return kUsage;
}

}  // namespace boolsketch::cli

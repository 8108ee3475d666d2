#include "boolsketch/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "boolsketch/errors.hpp"
#include "boolsketch/rng.hpp"

namespace boolsketch {

namespace {

bool parse_int(const std::string& token, int& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Binomial(trials, p) by direct coin flips.
std::size_t binomial(Rng& rng, std::size_t trials, double p) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < trials; ++i) k += rng.next_double() < p ? 1 : 0;
  return k;
}

std::string label(char prefix, std::size_t i) { return prefix + std::to_string(i); }

std::vector<std::size_t> choose(Rng& rng, std::size_t pool, std::size_t k) {
  std::vector<std::size_t> picked;
  while (picked.size() < k) {
    const std::size_t v = rng.below(pool);
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  return picked;
}

}  // namespace

std::vector<MessageRecord> parse_log(std::istream& in) {
  std::vector<MessageRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;
    if (tok.size() != 6) {
      throw MalformedLine(lineno, "expected 6 columns, found " + std::to_string(tok.size()));
    }
    MessageRecord r;
    if (!parse_int(tok[0], r.day) || r.day < 1) throw MalformedLine(lineno, "bad day");
    if (!parse_int(tok[1], r.time) || r.time < 0 || r.time >= kSecondsPerDay) {
      throw MalformedLine(lineno, "bad time of day");
    }
    r.tx_id = std::move(tok[2]);
    r.zipcode = std::move(tok[3]);
    r.rx_id = std::move(tok[4]);
    if (tok[5] == "y") {
      r.in_contact = true;
    } else if (tok[5] != "n") {
      throw MalformedLine(lineno, "contact flag must be y or n");
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_log(std::ostream& out, const std::vector<MessageRecord>& records) {
  for (const auto& r : records) {
    out << r.day << ' ' << r.time << ' ' << r.tx_id << ' ' << r.zipcode << ' ' << r.rx_id << ' '
        << (r.in_contact ? 'y' : 'n') << '\n';
  }
}

void WindowSpec::validate() const {
  if (dt <= 0) throw InvalidArgument("WindowSpec: dt must be positive");
  if (zipcodes.empty()) throw InvalidArgument("WindowSpec: zipcode set is empty");
  if (ambient < 1) throw InvalidArgument("WindowSpec: ambient window count must be >= 1");
  if (day < 1 || index < 0) throw InvalidArgument("WindowSpec: bad day or window index");
}

std::int64_t window_index(int time, int dt) {
  if (dt <= 0) throw InvalidArgument("window_index: dt must be positive");
  return time / dt;
}

WindowGraph build_window_hypergraph(const std::vector<MessageRecord>& records,
                                    const WindowSpec& spec) {
  spec.validate();
  const auto last = spec.index + static_cast<std::int64_t>(spec.ambient);
  std::set<std::string> nodes;
  std::map<std::string, std::set<std::string>> by_tx;
  WindowGraph out;
  for (const auto& r : records) {
    if (r.day != spec.day || !spec.zipcodes.count(r.zipcode)) continue;
    const auto w = window_index(r.time, spec.dt);
    if (w < spec.index || w >= last) continue;
    nodes.insert(r.rx_id);
    if (w == spec.index) {
      ++out.diagnostics.records;
      by_tx[r.tx_id].insert(r.rx_id);
    }
  }
  out.nodes.assign(nodes.begin(), nodes.end());
  out.graph = Hypergraph(out.nodes.size());
  out.diagnostics.transmitters = by_tx.size();
  for (const auto& [tx, rx] : by_tx) {
    if (rx.size() < 2) {
      ++out.diagnostics.dropped_singletons;
      continue;
    }
    Edge e;
    for (const auto& id : rx) {
      const auto it = std::lower_bound(out.nodes.begin(), out.nodes.end(), id);
      e.push_back(static_cast<Vertex>(it - out.nodes.begin()));
    }
    if (!out.graph.add_edge(std::move(e))) ++out.diagnostics.merged_duplicates;
  }
  return out;
}

std::vector<WindowCount> list_windows(const std::vector<MessageRecord>& records, int dt) {
  std::map<std::pair<int, std::int64_t>, std::size_t> counts;
  for (const auto& r : records) ++counts[{r.day, window_index(r.time, dt)}];
  std::vector<WindowCount> out;
  for (const auto& [key, count] : counts) out.push_back({key.first, key.second, count});
  return out;
}

void SynthParams::validate() const {
  if (transmitters < 1 || receivers < 2 || zipcodes < 1) {
    throw InvalidArgument("SynthParams: need transmitters, two receivers and a zipcode");
  }
  if (!(rate >= 0.0) || !(singleton_share >= 0.0)) {
    throw InvalidArgument("SynthParams: rates must be non-negative");
  }
  if (max_fanout < 2 || max_fanout > receivers) {
    throw InvalidArgument("SynthParams: max_fanout must be in [2, receivers]");
  }
  if (dt <= 0 || duration <= 0 || duration > kSecondsPerDay || days < 1) {
    throw InvalidArgument("SynthParams: bad time grid");
  }
}

SynthLog synth_log(const SynthParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  std::vector<MessageRecord> records;
  SynthLog out;
  const std::int64_t windows = (params.duration + params.dt - 1) / params.dt;
  const double p_burst =
      params.max_bursts == 0 ? 0.0 : std::min(1.0, params.rate / static_cast<double>(params.max_bursts));
  const std::size_t singles_max = params.max_bursts;
  const double p_single =
      singles_max == 0 ? 0.0
                       : std::min(1.0, params.rate * params.singleton_share /
                                           static_cast<double>(singles_max));
  for (int day = 1; day <= params.days; ++day) {
    for (std::int64_t w = 0; w < windows; ++w) {
      Rng local = rng.split(static_cast<std::uint64_t>(day) * 1'000'003u + static_cast<std::uint64_t>(w));
      WindowTruth truth{day, w, {}};
      const int begin = static_cast<int>(w * params.dt);
      const int end = std::min<int>(begin + params.dt, params.duration);
      const std::size_t bursts = binomial(local, params.max_bursts, p_burst);
      const std::size_t singles = binomial(local, singles_max, p_single);
      const auto senders =
          choose(local, params.transmitters, std::min(params.transmitters, bursts + singles));
      for (std::size_t b = 0; b < senders.size(); ++b) {
        Burst burst;
        burst.tx_id = label('t', senders[b]);
        burst.zipcode = std::to_string(10000 + local.below(params.zipcodes));
        const std::size_t fanout =
            b < bursts ? 2 + local.below(params.max_fanout - 1) : 1;
        for (std::size_t v : choose(local, params.receivers, fanout)) {
          burst.receivers.push_back(label('r', v));
        }
        std::sort(burst.receivers.begin(), burst.receivers.end());
        for (const auto& rx : burst.receivers) {
          MessageRecord r;
          r.day = day;
          r.time = begin + static_cast<int>(local.below(static_cast<std::uint64_t>(end - begin)));
          r.tx_id = burst.tx_id;
          r.zipcode = burst.zipcode;
          r.rx_id = rx;
          r.in_contact = local.next_bool();
          records.push_back(std::move(r));
        }
        if (fanout >= 2) truth.bursts.push_back(std::move(burst));
      }
      out.truth.push_back(std::move(truth));
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.day, a.time, a.tx_id, a.rx_id) < std::tie(b.day, b.time, b.tx_id, b.rx_id);
  });
  std::ostringstream text;
  write_log(text, records);
  out.text = text.str();
  return out;
}

Hypergraph truth_hypergraph(const WindowTruth& truth, const std::set<std::string>& zipcodes,
                            const std::vector<std::string>& nodes) {
  Hypergraph g(nodes.size());
  for (const auto& b : truth.bursts) {
    if (!zipcodes.count(b.zipcode)) continue;
    Edge e;
    for (const auto& id : b.receivers) {
      const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
      if (it == nodes.end() || *it != id) {
        throw InvalidArgument("truth_hypergraph: receiver " + id + " is not a node");
      }
      e.push_back(static_cast<Vertex>(it - nodes.begin()));
    }
    g.add_edge(std::move(e));
  }
  return g;
}

}  // namespace boolsketch

#pragma once

// Message logs and windowed transmitter hypergraphs.
//
// Log rows are six whitespace-separated columns:
//   day time tx_id zipcode rx_id in_contact
// with day >= 1, time in seconds of the day and in_contact one of y/n.

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "boolsketch/hypergraph.hpp"

namespace boolsketch {

inline constexpr int kSecondsPerDay = 86400;

struct MessageRecord {
  int day = 1;
  int time = 0;
  std::string tx_id;
  std::string zipcode;
  std::string rx_id;
  bool in_contact = false;

  friend bool operator==(const MessageRecord&, const MessageRecord&) = default;
};

/// One record per non-blank line. Throws MalformedLine on the first bad line.
std::vector<MessageRecord> parse_log(std::istream& in);
void write_log(std::ostream& out, const std::vector<MessageRecord>& records);

struct WindowSpec {
  int dt = 600;                     // interval length in seconds
  int day = 1;
  std::int64_t index = 0;           // covers [index dt, (index + 1) dt) of the day
  std::set<std::string> zipcodes;
  std::size_t ambient = 1;          // windows, starting at `index`, whose receivers form the nodes

  void validate() const;
};

/// Grid index of a time of day.
std::int64_t window_index(int time, int dt);

struct WindowDiagnostics {
  std::size_t records = 0;            // records inside the window and zipcode set
  std::size_t transmitters = 0;
  std::size_t dropped_singletons = 0; // transmitters that reached one receiver
  std::size_t merged_duplicates = 0;  // transmitters whose receiver set repeated another's
};

struct WindowGraph {
  Hypergraph graph;
  std::vector<std::string> nodes;     // vertex i is nodes[i]; sorted
  WindowDiagnostics diagnostics;
};

WindowGraph build_window_hypergraph(const std::vector<MessageRecord>& records,
                                    const WindowSpec& spec);

/// Occupied (day, index) windows for a grid, with record counts, sorted.
struct WindowCount {
  int day = 1;
  std::int64_t index = 0;
  std::size_t records = 0;
};
std::vector<WindowCount> list_windows(const std::vector<MessageRecord>& records, int dt);

struct SynthParams {
  std::size_t transmitters = 50;
  std::size_t receivers = 200;
  std::size_t zipcodes = 5;
  double rate = 2.0;                  // expected bursts per window
  std::size_t max_bursts = 3;         // per window
  std::size_t max_fanout = 4;         // receivers per burst, at least 2 unless singleton
  double singleton_share = 0.25;      // extra single-receiver bursts, as a share of rate
  int days = 1;
  int duration = 3600;                // seconds of each day covered
  int dt = 600;

  void validate() const;
};

struct Burst {
  std::string tx_id;
  std::string zipcode;
  std::vector<std::string> receivers;  // sorted
};

struct WindowTruth {
  int day = 1;
  std::int64_t index = 0;
  std::vector<Burst> bursts;           // bursts with at least two receivers
};

struct SynthLog {
  std::string text;
  std::vector<WindowTruth> truth;      // one entry per grid window, sorted
};

/// Deterministic in (params, seed). Each burst is one transmitter sending to
/// a receiver set from one zipcode inside one window.
SynthLog synth_log(const SynthParams& params, std::uint64_t seed);

/// The hypergraph the truth induces over `nodes` for a zipcode set.
Hypergraph truth_hypergraph(const WindowTruth& truth, const std::set<std::string>& zipcodes,
                            const std::vector<std::string>& nodes);

}  // namespace boolsketch

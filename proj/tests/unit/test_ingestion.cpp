#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "boolsketch/errors.hpp"
#include "boolsketch/ingestion.hpp"

using namespace boolsketch;

namespace {

std::vector<MessageRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_log(in);
}

WindowSpec spec_for(std::set<std::string> zips, std::int64_t index = 0, std::size_t ambient = 1) {
  WindowSpec s;
  s.zipcodes = std::move(zips);
  s.index = index;
  s.ambient = ambient;
  return s;
}

}  // namespace

TEST(ParseLog, Examples) {
  const auto r = parse("1 37 u12 78701 u99 y\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (MessageRecord{1, 37, "u12", "78701", "u99", true}));
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("\n   \n").empty());
  EXPECT_THROW(parse("1 37 u12 78701 u99\n"), MalformedLine);
  EXPECT_THROW(parse("1 37 u12 78701 u99 y extra\n"), MalformedLine);
  EXPECT_THROW(parse("0 37 u12 78701 u99 y\n"), MalformedLine);
  EXPECT_THROW(parse("1 x u12 78701 u99 y\n"), MalformedLine);
  EXPECT_THROW(parse("1 86400 u12 78701 u99 y\n"), MalformedLine);
  EXPECT_THROW(parse("1 37 u12 78701 u99 maybe\n"), MalformedLine);
}

TEST(ParseLog, WriteRoundTrip) {
  const std::vector<MessageRecord> recs{{1, 0, "a", "z1", "b", false}, {2, 86399, "c", "z2", "d", true}};
  std::ostringstream out;
  write_log(out, recs);
  EXPECT_EQ(parse(out.str()), recs);
}

TEST(BuildWindow, PairEdge) {
  const auto recs = parse("1 10 t1 z r1 y\n1 20 t1 z r2 n\n");
  const auto w = build_window_hypergraph(recs, spec_for({"z"}));
  EXPECT_EQ(w.nodes, (std::vector<std::string>{"r1", "r2"}));
  EXPECT_EQ(w.graph, Hypergraph(2, {{0, 1}}));
  EXPECT_EQ(w.diagnostics.records, 2u);
  EXPECT_EQ(w.diagnostics.transmitters, 1u);
}

TEST(BuildWindow, SingletonDropped) {
  const auto recs = parse("1 10 t1 z r1 y\n1 20 t2 z r2 y\n1 30 t2 z r3 y\n");
  const auto w = build_window_hypergraph(recs, spec_for({"z"}));
  EXPECT_EQ(w.nodes.size(), 3u);
  EXPECT_EQ(w.graph, Hypergraph(3, {{1, 2}}));
  EXPECT_EQ(w.diagnostics.dropped_singletons, 1u);
}

TEST(BuildWindow, DuplicatesMerged) {
  const auto recs = parse("1 10 t1 z r1 y\n1 11 t1 z r2 y\n1 12 t2 z r2 y\n1 13 t2 z r1 y\n");
  const auto w = build_window_hypergraph(recs, spec_for({"z"}));
  EXPECT_EQ(w.graph.edge_count(), 1u);
  EXPECT_EQ(w.diagnostics.merged_duplicates, 1u);
}

TEST(BuildWindow, FiltersDayZipAndWindow) {
  const auto recs = parse(
      "1 10 t1 z r1 y\n1 20 t1 z r2 y\n"
      "1 30 t2 other r3 y\n1 31 t2 other r4 y\n"
      "2 10 t3 z r5 y\n2 11 t3 z r6 y\n"
      "1 700 t4 z r7 y\n1 701 t4 z r8 y\n");
  const auto w = build_window_hypergraph(recs, spec_for({"z"}));
  EXPECT_EQ(w.nodes, (std::vector<std::string>{"r1", "r2"}));
  const auto wide = build_window_hypergraph(recs, spec_for({"z"}, 0, 2));
  EXPECT_EQ(wide.nodes, (std::vector<std::string>{"r1", "r2", "r7", "r8"}));
  EXPECT_EQ(wide.graph.edge_count(), 1u);
  const auto next = build_window_hypergraph(recs, spec_for({"z"}, 1));
  EXPECT_EQ(next.graph, Hypergraph(2, {{0, 1}}));
  WindowSpec bad = spec_for({"z"});
  bad.dt = 0;
  EXPECT_THROW(build_window_hypergraph(recs, bad), InvalidArgument);
  bad = spec_for({});
  EXPECT_THROW(build_window_hypergraph(recs, bad), InvalidArgument);
}

TEST(Windows, PartitionIsExact) {
  SynthParams p;
  p.days = 2;
  p.rate = 3.0;
  const auto log = synth_log(p, 5);
  const auto recs = parse(log.text);
  for (int dt : {60, 600, 1000, 3600}) {
    std::size_t total = 0;
    std::map<std::pair<int, std::int64_t>, std::size_t> direct;
    for (const auto& r : recs) ++direct[{r.day, r.time / dt}];
    const auto windows = list_windows(recs, dt);
    for (const auto& w : windows) {
      EXPECT_EQ(w.records, (direct[{w.day, w.index}]));
      total += w.records;
    }
    EXPECT_EQ(total, recs.size());
    EXPECT_EQ(windows.size(), direct.size());
  }
  EXPECT_EQ(window_index(599, 600), 0);
  EXPECT_EQ(window_index(600, 600), 1);
}

TEST(Synth, Deterministic) {
  SynthParams p;
  const auto a = synth_log(p, 11);
  const auto b = synth_log(p, 11);
  const auto c = synth_log(p, 12);
  EXPECT_EQ(a.text, b.text);
  EXPECT_NE(a.text, c.text);
  EXPECT_EQ(a.truth.size(), 6u);
}

TEST(Synth, ZeroRateIsEmpty) {
  SynthParams p;
  p.rate = 0.0;
  const auto log = synth_log(p, 1);
  EXPECT_TRUE(log.text.empty());
  for (const auto& w : log.truth) EXPECT_TRUE(w.bursts.empty());
}

TEST(Synth, InvalidParams) {
  SynthParams p;
  p.max_fanout = 1;
  EXPECT_THROW(synth_log(p, 1), InvalidArgument);
  p = SynthParams{};
  p.dt = 0;
  EXPECT_THROW(synth_log(p, 1), InvalidArgument);
}

TEST(Synth, TruthMatchesBuiltWindows) {
  SynthParams p;
  p.rate = 2.5;
  const auto log = synth_log(p, 21);
  const auto recs = parse(log.text);
  std::set<std::string> all;
  for (std::size_t z = 0; z < p.zipcodes; ++z) all.insert(std::to_string(10000 + z));
  for (const auto& truth : log.truth) {
    for (const auto& zips : {all, std::set<std::string>{"10000"}}) {
      WindowSpec spec = spec_for(zips, truth.index);
      spec.day = truth.day;
      const auto w = build_window_hypergraph(recs, spec);
      EXPECT_EQ(w.graph, truth_hypergraph(truth, zips, w.nodes));
    }
  }
}

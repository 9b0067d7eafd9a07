#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "peertrust/sim/simulator.hpp"
#include "peertrust/sim/trace.hpp"
#include "support/oracles.hpp"

namespace peertrust::sim {
namespace {

TraceEvent sent(double t, std::uint64_t seq, const char* actor, const char* peer, std::uint64_t rid) {
  return TraceEvent{t, seq, NodeId{actor}, NodeId{peer}, RequestSent{rid, RequestPurpose::Data, 0}};
}

TEST(CanonicalLine, SortedKeysAndCompactForm) {
  const auto line = canonical_line(sent(1.5, 3, "a", "b", 7));
  EXPECT_EQ(line,
            R"({"actor":"a","kind":"request_sent","payload":{"attempt":0,"purpose":"data","request":7},"peer":"b","seq":3,"t":1.5})");
}

TEST(CanonicalLine, ParsesBackWithEveryField) {
  ResponseReceived r;
  r.request = 4;
  r.privilege = PrivilegeLevel{9, 0, 10};
  r.score = score_interaction(InteractionInputs::sample(), PropertyWeights::defaults(), 0.5);
  const auto j = nlohmann::json::parse(canonical_line(TraceEvent{2.0, 0, NodeId{"x"}, NodeId{"y"}, r}));
  EXPECT_EQ(j.at("kind"), "response_received");
  EXPECT_EQ(j.at("payload").at("aggregate").get<double>(), r.score.aggregate);
  EXPECT_EQ(j.at("payload").at("classification"), "positive");
  EXPECT_EQ(j.at("payload").at("scores").size(), 5u);
}

TEST(TraceDigest, EmptyIsOffsetBasis) {
  EXPECT_EQ(digest_events({}), kEmptyTraceDigest);
  EXPECT_EQ(trace_digest(SimulationTrace{}), kEmptyTraceDigest);
}

TEST(TraceDigest, MatchesHashOfJsonLines) {
  const std::vector<TraceEvent> events{sent(0, 0, "a", "b", 0), sent(1, 1, "b", "a", 1)};
  std::ostringstream os;
  write_trace_jsonl(os, events);
  EXPECT_EQ(digest_events(events), fnv1a64(os.str()));
}

TEST(TraceDigest, OrderSensitive) {
  const std::vector<TraceEvent> ab{sent(0, 0, "a", "b", 0), sent(0, 1, "b", "a", 1)};
  const std::vector<TraceEvent> ba{sent(0, 0, "b", "a", 1), sent(0, 1, "a", "b", 0)};
  EXPECT_NE(digest_events(ab), digest_events(ba));
}

TEST(ReplayTables, RebuildsEveryNode) {
  const auto sc = testing::make_stochastic_community(5, 150, 12, 400.0);
  const auto trace = run_scenario(sc);
  std::vector<NodeId> ids;
  for (const auto& n : sc.nodes) {
    ids.push_back(n.id);
  }
  const auto replayed = replay_tables(ids, trace.events, sc.horizon_hours);
  EXPECT_EQ(replayed, trace.final_tables);
}

TEST(ReplayTables, CutsAtTime) {
  const std::vector<NodeId> ids{NodeId{"a"}, NodeId{"b"}};
  const std::vector<TraceEvent> events{sent(0, 0, "a", "b", 0), sent(5, 1, "a", "b", 1)};
  EXPECT_EQ(replay_tables(ids, events, 4.0).at(NodeId{"a"}).entry(NodeId{"b"}).total, 1u);
  EXPECT_EQ(replay_tables(ids, events, 5.0).at(NodeId{"a"}).entry(NodeId{"b"}).total, 2u);
  EXPECT_TRUE(replay_tables(ids, events, 4.0).at(NodeId{"b"}).entries().empty());
}

}  // namespace
}  // namespace peertrust::sim

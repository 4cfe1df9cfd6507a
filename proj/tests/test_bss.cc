#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "nomasim/bss.h"
#include "nomasim/scenario.h"
#include "oracle.h"
#include "properties.h"

using namespace nomasim;

namespace {
ScenarioConfig
Short (PolicyKind policy, int n = 10, double radius = 47, double seconds = 1.0)
{
  ScenarioConfig c;
  c.nStas = n;
  c.radiusM = radius;
  c.simTimeS = seconds;
  c.policy = policy;
  return c;
}

RunMetrics
RunFixed (std::vector<Position> nodes, PolicyKind policy, double seconds, uint64_t seed,
          std::vector<ExchangeRecord> *ex = nullptr)
{
  BssConfig cfg;
  cfg.policy = policy;
  cfg.duration = SimTime::Seconds (seconds);
  BssSimulation sim (cfg, std::move (nodes), Rng (seed));
  RunMetrics m = sim.Run ();
  if (ex)
    *ex = sim.Exchanges ();
  return m;
}
} // namespace

TEST_CASE ("run properties across schedulers and radii")
{
  for (auto policy : {PolicyKind::Disabled, PolicyKind::MaxRate, PolicyKind::ProportionalFair})
    for (double radius : {47.0, 95.0})
      for (int k = 0; k < 3; ++k)
        {
          ScenarioConfig c = Short (policy, 15, radius);
          CAPTURE (ToString (policy));
          CAPTURE (radius);
          CAPTURE (k);
          props::TracedRun r = props::Run (c, k);
          CHECK (props::ClockMonotone (r) == "");
          CHECK (props::CwMembership (r, c.edca) == "");
          CHECK (props::NavChecked (r) == "");
          CHECK (props::ExchangeAudit (r, c.edca) == "");
          CHECK (props::AmGm (r) == "");
          CHECK (props::Conservation (r) == "");
          if (policy == PolicyKind::Disabled)
            CHECK (r.metrics.nomaExchanges == 0);
        }
}

TEST_CASE ("same seed, same trace")
{
  ScenarioConfig c = Short (PolicyKind::ProportionalFair, 10, 71);
  props::TracedRun a = props::Run (c, 4);
  props::TracedRun b = props::Run (c, 4);
  CHECK (a.trace == b.trace);
  CHECK (a.trace.size () > 1000);
  props::TracedRun other = props::Run (c, 5);
  CHECK (a.trace != other.trace);
}

TEST_CASE ("idle overlay leaves the trace untouched")
{
  ScenarioConfig c = Short (PolicyKind::Disabled, 12, 95);
  for (int k = 0; k < 3; ++k)
    {
      std::ostringstream plain, idle;
      RunOnce (c, k, &plain, Overlay::None);
      RunOnce (c, k, &idle, Overlay::Attached);
      CHECK (plain.str () == idle.str ());
    }
}

TEST_CASE ("single station matches the contention-free cycle")
{
  // n = 1: every cycle is AIFS + mean backoff + the full exchange.
  const double seconds = 10.0;
  RunMetrics m = RunFixed ({{0, 0}, {30, 0}}, PolicyKind::Disabled, seconds, 11);
  int mcs = oracle::McsFor (oracle::SnrDb (30));
  double dataUs = oracle::AirtimeNs (65536, oracle::RatesMbps ()[mcs], 40000) / 1e3;
  double rts = oracle::AirtimeNs (160, 8.6, 20000) / 1e3;
  double cts = oracle::AirtimeNs (112, 8.6, 20000) / 1e3;
  double ts = rts + 16 + cts + 16 + dataUs + 16 + 44 + 34;
  double cycleUs = ts + 9 * 7.5;
  double expect = 65536 / (cycleUs * 1e-6);
  CHECK (m.collisions == 0);
  CHECK (m.AggregateBps () == doctest::Approx (expect).epsilon (0.01));
}

TEST_CASE ("two-station NOMA pair")
{
  // Far primary at MCS 0, near STA at MCS 5 for NOMA; only these two.
  std::vector<ExchangeRecord> ex;
  RunMetrics m = RunFixed ({{0, 0}, {80, 0}, {10, 0}}, PolicyKind::MaxRate, 2.0, 3, &ex);
  CHECK (m.nomaExchanges > 0);
  // The last exchange may still be in flight when the run ends.
  CHECK (m.nomaSuccesses + 1 >= m.nomaExchanges);
  int withSecondary = 0;
  for (const ExchangeRecord &e : ex)
    if (e.primary == 1)
      {
        CHECK (e.secondary == 2);
        CHECK (e.secondaryMcs == 5);
        CHECK (e.secondaryBits == 8 * 65536);
        ++withSecondary;
      }
  CHECK (withSecondary > 0);
  // The near STA never gets a secondary: STA 1 is too weak to be decoded first.
  for (const ExchangeRecord &e : ex)
    if (e.primary == 2)
      CHECK (e.secondary == kNoNode);
  // Far STA as primary is unchanged; near STA gains the NOMA payload.
  RunMetrics legacy = RunFixed ({{0, 0}, {80, 0}, {10, 0}}, PolicyKind::Disabled, 2.0, 3);
  CHECK (m.deliveredBits[1] > legacy.deliveredBits[1]);
}

TEST_CASE ("hidden stations collide")
{
  // 180 m apart, both 90 m from the AP: neither hears the other.
  RunMetrics m = RunFixed ({{0, 0}, {90, 0}, {-90, 0}}, PolicyKind::Disabled, 2.0, 5);
  CHECK (m.collisions > 0);
  RunMetrics heard = RunFixed ({{0, 0}, {90, 0}, {90, 0.5}}, PolicyKind::Disabled, 2.0, 5);
  auto rate = [] (const RunMetrics &r) { return double (r.collisions) / double (r.attempts); };
  CHECK (rate (m) > rate (heard));
}

TEST_CASE ("rejects bad input")
{
  BssConfig cfg;
  CHECK_THROWS (BssSimulation (cfg, {{0, 0}}, Rng (1)));
  CHECK_THROWS (BssSimulation (cfg, {{0, 0}, {200, 0}}, Rng (1)));
  cfg.duration = SimTime::Zero ();
  CHECK_THROWS (BssSimulation (cfg, {{0, 0}, {10, 0}}, Rng (1)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "nomasim/noma_rs.h"
#include "nomasim/policy.h"
#include "nomasim/scenario.h"
#include "oracle.h"

using namespace nomasim;
using doctest::Approx;

TEST_CASE ("metric")
{
  CHECK (Metric (PolicyKind::MaxRate, 51.6e6, 0) == Approx (51.6e6));
  CHECK (Metric (PolicyKind::ProportionalFair, 51.6e6, 2e6) == Approx (25.8));
  // R = 0 falls back to epsilon.
  CHECK (Metric (PolicyKind::ProportionalFair, 51.6e6, 0, 1.0) == Approx (51.6e6));
  CHECK (Metric (PolicyKind::ProportionalFair, 51.6e6, 0.5, 1.0) == Approx (51.6e6));
  CHECK_THROWS (Metric (PolicyKind::MaxRate, 0, 0));
  CHECK_THROWS (Metric (PolicyKind::ProportionalFair, 1e6, -1));
  CHECK_THROWS_AS (Metric (PolicyKind::Disabled, 1e6, 1), std::logic_error);
}

TEST_CASE ("policy names")
{
  CHECK (ParsePolicy ("maxrate") == PolicyKind::MaxRate);
  CHECK (ParsePolicy ("pf") == PolicyKind::ProportionalFair);
  CHECK (ParsePolicy ("off") == PolicyKind::Disabled);
  CHECK_THROWS (ParsePolicy ("rr"));
  for (auto k : {PolicyKind::MaxRate, PolicyKind::ProportionalFair, PolicyKind::Disabled})
    CHECK (ParsePolicy (ToString (k)) == k);
  CHECK (ParseTrackerMode ("ewma") == TrackerMode::Ewma);
  CHECK (ParseTrackerMode ("cumulative") == TrackerMode::Cumulative);
}

TEST_CASE ("rate estimate from position")
{
  const ChannelParams ch = DefaultChannel ();
  const McsTable table = McsTable::Default ();
  // 10 m: SNR = 29.32 dB -> MCS 8.
  double snr = SnrDb (RxPowerDbm (10.0, ch), ch);
  CHECK (snr == Approx (oracle::SnrDb (10.0)).epsilon (1e-12));
  CHECK (snr == Approx (29.32081373751005).epsilon (1e-12));
  StaState s;
  s.mcs = *SelectMcs (snr, table);
  CHECK (s.mcs.index == 8);
  CHECK (RateOf (s) == Approx (103.2e6));

  s.mcs = *SelectMcs (SnrDb (RxPowerDbm (95.0, ch), ch), table);
  CHECK (s.mcs.index == 0);
  CHECK (RateOf (s) == Approx (8.6e6));

  CHECK_FALSE (SelectMcs (SnrDb (RxPowerDbm (96.0, ch), ch), table));
}

TEST_CASE ("cumulative tracker")
{
  RateTracker t (3);
  CHECK (t.Throughput (1, SimTime::Seconds (1.0)) == 0.0);
  t.Update (1, 65536, SimTime::Micros (500));
  CHECK (t.Throughput (1, SimTime::Seconds (1.0)) == Approx (65536.0));
  t.Update (1, 65536, SimTime::Micros (900));
  CHECK (t.Throughput (1, SimTime::Seconds (1.0)) == Approx (131072.0));
  CHECK (t.Delivered (1) == 131072);
  CHECK (t.Throughput (2, SimTime::Seconds (1.0)) == 0.0);
  CHECK (t.Throughput (1, SimTime::Zero ()) == 0.0);
}

TEST_CASE ("ewma tracker decays")
{
  RateTracker t (2, TrackerMode::Ewma, SimTime::Zero (), 0.5);
  t.Update (1, 1'000'000, SimTime::Seconds (0.1));
  double early = t.Throughput (1, SimTime::Seconds (0.1));
  double late = t.Throughput (1, SimTime::Seconds (2.0));
  CHECK (early > 0);
  CHECK (late < early);
  CHECK (late == Approx (early * std::exp (-1.9 / 0.5)));
}

TEST_CASE ("pf favours the starved candidate, maxrate the fast one")
{
  std::vector<StaState> stas (3);
  const McsTable table = McsTable::Default ();
  stas[1].mcs = table.At (8);
  stas[2].mcs = table.At (2);
  RateTracker t (3);
  t.Update (1, 50'000'000, SimTime::Seconds (1.0));
  t.Update (2, 1'000'000, SimTime::Seconds (1.0));
  NomaCandidate a, b;
  a.node = 1;
  b.node = 2;
  std::vector<NomaCandidate> c = {a, b};
  ScoreCandidates (c, PolicyKind::MaxRate, stas, t, SimTime::Seconds (2.0));
  CHECK (SelectSecondary (c)->node == 1);
  ScoreCandidates (c, PolicyKind::ProportionalFair, stas, t, SimTime::Seconds (2.0));
  CHECK (SelectSecondary (c)->node == 2);
}

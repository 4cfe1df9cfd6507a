#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nomasim/noma_rs.h"
#include "oracle.h"

using namespace nomasim;

namespace {
const ChannelParams kCh = DefaultChannel ();
const McsTable kTable = McsTable::Default ();
const EdcaParams kEdca;
const ControlTiming kTiming = ControlTiming::From (kEdca, kTable);

std::optional<NomaCandidate>
Evaluate (Position candidate, Position primary)
{
  std::vector<Position> pos = {{0, 0}, candidate, primary};
  CandidacyContext ctx{pos, kCh, kTable, kEdca};
  return EvaluateCandidacy (1, 2, ctx);
}

NomaCandidate
Cand (NodeId id, double metric)
{
  NomaCandidate c;
  c.node = id;
  c.metric = metric;
  return c;
}
} // namespace

TEST_CASE ("rs assignment is injective")
{
  RsAssignment a = RsAssignment::Sequential (5);
  CHECK (a.Size () == 5);
  for (int i = 1; i <= 5; ++i)
    {
      CHECK (a.RsOf (i) == i - 1);
      CHECK (a.NodeOf (i - 1) == i);
    }
  CHECK_THROWS (a.Assign (6, 0));
  CHECK_THROWS (a.Assign (1, 9));
  CHECK_THROWS (a.RsOf (7));
  CHECK_THROWS (a.NodeOf (7));
}

TEST_CASE ("candidacy: near candidate, far primary")
{
  auto c = Evaluate ({10, 0}, {80, 0});
  REQUIRE (c);
  double snr = oracle::NomaSnrDb (oracle::RxDbm (10), oracle::RxDbm (80));
  CHECK (std::abs (c->nomaSnrDb - snr) < 1e-9);
  // Frozen from the oracle.
  CHECK (std::abs (c->nomaSnrDb - 22.474611738643727) < 1e-9);
  CHECK (c->nomaMcs.index == oracle::McsFor (snr));
  CHECK (c->nomaMcs.index == 5);
  // Primary at 80 m runs MCS 0.
  CHECK (oracle::McsFor (oracle::SnrDb (80)) == 0);
  int64_t k = oracle::FillK (oracle::AirtimeNs (65536, 8.6, 40000), 68.8, 65536, 40000);
  CHECK (c->fillBits == k * 65536);
  CHECK (k == 8);
}

TEST_CASE ("candidacy condition 1: outside the primary's coverage")
{
  // 96 m apart, everything else comfortably satisfied.
  CHECK_FALSE (Evaluate ({5, 0}, {-91, 0}));
  CHECK (Evaluate ({5, 0}, {-90, 0}));
}

TEST_CASE ("candidacy condition 2: noma snr below gamma_min")
{
  // Find the candidate distance where the oracle's NOMA SNR is exactly 3.0 dB
  // against a primary 60 m out.
  double lo = 1, hi = 60;
  for (int i = 0; i < 200; ++i)
    {
      double mid = 0.5 * (lo + hi);
      double s = oracle::NomaSnrDb (oracle::RxDbm (mid), oracle::RxDbm (60));
      (s > 3.0 ? lo : hi) = mid;
    }
  CHECK (oracle::NomaSnrDb (oracle::RxDbm (lo), oracle::RxDbm (60)) == doctest::Approx (3.0));
  CHECK_FALSE (Evaluate ({lo, 0}, {-60, 0}));
  CHECK_FALSE (Evaluate ({30, 0}, {0, 30}));
}

TEST_CASE ("candidacy condition 3: not even one MPDU fits")
{
  int primaryMcs = oracle::McsFor (oracle::SnrDb (20));
  int nomaMcs = oracle::McsFor (oracle::NomaSnrDb (oracle::RxDbm (5), oracle::RxDbm (20)));
  REQUIRE (nomaMcs >= 0);
  double pr = oracle::RatesMbps ()[primaryMcs];
  double nr = oracle::RatesMbps ()[nomaMcs];
  REQUIRE (oracle::FillK (oracle::AirtimeNs (65536, pr, 40000), nr, 65536, 40000) == 0);
  CHECK_FALSE (Evaluate ({5, 0}, {-20, 0}));
}

TEST_CASE ("candidacy rejects the AP and the primary itself")
{
  std::vector<Position> pos = {{0, 0}, {10, 0}, {80, 0}};
  CandidacyContext ctx{pos, kCh, kTable, kEdca};
  CHECK_THROWS (EvaluateCandidacy (2, 2, ctx));
  CHECK_THROWS (EvaluateCandidacy (kApId, 2, ctx));
}

TEST_CASE ("rs window")
{
  RsAssignment a = RsAssignment::Sequential (6);
  std::vector<Position> pos = {{0, 0}, {10, 0}, {0, 20}, {-30, 0}, {0, -40}, {50, 50}, {90, 0}};
  CHECK (RsWindow ({}, a, pos, kCh).empty ());

  std::vector<NomaCandidate> two = {Cand (3, 0), Cand (1, 0)};
  CHECK (RsWindow (two, a, pos, kCh) == std::vector<int>{0, 2});

  std::vector<NomaCandidate> five;
  for (int i = 1; i <= 5; ++i)
    five.push_back (Cand (i, 0));
  CHECK (RsWindow (five, a, pos, kCh).size () == 5);

  // Outside AP coverage: the RS never reaches the AP.
  std::vector<Position> far = pos;
  far[6] = {120, 0};
  std::vector<NomaCandidate> one = {Cand (6, 0)};
  CHECK (RsWindow (one, a, far, kCh).empty ());
}

TEST_CASE ("secondary selection")
{
  std::vector<NomaCandidate> c = {Cand (1, 51.6e6), Cand (2, 25.8e6)};
  CHECK (SelectSecondary (c)->node == 1);
  std::vector<NomaCandidate> single = {Cand (4, 1.0)};
  CHECK (SelectSecondary (single)->node == 4);
  CHECK_FALSE (SelectSecondary ({}));

  // Exhaustive two-candidate tie-break check.
  for (NodeId a = 1; a <= 6; ++a)
    for (NodeId b = 1; b <= 6; ++b)
      {
        if (a == b)
          continue;
        std::vector<NomaCandidate> tie = {Cand (a, 7.0), Cand (b, 7.0)};
        CHECK (SelectSecondary (tie)->node == std::min (a, b));
      }
}

TEST_CASE ("cts with rs")
{
  NomaCandidate sel = Cand (3, 1.0);
  Frame f = CtsWithRs (1, sel, kTiming, SimTime::Micros (100));
  CHECK (f.kind == FrameKind::CtsRs);
  CHECK (f.dst == 1);
  CHECK (f.secondary == 3);
  CHECK (f.duration.ns () == 33024 + 4000);
  CHECK (f.navGrant == SimTime::Micros (100));

  Frame plain = CtsWithRs (1, std::nullopt, kTiming, SimTime::Micros (100));
  CHECK (plain.duration.ns () == 33024);
  CHECK (plain.secondary == kNoNode);
}

TEST_CASE ("secondary fill")
{
  const SimTime pre = SimTime::Micros (40);
  SimTime primary = Airtime (65536, kTable.At (0), pre);
  // 6 x 65536 bits at 51.6 Mbit/s is exactly the primary's airtime.
  int64_t fill = SecondaryFill (primary, kTable.At (4), 65536, pre);
  CHECK (fill == 6 * 65536);
  CHECK (fill == 393216);
  CHECK (fill == oracle::FillK (primary.ns (), 51.6, 65536, 40000) * 65536);
  CHECK (Airtime (fill, kTable.At (4), pre) == primary);

  // Same MCS, same MPDU.
  for (const McsEntry &m : kTable.Rows ())
    CHECK (SecondaryFill (Airtime (65536, m, pre), m, 65536, pre) == 65536);

  // Slower than the primary: nothing fits.
  SimTime fast = Airtime (65536, kTable.At (5), pre);
  CHECK (SecondaryFill (fast, kTable.At (3), 65536, pre) == 0);

  // Every primary/secondary MCS pair against enumeration.
  for (const McsEntry &p : kTable.Rows ())
    for (const McsEntry &s : kTable.Rows ())
      {
        SimTime pa = Airtime (65536, p, pre);
        int64_t k = oracle::FillK (pa.ns (), s.bitrateBps / 1e6, 65536, 40000);
        CHECK (SecondaryFill (pa, s, 65536, pre) == k * 65536);
      }
  CHECK_THROWS (SecondaryFill (pre, kTable.At (0), 65536, pre));
}

TEST_CASE ("data phase and noma ack")
{
  auto data = [] (NodeId src, int mcs) {
    Frame f;
    f.kind = FrameKind::Data;
    f.src = src;
    f.mcs = kTable.At (mcs);
    return f;
  };
  NomaExchange ex;
  ex.primary = 1;
  ex.secondary = 2;
  ex.secondaryPayloadBits = 393216;

  std::vector<Arrival> both = {{data (1, 4), RxPower{-70}}, {data (2, 2), RxPower{-60}}};
  CHECK (NomaDataPhase (ex, both, kCh) == SicOutcome::Both);

  // A third transmitter overlapping at the AP ruins the pair.
  Frame rts;
  rts.kind = FrameKind::Rts;
  rts.src = 5;
  rts.mcs = kTable.At (0);
  std::vector<Arrival> hidden = {both[0], both[1], {rts, RxPower{-80}}};
  CHECK (NomaDataPhase (ex, hidden, kCh) == SicOutcome::None);

  NomaExchange legacy;
  legacy.primary = 1;
  std::vector<Arrival> alone = {both[0]};
  CHECK (NomaDataPhase (legacy, alone, kCh) == SicOutcome::PrimaryOnly);

  // Only the secondary was heard.
  std::vector<Arrival> lone = {both[1]};
  CHECK (NomaDataPhase (ex, lone, kCh) == SicOutcome::None);

  auto ack = NomaAck (SicOutcome::Both, ex, kEdca);
  REQUIRE (ack);
  CHECK (ack->kind == FrameKind::NomaAck);
  CHECK (ack->duration == SimTime::Micros (44));
  CHECK (ack->dst == 1);
  CHECK (ack->secondary == 2);
  CHECK (ack->secondaryBits == 393216);

  ack = NomaAck (SicOutcome::PrimaryOnly, ex, kEdca);
  REQUIRE (ack);
  CHECK (ack->kind == FrameKind::Ack);
  CHECK_FALSE (NomaAck (SicOutcome::None, ex, kEdca));
  CHECK_THROWS (NomaAck (SicOutcome::Both, legacy, kEdca));
}

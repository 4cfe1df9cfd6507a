#include "nomasim/noma_rs.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomasim {

RsAssignment
RsAssignment::Sequential (int nStas)
{
  RsAssignment a;
  for (int i = 1; i <= nStas; ++i)
    a.Assign (i, i - 1);
  return a;
}

void
RsAssignment::Assign (NodeId node, int rsId)
{
  if (m_byNode.count (node) || m_byRs.count (rsId))
    throw std::invalid_argument ("RsAssignment: node or RS already assigned");
  m_byNode[node] = rsId;
  m_byRs[rsId] = node;
}

int
RsAssignment::RsOf (NodeId node) const
{
  auto it = m_byNode.find (node);
  if (it == m_byNode.end ())
    throw std::out_of_range ("RsAssignment: node " + std::to_string (node) + " not associated");
  return it->second;
}

NodeId
RsAssignment::NodeOf (int rsId) const
{
  auto it = m_byRs.find (rsId);
  if (it == m_byRs.end ())
    throw std::out_of_range ("RsAssignment: unknown RS " + std::to_string (rsId));
  return it->second;
}

std::optional<NomaCandidate>
EvaluateCandidacy (NodeId overhearer, NodeId rtsSrc, const CandidacyContext &ctx)
{
  if (overhearer == rtsSrc || overhearer == kApId || rtsSrc == kApId)
    throw std::logic_error ("EvaluateCandidacy: overhearer must be a third-party STA");
  const Position ap = ctx.positions[kApId];
  const Position me = ctx.positions[overhearer];
  const Position primary = ctx.positions[rtsSrc];

  if (!InCoverage (Distance (me, primary), ctx.channel))
    return std::nullopt;

  RxPower pj = RxPowerDbm (Distance (me, ap), ctx.channel);
  RxPower pi = RxPowerDbm (Distance (primary, ap), ctx.channel);
  double nomaSnr = NomaSnrDb (pj, pi, ctx.channel);
  if (nomaSnr < ctx.channel.gammaMinDb - kDbTolerance)
    return std::nullopt;
  auto nomaMcs = SelectMcs (nomaSnr, ctx.table);
  auto primaryMcs = SelectMcs (SnrDb (pi, ctx.channel), ctx.table);
  if (!nomaMcs || !primaryMcs)
    return std::nullopt;

  SimTime primaryAirtime = Airtime (ctx.edca.payloadBits, *primaryMcs, ctx.edca.dataPreamble);
  int64_t fill = SecondaryFill (primaryAirtime, *nomaMcs, ctx.edca.payloadBits,
                                ctx.edca.dataPreamble);
  if (fill < ctx.edca.payloadBits)
    return std::nullopt;

  return NomaCandidate{overhearer, nomaSnr, *nomaMcs, fill, 0.0};
}

std::vector<int>
RsWindow (std::span<const NomaCandidate> candidates, const RsAssignment &assignment,
          std::span<const Position> positions, const ChannelParams &channel)
{
  std::vector<int> received;
  for (const NomaCandidate &c : candidates)
    if (InCoverage (Distance (positions[c.node], positions[kApId]), channel))
      received.push_back (assignment.RsOf (c.node));
  std::sort (received.begin (), received.end ());
  return received;
}

std::optional<NomaCandidate>
SelectSecondary (std::span<const NomaCandidate> received)
{
  std::optional<NomaCandidate> best;
  for (const NomaCandidate &c : received)
    {
      if (!best || c.metric > best->metric || (c.metric == best->metric && c.node < best->node))
        best = c;
    }
  return best;
}

void
ScoreCandidates (std::span<NomaCandidate> candidates, PolicyKind policy,
                 std::span<const StaState> stas, const RateTracker &tracker, SimTime now)
{
  for (NomaCandidate &c : candidates)
    c.metric = Metric (policy, RateOf (stas[c.node]), tracker.Throughput (c.node, now),
                       tracker.Epsilon ());
}

Frame
CtsWithRs (NodeId primary, const std::optional<NomaCandidate> &selected,
           const ControlTiming &timing, SimTime navGrant)
{
  Frame cts;
  cts.kind = FrameKind::CtsRs;
  cts.src = kApId;
  cts.dst = primary;
  cts.mcs = timing.control;
  cts.payloadBits = 0;
  cts.duration = selected ? timing.ctsRs : timing.cts;
  cts.navGrant = navGrant;
  cts.secondary = selected ? selected->node : kNoNode;
  return cts;
}

int64_t
SecondaryFill (SimTime primaryDataAirtime, const McsEntry &mcs, int64_t mpduBits,
               SimTime preamble)
{
  if (primaryDataAirtime <= preamble)
    throw std::invalid_argument ("SecondaryFill: primary airtime must exceed the preamble");
  if (mpduBits <= 0)
    throw std::invalid_argument ("SecondaryFill: empty MPDU");
  double budgetS = (primaryDataAirtime - preamble).ToSeconds ();
  auto k = static_cast<int64_t> (std::floor (budgetS * mcs.bitrateBps / static_cast<double> (mpduBits)));
  k = std::max<int64_t> (k, 0);
  // Settle on the exact rounded airtime.
  while (k > 0 && Airtime (k * mpduBits, mcs, preamble) > primaryDataAirtime)
    --k;
  while (Airtime ((k + 1) * mpduBits, mcs, preamble) <= primaryDataAirtime)
    ++k;
  return k * mpduBits;
}

SicOutcome
NomaDataPhase (const NomaExchange &exchange, std::span<const Arrival> concurrent,
               const ChannelParams &channel)
{
  std::optional<NomaPair> pair;
  if (exchange.secondary)
    pair = NomaPair{exchange.primary, *exchange.secondary};
  ApDecode d = ApReceive (concurrent, pair, channel);
  // A lone frame decodes on its own only if it is the primary's.
  if (d.outcome == SicOutcome::PrimaryOnly && d.decoded.front () != exchange.primary)
    return SicOutcome::None;
  return d.outcome;
}

std::optional<Frame>
NomaAck (SicOutcome outcome, const NomaExchange &exchange, const EdcaParams &edca)
{
  if (outcome == SicOutcome::None)
    return std::nullopt;
  Frame ack;
  ack.src = kApId;
  ack.dst = exchange.primary;
  ack.duration = edca.ack;
  ack.navGrant = SimTime::Zero ();
  if (outcome == SicOutcome::Both)
    {
      if (!exchange.secondary)
        throw std::logic_error ("NomaAck: both decoded without a secondary");
      ack.kind = FrameKind::NomaAck;
      ack.secondary = *exchange.secondary;
      ack.secondaryBits = exchange.secondaryPayloadBits;
    }
  else
    {
      ack.kind = FrameKind::Ack;
    }
  return ack;
}

} // namespace nomasim

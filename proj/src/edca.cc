#include "nomasim/edca.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nomasim {

void
EdcaParams::Validate () const
{
  auto pow2 = [] (int v) { return v > 0 && std::has_single_bit (static_cast<unsigned> (v)); };
  if (!pow2 (cwMin) || !pow2 (cwMax) || cwMin > cwMax)
    throw std::invalid_argument ("EdcaParams: cw_min <= cw_max, both powers of two");
  if (slot <= SimTime::Zero () || sifs <= SimTime::Zero () || aifs <= SimTime::Zero ()
      || ack <= SimTime::Zero () || rsDuration <= SimTime::Zero ())
    throw std::invalid_argument ("EdcaParams: durations must be positive");
  if (rtsBits <= 0 || ctsBits <= 0 || payloadBits <= 0 || retryLimit < 0)
    throw std::invalid_argument ("EdcaParams: frame sizes and retry limit");
}

ControlTiming
ControlTiming::From (const EdcaParams &edca, const McsTable &table)
{
  ControlTiming t;
  t.rts = Airtime (edca.rtsBits, table.Lowest (), edca.controlPreamble);
  t.cts = Airtime (edca.ctsBits, table.Lowest (), edca.controlPreamble);
  t.ctsRs = t.cts + edca.rsDuration;
  t.ack = edca.ack;
  t.control = table.Lowest ();
  return t;
}

std::string_view
ToString (FrameKind kind)
{
  switch (kind)
    {
    case FrameKind::Rts: return "RTS";
    case FrameKind::CtsRs: return "CTS";
    case FrameKind::Data: return "DATA";
    case FrameKind::Ack: return "ACK";
    case FrameKind::NomaAck: return "NOMA_ACK";
    case FrameKind::Rs: return "RS";
    }
  return "?";
}

int
DrawBackoff (int cw, Rng &rng)
{
  if (cw < 1)
    throw std::invalid_argument ("DrawBackoff: cw must be >= 1");
  return static_cast<int> (rng.UniformInt (static_cast<uint64_t> (cw)));
}

SlotResult
OnSlotBoundary (StaState sta, bool mediumIdle)
{
  if (!mediumIdle)
    return {sta, SlotAction::Frozen};
  if (sta.backoffCounter == 0)
    return {sta, SlotAction::Transmit};
  --sta.backoffCounter;
  return {sta, SlotAction::Decremented};
}

int64_t
SlotsElapsed (SimTime countdownStart, SimTime now, SimTime slot)
{
  if (now <= countdownStart)
    return 0;
  return (now - countdownStart) / slot;
}

SimTime
RtsNavGrant (const EdcaParams &edca, const ControlTiming &timing, SimTime dataAirtime,
             bool rsWindow)
{
  SimTime t = edca.sifs;
  if (rsWindow)
    t = t + edca.rsDuration + edca.sifs + timing.ctsRs;
  else
    t = t + timing.cts;
  return t + CtsNavGrant (edca, dataAirtime);
}

SimTime
CtsNavGrant (const EdcaParams &edca, SimTime dataAirtime)
{
  return edca.sifs + dataAirtime + edca.sifs + edca.ack;
}

Frame
StartTxop (const StaState &sta, SimTime now, bool mediumIdle, const EdcaParams &edca,
           const ControlTiming &timing, SimTime dataAirtime, bool rsWindow)
{
  if (sta.backoffCounter != 0)
    throw std::logic_error ("StartTxop: backoff counter not zero");
  if (now < sta.navUntil)
    throw std::logic_error ("StartTxop: NAV not expired");
  if (!mediumIdle)
    throw std::logic_error ("StartTxop: medium busy");
  Frame rts;
  rts.kind = FrameKind::Rts;
  rts.src = sta.id;
  rts.dst = kApId;
  rts.mcs = timing.control;
  rts.payloadBits = edca.rtsBits;
  rts.duration = timing.rts;
  rts.navGrant = RtsNavGrant (edca, timing, dataAirtime, rsWindow);
  return rts;
}

FailureResult
OnFailure (StaState sta, const EdcaParams &edca, Rng &rng)
{
  bool dropped = false;
  ++sta.retryCount;
  if (sta.retryCount > edca.retryLimit)
    {
      dropped = true;
      sta.retryCount = 0;
      sta.cw = edca.cwMin;
    }
  else
    {
      sta.cw = std::min (2 * sta.cw, edca.cwMax);
    }
  sta.backoffCounter = DrawBackoff (sta.cw, rng);
  return {sta, dropped};
}

StaState
OnSuccess (StaState sta, int64_t deliveredBits, const EdcaParams &edca, Rng &rng)
{
  if (deliveredBits <= 0)
    throw std::logic_error ("OnSuccess: success must deliver a positive payload");
  sta.deliveredBits += deliveredBits;
  sta.cw = edca.cwMin;
  sta.retryCount = 0;
  sta.backoffCounter = DrawBackoff (sta.cw, rng);
  return sta;
}

ApDecode
ApReceive (std::span<const Arrival> concurrent, std::optional<NomaPair> pair,
           const ChannelParams &channel)
{
  ApDecode out;
  if (concurrent.size () == 1)
    {
      const Arrival &a = concurrent.front ();
      if (SnrDb (a.rx, channel) >= a.frame.mcs.snrThresholdDb - kDbTolerance)
        {
          out.outcome = SicOutcome::PrimaryOnly;
          out.decoded.push_back (a.frame.src);
        }
      return out;
    }
  if (concurrent.size () == 2 && pair)
    {
      const Arrival *primary = nullptr;
      const Arrival *secondary = nullptr;
      for (const Arrival &a : concurrent)
        {
          if (a.frame.kind != FrameKind::Data)
            return out;
          if (a.frame.src == pair->primary)
            primary = &a;
          else if (a.frame.src == pair->secondary)
            secondary = &a;
        }
      if (primary && secondary)
        {
          out.outcome = SicDecode (primary->rx, primary->frame.mcs, secondary->rx,
                                   secondary->frame.mcs, channel);
          if (out.outcome == SicOutcome::Both)
            out.decoded = {primary->frame.src, secondary->frame.src};
        }
    }
  return out;
}

} // namespace nomasim

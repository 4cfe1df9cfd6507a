#include "nomasim/bss.h"

#include <algorithm>
#include <stdexcept>

namespace nomasim {

BssSimulation::BssSimulation (BssConfig config, std::vector<Position> positions, Rng rng,
                              Overlay overlay)
    : m_cfg (std::move (config)),
      m_positions (std::move (positions)),
      m_rng (std::move (rng)),
      m_nomaActive (overlay == Overlay::Attached && m_cfg.policy != PolicyKind::Disabled),
      m_timing (ControlTiming::From (m_cfg.edca, m_cfg.table)),
      m_tracker (m_positions.size (), m_cfg.tracker, SimTime::Zero (), m_cfg.ewmaTauS)
{
  m_cfg.channel.Validate ();
  m_cfg.edca.Validate ();
  if (m_positions.size () < 2)
    throw std::invalid_argument ("BssSimulation: need the AP and at least one STA");
  if (m_cfg.duration <= SimTime::Zero ())
    throw std::invalid_argument ("BssSimulation: duration must be positive");

  const size_t n = m_positions.size ();
  const int nStas = static_cast<int> (n) - 1;
  m_rs = RsAssignment::Sequential (nStas);
  m_nodes.resize (n);
  m_stas.resize (n);
  m_dataAirtime.resize (n);
  m_rxPower.assign (n, std::vector<RxPower> (n));

  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      {
        if (a == b)
          continue;
        double d = Distance (m_positions[a], m_positions[b]);
        m_rxPower[a][b] = RxPowerDbm (d, m_cfg.channel);
        if (InCoverage (d, m_cfg.channel))
          m_nodes[a].neighbors.push_back (static_cast<NodeId> (b));
      }

  for (NodeId id = 1; id <= nStas; ++id)
    {
      StaState &s = m_stas[id];
      s.id = id;
      s.position = m_positions[id];
      s.cw = m_cfg.edca.cwMin;
      s.rsId = m_rs.RsOf (id);
      auto mcs = SelectMcs (SnrDb (m_rxPower[id][kApId], m_cfg.channel), m_cfg.table);
      if (!mcs)
        throw std::invalid_argument ("BssSimulation: STA " + std::to_string (id)
                                     + " has no feasible MCS to the AP");
      s.mcs = *mcs;
      m_dataAirtime[id] = Airtime (m_cfg.edca.payloadBits, s.mcs, m_cfg.edca.dataPreamble);
    }
  m_metrics.deliveredBits.assign (nStas, 0);
}

RunMetrics
BssSimulation::Run ()
{
  for (NodeId id = 1; id < static_cast<NodeId> (m_stas.size ()); ++id)
    {
      m_stas[id].backoffCounter = DrawBackoff (m_stas[id].cw, m_rng);
      RecordCw (m_stas[id].cw);
      UpdateContention (id);
    }
  m_engine.RunUntil (m_cfg.duration);
  // Frames still on air are clipped at the end of the run.
  if (!m_onAir.empty ())
    m_busyTime += m_cfg.duration - m_busySince;
  for (const auto &[id, tx] : m_onAir)
    m_airtimeSum += m_cfg.duration - tx.start;

  if (m_engine.ScheduledCount ()
      != m_engine.FiredCount () + m_engine.CancelledCount () + m_engine.PendingCount ())
    throw std::logic_error ("BssSimulation: event accounting mismatch");

  m_metrics.simTime = m_cfg.duration;
  for (NodeId id = 1; id < static_cast<NodeId> (m_stas.size ()); ++id)
    m_metrics.deliveredBits[id - 1] = m_stas[id].deliveredBits;
  return m_metrics;
}

// ---------------------------------------------------------------------------
// Backoff and carrier sense

void
BssSimulation::UpdateContention (NodeId id)
{
  if (id == kApId)
    return;
  NodeRuntime &n = m_nodes[id];
  StaState &s = m_stas[id];
  if (n.phase != Phase::Contending)
    return;
  const SimTime now = m_engine.Now ();
  const bool idle = n.audible == 0 && now >= s.navUntil;
  const bool armed = m_engine.IsPending (n.txEvent);
  if (idle && !armed)
    {
      SimTime idleFrom = std::max (n.idleSince, s.navUntil);
      n.countdownStart = std::max (idleFrom + m_cfg.edca.aifs, now);
      n.txAt = n.countdownStart + m_cfg.edca.slot * s.backoffCounter;
      n.txEvent = m_engine.Schedule (n.txAt, EventKind::BackoffExpiry, id,
                                     [this, id] { OnBackoffExpiry (id); },
                                     m_engine.Tracing () ? "counter=" + std::to_string (s.backoffCounter)
                                                         : std::string ());
    }
  else if (!idle && armed)
    {
      // A busy edge in the very slot the counter expires does not stop the
      // transmission: both stations start together and collide.
      if (n.txAt == now)
        return;
      LeaveContention (id);
    }
}

void
BssSimulation::LeaveContention (NodeId id)
{
  NodeRuntime &n = m_nodes[id];
  if (!m_engine.IsPending (n.txEvent))
    return;
  StaState &s = m_stas[id];
  int64_t elapsed = SlotsElapsed (n.countdownStart, m_engine.Now (), m_cfg.edca.slot);
  s.backoffCounter -= static_cast<int> (std::min<int64_t> (elapsed, s.backoffCounter));
  m_engine.Cancel (n.txEvent);
  n.txEvent = {};
}

void
BssSimulation::SetNav (NodeId id, SimTime until)
{
  StaState &s = m_stas[id];
  if (until <= s.navUntil)
    return;
  s.navUntil = until;
  NodeRuntime &n = m_nodes[id];
  m_engine.Cancel (n.navEvent);
  n.navEvent = m_engine.Schedule (until, EventKind::NavExpiry, id,
                                  [this, id] { UpdateContention (id); });
  UpdateContention (id);
}

void
BssSimulation::OnBackoffExpiry (NodeId id)
{
  NodeRuntime &n = m_nodes[id];
  StaState &s = m_stas[id];
  const SimTime now = m_engine.Now ();
  n.txEvent = {};
  s.backoffCounter = 0;
  const bool mediumIdle = n.audible == 0 || n.busySince == now;
  Frame rts = StartTxop (s, now, mediumIdle, m_cfg.edca, m_timing, m_dataAirtime[id], m_nomaActive);
  ++m_checkedTxops;
  ++m_metrics.attempts;
  n.phase = Phase::WaitCts;
  StartTransmission (id, rts);

  SimTime ctsEnd = now + rts.duration + m_cfg.edca.sifs;
  ctsEnd = m_nomaActive ? ctsEnd + m_cfg.edca.rsDuration + m_cfg.edca.sifs + m_timing.ctsRs
                        : ctsEnd + m_timing.cts;
  n.timeout = m_engine.Schedule (ctsEnd + m_cfg.edca.slot, EventKind::CtsTimeout, id,
                                 [this, id] { OnPrimaryFailure (id); });
}

// ---------------------------------------------------------------------------
// Shared medium

std::string
BssSimulation::Describe (const Frame &f) const
{
  std::string d (ToString (f.kind));
  d += ' ';
  d += std::to_string (f.src);
  d += "->";
  d += std::to_string (f.dst);
  if (f.secondary != kNoNode)
    d += " sec=" + std::to_string (f.secondary);
  return d;
}

void
BssSimulation::StartTransmission (NodeId src, const Frame &frame)
{
  NodeRuntime &sender = m_nodes[src];
  if (sender.transmitting)
    throw std::logic_error ("StartTransmission: node already on air");
  sender.transmitting = true;
  for (Reception &r : sender.rx)
    r.halfDuplex = true;

  const SimTime now = m_engine.Now ();
  const uint64_t txId = m_nextTxId++;
  if (m_onAir.empty ())
    m_busySince = now;
  m_onAir.emplace (txId, Transmission{src, frame, now});

  if (frame.kind == FrameKind::Rs && m_ap.active && now >= m_ap.windowStart
      && now < m_ap.windowEnd)
    m_ap.rsHeard.push_back (sender.candidacy);

  for (NodeId r : sender.neighbors)
    {
      NodeRuntime &rn = m_nodes[r];
      if (rn.audible++ == 0)
        rn.busySince = now;
      if (frame.kind == FrameKind::Rs)
        continue; // orthogonal; occupies the medium but never interferes
      Reception rec;
      rec.heard = Heard{txId, Arrival{frame, m_rxPower[src][r]}};
      rec.halfDuplex = rn.transmitting;
      for (Reception &other : rn.rx)
        {
          other.overlaps.push_back (rec.heard);
          rec.overlaps.push_back (other.heard);
        }
      rn.rx.push_back (std::move (rec));
    }
  for (NodeId r : sender.neighbors)
    UpdateContention (r);

  m_engine.Schedule (now + frame.duration, EventKind::TxEnd, src, [this, txId] { OnTxEnd (txId); },
                     m_engine.Tracing () ? Describe (frame) : std::string ());
}

void
BssSimulation::OnTxEnd (uint64_t txId)
{
  auto it = m_onAir.find (txId);
  Transmission tx = std::move (it->second);
  m_onAir.erase (it);
  const SimTime now = m_engine.Now ();
  m_airtimeSum += now - tx.start;
  if (m_onAir.empty ())
    m_busyTime += now - m_busySince;

  NodeRuntime &sender = m_nodes[tx.src];
  sender.transmitting = false;

  std::vector<std::pair<NodeId, Reception>> delivered;
  for (NodeId r : sender.neighbors)
    {
      NodeRuntime &rn = m_nodes[r];
      if (--rn.audible == 0)
        {
          rn.idleSince = now;
          rn.busySince = SimTime::Max ();
        }
      if (tx.frame.kind == FrameKind::Rs)
        continue;
      auto rit = std::find_if (rn.rx.begin (), rn.rx.end (),
                               [txId] (const Reception &x) { return x.heard.txId == txId; });
      delivered.emplace_back (r, std::move (*rit));
      rn.rx.erase (rit);
    }

  for (const auto &[r, rec] : delivered)
    {
      if (r == kApId)
        OnApReceive (rec);
      else
        OnStaReceive (r, rec);
    }

  if (tx.src == kApId && (tx.frame.kind == FrameKind::Ack || tx.frame.kind == FrameKind::NomaAck))
    m_ap.active = false;

  for (NodeId r : sender.neighbors)
    UpdateContention (r);
  UpdateContention (tx.src);
}

// ---------------------------------------------------------------------------
// Station side

void
BssSimulation::OnStaReceive (NodeId id, const Reception &rec)
{
  if (!rec.Clean ())
    return;
  NodeRuntime &n = m_nodes[id];
  const Frame &f = rec.heard.arrival.frame;
  const SimTime now = m_engine.Now ();

  switch (f.kind)
    {
    case FrameKind::Rts:
      SetNav (id, now + f.navGrant);
      if (m_nomaActive && n.phase == Phase::Contending)
        TryCandidacy (id, f.src);
      break;

    case FrameKind::CtsRs:
      if (f.dst == id && n.phase == Phase::WaitCts)
        {
          m_engine.Cancel (n.timeout);
          n.phase = Phase::AwaitDataTx;
          m_engine.Schedule (now + m_cfg.edca.sifs, EventKind::TxStart, id,
                             [this, id] { SendPrimaryData (id); }, "DATA");
        }
      else if (f.secondary == id && n.phase == Phase::Candidate)
        {
          m_engine.Cancel (n.timeout);
          n.phase = Phase::AwaitSecondaryTx;
          m_engine.Schedule (now + m_cfg.edca.sifs, EventKind::TxStart, id,
                             [this, id] { SendSecondaryData (id); }, "DATA secondary");
        }
      else
        {
          if (n.phase == Phase::Candidate)
            {
              m_engine.Cancel (n.timeout);
              n.phase = Phase::Contending;
            }
          SetNav (id, now + f.navGrant);
        }
      break;

    case FrameKind::Data:
      SetNav (id, now + f.navGrant);
      break;

    case FrameKind::Ack:
    case FrameKind::NomaAck:
      if (f.dst == id && n.phase == Phase::WaitAck)
        {
          m_engine.Cancel (n.timeout);
          n.phase = Phase::Delivering;
          const int64_t bits = m_cfg.edca.payloadBits;
          m_engine.Schedule (now, EventKind::Delivery, id,
                             [this, id, bits] {
                               m_stas[id] = OnSuccess (m_stas[id], bits, m_cfg.edca, m_rng);
                               RecordCw (m_stas[id].cw);
                               m_tracker.Update (id, bits, m_engine.Now ());
                               m_nodes[id].phase = Phase::Contending;
                               UpdateContention (id);
                             },
                             "bits=" + std::to_string (bits));
        }
      else if (f.kind == FrameKind::NomaAck && f.secondary == id
               && n.phase == Phase::SecondaryWaitAck)
        {
          m_engine.Cancel (n.timeout);
          n.phase = Phase::Delivering;
          const int64_t bits = f.secondaryBits;
          m_engine.Schedule (now, EventKind::Delivery, id,
                             [this, id, bits] {
                               // Opportunistic: the secondary's own backoff is left alone.
                               if (bits <= 0)
                                 throw std::logic_error ("secondary delivery without payload");
                               m_stas[id].deliveredBits += bits;
                               m_tracker.Update (id, bits, m_engine.Now ());
                               m_nodes[id].phase = Phase::Contending;
                               UpdateContention (id);
                             },
                             "bits=" + std::to_string (bits));
        }
      break;

    case FrameKind::Rs:
      break;
    }
}

void
BssSimulation::TryCandidacy (NodeId id, NodeId primary)
{
  CandidacyContext ctx{m_positions, m_cfg.channel, m_cfg.table, m_cfg.edca};
  auto cand = EvaluateCandidacy (id, primary, ctx);
  if (!cand)
    return;
  NodeRuntime &n = m_nodes[id];
  LeaveContention (id);
  n.phase = Phase::Candidate;
  n.candidacy = *cand;
  n.candidacyPrimaryAirtime = m_dataAirtime[primary];

  const SimTime now = m_engine.Now ();
  const SimTime rsStart = now + m_cfg.edca.sifs;
  m_engine.Schedule (rsStart, EventKind::TxStart, id,
                     [this, id] {
                       Frame rs;
                       rs.kind = FrameKind::Rs;
                       rs.src = id;
                       rs.dst = kApId;
                       rs.duration = m_cfg.edca.rsDuration;
                       StartTransmission (id, rs);
                     },
                     "RS " + std::to_string (m_stas[id].rsId));
  const SimTime ctsEnd = rsStart + m_cfg.edca.rsDuration + m_cfg.edca.sifs + m_timing.ctsRs;
  n.timeout = m_engine.Schedule (ctsEnd + m_cfg.edca.slot, EventKind::CandidateTimeout, id,
                                 [this, id] {
                                   m_nodes[id].phase = Phase::Contending;
                                   UpdateContention (id);
                                 });
}

void
BssSimulation::SendPrimaryData (NodeId id)
{
  NodeRuntime &n = m_nodes[id];
  const StaState &s = m_stas[id];
  Frame data;
  data.kind = FrameKind::Data;
  data.src = id;
  data.dst = kApId;
  data.mcs = s.mcs;
  data.payloadBits = m_cfg.edca.payloadBits;
  data.duration = m_dataAirtime[id];
  data.navGrant = m_cfg.edca.sifs + m_cfg.edca.ack;
  n.phase = Phase::WaitAck;
  StartTransmission (id, data);
  const SimTime ackEnd = m_engine.Now () + data.duration + m_cfg.edca.sifs + m_cfg.edca.ack;
  n.timeout = m_engine.Schedule (ackEnd + m_cfg.edca.slot, EventKind::AckTimeout, id,
                                 [this, id] { OnPrimaryFailure (id); });
}

void
BssSimulation::SendSecondaryData (NodeId id)
{
  NodeRuntime &n = m_nodes[id];
  const NomaCandidate &c = n.candidacy;
  const SimTime primaryAirtime = n.candidacyPrimaryAirtime;
  Frame data;
  data.kind = FrameKind::Data;
  data.src = id;
  data.dst = kApId;
  data.mcs = c.nomaMcs;
  data.payloadBits = c.fillBits;
  data.duration = Airtime (c.fillBits, c.nomaMcs, m_cfg.edca.dataPreamble);
  data.navGrant = (primaryAirtime - data.duration) + m_cfg.edca.sifs + m_cfg.edca.ack;
  n.phase = Phase::SecondaryWaitAck;
  StartTransmission (id, data);
  const SimTime ackEnd = m_engine.Now () + primaryAirtime + m_cfg.edca.sifs + m_cfg.edca.ack;
  n.timeout = m_engine.Schedule (ackEnd + m_cfg.edca.slot, EventKind::AckTimeout, id,
                                 [this, id] {
                                   auto r = OnFailure (m_stas[id], m_cfg.edca, m_rng);
                                   m_stas[id] = r.sta;
                                   RecordCw (r.sta.cw);
                                   m_nodes[id].phase = Phase::Contending;
                                   UpdateContention (id);
                                 });
}

void
BssSimulation::OnPrimaryFailure (NodeId id)
{
  auto r = OnFailure (m_stas[id], m_cfg.edca, m_rng);
  m_stas[id] = r.sta;
  RecordCw (r.sta.cw);
  ++m_metrics.collisions;
  if (r.dropped)
    ++m_metrics.drops;
  m_nodes[id].phase = Phase::Contending;
  UpdateContention (id);
}

// ---------------------------------------------------------------------------
// Access point

void
BssSimulation::OnApReceive (const Reception &rec)
{
  const Frame &f = rec.heard.arrival.frame;
  if (f.kind == FrameKind::Rts)
    {
      if (m_ap.active || rec.halfDuplex)
        return;
      std::vector<Arrival> concurrent{rec.heard.arrival};
      for (const Heard &h : rec.overlaps)
        concurrent.push_back (h.arrival);
      ApDecode d = ApReceive (concurrent, std::nullopt, m_cfg.channel);
      if (!d.decoded.empty ())
        ApStartExchange (f.src);
      return;
    }
  if (f.kind != FrameKind::Data || !m_ap.active)
    return;
  if (f.src == m_ap.ex.primary)
    m_ap.primaryRx = rec;
  else if (m_ap.ex.secondary && f.src == *m_ap.ex.secondary)
    m_ap.secondaryRx = rec;
  else
    return;
  ApMaybeResolve ();
}

void
BssSimulation::ApMaybeResolve ()
{
  if (!m_ap.primaryRx)
    return;
  // Equal airtimes end in the same instant; wait for the secondary's frame.
  if (m_ap.ex.secondary && !m_ap.secondaryRx)
    for (const auto &[id, tx] : m_onAir)
      if (tx.src == *m_ap.ex.secondary && tx.frame.kind == FrameKind::Data)
        return;
  Reception primary = std::move (*m_ap.primaryRx);
  m_ap.primaryRx.reset ();
  ApResolveData (primary);
}

void
BssSimulation::ApStartExchange (NodeId primary)
{
  const SimTime now = m_engine.Now ();
  m_ap.active = true;
  m_ap.ex = NomaExchange{};
  m_ap.ex.primary = primary;
  m_ap.ex.primaryMcs = m_stas[primary].mcs;
  m_ap.ex.primaryAirtime = m_dataAirtime[primary];
  m_ap.primaryRx.reset ();
  m_ap.secondaryRx.reset ();
  m_ap.rsHeard.clear ();
  if (m_nomaActive)
    {
      m_ap.windowStart = now + m_cfg.edca.sifs;
      m_ap.windowEnd = m_ap.windowStart + m_cfg.edca.rsDuration;
      m_engine.Schedule (m_ap.windowEnd, EventKind::RsWindowClose, kApId,
                         [this] { ApCloseWindow (); });
    }
  else
    {
      m_ap.windowStart = m_ap.windowEnd = SimTime::Zero ();
      m_engine.Schedule (now + m_cfg.edca.sifs, EventKind::TxStart, kApId, [this] { ApSendCts (); },
                         "CTS");
    }
}

void
BssSimulation::ApCloseWindow ()
{
  std::vector<int> rsIds = RsWindow (m_ap.rsHeard, m_rs, m_positions, m_cfg.channel);
  std::vector<NomaCandidate> received;
  for (int rs : rsIds)
    {
      NodeId node = m_rs.NodeOf (rs);
      auto it = std::find_if (m_ap.rsHeard.begin (), m_ap.rsHeard.end (),
                              [node] (const NomaCandidate &c) { return c.node == node; });
      received.push_back (*it);
    }
  ScoreCandidates (received, m_cfg.policy, m_stas, m_tracker, m_engine.Now ());
  if (auto sel = SelectSecondary (received))
    {
      m_ap.ex.secondary = sel->node;
      m_ap.ex.secondaryMcs = sel->nomaMcs;
      m_ap.ex.secondaryPayloadBits = sel->fillBits;
      m_ap.ex.secondaryAirtime = Airtime (sel->fillBits, sel->nomaMcs, m_cfg.edca.dataPreamble);
      m_ap.ex.nomaSnrDb = sel->nomaSnrDb;
      if (m_ap.ex.secondaryAirtime > m_ap.ex.primaryAirtime)
        throw std::logic_error ("secondary airtime exceeds the primary's");
      ++m_metrics.nomaExchanges;
    }
  m_engine.Schedule (m_engine.Now () + m_cfg.edca.sifs, EventKind::TxStart, kApId,
                     [this] { ApSendCts (); }, "CTS");
}

void
BssSimulation::ApSendCts ()
{
  std::optional<NomaCandidate> selected;
  if (m_ap.ex.secondary)
    {
      NomaCandidate c;
      c.node = *m_ap.ex.secondary;
      selected = c;
    }
  Frame cts = CtsWithRs (m_ap.ex.primary, selected, m_timing,
                         CtsNavGrant (m_cfg.edca, m_ap.ex.primaryAirtime));
  StartTransmission (kApId, cts);
  const SimTime dataEnd = m_engine.Now () + cts.duration + m_cfg.edca.sifs + m_ap.ex.primaryAirtime;
  m_ap.watchdog = m_engine.Schedule (dataEnd + m_cfg.edca.slot, EventKind::ExchangeTimeout, kApId,
                                     [this] { ApExchangeTimeout (); });
}

void
BssSimulation::ApResolveData (const Reception &primaryRx)
{
  m_engine.Cancel (m_ap.watchdog);
  std::vector<Heard> heard{primaryRx.heard};
  heard.insert (heard.end (), primaryRx.overlaps.begin (), primaryRx.overlaps.end ());
  bool halfDuplex = primaryRx.halfDuplex;
  if (m_ap.secondaryRx)
    {
      heard.push_back (m_ap.secondaryRx->heard);
      heard.insert (heard.end (), m_ap.secondaryRx->overlaps.begin (),
                    m_ap.secondaryRx->overlaps.end ());
      halfDuplex = halfDuplex || m_ap.secondaryRx->halfDuplex;
    }
  std::sort (heard.begin (), heard.end (),
             [] (const Heard &a, const Heard &b) { return a.txId < b.txId; });
  heard.erase (std::unique (heard.begin (), heard.end (),
                            [] (const Heard &a, const Heard &b) { return a.txId == b.txId; }),
               heard.end ());
  std::vector<Arrival> concurrent;
  for (const Heard &h : heard)
    concurrent.push_back (h.arrival);

  SicOutcome outcome = halfDuplex ? SicOutcome::None
                                  : NomaDataPhase (m_ap.ex, concurrent, m_cfg.channel);
  m_ap.ex.outcome = outcome;
  if (outcome == SicOutcome::Both)
    ++m_metrics.nomaSuccesses;

  ExchangeRecord rec;
  rec.time = m_engine.Now ();
  rec.primary = m_ap.ex.primary;
  rec.primaryMcs = m_ap.ex.primaryMcs.index;
  rec.primaryAirtime = m_ap.ex.primaryAirtime;
  if (m_ap.ex.secondary)
    {
      rec.secondary = *m_ap.ex.secondary;
      rec.secondaryMcs = m_ap.ex.secondaryMcs.index;
      rec.secondaryBits = m_ap.ex.secondaryPayloadBits;
      rec.secondaryAirtime = m_ap.ex.secondaryAirtime;
      rec.nomaSnrDb = m_ap.ex.nomaSnrDb;
    }
  rec.outcome = outcome;
  m_exchanges.push_back (rec);

  auto ack = NomaAck (outcome, m_ap.ex, m_cfg.edca);
  if (!ack)
    {
      m_ap.active = false;
      return;
    }
  // A secondary that never arrived gets no acknowledgment.
  if (ack->kind == FrameKind::NomaAck && !m_ap.secondaryRx)
    throw std::logic_error ("NOMA ACK without a secondary frame");
  Frame f = *ack;
  m_engine.Schedule (m_engine.Now () + m_cfg.edca.sifs, EventKind::TxStart, kApId,
                     [this, f] { StartTransmission (kApId, f); },
                     m_engine.Tracing () ? Describe (f) : std::string ());
}

void
BssSimulation::ApExchangeTimeout ()
{
  ExchangeRecord rec;
  rec.time = m_engine.Now ();
  rec.primary = m_ap.ex.primary;
  rec.primaryMcs = m_ap.ex.primaryMcs.index;
  rec.primaryAirtime = m_ap.ex.primaryAirtime;
  if (m_ap.ex.secondary)
    {
      rec.secondary = *m_ap.ex.secondary;
      rec.secondaryMcs = m_ap.ex.secondaryMcs.index;
      rec.secondaryBits = m_ap.ex.secondaryPayloadBits;
      rec.secondaryAirtime = m_ap.ex.secondaryAirtime;
      rec.nomaSnrDb = m_ap.ex.nomaSnrDb;
    }
  rec.outcome = SicOutcome::None;
  m_exchanges.push_back (rec);
  m_ap.active = false;
}

} // namespace nomasim

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "nomasim/edca.h"
#include "nomasim/engine.h"
#include "nomasim/metrics.h"
#include "nomasim/noma_rs.h"
#include "nomasim/policy.h"
#include "nomasim/radio.h"
#include "nomasim/rng.h"

namespace nomasim {

struct BssConfig
{
  ChannelParams channel = DefaultChannel ();
  EdcaParams edca;
  McsTable table = McsTable::Default ();
  PolicyKind policy = PolicyKind::Disabled;
  TrackerMode tracker = TrackerMode::Cumulative;
  double ewmaTauS = 1.0;
  SimTime duration = SimTime::Seconds (10.0);
};

// Whether the NOMA RS overlay is compiled into the MAC at all. With
// Overlay::Attached and PolicyKind::Disabled the overlay is present but idle;
// the resulting run must be indistinguishable from Overlay::None.
enum class Overlay
{
  None,
  Attached,
};

// One infrastructure BSS: the AP at positions[0], STAs at positions[1..N], all
// saturated, uplink only. Carrier sense and decodability share the MCS-0
// coverage range. Single-threaded; one instance per run.
class BssSimulation
{
public:
  BssSimulation (BssConfig config, std::vector<Position> positions, Rng rng,
                 Overlay overlay = Overlay::Attached);

  RunMetrics Run ();

  void SetTrace (std::ostream *out) { m_engine.SetTrace (out); }
  Engine &GetEngine () { return m_engine; }

  const std::vector<ExchangeRecord> &Exchanges () const { return m_exchanges; }
  // Indexed by node id; entry 0 is a placeholder for the AP.
  const std::vector<StaState> &Stas () const { return m_stas; }
  const std::vector<Position> &Positions () const { return m_positions; }
  const std::set<int> &ObservedCw () const { return m_cwSeen; }
  uint64_t CheckedTxops () const { return m_checkedTxops; }
  // Union of all on-air intervals, and the plain sum of all frame airtimes.
  SimTime BusyTime () const { return m_busyTime; }
  SimTime AirtimeSum () const { return m_airtimeSum; }
  bool NomaActive () const { return m_nomaActive; }

private:
  enum class Phase
  {
    Contending,
    WaitCts,
    AwaitDataTx,
    WaitAck,
    Candidate,
    AwaitSecondaryTx,
    SecondaryWaitAck,
    Delivering,
  };

  struct Heard
  {
    uint64_t txId;
    Arrival arrival;
  };

  struct Reception
  {
    Heard heard;
    bool halfDuplex = false;
    std::vector<Heard> overlaps;
    bool Clean () const { return !halfDuplex && overlaps.empty (); }
  };

  struct NodeRuntime
  {
    std::vector<NodeId> neighbors;
    int audible = 0;
    SimTime idleSince;
    SimTime busySince = SimTime::Max ();
    bool transmitting = false;
    Phase phase = Phase::Contending;
    EventHandle txEvent;
    SimTime countdownStart;
    SimTime txAt;
    EventHandle navEvent;
    EventHandle timeout;
    std::vector<Reception> rx;
    NomaCandidate candidacy;
    SimTime candidacyPrimaryAirtime;
  };

  struct Transmission
  {
    NodeId src;
    Frame frame;
    SimTime start;
  };

  struct ApExchange
  {
    bool active = false;
    NomaExchange ex;
    SimTime windowStart;
    SimTime windowEnd;
    std::vector<NomaCandidate> rsHeard;
    std::optional<Reception> primaryRx;
    std::optional<Reception> secondaryRx;
    EventHandle watchdog;
  };

  void UpdateContention (NodeId id);
  void LeaveContention (NodeId id);
  void SetNav (NodeId id, SimTime until);
  void OnBackoffExpiry (NodeId id);

  void StartTransmission (NodeId src, const Frame &frame);
  void OnTxEnd (uint64_t txId);
  void OnStaReceive (NodeId id, const Reception &rec);
  void TryCandidacy (NodeId id, NodeId primary);
  void SendPrimaryData (NodeId id);
  void SendSecondaryData (NodeId id);
  void OnPrimaryFailure (NodeId id);
  void RecordCw (int cw) { m_cwSeen.insert (cw); }

  void OnApReceive (const Reception &rec);
  void ApStartExchange (NodeId primary);
  void ApCloseWindow ();
  void ApSendCts ();
  void ApMaybeResolve ();
  void ApResolveData (const Reception &primaryRx);
  void ApExchangeTimeout ();

  std::string Describe (const Frame &f) const;

  BssConfig m_cfg;
  std::vector<Position> m_positions;
  Rng m_rng;
  bool m_nomaActive;
  ControlTiming m_timing;
  Engine m_engine;

  std::vector<StaState> m_stas;
  std::vector<NodeRuntime> m_nodes;
  std::vector<std::vector<RxPower>> m_rxPower; // [src][dst]
  std::vector<SimTime> m_dataAirtime;
  RsAssignment m_rs;
  RateTracker m_tracker;

  std::unordered_map<uint64_t, Transmission> m_onAir;
  uint64_t m_nextTxId = 1;
  ApExchange m_ap;

  RunMetrics m_metrics;
  std::vector<ExchangeRecord> m_exchanges;
  std::set<int> m_cwSeen;
  uint64_t m_checkedTxops = 0;
  SimTime m_busyTime;
  SimTime m_busySince;
  SimTime m_airtimeSum;
};

} // namespace nomasim

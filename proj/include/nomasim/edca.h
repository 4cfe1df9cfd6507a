#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nomasim/engine.h"
#include "nomasim/radio.h"
#include "nomasim/rng.h"
#include "nomasim/sim_time.h"

namespace nomasim {

// Single access category. Durations are configurable; defaults are the
// 802.11ax values used throughout the experiments.
struct EdcaParams
{
  int cwMin = 16;
  int cwMax = 1024;
  SimTime slot = SimTime::Micros (9);
  SimTime sifs = SimTime::Micros (16);
  SimTime aifs = SimTime::Micros (34);
  SimTime ack = SimTime::Micros (44);
  int rtsBits = 160;
  int ctsBits = 112;
  int retryLimit = 7;
  int64_t payloadBits = 65536; // 8 KB MPDU
  SimTime dataPreamble = SimTime::Micros (40);
  SimTime controlPreamble = SimTime::Micros (20);
  SimTime rsDuration = SimTime::Micros (4);

  void Validate () const;
};

// Control-frame durations derived from EdcaParams. RTS/CTS go out at the
// MCS-0 rate.
struct ControlTiming
{
  SimTime rts;
  SimTime cts;
  SimTime ctsRs; // CTS with the selected RS appended
  SimTime ack;
  McsEntry control;

  static ControlTiming From (const EdcaParams &edca, const McsTable &table);
};

enum class FrameKind : uint8_t
{
  Rts,
  CtsRs, // CTS, optionally carrying the selected secondary's RS
  Data,
  Ack,
  NomaAck,
  Rs,
};

std::string_view ToString (FrameKind kind);

struct Frame
{
  FrameKind kind = FrameKind::Rts;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  McsEntry mcs;
  int64_t payloadBits = 0;
  SimTime duration;
  SimTime navGrant; // reservation beyond the end of this frame
  NodeId secondary = kNoNode; // CtsRs: selected secondary; NomaAck: acked secondary
  int64_t secondaryBits = 0; // NomaAck: bits acknowledged for the secondary
};

struct StaState
{
  NodeId id = kNoNode;
  Position position;
  int backoffCounter = 0;
  int cw = 16;
  int retryCount = 0;
  SimTime navUntil;
  int rsId = -1;
  McsEntry mcs;
  bool saturated = true;
  int64_t deliveredBits = 0;
};

// Uniform on [0, cw - 1].
int DrawBackoff (int cw, Rng &rng);

enum class SlotAction
{
  Decremented,
  Transmit,
  Frozen,
};

struct SlotResult
{
  StaState sta;
  SlotAction action;
};

// One slot boundary of the backoff procedure.
SlotResult OnSlotBoundary (StaState sta, bool mediumIdle);

// Whole idle slots completed between countdownStart and now.
int64_t SlotsElapsed (SimTime countdownStart, SimTime now, SimTime slot);

// Reservation carried by an RTS: the complete exchange that follows it. With
// an RS window the worst case (window plus CTS with RS echo) is reserved.
SimTime RtsNavGrant (const EdcaParams &edca, const ControlTiming &timing, SimTime dataAirtime,
                     bool rsWindow);
SimTime CtsNavGrant (const EdcaParams &edca, SimTime dataAirtime);

// Throws std::logic_error unless the counter is zero, the NAV has expired and
// the medium is idle.
Frame StartTxop (const StaState &sta, SimTime now, bool mediumIdle, const EdcaParams &edca,
                 const ControlTiming &timing, SimTime dataAirtime, bool rsWindow);

struct FailureResult
{
  StaState sta;
  bool dropped;
};

// Binary exponential backoff. Past the retry limit the frame is dropped and
// the window resets (the saturated queue supplies the next frame).
FailureResult OnFailure (StaState sta, const EdcaParams &edca, Rng &rng);

// Credits the MPDU bits, resets the window and draws a fresh backoff.
StaState OnSuccess (StaState sta, int64_t deliveredBits, const EdcaParams &edca, Rng &rng);

// A frame as seen by the AP.
struct Arrival
{
  Frame frame;
  RxPower rx;
};

struct NomaPair
{
  NodeId primary = kNoNode;
  NodeId secondary = kNoNode;
};

struct ApDecode
{
  SicOutcome outcome = SicOutcome::None;
  std::vector<NodeId> decoded;
};

// Decodes a set of frames that overlapped in time at the AP. One frame decodes
// on its own SNR; the scheduled NOMA pair goes through SIC; anything else is a
// collision and loses every frame.
ApDecode ApReceive (std::span<const Arrival> concurrent, std::optional<NomaPair> pair,
                    const ChannelParams &channel);

} // namespace nomasim

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "nomasim/edca.h"
#include "nomasim/policy.h"
#include "nomasim/radio.h"

namespace nomasim {

// Reservation-signal ids handed out at association. Injective: every STA owns
// exactly one orthogonal RS.
class RsAssignment
{
public:
  RsAssignment () = default;
  // STA i (ids 1..n) gets RS i-1.
  static RsAssignment Sequential (int nStas);

  void Assign (NodeId node, int rsId);
  int RsOf (NodeId node) const;
  NodeId NodeOf (int rsId) const;
  size_t Size () const { return m_byNode.size (); }

private:
  std::unordered_map<NodeId, int> m_byNode;
  std::unordered_map<int, NodeId> m_byRs;
};

struct NomaCandidate
{
  NodeId node = kNoNode;
  double nomaSnrDb = 0;
  McsEntry nomaMcs;
  int64_t fillBits = 0; // whole MPDUs that fit inside the primary's data airtime
  double metric = 0;
};

// Everything a STA knows (or is assumed to know) when it overhears an RTS.
// positions is indexed by node id; the AP sits at kApId.
struct CandidacyContext
{
  std::span<const Position> positions;
  const ChannelParams &channel;
  const McsTable &table;
  const EdcaParams &edca;
};

// A STA that overheard the RTS volunteers as secondary iff it is within the
// primary's coverage, its NOMA SNR at the AP reaches gamma_min, and at least
// one full MPDU at its NOMA MCS fits in the primary's data airtime.
std::optional<NomaCandidate> EvaluateCandidacy (NodeId overhearer, NodeId rtsSrc,
                                                const CandidacyContext &ctx);

// RS ids the AP detects in the 4 us window: every candidate within AP coverage.
std::vector<int> RsWindow (std::span<const NomaCandidate> candidates,
                           const RsAssignment &assignment, std::span<const Position> positions,
                           const ChannelParams &channel);

// Highest metric wins; ties go to the lowest node id.
std::optional<NomaCandidate> SelectSecondary (std::span<const NomaCandidate> received);

// Fills in NomaCandidate::metric from the policy and the tracker.
void ScoreCandidates (std::span<NomaCandidate> candidates, PolicyKind policy,
                      std::span<const StaState> stas, const RateTracker &tracker, SimTime now);

Frame CtsWithRs (NodeId primary, const std::optional<NomaCandidate> &selected,
                 const ControlTiming &timing, SimTime navGrant);

// Largest k * mpduBits whose airtime at mcs stays within primaryDataAirtime.
int64_t SecondaryFill (SimTime primaryDataAirtime, const McsEntry &mcs, int64_t mpduBits,
                       SimTime preamble);

struct NomaExchange
{
  NodeId primary = kNoNode;
  std::optional<NodeId> secondary;
  McsEntry primaryMcs;
  SimTime primaryAirtime;
  McsEntry secondaryMcs;
  SimTime secondaryAirtime;
  int64_t secondaryPayloadBits = 0;
  double nomaSnrDb = 0;
  SicOutcome outcome = SicOutcome::None;
};

// AP-side decode at the end of the (possibly superposed) data phase.
SicOutcome NomaDataPhase (const NomaExchange &exchange, std::span<const Arrival> concurrent,
                          const ChannelParams &channel);

// Both -> one DL-NOMA ACK for the pair; PrimaryOnly -> plain ACK; None -> nothing.
std::optional<Frame> NomaAck (SicOutcome outcome, const NomaExchange &exchange,
                              const EdcaParams &edca);

} // namespace nomasim

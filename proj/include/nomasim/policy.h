#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nomasim/edca.h"
#include "nomasim/sim_time.h"

namespace nomasim {

enum class PolicyKind
{
  MaxRate,
  ProportionalFair,
  Disabled,
};

// "maxrate" | "pf" | "off"
PolicyKind ParsePolicy (std::string_view name);
std::string_view ToString (PolicyKind kind);

// MaxRate: r. ProportionalFair: r / max(R, epsilon).
double Metric (PolicyKind policy, double rateBps, double throughputBps, double epsilonBps = 1.0);

// Legacy (non-NOMA) data rate of a STA: the bitrate of its own MCS.
double RateOf (const StaState &sta);

enum class TrackerMode
{
  Cumulative, // delivered bits / time since window start
  Ewma,       // exponentially decaying average with time constant tau
};

TrackerMode ParseTrackerMode (std::string_view name);
std::string_view ToString (TrackerMode mode);

// Measured per-STA throughput R_i, indexed by node id.
class RateTracker
{
public:
  explicit RateTracker (size_t nodes, TrackerMode mode = TrackerMode::Cumulative,
                        SimTime windowStart = SimTime::Zero (), double ewmaTauS = 1.0,
                        double epsilonBps = 1.0);

  void Update (NodeId node, int64_t bits, SimTime now);
  double Throughput (NodeId node, SimTime now) const;
  int64_t Delivered (NodeId node) const { return m_delivered.at (node); }
  double Epsilon () const { return m_epsilon; }

private:
  TrackerMode m_mode;
  SimTime m_windowStart;
  double m_tau;
  double m_epsilon;
  std::vector<int64_t> m_delivered;
  std::vector<double> m_ewmaBps;
  std::vector<SimTime> m_ewmaAt;
};

} // namespace nomasim

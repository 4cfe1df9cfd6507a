#include "nomasim/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomasim {

PolicyKind
ParsePolicy (std::string_view name)
{
  if (name == "maxrate")
    return PolicyKind::MaxRate;
  if (name == "pf")
    return PolicyKind::ProportionalFair;
  if (name == "off")
    return PolicyKind::Disabled;
  throw std::invalid_argument ("unknown scheduler '" + std::string (name)
                               + "' (expected maxrate|pf|off)");
}

std::string_view
ToString (PolicyKind kind)
{
  switch (kind)
    {
    case PolicyKind::MaxRate: return "maxrate";
    case PolicyKind::ProportionalFair: return "pf";
    case PolicyKind::Disabled: return "off";
    }
  return "off";
}

double
Metric (PolicyKind policy, double rateBps, double throughputBps, double epsilonBps)
{
  if (!(rateBps > 0) || throughputBps < 0)
    throw std::invalid_argument ("Metric: need r > 0 and R >= 0");
  switch (policy)
    {
    case PolicyKind::MaxRate: return rateBps;
    case PolicyKind::ProportionalFair: return rateBps / std::max (throughputBps, epsilonBps);
    case PolicyKind::Disabled: break;
    }
  throw std::logic_error ("Metric: no metric with NOMA disabled");
}

double
RateOf (const StaState &sta)
{
  return sta.mcs.bitrateBps;
}

TrackerMode
ParseTrackerMode (std::string_view name)
{
  if (name == "cumulative")
    return TrackerMode::Cumulative;
  if (name == "ewma")
    return TrackerMode::Ewma;
  throw std::invalid_argument ("unknown rate tracker '" + std::string (name) + "'");
}

std::string_view
ToString (TrackerMode mode)
{
  return mode == TrackerMode::Ewma ? "ewma" : "cumulative";
}

RateTracker::RateTracker (size_t nodes, TrackerMode mode, SimTime windowStart, double ewmaTauS,
                          double epsilonBps)
    : m_mode (mode),
      m_windowStart (windowStart),
      m_tau (ewmaTauS),
      m_epsilon (epsilonBps),
      m_delivered (nodes, 0),
      m_ewmaBps (nodes, 0.0),
      m_ewmaAt (nodes, windowStart)
{
  if (mode == TrackerMode::Ewma && !(ewmaTauS > 0))
    throw std::invalid_argument ("RateTracker: ewma tau must be positive");
}

void
RateTracker::Update (NodeId node, int64_t bits, SimTime now)
{
  if (bits < 0)
    throw std::invalid_argument ("RateTracker::Update: negative bits");
  m_delivered.at (node) += bits;
  if (m_mode == TrackerMode::Ewma)
    {
      double dt = (now - m_ewmaAt[node]).ToSeconds ();
      m_ewmaBps[node] = m_ewmaBps[node] * std::exp (-dt / m_tau) + static_cast<double> (bits) / m_tau;
      m_ewmaAt[node] = now;
    }
}

double
RateTracker::Throughput (NodeId node, SimTime now) const
{
  if (m_mode == TrackerMode::Ewma)
    {
      double dt = (now - m_ewmaAt.at (node)).ToSeconds ();
      return m_ewmaBps[node] * std::exp (-dt / m_tau);
    }
  if (now <= m_windowStart)
    return 0.0;
  return static_cast<double> (m_delivered.at (node)) / (now - m_windowStart).ToSeconds ();
}

} // namespace nomasim

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nomasim/sim_time.h"

namespace nomasim {

using NodeId = int32_t;
inline constexpr NodeId kApId = 0;
inline constexpr NodeId kNoNode = -1;

enum class EventKind : uint8_t
{
  Generic,
  BackoffExpiry,
  TxStart,
  TxEnd,
  NavExpiry,
  CtsTimeout,
  AckTimeout,
  CandidateTimeout,
  RsWindowOpen,
  RsWindowClose,
  ExchangeTimeout,
  Delivery,
};

std::string_view ToString (EventKind kind);

struct EventHandle
{
  uint64_t seq = 0; // 0 = never scheduled
  bool IsValid () const { return seq != 0; }
};

// What the engine reports for each delivered event.
struct FiredEvent
{
  SimTime fireAt;
  uint64_t seq;
  EventKind kind;
  NodeId node;
  const std::string &detail;
};

// Deterministic future-event list. Equal fire times are delivered in
// insertion order.
class Engine
{
public:
  using Handler = std::function<void ()>;

  EventHandle Schedule (SimTime at, EventKind kind, NodeId node, Handler fn,
                        std::string detail = {});
  EventHandle ScheduleIn (SimTime delay, EventKind kind, NodeId node, Handler fn,
                          std::string detail = {})
  {
    return Schedule (m_now + delay, kind, node, std::move (fn), std::move (detail));
  }
  // True iff the event was still pending; it will now never fire.
  bool Cancel (EventHandle handle);
  bool IsPending (EventHandle handle) const { return m_live.count (handle.seq) != 0; }

  // Processes every event with fire time <= end, then parks the clock at end.
  SimTime RunUntil (SimTime end);

  SimTime Now () const { return m_now; }

  // Tab-separated trace: time_us, node_id, event_kind, detail.
  void SetTrace (std::ostream *out) { m_trace = out; }
  bool Tracing () const { return m_trace != nullptr; }
  void SetObserver (std::function<void (const FiredEvent &)> observer)
  {
    m_observer = std::move (observer);
  }

  uint64_t ScheduledCount () const { return m_scheduled; }
  uint64_t FiredCount () const { return m_fired; }
  uint64_t CancelledCount () const { return m_cancelled; }
  uint64_t PendingCount () const { return m_live.size (); }

private:
  struct Entry
  {
    SimTime fireAt;
    uint64_t seq;
    EventKind kind;
    NodeId node;
    std::string detail;
    Handler fn;
  };
  struct Later
  {
    bool operator() (const Entry &a, const Entry &b) const
    {
      if (a.fireAt != b.fireAt)
        return a.fireAt > b.fireAt;
      return a.seq > b.seq;
    }
  };

  SimTime m_now;
  uint64_t m_nextSeq = 1;
  std::vector<Entry> m_heap;
  std::unordered_set<uint64_t> m_live;
  std::ostream *m_trace = nullptr;
  std::function<void (const FiredEvent &)> m_observer;
  uint64_t m_scheduled = 0;
  uint64_t m_fired = 0;
  uint64_t m_cancelled = 0;
};

} // namespace nomasim

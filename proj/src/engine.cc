#include "nomasim/engine.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace nomasim {

std::string_view
ToString (EventKind kind)
{
  switch (kind)
    {
    case EventKind::Generic: return "generic";
    case EventKind::BackoffExpiry: return "backoff_expiry";
    case EventKind::TxStart: return "tx_start";
    case EventKind::TxEnd: return "tx_end";
    case EventKind::NavExpiry: return "nav_expiry";
    case EventKind::CtsTimeout: return "cts_timeout";
    case EventKind::AckTimeout: return "ack_timeout";
    case EventKind::CandidateTimeout: return "candidate_timeout";
    case EventKind::RsWindowOpen: return "rs_window_open";
    case EventKind::RsWindowClose: return "rs_window_close";
    case EventKind::ExchangeTimeout: return "exchange_timeout";
    case EventKind::Delivery: return "delivery";
    }
  return "unknown";
}

EventHandle
Engine::Schedule (SimTime at, EventKind kind, NodeId node, Handler fn, std::string detail)
{
  if (at < m_now)
    throw std::logic_error ("Engine::Schedule: event in the past at " + FormatMicros (at)
                            + " us, clock " + FormatMicros (m_now) + " us");
  uint64_t seq = m_nextSeq++;
  m_heap.push_back (Entry{at, seq, kind, node, std::move (detail), std::move (fn)});
  std::push_heap (m_heap.begin (), m_heap.end (), Later{});
  m_live.insert (seq);
  ++m_scheduled;
  return EventHandle{seq};
}

bool
Engine::Cancel (EventHandle handle)
{
  if (m_live.erase (handle.seq) == 0)
    return false;
  ++m_cancelled;
  return true;
}

SimTime
Engine::RunUntil (SimTime end)
{
  if (end < m_now)
    throw std::logic_error ("Engine::RunUntil: end precedes clock");
  while (!m_heap.empty () && m_heap.front ().fireAt <= end)
    {
      std::pop_heap (m_heap.begin (), m_heap.end (), Later{});
      Entry e = std::move (m_heap.back ());
      m_heap.pop_back ();
      if (m_live.erase (e.seq) == 0)
        continue; // cancelled
      m_now = e.fireAt;
      ++m_fired;
      if (m_trace)
        *m_trace << FormatMicros (e.fireAt) << '\t' << e.node << '\t' << ToString (e.kind) << '\t'
                 << e.detail << '\n';
      if (m_observer)
        m_observer (FiredEvent{e.fireAt, e.seq, e.kind, e.node, e.detail});
      e.fn ();
    }
  m_now = end;
  return m_now;
}

} // namespace nomasim

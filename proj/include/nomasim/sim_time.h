#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace nomasim {

// Virtual time. Integer nanoseconds so that every protocol constant and every
// rounded airtime is exact; rendered in microseconds.
class SimTime
{
public:
  constexpr SimTime () = default;

  static constexpr SimTime Nanos (int64_t ns) { return SimTime (ns); }
  static constexpr SimTime Micros (int64_t us) { return SimTime (us * 1000); }
  static constexpr SimTime Zero () { return SimTime (0); }
  static constexpr SimTime Max () { return SimTime (std::numeric_limits<int64_t>::max ()); }
  // Rounds up to the next whole nanosecond.
  static SimTime MicrosCeil (double us);
  static SimTime Seconds (double s);

  constexpr int64_t ns () const { return m_ns; }
  double ToMicros () const { return static_cast<double> (m_ns) / 1e3; }
  double ToSeconds () const { return static_cast<double> (m_ns) / 1e9; }

  constexpr SimTime operator+ (SimTime o) const { return SimTime (m_ns + o.m_ns); }
  constexpr SimTime operator- (SimTime o) const { return SimTime (m_ns - o.m_ns); }
  constexpr SimTime operator* (int64_t k) const { return SimTime (m_ns * k); }
  constexpr int64_t operator/ (SimTime o) const { return m_ns / o.m_ns; }
  SimTime &operator+= (SimTime o) { m_ns += o.m_ns; return *this; }

  constexpr auto operator<=> (const SimTime &) const = default;

private:
  constexpr explicit SimTime (int64_t ns) : m_ns (ns) {}
  int64_t m_ns = 0;
};

// "1234.567" -- exact, three decimals.
std::string FormatMicros (SimTime t);

} // namespace nomasim

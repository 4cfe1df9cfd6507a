#include "nomasim/sim_time.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nomasim {

SimTime
SimTime::MicrosCeil (double us)
{
  if (!std::isfinite (us) || us < 0)
    throw std::domain_error ("SimTime::MicrosCeil: invalid duration");
  // Absorb representation noise so that exact values do not gain a nanosecond.
  double ns = us * 1e3;
  return SimTime (static_cast<int64_t> (std::ceil (ns - 1e-6)));
}

SimTime
SimTime::Seconds (double s)
{
  if (!std::isfinite (s) || s < 0)
    throw std::domain_error ("SimTime::Seconds: invalid duration");
  return SimTime (static_cast<int64_t> (std::llround (s * 1e9)));
}

std::string
FormatMicros (SimTime t)
{
  int64_t ns = t.ns ();
  char buf[48];
  const char *sign = ns < 0 ? "-" : "";
  int64_t a = ns < 0 ? -ns : ns;
  std::snprintf (buf, sizeof buf, "%s%lld.%03lld", sign, static_cast<long long> (a / 1000),
                 static_cast<long long> (a % 1000));
  return buf;
}

} // namespace nomasim

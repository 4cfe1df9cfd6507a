#include "nomasim/rng.h"

#include <stdexcept>

namespace nomasim {

uint64_t
Rng::UniformInt (uint64_t n)
{
  if (n == 0)
    throw std::invalid_argument ("Rng::UniformInt: empty range");
  // Smallest x such that [x, 2^64) holds a whole number of copies of [0, n).
  const uint64_t threshold = (0 - n) % n;
  for (;;)
    {
      uint64_t x = m_engine ();
      if (x >= threshold)
        return x % n;
    }
}

double
Rng::UniformReal ()
{
  return static_cast<double> (m_engine () >> 11) * 0x1.0p-53;
}

} // namespace nomasim

#pragma once

#include <cstdint>
#include <random>

namespace nomasim {

// One stream per simulation run.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Distributions are implemented here rather than taken from <random>
// because the standard library distributions are not portable across vendors:
//   UniformInt(n)  -- rejection sampling on raw 64-bit draws, unbiased, consumes
//                     one draw except on (rare) rejection;
//   UniformReal()  -- top 53 bits of one draw scaled to [0, 1).
// A run consumes the stream in a fixed order: topology first, then MAC backoff
// draws in event order.
class Rng
{
public:
  explicit Rng (uint64_t seed) : m_seed (seed), m_engine (seed) {}

  uint64_t NextU64 () { return m_engine (); }
  // Uniform on [0, n). n must be positive.
  uint64_t UniformInt (uint64_t n);
  double UniformReal ();

  uint64_t Seed () const { return m_seed; }

private:
  uint64_t m_seed;
  std::mt19937_64 m_engine;
};

} // namespace nomasim

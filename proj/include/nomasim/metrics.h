#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nomasim/engine.h"
#include "nomasim/radio.h"
#include "nomasim/sim_time.h"

namespace nomasim {

// delivered / simTime in bit/s. Throws std::domain_error for a zero duration.
double PerStaThroughput (int64_t deliveredBits, SimTime simTime);

// (prod x_i)^(1/n) via exp(mean(log x)); any zero entry gives exactly 0.
double Geomean (std::span<const double> values);

struct RunMetrics
{
  std::vector<int64_t> deliveredBits; // index i -> STA i + 1
  SimTime simTime;
  uint64_t attempts = 0;      // RTS transmissions
  uint64_t collisions = 0;    // failed primary attempts (CTS or ACK timeout)
  uint64_t drops = 0;         // frames discarded past the retry limit
  uint64_t nomaExchanges = 0; // CTS carried a secondary's RS
  uint64_t nomaSuccesses = 0; // both frames decoded and NOMA-acked

  std::vector<double> Throughputs () const;
  double AggregateBps () const;
  double GeomeanBps () const;
};

// One row of a sweep: mean and standard error over the seeded runs.
struct SweepRow
{
  int nStas = 0;
  double radiusM = 0;
  std::string scheduler;
  int runs = 0;
  double aggMeanBps = 0;
  double aggStderrBps = 0;
  double geomeanMeanBps = 0;
  double geomeanStderrBps = 0;
  double nomaSuccessRate = 0; // successes / NOMA exchanges, 0 when none
};

SweepRow Summarize (int nStas, double radiusM, std::string scheduler,
                    std::span<const RunMetrics> runs);

enum class ExportFormat
{
  Csv,
  Json,
};

ExportFormat ParseFormat (std::string_view name);

void WriteCsv (std::ostream &out, std::span<const SweepRow> rows);
void WriteJson (std::ostream &out, std::span<const SweepRow> rows);
std::vector<SweepRow> ReadJson (std::istream &in);
// Throws std::runtime_error naming the path on I/O failure.
void Export (std::span<const SweepRow> rows, ExportFormat format, const std::string &path);

// Per-exchange record, written by the AP when the data phase resolves.
struct ExchangeRecord
{
  SimTime time;
  NodeId primary = kNoNode;
  NodeId secondary = kNoNode;
  int primaryMcs = -1;
  int secondaryMcs = -1;
  int64_t secondaryBits = 0;
  SicOutcome outcome = SicOutcome::None;
  double nomaSnrDb = 0;
  SimTime primaryAirtime;
  SimTime secondaryAirtime;
};

// time_us, primary_id, secondary_id, primary_mcs, secondary_mcs, secondary_bits, outcome
void WriteExchangeCsv (std::ostream &out, std::span<const ExchangeRecord> records);

} // namespace nomasim

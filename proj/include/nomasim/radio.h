#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nomasim/sim_time.h"

namespace nomasim {

// Log-distance channel. pl0Db defaults to the value that puts the MCS-0 decode
// range at exactly 95 m for the default power budget (see CalibratedPl0).
struct ChannelParams
{
  double txPowerDbm = 16.0;
  double noiseDbm = -90.0;
  double pl0Db = 0.0;
  double d0M = 1.0;
  double beta = 2.6;
  double gammaMinDb = 3.9;
  double bandwidthHz = 20e6; // informational

  void Validate () const;
};

// PL_0 such that the received SNR equals gammaMinDb at rangeM.
double CalibratedPl0 (double txPowerDbm, double noiseDbm, double gammaMinDb, double beta,
                      double d0M, double rangeM);

inline constexpr double kDefaultCoverageRangeM = 95.0;

ChannelParams DefaultChannel ();

struct McsEntry
{
  int index = 0;
  double bitrateBps = 0;
  double snrThresholdDb = 0;

  bool operator== (const McsEntry &) const = default;
};

// Rows sorted by index, thresholds and bitrates strictly increasing.
class McsTable
{
public:
  explicit McsTable (std::vector<McsEntry> rows);

  // 802.11ax, 20 MHz, rows 0..11.
  static McsTable Default ();
  // Three columns: index, bitrate_mbps, snr_db. '#' comments and a
  // non-numeric header line are skipped.
  static McsTable FromCsv (std::istream &in);
  static McsTable FromCsvFile (const std::string &path);

  std::span<const McsEntry> Rows () const { return m_rows; }
  const McsEntry &Lowest () const { return m_rows.front (); }
  const McsEntry &At (int index) const;
  size_t Size () const { return m_rows.size (); }

private:
  std::vector<McsEntry> m_rows;
};

struct Position
{
  double x = 0;
  double y = 0;
};

double Distance (Position a, Position b);

// Slack for threshold comparisons on computed dB values, so calibrated
// boundaries (e.g. SNR at exactly the coverage range) land on the inclusive side.
inline constexpr double kDbTolerance = 1e-9;

struct RxPower
{
  double valueDbm = 0;
};

// PL_0 + 10 beta log10(d / d0), clamped to PL_0 below d0. Throws
// std::domain_error for d <= 0.
double PathLossDb (double distanceM, const ChannelParams &p);
RxPower RxPowerDbm (double distanceM, const ChannelParams &p);
double SnrDb (RxPower rx, const ChannelParams &p);
// P_j / (P_n + P_i), evaluated in linear milliwatts.
double NomaSnrDb (RxPower secondary, RxPower primary, const ChannelParams &p);

// Highest row whose threshold is <= snr.
std::optional<McsEntry> SelectMcs (double snrDb, const McsTable &table);

// preamble + bits / bitrate, rounded up to whole nanoseconds.
SimTime Airtime (int64_t payloadBits, const McsEntry &mcs, SimTime preamble);

bool InCoverage (double distanceM, const ChannelParams &p);
// Distance at which the legacy SNR falls to gammaMinDb.
double CoverageRangeM (const ChannelParams &p);

enum class SicOutcome
{
  Both,
  PrimaryOnly,
  None,
};

std::string_view ToString (SicOutcome o);

// Two-stage successive interference cancellation at the AP. The secondary is
// the stronger signal and is decoded first with the primary as noise; after
// perfect cancellation the primary is decoded against noise alone.
SicOutcome SicDecode (RxPower primaryRx, const McsEntry &primaryMcs, RxPower secondaryRx,
                      const McsEntry &secondaryMcs, const ChannelParams &p);
// No secondary transmitted: plain single-frame decode.
SicOutcome SicDecode (RxPower primaryRx, const McsEntry &primaryMcs, const ChannelParams &p);

} // namespace nomasim

#include "nomasim/radio.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nomasim {

namespace {

double
DbmToMw (double dbm)
{
  return std::pow (10.0, dbm / 10.0);
}

} // namespace

void
ChannelParams::Validate () const
{
  if (!(d0M > 0))
    throw std::invalid_argument ("ChannelParams: d0_m must be positive");
  if (!(beta > 0))
    throw std::invalid_argument ("ChannelParams: beta must be positive");
  if (!std::isfinite (txPowerDbm) || !std::isfinite (noiseDbm) || !std::isfinite (pl0Db))
    throw std::invalid_argument ("ChannelParams: non-finite power or loss");
}

double
CalibratedPl0 (double txPowerDbm, double noiseDbm, double gammaMinDb, double beta, double d0M,
               double rangeM)
{
  return txPowerDbm - noiseDbm - gammaMinDb - 10.0 * beta * std::log10 (rangeM / d0M);
}

ChannelParams
DefaultChannel ()
{
  ChannelParams p;
  p.pl0Db = CalibratedPl0 (p.txPowerDbm, p.noiseDbm, p.gammaMinDb, p.beta, p.d0M,
                           kDefaultCoverageRangeM);
  return p;
}

McsTable::McsTable (std::vector<McsEntry> rows) : m_rows (std::move (rows))
{
  if (m_rows.empty ())
    throw std::invalid_argument ("McsTable: no rows");
  std::sort (m_rows.begin (), m_rows.end (),
             [] (const McsEntry &a, const McsEntry &b) { return a.index < b.index; });
  for (size_t i = 0; i < m_rows.size (); ++i)
    {
      const McsEntry &r = m_rows[i];
      if (r.index != static_cast<int> (i))
        throw std::invalid_argument ("McsTable: indices must be 0..n-1");
      if (!(r.bitrateBps > 0))
        throw std::invalid_argument ("McsTable: bitrate must be positive");
      if (i > 0)
        {
          if (!(r.snrThresholdDb > m_rows[i - 1].snrThresholdDb))
            throw std::invalid_argument ("McsTable: thresholds must strictly increase");
          if (!(r.bitrateBps > m_rows[i - 1].bitrateBps))
            throw std::invalid_argument ("McsTable: bitrates must strictly increase");
        }
    }
}

McsTable
McsTable::Default ()
{
  return McsTable ({
      {0, 8.6e6, 3.9},
      {1, 17.2e6, 6.9},
      {2, 25.8e6, 9.9},
      {3, 34.4e6, 13.5},
      {4, 51.6e6, 16.6},
      {5, 68.8e6, 21.4},
      {6, 77.4e6, 22.6},
      {7, 86.0e6, 23.8},
      {8, 103.2e6, 28.5},
      {9, 114.7e6, 29.7},
      {10, 129.0e6, 33.2},
      {11, 143.4e6, 35.1},
  });
}

McsTable
McsTable::FromCsv (std::istream &in)
{
  std::vector<McsEntry> rows;
  std::string line;
  int lineNo = 0;
  while (std::getline (in, line))
    {
      ++lineNo;
      auto hash = line.find ('#');
      if (hash != std::string::npos)
        line.erase (hash);
      if (line.find_first_not_of (" \t\r") == std::string::npos)
        continue;
      std::replace (line.begin (), line.end (), ',', ' ');
      std::istringstream fields (line);
      double idx, mbps, snr;
      if (!(fields >> idx >> mbps >> snr))
        {
          if (rows.empty ())
            continue; // header
          throw std::runtime_error ("McsTable: malformed row at line " + std::to_string (lineNo));
        }
      rows.push_back ({static_cast<int> (idx), mbps * 1e6, snr});
    }
  return McsTable (std::move (rows));
}

McsTable
McsTable::FromCsvFile (const std::string &path)
{
  std::ifstream in (path);
  if (!in)
    throw std::runtime_error ("McsTable: cannot open " + path);
  return FromCsv (in);
}

const McsEntry &
McsTable::At (int index) const
{
  if (index < 0 || index >= static_cast<int> (m_rows.size ()))
    throw std::out_of_range ("McsTable: no MCS " + std::to_string (index));
  return m_rows[index];
}

double
Distance (Position a, Position b)
{
  return std::hypot (a.x - b.x, a.y - b.y);
}

double
PathLossDb (double distanceM, const ChannelParams &p)
{
  if (!(distanceM > 0))
    throw std::domain_error ("PathLossDb: distance must be positive");
  double d = std::max (distanceM, p.d0M);
  return p.pl0Db + 10.0 * p.beta * std::log10 (d / p.d0M);
}

RxPower
RxPowerDbm (double distanceM, const ChannelParams &p)
{
  return RxPower{p.txPowerDbm - PathLossDb (distanceM, p)};
}

double
SnrDb (RxPower rx, const ChannelParams &p)
{
  return rx.valueDbm - p.noiseDbm;
}

double
NomaSnrDb (RxPower secondary, RxPower primary, const ChannelParams &p)
{
  double pj = DbmToMw (secondary.valueDbm);
  double pi = DbmToMw (primary.valueDbm);
  double pn = DbmToMw (p.noiseDbm);
  return 10.0 * std::log10 (pj / (pn + pi));
}

std::optional<McsEntry>
SelectMcs (double snrDb, const McsTable &table)
{
  std::optional<McsEntry> best;
  for (const McsEntry &row : table.Rows ())
    {
      if (row.snrThresholdDb <= snrDb + kDbTolerance)
        best = row;
      else
        break;
    }
  return best;
}

SimTime
Airtime (int64_t payloadBits, const McsEntry &mcs, SimTime preamble)
{
  if (payloadBits < 0)
    throw std::domain_error ("Airtime: negative payload");
  if (payloadBits == 0)
    return preamble;
  return preamble + SimTime::MicrosCeil (static_cast<double> (payloadBits) * 1e6 / mcs.bitrateBps);
}

bool
InCoverage (double distanceM, const ChannelParams &p)
{
  return SnrDb (RxPowerDbm (distanceM, p), p) >= p.gammaMinDb - kDbTolerance;
}

double
CoverageRangeM (const ChannelParams &p)
{
  double budget = p.txPowerDbm - p.noiseDbm - p.gammaMinDb - p.pl0Db;
  return p.d0M * std::pow (10.0, budget / (10.0 * p.beta));
}

std::string_view
ToString (SicOutcome o)
{
  switch (o)
    {
    case SicOutcome::Both: return "both";
    case SicOutcome::PrimaryOnly: return "primary_only";
    case SicOutcome::None: return "none";
    }
  return "none";
}

SicOutcome
SicDecode (RxPower primaryRx, const McsEntry &primaryMcs, RxPower secondaryRx,
           const McsEntry &secondaryMcs, const ChannelParams &p)
{
  if (NomaSnrDb (secondaryRx, primaryRx, p) < secondaryMcs.snrThresholdDb - kDbTolerance)
    return SicOutcome::None;
  if (SnrDb (primaryRx, p) < primaryMcs.snrThresholdDb - kDbTolerance)
    return SicOutcome::None;
  return SicOutcome::Both;
}

SicOutcome
SicDecode (RxPower primaryRx, const McsEntry &primaryMcs, const ChannelParams &p)
{
  return SnrDb (primaryRx, p) >= primaryMcs.snrThresholdDb - kDbTolerance ? SicOutcome::PrimaryOnly
                                                            : SicOutcome::None;
}

} // namespace nomasim

#include "nomasim/scenario.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nomasim {

void
ScenarioConfig::Validate () const
{
  if (nStas < 1)
    throw std::invalid_argument ("n_stas must be >= 1");
  if (!(radiusM > 0))
    throw std::invalid_argument ("radius_m must be positive");
  if (!(simTimeS > 0))
    throw std::invalid_argument ("sim_time_s must be positive");
  if (nRuns < 0)
    throw std::invalid_argument ("n_runs must be >= 0");
  channel.Validate ();
  edca.Validate ();
  if (std::abs (channel.gammaMinDb - table.Lowest ().snrThresholdDb) > 1e-9)
    throw std::invalid_argument ("gamma_min_db must equal the MCS-0 threshold of the table");
}

BssConfig
ScenarioConfig::ToBss () const
{
  BssConfig b;
  b.channel = channel;
  b.edca = edca;
  b.table = table;
  b.policy = policy;
  b.tracker = tracker;
  b.ewmaTauS = ewmaTauS;
  b.duration = SimTime::Seconds (simTimeS);
  return b;
}

std::vector<Position>
Topology::Nodes () const
{
  std::vector<Position> all{ap};
  all.insert (all.end (), stas.begin (), stas.end ());
  return all;
}

Topology
GenerateTopology (const ScenarioConfig &cfg, Rng &rng)
{
  Topology t;
  t.stas.reserve (cfg.nStas);
  if (cfg.placement == Placement::Ring)
    {
      for (int i = 0; i < cfg.nStas; ++i)
        {
          double theta = 2.0 * std::numbers::pi * i / cfg.nStas;
          t.stas.push_back ({cfg.radiusM * std::cos (theta), cfg.radiusM * std::sin (theta)});
        }
      return t;
    }
  while (static_cast<int> (t.stas.size ()) < cfg.nStas)
    {
      double r = cfg.radiusM * std::sqrt (rng.UniformReal ());
      double theta = 2.0 * std::numbers::pi * rng.UniformReal ();
      Position p{r * std::cos (theta), r * std::sin (theta)};
      double d = Distance (p, t.ap);
      // A STA on top of the AP still needs a positive distance.
      if (d > 0 && !InCoverage (d, cfg.channel))
        {
          ++t.resampled;
          continue;
        }
      t.stas.push_back (p);
    }
  return t;
}

RunOutput
RunOnce (const ScenarioConfig &cfg, int runIndex, std::ostream *trace, Overlay overlay)
{
  Rng rng (cfg.baseSeed + static_cast<uint64_t> (runIndex));
  Topology topo = GenerateTopology (cfg, rng);
  BssSimulation sim (cfg.ToBss (), topo.Nodes (), std::move (rng), overlay);
  sim.SetTrace (trace);
  RunOutput out;
  out.metrics = sim.Run ();
  out.exchanges = sim.Exchanges ();
  return out;
}

std::vector<RunMetrics>
RunBatch (const ScenarioConfig &cfg, unsigned workers)
{
  cfg.Validate ();
  std::vector<RunMetrics> results (cfg.nRuns);
  if (cfg.nRuns == 0)
    return results;
  if (workers == 0)
    workers = std::max (1u, std::thread::hardware_concurrency ());
  workers = std::min<unsigned> (workers, cfg.nRuns);

  std::atomic<int> next{0};
  std::mutex errMu;
  int errIndex = -1;
  std::string errWhat;
  auto work = [&] {
    for (int k = next++; k < cfg.nRuns; k = next++)
      {
        try
          {
            results[k] = RunOnce (cfg, k).metrics;
          }
        catch (const std::exception &e)
          {
            std::lock_guard lock (errMu);
            if (errIndex < 0 || k < errIndex)
              {
                errIndex = k;
                errWhat = e.what ();
              }
          }
      }
  };
  if (workers == 1)
    work ();
  else
    {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back (work);
      for (auto &t : pool)
        t.join ();
    }
  if (errIndex >= 0)
    throw std::runtime_error ("run " + std::to_string (errIndex) + " (seed "
                              + std::to_string (cfg.baseSeed + errIndex) + "): " + errWhat);
  return results;
}

std::vector<SweepRow>
Sweep (std::span<const ScenarioConfig> cfgs, unsigned workers)
{
  std::vector<SweepRow> rows;
  for (const ScenarioConfig &cfg : cfgs)
    {
      auto runs = RunBatch (cfg, workers);
      rows.push_back (Summarize (cfg.nStas, cfg.radiusM, std::string (ToString (cfg.policy)), runs));
    }
  return rows;
}

// ---------------------------------------------------------------------------
// key = value configuration

namespace {

std::string
Trim (std::string s)
{
  auto b = s.find_first_not_of (" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of (" \t\r");
  return s.substr (b, e - b + 1);
}

double
ToDouble (const std::string &key, const std::string &v)
{
  size_t used = 0;
  double d;
  try
    {
      d = std::stod (v, &used);
    }
  catch (const std::exception &)
    {
      throw std::invalid_argument ("config: " + key + " expects a number, got '" + v + "'");
    }
  if (used != v.size ())
    throw std::invalid_argument ("config: " + key + " expects a number, got '" + v + "'");
  return d;
}

int64_t
ToInt (const std::string &key, const std::string &v)
{
  double d = ToDouble (key, v);
  if (d != std::floor (d))
    throw std::invalid_argument ("config: " + key + " expects an integer, got '" + v + "'");
  return static_cast<int64_t> (d);
}

SimTime
ToMicros (const std::string &key, const std::string &v)
{
  return SimTime::MicrosCeil (ToDouble (key, v));
}

std::vector<std::string>
SplitList (const std::string &v)
{
  std::vector<std::string> out;
  std::stringstream ss (v);
  std::string item;
  while (std::getline (ss, item, ','))
    out.push_back (Trim (item));
  return out;
}

// Keys applied after everything else because they depend on other fields.
bool
IsDeferred (const std::string &key)
{
  return key == "pl0_db" || key == "coverage_range_m" || key == "mcs_table";
}

void
Apply (ScenarioConfig &c, const std::string &key, const std::string &v)
{
  if (key == "n_stas")
    c.nStas = static_cast<int> (ToInt (key, v));
  else if (key == "radius_m")
    c.radiusM = ToDouble (key, v);
  else if (key == "n_runs")
    c.nRuns = static_cast<int> (ToInt (key, v));
  else if (key == "sim_time_s")
    c.simTimeS = ToDouble (key, v);
  else if (key == "scheduler")
    c.policy = ParsePolicy (v);
  else if (key == "rate_tracker")
    c.tracker = ParseTrackerMode (v);
  else if (key == "ewma_tau_s")
    c.ewmaTauS = ToDouble (key, v);
  else if (key == "base_seed")
    c.baseSeed = std::stoull (v);
  else if (key == "placement")
    {
      if (v == "disk")
        c.placement = Placement::Disk;
      else if (v == "ring")
        c.placement = Placement::Ring;
      else
        throw std::invalid_argument ("config: placement must be disk|ring");
    }
  else if (key == "tx_power_dbm")
    c.channel.txPowerDbm = ToDouble (key, v);
  else if (key == "noise_dbm")
    c.channel.noiseDbm = ToDouble (key, v);
  else if (key == "d0_m")
    c.channel.d0M = ToDouble (key, v);
  else if (key == "beta")
    c.channel.beta = ToDouble (key, v);
  else if (key == "gamma_min_db")
    c.channel.gammaMinDb = ToDouble (key, v);
  else if (key == "bandwidth_hz")
    c.channel.bandwidthHz = ToDouble (key, v);
  else if (key == "cw_min")
    c.edca.cwMin = static_cast<int> (ToInt (key, v));
  else if (key == "cw_max")
    c.edca.cwMax = static_cast<int> (ToInt (key, v));
  else if (key == "slot_us")
    c.edca.slot = ToMicros (key, v);
  else if (key == "sifs_us")
    c.edca.sifs = ToMicros (key, v);
  else if (key == "aifs_us")
    c.edca.aifs = ToMicros (key, v);
  else if (key == "ack_us")
    c.edca.ack = ToMicros (key, v);
  else if (key == "rts_bits")
    c.edca.rtsBits = static_cast<int> (ToInt (key, v));
  else if (key == "cts_bits")
    c.edca.ctsBits = static_cast<int> (ToInt (key, v));
  else if (key == "retry_limit")
    c.edca.retryLimit = static_cast<int> (ToInt (key, v));
  else if (key == "payload_bits")
    c.edca.payloadBits = ToInt (key, v);
  else if (key == "data_preamble_us")
    c.edca.dataPreamble = ToMicros (key, v);
  else if (key == "control_preamble_us")
    c.edca.controlPreamble = ToMicros (key, v);
  else if (key == "rs_us")
    c.edca.rsDuration = ToMicros (key, v);
  else
    throw std::invalid_argument ("config: unknown key '" + key + "'");
}

ScenarioConfig
Build (const std::map<std::string, std::string> &scalars)
{
  ScenarioConfig c;
  for (const auto &[k, v] : scalars)
    if (!IsDeferred (k))
      Apply (c, k, v);
  if (auto it = scalars.find ("mcs_table"); it != scalars.end ())
    c.table = McsTable::FromCsvFile (it->second);
  if (auto it = scalars.find ("pl0_db"); it != scalars.end ())
    c.channel.pl0Db = ToDouble ("pl0_db", it->second);
  else
    {
      double range = kDefaultCoverageRangeM;
      if (auto r = scalars.find ("coverage_range_m"); r != scalars.end ())
        range = ToDouble ("coverage_range_m", r->second);
      c.channel.pl0Db = CalibratedPl0 (c.channel.txPowerDbm, c.channel.noiseDbm,
                                       c.channel.gammaMinDb, c.channel.beta, c.channel.d0M, range);
    }
  c.Validate ();
  return c;
}

} // namespace

KeyValues
ParseKeyValues (std::istream &in)
{
  KeyValues kv;
  std::string line;
  int lineNo = 0;
  while (std::getline (in, line))
    {
      ++lineNo;
      if (auto hash = line.find ('#'); hash != std::string::npos)
        line.erase (hash);
      line = Trim (line);
      if (line.empty ())
        continue;
      auto eq = line.find ('=');
      if (eq == std::string::npos)
        throw std::invalid_argument ("config line " + std::to_string (lineNo) + ": expected key = value");
      std::string key = Trim (line.substr (0, eq));
      std::string value = Trim (line.substr (eq + 1));
      if (key.empty () || value.empty ())
        throw std::invalid_argument ("config line " + std::to_string (lineNo) + ": empty key or value");
      kv[key] = value;
    }
  return kv;
}

KeyValues
LoadKeyValues (const std::string &path)
{
  std::ifstream in (path);
  if (!in)
    throw std::runtime_error ("cannot open config " + path);
  return ParseKeyValues (in);
}

ScenarioConfig
ConfigFromKeyValues (const KeyValues &kv)
{
  for (const auto &[k, v] : kv)
    if (v.find (',') != std::string::npos)
      throw std::invalid_argument ("config: " + k + " has a list value; use sweep");
  return Build (kv);
}

std::vector<ScenarioConfig>
GridFromKeyValues (const KeyValues &kv)
{
  // Expansion order: scheduler outermost, then radius, then N, then the rest.
  static const std::vector<std::string> kFirst{"scheduler", "radius_m", "n_stas"};
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto &k : kFirst)
    if (auto it = kv.find (k); it != kv.end ())
      axes.emplace_back (k, SplitList (it->second));
  for (const auto &[k, v] : kv)
    if (std::find (kFirst.begin (), kFirst.end (), k) == kFirst.end ())
      axes.emplace_back (k, SplitList (v));

  std::vector<ScenarioConfig> out;
  std::map<std::string, std::string> current;
  auto rec = [&] (auto &&self, size_t axis) -> void {
    if (axis == axes.size ())
      {
        out.push_back (Build (current));
        return;
      }
    for (const auto &value : axes[axis].second)
      {
        current[axes[axis].first] = value;
        self (self, axis + 1);
      }
  };
  rec (rec, 0);
  return out;
}

} // namespace nomasim

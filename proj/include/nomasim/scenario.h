#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nomasim/bss.h"
#include "nomasim/metrics.h"
#include "nomasim/policy.h"
#include "nomasim/radio.h"
#include "nomasim/rng.h"

namespace nomasim {

enum class Placement
{
  Disk, // uniform over the disk of radius radiusM
  Ring, // evenly spaced on the circle of radius radiusM (all STAs equidistant)
};

struct ScenarioConfig
{
  int nStas = 20;
  double radiusM = 47.0;
  int nRuns = 100;
  double simTimeS = 10.0;
  ChannelParams channel = DefaultChannel ();
  EdcaParams edca;
  McsTable table = McsTable::Default ();
  PolicyKind policy = PolicyKind::Disabled;
  TrackerMode tracker = TrackerMode::Cumulative;
  double ewmaTauS = 1.0;
  uint64_t baseSeed = 1;
  Placement placement = Placement::Disk;

  void Validate () const;
  BssConfig ToBss () const;
};

struct Topology
{
  Position ap;
  std::vector<Position> stas;
  int resampled = 0; // draws rejected for falling outside AP coverage

  // AP first, then STAs: index == node id.
  std::vector<Position> Nodes () const;
};

Topology GenerateTopology (const ScenarioConfig &cfg, Rng &rng);

struct RunOutput
{
  RunMetrics metrics;
  std::vector<ExchangeRecord> exchanges;
};

// Run k of a batch: seed baseSeed + k, topology drawn first from the stream.
RunOutput RunOnce (const ScenarioConfig &cfg, int runIndex, std::ostream *trace = nullptr,
                   Overlay overlay = Overlay::Attached);

// nRuns independent runs, results ordered by run index regardless of how many
// worker threads execute them (0 = hardware concurrency).
std::vector<RunMetrics> RunBatch (const ScenarioConfig &cfg, unsigned workers = 0);

std::vector<SweepRow> Sweep (std::span<const ScenarioConfig> cfgs, unsigned workers = 0);

// Flat "key = value" text; '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues ParseKeyValues (std::istream &in);
KeyValues LoadKeyValues (const std::string &path);
// Every value must be scalar.
ScenarioConfig ConfigFromKeyValues (const KeyValues &kv);
// Comma-separated values expand into the cartesian product of configs.
std::vector<ScenarioConfig> GridFromKeyValues (const KeyValues &kv);

} // namespace nomasim

// nomasim: single-BSS EDCA / uplink NOMA RS simulator.
//
//   nomasim run   --config exp.cfg [--seed N] [--out rows.csv] [--format csv|json]
//                 [--trace events.tsv] [--exchanges exchanges.csv] [--set key=value]...
//   nomasim sweep --config grid.cfg [--out rows.csv] [--format csv|json] [--set key=value]...

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nomasim/scenario.h"

using namespace nomasim;

namespace {

struct CommonOptions
{
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> overrides;
  unsigned workers = 0;
};

void
AddCommon (CLI::App *cmd, CommonOptions &o)
{
  cmd->add_option ("--config", o.config, "key = value config file");
  cmd->add_option ("--seed", o.seed, "base seed (run k uses seed + k)");
  cmd->add_option ("--out", o.out, "output path (default stdout)");
  cmd->add_option ("--format", o.format, "csv|json")->check (CLI::IsMember ({"csv", "json"}));
  cmd->add_option ("--set", o.overrides, "override a config key: key=value")->allow_extra_args (false);
  cmd->add_option ("--workers", o.workers, "worker threads (0 = all cores)");
}

KeyValues
Collect (const CommonOptions &o)
{
  KeyValues kv;
  if (!o.config.empty ())
    kv = LoadKeyValues (o.config);
  for (const std::string &s : o.overrides)
    {
      auto eq = s.find ('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument ("--set expects key=value, got '" + s + "'");
      kv[s.substr (0, eq)] = s.substr (eq + 1);
    }
  if (o.seed)
    kv["base_seed"] = std::to_string (*o.seed);
  return kv;
}

void
Emit (const std::vector<SweepRow> &rows, const CommonOptions &o)
{
  ExportFormat fmt = ParseFormat (o.format);
  if (!o.out.empty ())
    {
      Export (rows, fmt, o.out);
      return;
    }
  if (fmt == ExportFormat::Csv)
    WriteCsv (std::cout, rows);
  else
    WriteJson (std::cout, rows);
}

// Draws beyond AP coverage are rejected and redrawn, which is no longer a
// uniform disk.
void
WarnIfBeyondCoverage (const ScenarioConfig &cfg)
{
  double range = CoverageRangeM (cfg.channel);
  if (cfg.placement == Placement::Disk && cfg.radiusM > range + 1e-9)
    std::cerr << "nomasim: warning: radius_m " << cfg.radiusM << " exceeds the "
              << range << " m coverage range; out-of-range STAs are resampled\n";
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"Single-BSS Wi-Fi simulator: EDCA with RTS/CTS and synchronous uplink NOMA"};
  app.require_subcommand (1);

  CommonOptions runOpts;
  std::string tracePath, exchangesPath;
  auto *run = app.add_subcommand ("run", "run n_runs seeds of one configuration");
  AddCommon (run, runOpts);
  run->add_option ("--trace", tracePath, "write the event trace of run 0 (TSV)");
  run->add_option ("--exchanges", exchangesPath, "write the per-exchange log of run 0 (CSV)");

  CommonOptions sweepOpts;
  auto *sweep = app.add_subcommand ("sweep", "run every point of a config grid");
  AddCommon (sweep, sweepOpts);

  CLI11_PARSE (app, argc, argv);

  try
    {
      if (*run)
        {
          ScenarioConfig cfg = ConfigFromKeyValues (Collect (runOpts));
          WarnIfBeyondCoverage (cfg);
          auto runs = RunBatch (cfg, runOpts.workers);
          std::vector<SweepRow> rows{
              Summarize (cfg.nStas, cfg.radiusM, std::string (ToString (cfg.policy)), runs)};
          if (!tracePath.empty () || !exchangesPath.empty ())
            {
              std::ofstream trace;
              if (!tracePath.empty ())
                {
                  trace.open (tracePath);
                  if (!trace)
                    throw std::runtime_error ("cannot open " + tracePath);
                }
              RunOutput first = RunOnce (cfg, 0, tracePath.empty () ? nullptr : &trace);
              if (!exchangesPath.empty ())
                {
                  std::ofstream ex (exchangesPath);
                  if (!ex)
                    throw std::runtime_error ("cannot open " + exchangesPath);
                  WriteExchangeCsv (ex, first.exchanges);
                }
            }
          Emit (rows, runOpts);
        }
      else if (*sweep)
        {
          auto grid = GridFromKeyValues (Collect (sweepOpts));
          for (const ScenarioConfig &c : grid)
            WarnIfBeyondCoverage (c);
          Emit (Sweep (grid, sweepOpts.workers), sweepOpts);
        }
    }
  catch (const std::exception &e)
    {
      std::cerr << "nomasim: " << e.what () << '\n';
      return 1;
    }
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nomasim/metrics.h"
#include "oracle.h"

using namespace nomasim;
using doctest::Approx;

TEST_CASE ("per-sta throughput")
{
  CHECK (PerStaThroughput (10'000'000, SimTime::Seconds (10.0)) == Approx (1e6));
  CHECK (PerStaThroughput (0, SimTime::Seconds (10.0)) == 0.0);
  // One MCS-0 frame back to back: strictly below the 8.6 Mbit/s line rate.
  double t = PerStaThroughput (65536, SimTime::Nanos (oracle::AirtimeNs (65536, 8.6, 40000)));
  CHECK (t == Approx (65536.0 / 7660.466e-6));
  CHECK (t == Approx (8.555093e6).epsilon (1e-6));
  CHECK (t < 8.6e6);
  CHECK_THROWS_AS (PerStaThroughput (1, SimTime::Zero ()), std::domain_error);
}

TEST_CASE ("geomean")
{
  std::vector<double> same = {5e6, 5e6, 5e6};
  CHECK (Geomean (same) == Approx (5e6));
  std::vector<double> sq = {1e6, 4e6};
  CHECK (Geomean (sq) == Approx (2e6));
  std::vector<double> starved = {0, 10e6};
  CHECK (Geomean (starved) == 0.0);
  CHECK_THROWS (Geomean ({}));
  std::vector<double> neg = {-1, 2};
  CHECK_THROWS (Geomean (neg));
}

TEST_CASE ("am-gm on random vectors")
{
  uint64_t s = 12345;
  for (int trial = 0; trial < 500; ++trial)
    {
      std::vector<double> v;
      for (int i = 0; i < 1 + trial % 30; ++i)
        {
          s = s * 6364136223846793005ULL + 1442695040888963407ULL;
          v.push_back (static_cast<double> (s >> 40));
        }
      double mean = 0;
      for (double x : v)
        mean += x;
      mean /= static_cast<double> (v.size ());
      CHECK (Geomean (v) <= mean * (1 + 1e-12));
    }
}

TEST_CASE ("run metrics")
{
  RunMetrics m;
  m.simTime = SimTime::Seconds (10.0);
  m.deliveredBits = {10'000'000, 40'000'000};
  auto th = m.Throughputs ();
  CHECK (th.size () == 2);
  CHECK (m.AggregateBps () == Approx (5e6));
  CHECK (m.GeomeanBps () == Approx (2e6));
}

TEST_CASE ("summarize: mean and standard error")
{
  std::vector<RunMetrics> runs (3);
  double agg[3] = {1e6, 2e6, 3e6};
  for (int i = 0; i < 3; ++i)
    {
      runs[i].simTime = SimTime::Seconds (1.0);
      runs[i].deliveredBits = {static_cast<int64_t> (agg[i])};
      runs[i].nomaExchanges = 10;
      runs[i].nomaSuccesses = 9;
    }
  SweepRow r = Summarize (20, 47, "pf", runs);
  CHECK (r.runs == 3);
  CHECK (r.aggMeanBps == Approx (2e6));
  // Sample sd 1e6, over sqrt(3).
  CHECK (r.aggStderrBps == Approx (1e6 / std::sqrt (3.0)));
  CHECK (r.nomaSuccessRate == Approx (0.9));
  CHECK (Summarize (20, 47, "off", {}).runs == 0);
}

TEST_CASE ("csv export")
{
  SweepRow r{20, 47, "maxrate", 100, 55056100, 123456.7, 1872940, 2345.6, 0.999827};
  std::ostringstream out;
  std::vector<SweepRow> rows = {r};
  WriteCsv (out, rows);
  std::string s = out.str ();
  CHECK (s
         == "n_stas,radius_m,scheduler,runs,agg_mean_bps,agg_stderr_bps,geomean_mean_bps,"
            "geomean_stderr_bps,noma_success_rate\n"
            "20,47,maxrate,100,5.50561e+07,123457,1.87294e+06,2345.6,0.999827\n");
  std::ostringstream empty;
  WriteCsv (empty, {});
  std::string e = empty.str ();
  CHECK (std::count (e.begin (), e.end (), '\n') == 1);
}

TEST_CASE ("json round trip at 6 significant digits")
{
  std::vector<SweepRow> rows = {{20, 47, "pf", 100, 49772012.3, 1234.5678, 2021060.9, 98.7654321, 0.99974},
                                {5, 95, "off", 3, 0, 0, 0, 0, 0}};
  std::stringstream io;
  WriteJson (io, rows);
  auto back = ReadJson (io);
  REQUIRE (back.size () == 2);
  CHECK (back[0].scheduler == "pf");
  CHECK (back[0].nStas == 20);
  CHECK (back[0].aggMeanBps == 49772000.0);
  CHECK (back[0].aggStderrBps == Approx (1234.57).epsilon (1e-12));
  CHECK (back[0].geomeanStderrBps == Approx (98.7654).epsilon (1e-12));
  CHECK (back[1].radiusM == 95);

  // A second round trip is exact.
  std::stringstream io2;
  WriteJson (io2, back);
  auto again = ReadJson (io2);
  CHECK (again[0].aggStderrBps == back[0].aggStderrBps);
  CHECK (again[0].nomaSuccessRate == back[0].nomaSuccessRate);
}

TEST_CASE ("export to file")
{
  auto dir = std::filesystem::temp_directory_path () / "nomasim_metrics_test";
  std::filesystem::create_directories (dir);
  std::vector<SweepRow> rows = {{10, 30, "off", 1, 1e6, 0, 1e6, 0, 0}};
  Export (rows, ExportFormat::Csv, (dir / "a.csv").string ());
  Export (rows, ExportFormat::Json, (dir / "a.json").string ());
  std::ifstream in ((dir / "a.json").string ());
  CHECK (ReadJson (in).size () == 1);
  CHECK_THROWS_WITH_AS (Export (rows, ExportFormat::Csv, "/nonexistent/dir/x.csv"),
                        doctest::Contains ("/nonexistent/dir/x.csv"), std::runtime_error);
  CHECK (ParseFormat ("json") == ExportFormat::Json);
  CHECK_THROWS (ParseFormat ("xml"));
  std::filesystem::remove_all (dir);
}

TEST_CASE ("exchange csv")
{
  ExchangeRecord e;
  e.time = SimTime::Nanos (1234567);
  e.primary = 3;
  e.secondary = 7;
  e.primaryMcs = 0;
  e.secondaryMcs = 4;
  e.secondaryBits = 393216;
  e.outcome = SicOutcome::Both;
  std::vector<ExchangeRecord> v = {e};
  std::ostringstream out;
  WriteExchangeCsv (out, v);
  CHECK (out.str ()
         == "time_us,primary_id,secondary_id,primary_mcs,secondary_mcs,secondary_bits,outcome\n"
            "1234.567,3,7,0,4,393216,both\n");
}

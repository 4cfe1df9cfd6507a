#include "nomasim/metrics.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace nomasim {

double
PerStaThroughput (int64_t deliveredBits, SimTime simTime)
{
  if (simTime <= SimTime::Zero ())
    throw std::domain_error ("PerStaThroughput: simulated time must be positive");
  return static_cast<double> (deliveredBits) / simTime.ToSeconds ();
}

double
Geomean (std::span<const double> values)
{
  if (values.empty ())
    throw std::domain_error ("Geomean: empty list");
  double logSum = 0;
  for (double v : values)
    {
      if (v < 0)
        throw std::domain_error ("Geomean: negative entry");
      if (v == 0)
        return 0.0;
      logSum += std::log (v);
    }
  return std::exp (logSum / static_cast<double> (values.size ()));
}

std::vector<double>
RunMetrics::Throughputs () const
{
  std::vector<double> out;
  out.reserve (deliveredBits.size ());
  for (int64_t b : deliveredBits)
    out.push_back (PerStaThroughput (b, simTime));
  return out;
}

double
RunMetrics::AggregateBps () const
{
  auto t = Throughputs ();
  return std::accumulate (t.begin (), t.end (), 0.0);
}

double
RunMetrics::GeomeanBps () const
{
  auto t = Throughputs ();
  return t.empty () ? 0.0 : Geomean (t);
}

namespace {

void
MeanStderr (const std::vector<double> &v, double &mean, double &stderr_)
{
  mean = 0;
  stderr_ = 0;
  if (v.empty ())
    return;
  mean = std::accumulate (v.begin (), v.end (), 0.0) / static_cast<double> (v.size ());
  if (v.size () < 2)
    return;
  double ss = 0;
  for (double x : v)
    ss += (x - mean) * (x - mean);
  double sd = std::sqrt (ss / static_cast<double> (v.size () - 1));
  stderr_ = sd / std::sqrt (static_cast<double> (v.size ()));
}

std::string
Sig6 (double v)
{
  char buf[32];
  std::snprintf (buf, sizeof buf, "%.6g", v);
  return buf;
}

} // namespace

SweepRow
Summarize (int nStas, double radiusM, std::string scheduler, std::span<const RunMetrics> runs)
{
  SweepRow row;
  row.nStas = nStas;
  row.radiusM = radiusM;
  row.scheduler = std::move (scheduler);
  row.runs = static_cast<int> (runs.size ());
  std::vector<double> agg, geo;
  uint64_t exchanges = 0, successes = 0;
  for (const RunMetrics &m : runs)
    {
      agg.push_back (m.AggregateBps ());
      geo.push_back (m.GeomeanBps ());
      exchanges += m.nomaExchanges;
      successes += m.nomaSuccesses;
    }
  MeanStderr (agg, row.aggMeanBps, row.aggStderrBps);
  MeanStderr (geo, row.geomeanMeanBps, row.geomeanStderrBps);
  row.nomaSuccessRate = exchanges ? static_cast<double> (successes) / static_cast<double> (exchanges) : 0.0;
  return row;
}

ExportFormat
ParseFormat (std::string_view name)
{
  if (name == "csv")
    return ExportFormat::Csv;
  if (name == "json")
    return ExportFormat::Json;
  throw std::invalid_argument ("unknown format '" + std::string (name) + "' (expected csv|json)");
}

void
WriteCsv (std::ostream &out, std::span<const SweepRow> rows)
{
  out << "n_stas,radius_m,scheduler,runs,agg_mean_bps,agg_stderr_bps,geomean_mean_bps,"
         "geomean_stderr_bps,noma_success_rate\n";
  for (const SweepRow &r : rows)
    out << r.nStas << ',' << Sig6 (r.radiusM) << ',' << r.scheduler << ',' << r.runs << ','
        << Sig6 (r.aggMeanBps) << ',' << Sig6 (r.aggStderrBps) << ',' << Sig6 (r.geomeanMeanBps)
        << ',' << Sig6 (r.geomeanStderrBps) << ',' << Sig6 (r.nomaSuccessRate) << '\n';
}

void
WriteJson (std::ostream &out, std::span<const SweepRow> rows)
{
  auto num = [] (double v) { return std::stod (Sig6 (v)); };
  nlohmann::json arr = nlohmann::json::array ();
  for (const SweepRow &r : rows)
    arr.push_back ({
        {"n_stas", r.nStas},
        {"radius_m", num (r.radiusM)},
        {"scheduler", r.scheduler},
        {"runs", r.runs},
        {"agg_mean_bps", num (r.aggMeanBps)},
        {"agg_stderr_bps", num (r.aggStderrBps)},
        {"geomean_mean_bps", num (r.geomeanMeanBps)},
        {"geomean_stderr_bps", num (r.geomeanStderrBps)},
        {"noma_success_rate", num (r.nomaSuccessRate)},
    });
  out << arr.dump (2) << '\n';
}

std::vector<SweepRow>
ReadJson (std::istream &in)
{
  nlohmann::json arr = nlohmann::json::parse (in);
  std::vector<SweepRow> rows;
  for (const auto &o : arr)
    {
      SweepRow r;
      r.nStas = o.at ("n_stas").get<int> ();
      r.radiusM = o.at ("radius_m").get<double> ();
      r.scheduler = o.at ("scheduler").get<std::string> ();
      r.runs = o.at ("runs").get<int> ();
      r.aggMeanBps = o.at ("agg_mean_bps").get<double> ();
      r.aggStderrBps = o.at ("agg_stderr_bps").get<double> ();
      r.geomeanMeanBps = o.at ("geomean_mean_bps").get<double> ();
      r.geomeanStderrBps = o.at ("geomean_stderr_bps").get<double> ();
      r.nomaSuccessRate = o.at ("noma_success_rate").get<double> ();
      rows.push_back (std::move (r));
    }
  return rows;
}

void
Export (std::span<const SweepRow> rows, ExportFormat format, const std::string &path)
{
  std::ofstream out (path);
  if (!out)
    throw std::runtime_error ("cannot open " + path + " for writing");
  if (format == ExportFormat::Csv)
    WriteCsv (out, rows);
  else
    WriteJson (out, rows);
  out.flush ();
  if (!out)
    throw std::runtime_error ("write failed: " + path);
}

void
WriteExchangeCsv (std::ostream &out, std::span<const ExchangeRecord> records)
{
  out << "time_us,primary_id,secondary_id,primary_mcs,secondary_mcs,secondary_bits,outcome\n";
  for (const ExchangeRecord &r : records)
    out << FormatMicros (r.time) << ',' << r.primary << ',' << r.secondary << ',' << r.primaryMcs
        << ',' << r.secondaryMcs << ',' << r.secondaryBits << ',' << ToString (r.outcome) << '\n';
}

} // namespace nomasim

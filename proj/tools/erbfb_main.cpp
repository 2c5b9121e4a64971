// Copyright 2026 The erbfb Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// erbfb command line: filterbank design, scale/coverage/Q-factor sweeps,
// ERB curve fitting, harmonic synthesis, and gammatone filtering. Emits
// pipe-friendly CSV (or JSON for structured design exports). Exit codes:
// 0 success, 2 invalid input, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "erbfb/csv.hpp"
#include "erbfb/design.hpp"
#include "erbfb/format.hpp"
#include "erbfb/gammatone.hpp"
#include "erbfb/harmonic.hpp"
#include "erbfb/scales.hpp"
#include "erbfb/signal.hpp"
#include "erbfb/speaker_json.hpp"
#include "erbfb/wav.hpp"

namespace {

using nlohmann::json;

struct CommonParams {
  int order = 4;
  double log_a = erbfb::kLogErbSlope;
  double f_m = erbfb::kDefaultInaudibleHz;
  double erb_d = erbfb::kGlasbergMooreD;
  double erb_e = erbfb::kGlasbergMooreE;
};

void add_common_flags(CLI::App* cmd, CommonParams& p) {
  cmd->add_option("--order", p.order, "Gammatone order n")
      ->check(CLI::Range(1, erbfb::kMaxGammatoneOrder));
  cmd->add_option("--log-a", p.log_a, "Slope A of the logarithmic ERB f/A")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fm", p.f_m, "Inaudible floor f_m in Hz (log scale)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--erb-d", p.erb_d, "Constant D of the linear ERB D + E*f")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--erb-e", p.erb_e, "Slope E of the linear ERB D + E*f")
      ->check(CLI::PositiveNumber);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double round_sig9(double v) {
  return std::strtod(erbfb::format_sig9(v).c_str(), nullptr);
}

json array_sig9(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(round_sig9(v));
  return arr;
}

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw std::invalid_argument("grid: requires hi > lo > 0 and points >= 2");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / (points - 1);
  grid.front() = lo;
  grid.back() = hi;
  for (int i = 1; i + 1 < points; ++i) {
    grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  }
  return grid;
}

erbfb::BandwidthRule rule_for(const std::string& scale,
                              const CommonParams& p) {
  if (scale == "log") {
    return erbfb::ConstantQ{erbfb::gammatone_q_factor(p.order, p.log_a)};
  }
  return erbfb::ErbScaled{erbfb::k_of_n(p.order),
                          erbfb::LinearErb{p.erb_d, p.erb_e}};
}

erbfb::DesignRequest build_request(const std::string& scale, double fmin,
                                   double fmax, int nbands,
                                   const CommonParams& p) {
  erbfb::ScaleFunction scale_fn =
      scale == "log"
          ? erbfb::make_scale(erbfb::LogarithmicErb{p.log_a}, p.f_m)
          : erbfb::make_scale(erbfb::LinearErb{p.erb_d, p.erb_e});
  return erbfb::DesignRequest{fmin, fmax, nbands, std::move(scale_fn),
                              rule_for(scale, p)};
}

// ---------------------------------------------------------------------------
// design

struct DesignOpts {
  std::string scale;
  double fmin = 0.0;
  double fmax = 0.0;
  int nbands = 0;
  double coverage = 0.0;
  bool have_nbands = false;
  bool have_coverage = false;
  CommonParams common;
  std::string format = "json";
  std::string out;
  bool reproducible = false;
};

int run_design(const DesignOpts& o) {
  int nbands = o.nbands;
  if (o.have_coverage) {
    nbands = erbfb::solve_n_bands(o.fmin, o.fmax, o.coverage,
                                  rule_for(o.scale, o.common));
  }
  const erbfb::DesignRequest req =
      build_request(o.scale, o.fmin, o.fmax, nbands, o.common);
  const erbfb::FilterbankDesign design = erbfb::make_design(req);

  Output output(o.out);
  std::ostream& os = output.stream();
  if (o.format == "csv") {
    os << "band,center_hz,bandwidth_hz,q_factor\n";
    for (std::size_t b = 0; b < design.centers_hz.size(); ++b) {
      os << (b + 1) << ',' << erbfb::format_sig9(design.centers_hz[b]) << ','
         << erbfb::format_sig9(design.bandwidths_hz[b]) << ','
         << erbfb::format_sig9(design.q_factors[b]) << '\n';
    }
    return 0;
  }

  json request{{"scale", o.scale},
               {"f_min_hz", round_sig9(o.fmin)},
               {"f_max_hz", round_sig9(o.fmax)},
               {"n_bands", nbands},
               {"order", o.common.order}};
  if (o.scale == "log") {
    request["log_a"] = round_sig9(o.common.log_a);
    request["f_m_hz"] = round_sig9(o.common.f_m);
    request["bandwidth_rule"] = {
        {"type", "constant_q"},
        {"eta_b",
         round_sig9(erbfb::gammatone_q_factor(o.common.order, o.common.log_a))}};
  } else {
    request["bandwidth_rule"] = {
        {"type", "erb_scaled"},
        {"k", round_sig9(erbfb::k_of_n(o.common.order))},
        {"erb_d", round_sig9(o.common.erb_d)},
        {"erb_e", round_sig9(o.common.erb_e)}};
  }
  if (o.have_coverage) request["requested_coverage"] = round_sig9(o.coverage);

  json doc{{"request", std::move(request)},
           {"centers_hz", array_sig9(design.centers_hz)},
           {"bandwidths_hz", array_sig9(design.bandwidths_hz)},
           {"q_factors", array_sig9(design.q_factors)},
           {"coverages", array_sig9(design.coverages)}};
  if (!o.reproducible) doc["generated_at"] = iso_utc_now();
  os << doc.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// scale-export

struct ScaleExportOpts {
  double fmin = 200.0;
  double fmax = 3600.0;
  double grid_min = 20.0;
  double grid_max = 20000.0;
  int points = 200;
  CommonParams common;
  std::string out;
};

int run_scale_export(const ScaleExportOpts& o) {
  const erbfb::ScaleFunction linear =
      erbfb::make_scale(erbfb::LinearErb{o.common.erb_d, o.common.erb_e});
  const erbfb::ScaleFunction logarithmic =
      erbfb::make_scale(erbfb::LogarithmicErb{o.common.log_a}, o.common.f_m);

  struct Row {
    double freq;
    std::string marker;
  };
  std::vector<Row> rows;
  rows.push_back({0.0, ""});
  for (double f : log_spaced_grid(o.grid_min, o.grid_max, o.points)) {
    rows.push_back({f, ""});
  }
  for (const std::string& scale : {std::string("log"),
                                   std::string("linear_erb")}) {
    const erbfb::DesignRequest req = build_request(
        scale == "log" ? "log" : "linear-erb", o.fmin, o.fmax, 16, o.common);
    for (double f : erbfb::center_frequencies(req)) {
      rows.push_back({f, scale + "_center"});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.freq < b.freq; });

  Output output(o.out);
  std::ostream& os = output.stream();
  os << "freq_hz,erbs_linear,erbs_log,marker\n";
  for (const Row& row : rows) {
    os << erbfb::format_sig9(row.freq) << ','
       << erbfb::format_sig9(erbfb::erbs(linear, row.freq)) << ','
       << erbfb::format_sig9(erbfb::erbs(logarithmic, row.freq)) << ','
       << row.marker << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// coverage-sweep

struct CoverageSweepOpts {
  double fmin = 200.0;
  double fmax = 3600.0;
  int nbands_max = 0;
  CommonParams common;
  std::string out;
};

int run_coverage_sweep(const CoverageSweepOpts& o) {
  const double eta_b =
      erbfb::gammatone_q_factor(o.common.order, o.common.log_a);
  const double k = erbfb::k_of_n(o.common.order);
  Output output(o.out);
  std::ostream& os = output.stream();
  os << "nbands,coverage_log,coverage_linear_erb\n";
  for (int n = 2; n <= o.nbands_max; ++n) {
    os << n << ','
       << erbfb::format_sig9(
              erbfb::coverage_closed_form_log(o.fmin, o.fmax, n, eta_b))
       << ','
       << erbfb::format_sig9(erbfb::coverage_closed_form_linear_erb(
              o.fmin, o.fmax, n, o.common.erb_d, o.common.erb_e, k))
       << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// qfactor-sweep

struct QFactorSweepOpts {
  double fmin = 200.0;
  double fmax = 3600.0;
  int points = 100;
  CommonParams common;
  std::string out;
};

int run_qfactor_sweep(const QFactorSweepOpts& o) {
  const double kn = erbfb::k_of_n(o.common.order);
  const erbfb::ErbModel log_model = erbfb::LogarithmicErb{o.common.log_a};
  const erbfb::ErbModel lin_model =
      erbfb::LinearErb{o.common.erb_d, o.common.erb_e};
  Output output(o.out);
  std::ostream& os = output.stream();
  os << "freq_hz,q_log,q_linear_erb\n";
  for (double f : log_spaced_grid(o.fmin, o.fmax, o.points)) {
    os << erbfb::format_sig9(f) << ','
       << erbfb::format_sig9(f / (kn * erbfb::erb(log_model, f))) << ','
       << erbfb::format_sig9(f / (kn * erbfb::erb(lin_model, f))) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
  std::string model = "linear-erb";
  double center = 1000.0;
  double rate = 16000.0;
  CommonParams common;
  std::string out;
};

int run_spectrum(const SpectrumOpts& o) {
  const erbfb::ErbModel model =
      o.model == "log"
          ? erbfb::ErbModel{erbfb::LogarithmicErb{o.common.log_a}}
          : erbfb::ErbModel{erbfb::LinearErb{o.common.erb_d, o.common.erb_e}};
  const erbfb::GammatoneFilter filter =
      erbfb::make_filter(o.common.order, o.center, model, o.rate);
  Output output(o.out);
  std::ostream& os = output.stream();
  os << "freq_hz,magnitude_db\n";
  for (const erbfb::SpectrumPoint& p : erbfb::magnitude_spectrum(filter)) {
    os << erbfb::format_sig9(p.freq_hz) << ','
       << erbfb::format_sig9(p.magnitude_db) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitOpts {
  std::string input;
  CommonParams common;
  std::string out;
};

int run_fit(const FitOpts& o) {
  std::ifstream in(o.input);
  if (!in) {
    throw std::invalid_argument("cannot open input CSV: " + o.input);
  }
  std::vector<erbfb::ErbPoint> points = erbfb::read_erb_points_csv(in);
  const double fitted_a = erbfb::fit_log_erb_slope(points);
  const double rms = erbfb::fit_residual_rms(points, fitted_a);
  std::sort(points.begin(), points.end(),
            [](const erbfb::ErbPoint& a, const erbfb::ErbPoint& b) {
              return a.freq_hz < b.freq_hz;
            });

  Output output(o.out);
  std::ostream& os = output.stream();
  if (o.out.empty()) {
    os << "# fitted_a = " << erbfb::format_sig9(fitted_a) << '\n';
    os << "# residual_rms = " << erbfb::format_sig9(rms) << '\n';
  } else {
    std::cout << "fitted_a = " << erbfb::format_sig9(fitted_a) << '\n';
    std::cout << "residual_rms = " << erbfb::format_sig9(rms) << '\n';
  }
  os << "freq_hz,erb_measured,erb_log_fit,erb_linear\n";
  for (const erbfb::ErbPoint& p : points) {
    os << erbfb::format_sig9(p.freq_hz) << ','
       << erbfb::format_sig9(p.erb_hz) << ','
       << erbfb::format_sig9(p.freq_hz / fitted_a) << ','
       << erbfb::format_sig9(o.common.erb_d + o.common.erb_e * p.freq_hz)
       << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  std::vector<std::string> specs;
  double duration = 1.0;
  double rate = 16000.0;
  std::string out;
};

int run_synth(const SynthOpts& o) {
  std::vector<erbfb::HarmonicSpeaker> speakers;
  for (const std::string& path : o.specs) {
    for (auto& s : erbfb::load_speakers(path)) speakers.push_back(std::move(s));
  }
  const erbfb::SampledSignal signal =
      erbfb::mix(speakers, o.duration, o.rate);
  erbfb::write_wav16(o.out, signal);
  return 0;
}

// ---------------------------------------------------------------------------
// filter

struct FilterOpts {
  std::string in;
  std::string scale;
  double fmin = 0.0;
  double fmax = 0.0;
  int nbands = 0;
  CommonParams common;
  std::string out;
  std::string rms_csv;
};

int run_filter(const FilterOpts& o) {
  const erbfb::SampledSignal input = erbfb::read_wav16(o.in);
  const erbfb::DesignRequest req =
      build_request(o.scale, o.fmin, o.fmax, o.nbands, o.common);
  const erbfb::FilterbankDesign design = erbfb::make_design(req);
  const std::vector<erbfb::SampledSignal> subbands =
      erbfb::apply_filterbank(design, o.common.order, input);

  const std::filesystem::path out_path(o.out);
  const std::string ext =
      out_path.extension().empty() ? ".wav" : out_path.extension().string();
  const std::filesystem::path base = out_path.parent_path() / out_path.stem();
  Output output(o.rms_csv);
  std::ostream& os = output.stream();
  os << "band,center_hz,rms\n";
  for (std::size_t b = 0; b < subbands.size(); ++b) {
    const std::string band_path =
        base.string() + "_band" + std::to_string(b + 1) + ext;
    erbfb::write_wav16(band_path, subbands[b]);
    os << (b + 1) << ',' << erbfb::format_sig9(design.centers_hz[b]) << ','
       << erbfb::format_sig9(erbfb::rms(subbands[b])) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"erbfb: auditory filterbank design toolkit"};
  app.require_subcommand(1);

  DesignOpts design_opts;
  CLI::App* design = app.add_subcommand(
      "design", "Select center frequencies and export the filterbank design");
  design->add_option("--scale", design_opts.scale, "Warping scale")
      ->required()
      ->check(CLI::IsMember({"log", "linear-erb"}));
  design->add_option("--fmin", design_opts.fmin, "Lowest center in Hz")
      ->required()
      ->check(CLI::PositiveNumber);
  design->add_option("--fmax", design_opts.fmax, "Highest center in Hz")
      ->required()
      ->check(CLI::PositiveNumber);
  CLI::Option* nbands_opt =
      design->add_option("--nbands", design_opts.nbands, "Number of bands")
          ->check(CLI::Range(2, erbfb::kMaxSolverBands));
  CLI::Option* coverage_opt =
      design
          ->add_option("--coverage", design_opts.coverage,
                       "Solve for the smallest band count reaching this "
                       "coverage")
          ->check(CLI::PositiveNumber);
  nbands_opt->excludes(coverage_opt);
  coverage_opt->excludes(nbands_opt);
  add_common_flags(design, design_opts.common);
  design->add_option("--format", design_opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  design->add_option("--out", design_opts.out, "Output file (default stdout)");
  design->add_flag("--reproducible", design_opts.reproducible,
                   "Suppress the generated_at timestamp");

  ScaleExportOpts scale_opts;
  CLI::App* scale_export = app.add_subcommand(
      "scale-export", "Export warping-scale curves and selected centers");
  scale_export->add_option("--fmin", scale_opts.fmin, "Marker range low Hz")
      ->check(CLI::PositiveNumber);
  scale_export->add_option("--fmax", scale_opts.fmax, "Marker range high Hz")
      ->check(CLI::PositiveNumber);
  scale_export
      ->add_option("--grid-min", scale_opts.grid_min, "Curve grid low Hz")
      ->check(CLI::PositiveNumber);
  scale_export
      ->add_option("--grid-max", scale_opts.grid_max, "Curve grid high Hz")
      ->check(CLI::PositiveNumber);
  scale_export->add_option("--points", scale_opts.points, "Grid points")
      ->check(CLI::Range(2, 1000000));
  add_common_flags(scale_export, scale_opts.common);
  scale_export->add_option("--out", scale_opts.out, "Output file");

  CoverageSweepOpts sweep_opts;
  CLI::App* coverage_sweep = app.add_subcommand(
      "coverage-sweep", "Closed-form coverage of both scales over band count");
  coverage_sweep->add_option("--fmin", sweep_opts.fmin, "Range low Hz")
      ->check(CLI::PositiveNumber);
  coverage_sweep->add_option("--fmax", sweep_opts.fmax, "Range high Hz")
      ->check(CLI::PositiveNumber);
  coverage_sweep
      ->add_option("--nbands-max", sweep_opts.nbands_max, "Sweep up to here")
      ->required()
      ->check(CLI::Range(2, erbfb::kMaxSolverBands));
  add_common_flags(coverage_sweep, sweep_opts.common);
  coverage_sweep->add_option("--out", sweep_opts.out, "Output file");

  QFactorSweepOpts q_opts;
  CLI::App* qfactor_sweep = app.add_subcommand(
      "qfactor-sweep", "Q-factor of both bandwidth models over frequency");
  qfactor_sweep->add_option("--fmin", q_opts.fmin, "Grid low Hz")
      ->check(CLI::PositiveNumber);
  qfactor_sweep->add_option("--fmax", q_opts.fmax, "Grid high Hz")
      ->check(CLI::PositiveNumber);
  qfactor_sweep->add_option("--points", q_opts.points, "Grid points")
      ->check(CLI::Range(2, 1000000));
  add_common_flags(qfactor_sweep, q_opts.common);
  qfactor_sweep->add_option("--out", q_opts.out, "Output file");

  SpectrumOpts spectrum_opts;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Magnitude response of one gammatone filter");
  spectrum->add_option("--model", spectrum_opts.model, "Bandwidth model")
      ->check(CLI::IsMember({"log", "linear-erb"}));
  spectrum->add_option("--center", spectrum_opts.center, "Center in Hz")
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--rate", spectrum_opts.rate, "Sample rate in Hz")
      ->check(CLI::PositiveNumber);
  add_common_flags(spectrum, spectrum_opts.common);
  spectrum->add_option("--out", spectrum_opts.out, "Output file");

  FitOpts fit_opts;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit the logarithmic ERB slope to measured freq_hz,erb_hz data");
  fit->add_option("--input", fit_opts.input, "Measurement CSV")->required();
  add_common_flags(fit, fit_opts.common);
  fit->add_option("--out", fit_opts.out, "Comparison-curve CSV file");

  SynthOpts synth_opts;
  CLI::App* synth =
      app.add_subcommand("synth", "Synthesize harmonic speakers to WAV");
  synth->add_option("--spec", synth_opts.specs, "Speaker spec JSON (repeatable)")
      ->required();
  synth->add_option("--duration", synth_opts.duration, "Seconds")
      ->check(CLI::PositiveNumber);
  synth->add_option("--rate", synth_opts.rate, "Sample rate in Hz")
      ->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_opts.out, "Output WAV path")->required();

  FilterOpts filter_opts;
  CLI::App* filter = app.add_subcommand(
      "filter", "Split a WAV into gammatone subbands and report per-band RMS");
  filter->add_option("--in", filter_opts.in, "Input WAV")->required();
  filter->add_option("--scale", filter_opts.scale, "Warping scale")
      ->required()
      ->check(CLI::IsMember({"log", "linear-erb"}));
  filter->add_option("--fmin", filter_opts.fmin, "Lowest center in Hz")
      ->required()
      ->check(CLI::PositiveNumber);
  filter->add_option("--fmax", filter_opts.fmax, "Highest center in Hz")
      ->required()
      ->check(CLI::PositiveNumber);
  filter->add_option("--nbands", filter_opts.nbands, "Number of bands")
      ->required()
      ->check(CLI::Range(2, erbfb::kMaxSolverBands));
  add_common_flags(filter, filter_opts.common);
  filter->add_option("--out", filter_opts.out,
                     "Per-band WAV prefix; band index is appended")
      ->required();
  filter->add_option("--rms-csv", filter_opts.rms_csv,
                     "Per-band RMS CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  design_opts.have_nbands = nbands_opt->count() > 0;
  design_opts.have_coverage = coverage_opt->count() > 0;

  try {
    if (*design) {
      if (!design_opts.have_nbands && !design_opts.have_coverage) {
        std::cerr << "design: one of --nbands or --coverage is required\n";
        return 2;
      }
      return run_design(design_opts);
    }
    if (*scale_export) return run_scale_export(scale_opts);
    if (*coverage_sweep) return run_coverage_sweep(sweep_opts);
    if (*qfactor_sweep) return run_qfactor_sweep(q_opts);
    if (*spectrum) return run_spectrum(spectrum_opts);
    if (*fit) return run_fit(fit_opts);
    if (*synth) return run_synth(synth_opts);
    if (*filter) return run_filter(filter_opts);
  } catch (const erbfb::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

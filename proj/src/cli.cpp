// Copyright 2026 The unruhchan Authors
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

#include "unruhchan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "unruhchan/errors.hpp"
#include "unruhchan/info.hpp"
#include "unruhchan/optimize.hpp"
#include "unruhchan/svg.hpp"
#include "unruhchan/sweep.hpp"

namespace unruhchan {
namespace {

namespace fs = std::filesystem;

// Cutoff cap used by `figures` when UNRUHCHAN_NMAX_CAP is unset; the default
// single-rail range reaches r = 2.5, which needs N of several hundred.
constexpr std::size_t kFiguresCutoffCap = 1024;

struct Args {
  std::string rail = "single";
  std::string channel = "both";
  std::string r;
  std::optional<double> a;
  double omega = 1.0;
  double c = 1.0;
  std::string qr;
  std::string alpha2 = "0.5";
  std::string nmax = "auto";
  double tol = kDefaultTolerance;
  std::size_t jobs = 1;
  std::string out;
  std::string format = "csv";
  std::string measure = "holevo";
  std::string receiver = "R";
  std::string config;
};

void add_shared(CLI::App* cmd, Args& args) {
  cmd->add_option("--rail", args.rail, "single | dual")
      ->check(CLI::IsMember({"single", "dual"}));
  cmd->add_option("--channel", args.channel, "classical | quantum | both")
      ->check(CLI::IsMember({"classical", "quantum", "both"}));
  cmd->add_option("--r", args.r, "squeezing r, or start:stop:step");
  cmd->add_option("--a", args.a, "proper acceleration (sets r)");
  cmd->add_option("--omega", args.omega, "Rindler frequency");
  cmd->add_option("--c", args.c, "speed of light");
  cmd->add_option("--qr", args.qr, "comma-separated q_R values in [0.7071, 1]");
  cmd->add_option("--alpha2", args.alpha2, "comma-separated |alpha|^2 values");
  cmd->add_option("--nmax", args.nmax, "Fock cutoff per mode: auto | integer");
  cmd->add_option("--tol", args.tol, "truncation deficit tolerance");
  cmd->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", args.out, "output path");
  cmd->add_option("--format", args.format, "csv | svg | both")
      ->check(CLI::IsMember({"csv", "svg", "both"}));
  cmd->add_option("--config", args.config, "flat key = value file");
}

Rail parse_rail(const std::string& s) { return s == "dual" ? Rail::dual : Rail::single; }

ChannelSelection parse_channel(const std::string& s) {
  if (s == "classical") return ChannelSelection::classical;
  if (s == "quantum") return ChannelSelection::quantum;
  return ChannelSelection::both;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "svg") return OutputFormat::svg;
  if (s == "both") return OutputFormat::both;
  return OutputFormat::csv;
}

std::optional<std::size_t> parse_nmax(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::size_t used = 0;
  long long n = -1;
  try {
    n = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || n < static_cast<long long>(kMinCutoff)) {
    throw UsageError("--nmax must be 'auto' or an integer >= 2, got '" + s + "'");
  }
  return static_cast<std::size_t>(n);
}

RRange resolve_r(const Args& args, const std::string& fallback) {
  if (args.a) {
    if (!args.r.empty()) throw UsageError("give either --r or --a, not both");
    const double r = squeezing_parameter(*args.a, args.omega, args.c);
    return {r, r, 1.0};
  }
  return RRange::parse(args.r.empty() ? fallback : args.r);
}

// Reads `key = value` lines into "--key value" arguments. Blank lines and
// lines starting with '#' or ';' are skipped.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key");
    }
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

// Config values are spliced in right after the subcommand so that later
// command-line flags override them.
std::vector<std::string> expand_config(std::vector<std::string> argv) {
  std::string path;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    if (argv[i] == "--config" && i + 1 < argv.size()) {
      path = argv[i + 1];
    } else if (argv[i].rfind("--config=", 0) == 0) {
      path = argv[i].substr(9);
    }
  }
  if (path.empty() || argv.size() < 2) return argv;
  auto extra = config_arguments(path);
  argv.insert(argv.begin() + 2, extra.begin(), extra.end());
  return argv;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  return file;
}

void write_text(const fs::path& path, const std::string& text) {
  auto file = open_output(path);
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

// Resolves --out into the CSV and SVG destinations for `format`.
struct Destinations {
  std::optional<fs::path> csv;  // empty path = stdout
  std::optional<fs::path> svg;
};

Destinations destinations(const std::string& out, OutputFormat format) {
  fs::path base(out);
  Destinations d;
  if (format == OutputFormat::csv) {
    d.csv = base;
    return d;
  }
  if (out.empty()) throw UsageError("--format svg/both needs --out");
  if (format == OutputFormat::svg) {
    d.svg = base;
    return d;
  }
  if (base.extension() == ".csv" || base.extension() == ".svg") base.replace_extension();
  d.csv = fs::path(base.string() + ".csv");
  d.svg = fs::path(base.string() + ".svg");
  return d;
}

void emit_csv(const std::optional<fs::path>& dest, std::ostream& out,
              const std::string& text) {
  if (!dest) return;
  if (dest->empty()) {
    out << text;
  } else {
    write_text(*dest, text);
  }
}

std::string sweep_label(const ResultRow& row, bool with_alpha) {
  std::string s = row.measure + " " + to_string(row.receiver) + " qR=" +
                  format_value(std::round(row.qR * 1e4) / 1e4);
  if (with_alpha) s += " a2=" + format_value(row.alpha2);
  return s;
}

Plot sweep_plot(const std::string& title, const std::vector<ResultRow>& rows,
                const std::vector<std::string>& measures) {
  Plot plot{title, "r", "bits", {}};
  bool many_alpha = false;
  for (const auto& row : rows) many_alpha |= row.alpha2 != rows.front().alpha2;
  std::map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    if (std::find(measures.begin(), measures.end(), row.measure) == measures.end()) continue;
    const auto key = sweep_label(row, many_alpha);
    auto [it, fresh] = index.try_emplace(key, plot.series.size());
    if (fresh) plot.series.push_back({key, {}, row.receiver == Receiver::anti_rob});
    plot.series[it->second].points.emplace_back(row.r, row.value);
  }
  return plot;
}

std::vector<std::string> plotted_measures(ChannelSelection channel) {
  switch (channel) {
    case ChannelSelection::classical: return {"holevo"};
    case ChannelSelection::quantum: return {"cohinfo"};
    default: return {"holevo", "cohinfo"};
  }
}

std::string csv_text(const std::vector<ResultRow>& rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

std::string opt_csv_text(const std::vector<OptResult>& rows) {
  std::ostringstream s;
  write_opt_csv(s, rows);
  return s.str();
}

int cmd_point(const Args& args, std::ostream& out) {
  const auto qrs = parse_qr_list(args.qr.empty() ? "1" : args.qr);
  const auto alphas = parse_double_list(args.alpha2);
  if (qrs.size() != 1 || alphas.size() != 1) {
    throw UsageError("point takes a single --qr and --alpha2 value");
  }
  const auto range = resolve_r(args, "0");
  if (range.start != range.stop) throw UsageError("point takes a single r value");
  ChannelParams p;
  p.rindler.r = range.start;
  p.weights = UnruhWeights::from_qr(qrs[0]);
  p.alpha2 = alphas[0];
  p.rail = parse_rail(args.rail);
  p.cutoff = parse_nmax(args.nmax);
  p.tol = args.tol;
  p.validate();

  const auto channel = parse_channel(args.channel);
  std::optional<HolevoPair> classical;
  std::optional<ConditionalPair> quantum;
  if (channel != ChannelSelection::quantum) classical = holevo_pair(p);
  if (channel != ChannelSelection::classical) quantum = conditional_pair(p);

  auto line = [&](const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.6f\n", key, v == 0.0 ? 0.0 : v);
    out << buf;
  };
  line("r", p.rindler.r);
  line("qR", p.weights.qR);
  line("qL", p.weights.qL);
  line("alpha2", p.alpha2);
  out << "rail=" << to_string(p.rail) << '\n';
  const std::size_t n = quantum ? quantum->cutoff : classical->cutoff;
  const double deficit = std::max(classical ? classical->deficit : 0.0,
                                  quantum ? quantum->deficit : 0.0);
  out << "N=" << n << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "deficit=%.3e\n", deficit);
  out << buf;
  if (classical) {
    line("holevo_R", classical->rob);
    line("holevo_Rbar", classical->anti_rob);
  }
  if (quantum) {
    line("cohinfo_R", -quantum->rob.direct);
    line("cohinfo_Rbar", -quantum->anti_rob.direct);
    line("cond_R", quantum->rob.direct);
    line("cond_Rbar", quantum->anti_rob.direct);
  }
  return kExitOk;
}

SweepSpec sweep_spec(const Args& args) {
  SweepSpec spec;
  spec.r = resolve_r(args, "0:2.5:0.1");
  if (!args.qr.empty()) spec.qr = parse_qr_list(args.qr);
  spec.alpha2 = parse_double_list(args.alpha2);
  spec.rail = parse_rail(args.rail);
  spec.channel = parse_channel(args.channel);
  spec.cutoff = parse_nmax(args.nmax);
  spec.tol = args.tol;
  spec.jobs = args.jobs;
  spec.validate();
  return spec;
}

int cmd_sweep(const Args& args, std::ostream& out) {
  const auto spec = sweep_spec(args);
  const auto format = parse_format(args.format);
  const auto dest = destinations(args.out, format);
  const auto rows = run_sweep(spec);
  emit_csv(dest.csv, out, csv_text(rows));
  if (dest.svg) {
    const auto title = to_string(spec.rail) + "-rail sweep";
    write_text(*dest.svg, render_svg(sweep_plot(title, rows, plotted_measures(spec.channel))));
  }
  return kExitOk;
}

Measure parse_measure(const std::string& s) {
  if (s == "holevo") return Measure::holevo;
  if (s == "cohinfo" || s == "coherent") return Measure::coherent;
  throw UsageError("--measure must be holevo or cohinfo, got '" + s + "'");
}

Receiver parse_receiver(const std::string& s) {
  if (s == "R" || s == "rob") return Receiver::rob;
  if (s == "Rbar" || s == "antirob") return Receiver::anti_rob;
  throw UsageError("--receiver must be R or Rbar, got '" + s + "'");
}

Plot optimum_plot(const std::string& title, const std::vector<OptResult>& rows,
                  bool parameters) {
  Plot plot{title, "r", parameters ? "optimal parameter" : "bits", {}};
  const std::string tag = rows.empty() ? "" : to_string(rows.front().rail);
  if (parameters) {
    Series a{"alpha2_opt " + tag, {}, false}, q{"qR_opt " + tag, {}, true};
    for (const auto& row : rows) {
      a.points.emplace_back(row.r, row.alpha2_opt);
      q.points.emplace_back(row.r, row.qR_opt);
    }
    plot.series = {a, q};
  } else {
    Series v{to_string(rows.empty() ? Measure::holevo : rows.front().measure) + " " + tag, {}, false};
    for (const auto& row : rows) v.points.emplace_back(row.r, row.value);
    plot.series = {v};
  }
  return plot;
}

OptimizerSettings optimizer_settings(const Args& args) {
  OptimizerSettings s;
  s.tol = args.tol;
  s.cutoff = parse_nmax(args.nmax);
  s.jobs = args.jobs;
  if (!(s.tol > 0.0)) throw UsageError("tol must be positive");
  return s;
}

int cmd_optimize(const Args& args, std::ostream& out) {
  const auto measure = parse_measure(args.measure);
  const auto receiver = parse_receiver(args.receiver);
  const auto rail = parse_rail(args.rail);
  const auto grid = resolve_r(args, "0:2.5:0.1").values();
  const auto format = parse_format(args.format);
  const auto dest = destinations(args.out, format);
  const auto curve = optimal_curve(measure, rail, grid, optimizer_settings(args), receiver);
  emit_csv(dest.csv, out, opt_csv_text(curve));
  if (dest.svg) {
    Plot plot = optimum_plot("optimized " + to_string(measure), curve, false);
    auto params = optimum_plot("", curve, true);
    plot.series.insert(plot.series.end(), params.series.begin(), params.series.end());
    write_text(*dest.svg, render_svg(plot));
  }
  return kExitOk;
}

int cmd_figures(const Args& args, std::ostream& out) {
  const fs::path dir(args.out.empty() ? "figures" : args.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");

  const char* env_cap = std::getenv("UNRUHCHAN_NMAX_CAP");
  const std::size_t cap =
      env_cap && *env_cap ? cutoff_cap_from_env() : kFiguresCutoffCap;
  const auto cutoff = parse_nmax(args.nmax);
  const RRange single_r = resolve_r(args, "0:2.5:0.1");
  const RRange dual_r = args.r.empty() && !args.a ? RRange{0.0, 1.2, 0.1} : single_r;

  auto sweep_for = [&](Rail rail, ChannelSelection channel) {
    SweepSpec spec;
    spec.r = rail == Rail::single ? single_r : dual_r;
    if (!args.qr.empty()) spec.qr = parse_qr_list(args.qr);
    spec.rail = rail;
    spec.channel = channel;
    spec.cutoff = cutoff;
    spec.cutoff_cap = cap;
    spec.tol = args.tol;
    spec.jobs = args.jobs;
    return run_sweep(spec);
  };

  struct SweepFigure {
    const char* stem;
    Rail rail;
    ChannelSelection channel;
    const char* measure;
    const char* title;
  };
  const SweepFigure sweeps[] = {
      {"fig1", Rail::single, ChannelSelection::classical, "holevo", "Holevo information, single rail"},
      {"fig2", Rail::dual, ChannelSelection::classical, "holevo", "Holevo information, dual rail"},
      {"fig3", Rail::single, ChannelSelection::quantum, "cohinfo", "Coherent information, single rail"},
      {"fig4", Rail::dual, ChannelSelection::quantum, "cohinfo", "Coherent information, dual rail"},
  };
  for (const auto& fig : sweeps) {
    const auto rows = sweep_for(fig.rail, fig.channel);
    write_text(dir / (std::string(fig.stem) + ".csv"), csv_text(rows));
    write_text(dir / (std::string(fig.stem) + ".svg"),
               render_svg(sweep_plot(fig.title, rows, {fig.measure})));
    out << "wrote " << (dir / fig.stem).string() << ".{csv,svg}\n";
  }

  OptimizerSettings settings;
  settings.tol = args.tol;
  settings.cutoff = cutoff;
  settings.cutoff_cap = cap;
  settings.jobs = args.jobs;
  const auto single_grid = single_r.values();
  const auto dual_grid = dual_r.values();
  const auto single_opt = optimal_curve(Measure::holevo, Rail::single, single_grid, settings);
  const auto dual_opt = optimal_curve(Measure::holevo, Rail::dual, dual_grid, settings);

  std::vector<OptResult> both = single_opt;
  both.insert(both.end(), dual_opt.begin(), dual_opt.end());
  write_text(dir / "fig5.csv", opt_csv_text(both));
  write_text(dir / "fig6.csv", opt_csv_text(both));

  Plot fig5{"Optimized Holevo information", "r", "bits", {}};
  fig5.series.push_back(optimum_plot("", single_opt, false).series.front());
  fig5.series.push_back(optimum_plot("", dual_opt, false).series.front());
  write_text(dir / "fig5.svg", render_svg(fig5));

  Plot fig6{"Optimal parameters for Holevo information", "r", "optimal parameter", {}};
  for (const auto* curve : {&single_opt, &dual_opt}) {
    auto part = optimum_plot("", *curve, true);
    fig6.series.insert(fig6.series.end(), part.series.begin(), part.series.end());
  }
  write_text(dir / "fig6.svg", render_svg(fig6));
  out << "wrote " << (dir / "fig5").string() << ".{csv,svg}\n";
  out << "wrote " << (dir / "fig6").string() << ".{csv,svg}\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"unruhchan: classical and quantum information over Unruh-mode channels"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Args args;
  auto* point = app.add_subcommand("point", "evaluate every measure at one parameter point");
  auto* sweep = app.add_subcommand("sweep", "tabulate measures over an r, qR, alpha2 grid");
  auto* optimize = app.add_subcommand("optimize", "maximize a measure over (alpha2, qR) along r");
  auto* figures = app.add_subcommand("figures", "write fig1..fig6 as SVG with backing CSV");
  for (auto* cmd : {point, sweep, optimize, figures}) add_shared(cmd, args);
  optimize->add_option("--measure", args.measure, "holevo | cohinfo");
  optimize->add_option("--receiver", args.receiver, "R | Rbar");
  figures->get_option("--tol")->default_str("1e-6");

  int code = kExitOk;
  try {
    std::vector<std::string> raw(argv, argv + argc);
    raw = expand_config(std::move(raw));
    // CLI11 parses a reversed copy of argv when given a vector.
    std::vector<std::string> reversed(raw.rbegin(), raw.rend() - 1);
    app.parse(reversed);
    if (*figures && figures->get_option("--tol")->count() == 0) args.tol = 1e-6;
    if (*point) code = cmd_point(args, out);
    else if (*sweep) code = cmd_sweep(args, out);
    else if (*optimize) code = cmd_optimize(args, out);
    else if (*figures) code = cmd_figures(args, out);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return code;
}

}  // namespace unruhchan

#include "qwalk/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qwalk/ctqw.hpp"
#include "qwalk/io.hpp"
#include "qwalk/scaling.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/szegedy.hpp"

namespace qwalk::cli {

namespace {

constexpr double kNormalizationTolerance = 1e-10;
constexpr double kTraceBudget = 1e8;

using io::format_double;

/// Error carrying the exit code it should map to.
struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void check_normalized(std::span<const double> probs, const std::string& what) {
  const double total = accurate_sum(probs);
  bool ok = std::abs(total - 1.0) <= kNormalizationTolerance;
  for (double p : probs) ok = ok && std::isfinite(p) && p >= -kNormalizationTolerance;
  if (!ok) {
    throw CliError(kNormalizationError,
                   "normalization check failed for " + what + ": sum = " + format_double(total));
  }
}

std::size_t resolve_n(const ExperimentConfig& config) {
  if (config.chain.family == Family::kExplicit) {
    const std::size_t implied = config.chain.interior_right.size() + 1;
    if (config.n && *config.n != implied) {
      throw InvalidChain("--n " + std::to_string(*config.n) + " disagrees with " +
                         std::to_string(config.chain.interior_right.size()) +
                         " explicit interior probabilities");
    }
    return implied;
  }
  if (!config.n) throw InvalidChain("chain size missing: pass --n");
  return *config.n;
}

/// Destination for tables: a file under the prefix, or the console stream.
class Sink {
 public:
  Sink(const std::string& prefix, std::ostream& console) : prefix_(prefix), console_(console) {}

  bool to_files() const { return !prefix_.empty(); }

  /// Writes one artifact; `suffix` like ".csv" or ".spectrum.json".
  void emit(const std::string& suffix, const std::function<void(std::ostream&)>& body) {
    if (!to_files()) {
      body(console_);
      return;
    }
    const std::string path = prefix_ + suffix;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw CliError(kOutputError, "cannot open output file '" + path + "' for writing");
    body(file);
    file.flush();
    if (!file) throw CliError(kOutputError, "failed while writing '" + path + "'");
    written_.push_back(path);
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  std::string prefix_;
  std::ostream& console_;
  std::vector<std::string> written_;
};

void write_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

void maybe_dump_spectrum(const ExperimentConfig& config, Sink& sink, const SpectralData& spec) {
  if (!config.dump_spectrum) return;
  sink.emit(".spectrum.json", [&](std::ostream& o) { write_json(o, io::spectrum_to_json(spec)); });
}

void run_spectrum(const ExperimentConfig& config, Sink& sink, std::ostream& summary) {
  const std::size_t n = resolve_n(config);
  const BDChain chain = build_chain(config.chain, n);
  const SpectralData spec = eigendecompose(jacobi_matrix(chain));

  if (config.format == Format::kCsv) {
    io::CsvTable t;
    t.header = {"l", "eigenvalue"};
    for (std::size_t l = 0; l < spec.dim(); ++l) {
      t.rows.push_back({std::to_string(l), format_double(spec.eigenvalue(l))});
    }
    sink.emit(".csv", [&](std::ostream& o) { t.write(o); });
  } else {
    nlohmann::json j = io::spectrum_to_json(spec);
    j["family"] = to_string(config.chain.family);
    sink.emit(".json", [&](std::ostream& o) { write_json(o, j); });
  }
  maybe_dump_spectrum(config, sink, spec);
  summary << "spectrum: n=" << n << " gap=" << format_double(spectral_gap(spec))
          << " lambda_0=" << format_double(spec.eigenvalue(0))
          << " lambda_n=" << format_double(spec.eigenvalue(n)) << '\n';
}

void run_ctqw_avg(const ExperimentConfig& config, Sink& sink, std::ostream& summary) {
  const std::size_t n = resolve_n(config);
  const BDChain chain = build_chain(config.chain, n);
  const SpectralData spec = eigendecompose(jacobi_matrix(chain));

  const TimeAveragedDist closed = ctqw_time_average(spec);
  check_normalized(closed.probs, "pbar_C");
  std::vector<TimeAveragedDist> finite;
  for (double T : config.horizons) {
    finite.push_back(ctqw_time_average_finite(spec, T));
    check_normalized(finite.back().probs, "pbar_C at T=" + format_double(T));
  }

  if (config.format == Format::kCsv) {
    io::CsvTable t;
    t.header = {"j", "pbar_C"};
    for (std::size_t i = 0; i < finite.size(); ++i) t.header.push_back("pbar_C_T" + std::to_string(i + 1));
    for (std::size_t j = 0; j <= n; ++j) {
      std::vector<std::string> row{std::to_string(j), format_double(closed.probs[j])};
      for (const auto& f : finite) row.push_back(format_double(f.probs[j]));
      t.rows.push_back(std::move(row));
    }
    sink.emit(".csv", [&](std::ostream& o) { t.write(o); });
  } else {
    nlohmann::json j;
    j["n"] = n;
    j["family"] = to_string(config.chain.family);
    j["pbar_C"] = closed.probs;
    j["horizons"] = config.horizons;
    auto rows = nlohmann::json::array();
    for (const auto& f : finite) rows.push_back(f.probs);
    j["pbar_C_T"] = std::move(rows);
    sink.emit(".json", [&](std::ostream& o) { write_json(o, j); });
  }
  maybe_dump_spectrum(config, sink, spec);

  summary << "ctqw-avg: n=" << n << " gap=" << format_double(spectral_gap(spec))
          << " sum(pbar_C)=" << format_double(accurate_sum(closed.probs)) << '\n';
  for (std::size_t i = 0; i < finite.size(); ++i) {
    double dist = 0.0;
    for (std::size_t j = 0; j <= n; ++j) dist = std::max(dist, std::abs(finite[i].probs[j] - closed.probs[j]));
    summary << "  T=" << format_double(config.horizons[i]) << " sup|pbar_C_T - pbar_C|=" << format_double(dist)
            << '\n';
  }
}

std::vector<std::size_t> integer_horizons(const std::vector<double>& horizons) {
  std::vector<std::size_t> out;
  for (double T : horizons) {
    if (T < 1.0 || std::floor(T) != T) {
      throw CliError(kUsageError, "DTQW horizons must be positive integers, got " + format_double(T));
    }
    out.push_back(static_cast<std::size_t>(T));
  }
  return out;
}

void run_dtqw_avg(const ExperimentConfig& config, Sink& sink, std::ostream& summary) {
  const std::size_t n = resolve_n(config);
  const std::vector<std::size_t> horizons = integer_horizons(config.horizons);
  const BDChain chain = build_chain(config.chain, n);
  const SpectralData spec = eigendecompose(jacobi_matrix(chain));
  const SzegedyOperator op(chain);

  const TimeAveragedDist closed = dtqw_time_average(chain, spec);
  check_normalized(closed.probs, "pbar_D");
  std::vector<TimeAveragedDist> empirical;
  for (std::size_t T : horizons) {
    empirical.push_back(dtqw_time_average_empirical(op, T));
    check_normalized(empirical.back().probs, "empirical pbar_D at T=" + std::to_string(T));
  }

  if (config.format == Format::kCsv) {
    io::CsvTable t;
    t.header = {"j", "pbar_D"};
    for (std::size_t i = 0; i < empirical.size(); ++i) t.header.push_back("pbar_D_T" + std::to_string(i + 1));
    for (std::size_t j = 0; j <= n; ++j) {
      std::vector<std::string> row{std::to_string(j), format_double(closed.probs[j])};
      for (const auto& e : empirical) row.push_back(format_double(e.probs[j]));
      t.rows.push_back(std::move(row));
    }
    sink.emit(".csv", [&](std::ostream& o) { t.write(o); });
  } else {
    nlohmann::json j;
    j["n"] = n;
    j["family"] = to_string(config.chain.family);
    j["pbar_D"] = closed.probs;
    j["horizons"] = horizons;
    auto rows = nlohmann::json::array();
    for (const auto& e : empirical) rows.push_back(e.probs);
    j["pbar_D_T"] = std::move(rows);
    sink.emit(".json", [&](std::ostream& o) { write_json(o, j); });
  }
  maybe_dump_spectrum(config, sink, spec);
  if (config.dump_eigenpairs) {
    const auto pairs = lifted_eigenpairs(chain, spec);
    const nlohmann::json j = io::eigenpairs_to_json(pairs, n);
    sink.emit(".eigenpairs.json", [&](std::ostream& o) { write_json(o, j); });
  }

  summary << "dtqw-avg: n=" << n << " gap=" << format_double(spectral_gap(spec))
          << " sum(pbar_D)=" << format_double(accurate_sum(closed.probs)) << '\n';
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    double dist = 0.0;
    for (std::size_t j = 0; j <= n; ++j) dist = std::max(dist, std::abs(empirical[i].probs[j] - closed.probs[j]));
    summary << "  T=" << horizons[i] << " sup|empirical - pbar_D|=" << format_double(dist) << '\n';
  }
}

void run_trace(const ExperimentConfig& config, Sink& sink, std::ostream& summary) {
  const std::size_t n = resolve_n(config);
  const std::size_t steps = config.steps;
  if (steps == 0) throw CliError(kUsageError, "--steps must be positive");
  if (static_cast<double>(steps) * static_cast<double>(n) > kTraceBudget && !config.force) {
    throw CliError(kUsageError, "trace of " + std::to_string(steps) + " steps at n=" + std::to_string(n) +
                                    " exceeds the 1e8 update budget; pass --force to run it anyway");
  }
  const BDChain chain = build_chain(config.chain, n);
  const SzegedyOperator op(chain);

  auto check_step = [&](std::size_t t, std::span<const double> probs) {
    check_normalized(probs, "trace step t=" + std::to_string(t));
  };

  if (config.format == Format::kCsv) {
    sink.emit(".csv", [&](std::ostream& o) {
      o << "t,j,prob\n";
      dtqw_trace(op, steps, [&](std::size_t t, std::span<const double> probs) {
        check_step(t, probs);
        for (std::size_t j = 0; j < probs.size(); ++j) {
          o << t << ',' << j << ',' << format_double(probs[j]) << '\n';
        }
      });
    });
  } else {
    sink.emit(".json", [&](std::ostream& o) {
      o << "{\n  \"n\": " << n << ",\n  \"steps\": " << steps << ",\n  \"probs\": [";
      dtqw_trace(op, steps, [&](std::size_t t, std::span<const double> probs) {
        check_step(t, probs);
        o << (t ? ",\n    [" : "\n    [");
        for (std::size_t j = 0; j < probs.size(); ++j) o << (j ? ", " : "") << format_double(probs[j]);
        o << ']';
      });
      o << "\n  ]\n}\n";
    });
  }
  summary << "trace: n=" << n << " steps=" << steps << '\n';
}

void run_theorem1(const ExperimentConfig& config, Sink& sink, std::ostream& summary, int& status) {
  if (config.sizes.empty()) throw CliError(kUsageError, "theorem1 needs --sizes");
  // Surface chain-spec problems before the sweep starts.
  for (std::size_t n : config.sizes) {
    if (n < 2) throw InvalidChain("theorem1 sizes must be >= 2, got " + std::to_string(n));
    (void)build_chain(config.chain, n);
  }

  ScalingOptions opts;
  opts.workers = config.workers;
  if (config.reference == "arcsine") {
    opts.reference = arcsine_cdf;
    opts.reference_name = "arcsine";
  }
  const ScalingReport report = theorem1_experiment(config.chain, config.sizes, opts);

  if (config.format == Format::kCsv) {
    const io::CsvTable t = io::report_to_csv(report);
    sink.emit(".csv", [&](std::ostream& o) { t.write(o); });
  } else {
    const nlohmann::json j = io::report_to_json(report);
    sink.emit(".json", [&](std::ostream& o) { write_json(o, j); });
  }

  summary << "theorem1: family=" << report.family << '\n';
  for (const auto& row : report.rows) {
    if (!row.ok) {
      summary << "  n=" << row.n << " FAILED: " << row.error << '\n';
      status = kModuleError;
      continue;
    }
    summary << "  n=" << row.n << " gap=" << format_double(row.gap) << " ks_cd=" << format_double(row.ks_cd);
    if (row.ks_ref) summary << " ks_ref=" << format_double(*row.ks_ref);
    summary << '\n';
  }
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kCommands{"spectrum", "ctqw-avg", "dtqw-avg", "trace", "theorem1"};
  if (std::find(kCommands.begin(), kCommands.end(), config.command) == kCommands.end()) {
    err << "error: unknown command '" << config.command
        << "' (expected spectrum, ctqw-avg, dtqw-avg, trace or theorem1)\n";
    return kUsageError;
  }

  std::string prefix = config.output;
  if (prefix.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      prefix = std::string(dir) + "/" + config.command;
    }
  }
  Sink sink(prefix, out);
  std::ostringstream summary;
  int status = kOk;

  try {
    for (double T : config.horizons) {
      if (!(T > 0.0)) throw CliError(kUsageError, "horizons must be positive, got " + format_double(T));
    }
    if (config.command == "spectrum") {
      run_spectrum(config, sink, summary);
    } else if (config.command == "ctqw-avg") {
      run_ctqw_avg(config, sink, summary);
    } else if (config.command == "dtqw-avg") {
      run_dtqw_avg(config, sink, summary);
    } else if (config.command == "trace") {
      run_trace(config, sink, summary);
    } else {
      run_theorem1(config, sink, summary, status);
    }
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const InvalidChain& e) {
    err << "error: invalid chain specification: " << e.what() << '\n';
    return kChainSpecError;
  } catch (const std::exception& e) {
    err << "error: computation failed: " << e.what() << '\n';
    return kModuleError;
  }

  std::ostream& summary_out = sink.to_files() ? out : err;
  summary_out << summary.str();
  for (const auto& path : sink.written()) summary_out << "wrote " << path << '\n';
  return status;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birth-death chains, their continuous-time and Szegedy quantum walks, and "
               "time-averaged scaling experiments."};
  app.name("qwalk");

  ExperimentConfig config;
  std::string family = "homogeneous";
  std::string format = "csv";
  std::size_t n = 0;

  app.add_option("command", config.command, "spectrum | ctqw-avg | dtqw-avg | trace | theorem1")->required();
  app.add_option("--family", family, "homogeneous | ehrenfest | explicit | random")->capture_default_str();
  app.add_option("--p", config.chain.p, "rightward probability for the homogeneous family")->capture_default_str();
  auto* n_opt = app.add_option("--n", n, "path has vertices 0..n");
  app.add_option("--interior-pR", config.chain.interior_right, "explicit interior pR values, comma separated")
      ->delimiter(',');
  app.add_option("--seed", config.chain.seed, "seed for the random family")->capture_default_str();
  app.add_option("--sizes", config.sizes, "theorem1 sizes, comma separated")->delimiter(',');
  app.add_option("--horizons", config.horizons, "finite averaging horizons, comma separated")->delimiter(',');
  app.add_option("--steps", config.steps, "trace length")->capture_default_str();
  app.add_option("--output", config.output, "output path prefix (default: stdout, or $QWALK_OUTPUT_DIR/<command>)");
  app.add_option("--format", format, "csv | json")->capture_default_str();
  app.add_option("--reference", config.reference, "theorem1 reference CDF: arcsine");
  app.add_flag("--dump-spectrum", config.dump_spectrum, "also write eigenvalues and eigenvectors as JSON");
  app.add_flag("--dump-eigenpairs", config.dump_eigenpairs, "dtqw-avg: also write lifted eigenpairs (n <= 64)");
  app.add_flag("--force", config.force, "allow traces beyond the update budget");
  app.add_option("--workers", config.workers, "theorem1 worker threads (0 = all cores)");
  app.set_config("--config", "", "flat key = value file; command-line flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (*n_opt) config.n = n;
  if (format == "csv") {
    config.format = Format::kCsv;
  } else if (format == "json") {
    config.format = Format::kJson;
  } else {
    err << "error: unknown format '" << format << "' (expected csv or json)\n";
    return kUsageError;
  }
  if (!config.reference.empty() && config.reference != "arcsine" && config.reference != "none") {
    err << "error: unknown reference '" << config.reference << "' (expected arcsine or none)\n";
    return kUsageError;
  }
  if (config.reference == "none") config.reference.clear();
  try {
    config.chain.family = parse_family(family);
  } catch (const InvalidChain& e) {
    err << "error: invalid chain specification: " << e.what() << '\n';
    return kChainSpecError;
  }
  return run(config, out, err);
}

}  // namespace qwalk::cli

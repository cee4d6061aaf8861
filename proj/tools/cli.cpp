#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "ccstat/confidence.hpp"
#include "ccstat/errors.hpp"
#include "ccstat/extremes.hpp"
#include "ccstat/fusion.hpp"
#include "ccstat/gls_ar.hpp"
#include "ccstat/io.hpp"
#include "ccstat/monitoring.hpp"
#include "ccstat/prediction.hpp"
#include "ccstat/segmented.hpp"
#include "ccstat/series.hpp"
#include "ccstat/version.hpp"

namespace ccstat::cli {

namespace {

using nlohmann::json;

struct Output {
  std::string dir = ".";
  std::string prefix;
  bool force = false;

  std::string path(const std::string& name) const {
    return (std::filesystem::path(dir) / (prefix + name)).string();
  }

  std::string reserve(const std::string& name) const {
    const std::string p = path(name);
    if (!force && std::filesystem::exists(p))
      throw std::invalid_argument("output '" + p +
                                  "' exists; pass --force to overwrite");
    return p;
  }
};

void add_output_flags(CLI::App* cmd, Output* out) {
  const char* env = std::getenv("CCSTAT_OUTPUT_DIR");
  if (env && *env) out->dir = env;
  cmd->add_option("--output-dir", out->dir,
                  "Directory for result files (env CCSTAT_OUTPUT_DIR)");
  cmd->add_option("--prefix", out->prefix, "Filename prefix for outputs");
  cmd->add_flag("--force", out->force, "Overwrite existing output files");
}

struct SeriesInput {
  std::string path;
  std::string time_col = "year";
  std::string value_col = "value";

  GappedSeries load() const { return load_csv(path, time_col, value_col); }
};

void add_series_flags(CLI::App* cmd, SeriesInput* in) {
  cmd->add_option("--input", in->path, "Input CSV")->required();
  cmd->add_option("--time-col", in->time_col, "Time column name");
  cmd->add_option("--value-col", in->value_col, "Value column name");
}

json envelope(const std::string& command,
              const std::vector<std::string>& inputs,
              std::optional<std::uint64_t> seed) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = nullptr;
  if (seed) j["seed"] = *seed;
  json hashes = json::object();
  for (const auto& p : inputs) hashes[p] = file_hash_hex(p);
  j["inputs"] = hashes;
  return j;
}

void write_json(const Output& out, const std::string& name, const json& j) {
  const std::string p = out.reserve(name);
  std::ofstream f(p);
  if (!f) throw std::invalid_argument("cannot write '" + p + "'");
  f << j.dump(2) << '\n';
}

json interval_json(const Interval& iv) {
  json j;
  j["lo"] = iv.lo;
  j["hi"] = std::isfinite(iv.hi) ? json(iv.hi) : json(nullptr);
  j["lo_unbounded"] = iv.lo_unbounded;
  j["hi_unbounded"] = iv.hi_unbounded;
  return j;
}

json fit_json(const GlsArFit& fit) {
  json est = json::object(), se = json::object();
  for (int i = 0; i < fit.dim(); ++i) {
    const std::string& name = fit.param_names[static_cast<std::size_t>(i)];
    double value = 0.0;
    if (i < fit.beta.size()) {
      value = fit.beta(i);
    } else if (name == "sigma") {
      value = fit.sigma;
    } else if (name == "rho") {
      value = fit.rho;
    } else if (name == "gamma1") {
      value = fit.gamma->first;
    } else if (name == "gamma2") {
      value = fit.gamma->second;
    } else if (name == "nu") {
      value = *fit.nu;
    }
    est[name] = value;
    if (fit.se.size() == fit.dim() && std::isfinite(fit.se(i)))
      se[name] = fit.se(i);
  }
  json j;
  j["estimates"] = est;
  j["se"] = se;
  j["loglik_max"] = std::isfinite(fit.loglik_max) ? json(fit.loglik_max)
                                                  : json(nullptr);
  j["aic"] = std::isfinite(fit.aic) ? json(fit.aic) : json(nullptr);
  j["dim"] = fit.dim();
  j["converged"] = fit.converged;
  j["boundary_rho"] = fit.boundary_rho;
  j["degenerate"] = fit.degenerate;
  j["info_positive_definite"] = fit.info_pd;
  j["sigma_note"] =
      "sigma uses the ML divisor n; the bias-corrected alternative divides "
      "by n - p";
  return j;
}

Eigen::VectorXd values_vector(const GappedSeries& s) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    y(static_cast<Eigen::Index>(i)) = s.values[i];
  return y;
}

ErrorFamily parse_family(const std::string& model) {
  if (model == "ols" || model == "ar") return ErrorFamily::kNormal;
  if (model == "hetero") return ErrorFamily::kLogQuadVariance;
  if (model == "terr") return ErrorFamily::kStudentT;
  throw std::invalid_argument("unknown model '" + model + "'");
}

// ---- subcommands ----

struct FitTrendCmd {
  SeriesInput in;
  Output out;
  std::string model = "ar";
  double x_origin = 0.0;

  void run() const {
    const GappedSeries s = in.load();
    const GlsArModel m = trend_model(s, x_origin, parse_family(model));
    const Eigen::VectorXd y = values_vector(s);
    const GlsArFit fit =
        (model == "ols") ? fit_ols(m, y) : fit_mle(m, y);
    json j = envelope("fit-trend", {in.path}, std::nullopt);
    j["model"] = model;
    j["x_origin"] = x_origin;
    j["n"] = s.size();
    j["fit"] = fit_json(fit);
    write_json(out, "fit.json", j);
  }
};

struct CcRhoCmd {
  SeriesInput in;
  Output out;
  double grid_min = -0.9, grid_max = 0.95;
  int grid_points = 401;
  std::vector<double> levels{0.95};
  double x_origin = 0.0;

  void run() const {
    const GappedSeries s = in.load();
    const GlsArModel m = trend_model(s, x_origin);
    const Eigen::VectorXd y = values_vector(s);
    const ConfidenceCurve cc =
        cc_rho(m, y, linspace(grid_min, grid_max, grid_points));
    write_curve_csv(out.reserve("cc_rho.csv"), "rho", "level", cc.grid,
                    cc.level);
    json j = envelope("cc-rho", {in.path}, std::nullopt);
    j["point_estimate"] = cc.point_estimate;
    json ivs = json::object();
    for (double level : levels)
      ivs[format_double(level)] = interval_json(interval(cc, level));
    j["intervals"] = ivs;
    write_json(out, "cc_rho.json", j);
  }
};

struct PredictCmd {
  SeriesInput in;
  Output out;
  std::vector<double> at;
  double level = 0.90;
  int degree = 1;

  void run() const {
    const GappedSeries s = in.load();
    json years = json::object();
    for (double x : at) {
      PredictionCd cd;
      if (degree == 1) {
        cd = predict_cd(linear_fit_summary(s), x);
      } else {
        cd = predict_cd(poly_trend_fit(s, degree), x);
      }
      json j;
      j["center"] = cd.center;
      j["scale"] = cd.scale;
      j["df"] = cd.m;
      j["interval"] = interval_json(cd.central_interval(level));
      years[format_double(x)] = j;
      const ConfidenceDistribution tab =
          cd.tabulate(cd.center - 6 * cd.scale, cd.center + 6 * cd.scale, 401);
      write_curve_csv(out.reserve("predict_cd_" + format_double(x) + ".csv"),
                      "value", "cdf", tab.grid, tab.cdf);
    }
    json j = envelope("predict", {in.path}, std::nullopt);
    j["level"] = level;
    j["degree"] = degree;
    j["predictions"] = years;
    write_json(out, "predict.json", j);
  }
};

struct CrossingCmd {
  SeriesInput in;
  Output out;
  double threshold = 0.0;
  double level = 0.90;
  int degree = 1;
  double horizon = 300.0;
  int grid_points = 1200;
  bool allow_low_threshold = false;

  void run() const {
    const GappedSeries s = in.load();
    const double last = s.times.back();
    const std::vector<double> grid =
        linspace(last, last + horizon, grid_points);
    json j = envelope("crossing", {in.path}, std::nullopt);
    j["threshold"] = threshold;
    j["level"] = level;
    j["degree"] = degree;
    if (degree == 1) {
      const LinearFitSummary fit = linear_fit_summary(s);
      const double fitted_last = fit.ahat + fit.bhat * (last - fit.xbar);
      if (threshold <= fitted_last && !allow_low_threshold)
        throw std::invalid_argument(
            "threshold already below the fitted level at the last "
            "observation; pass --allow-low-threshold to proceed");
      const ConfidenceCurve cc = crossing_cc(fit, threshold, grid);
      const CrossingCap cap = crossing_cap(fit);
      write_curve_csv(out.reserve("crossing_curve.csv"), "year", "level",
                      cc.grid, cc.level);
      j["estimate"] = cc.point_estimate;
      j["cap"] = cap.cap;
      j["t_statistic"] = cap.t_stat;
      const Interval iv = crossing_interval(fit, threshold, level);
      j["interval"] = interval_json(iv);
      j["never_possible"] = (level >= cap.cap);
      if (cc.point_estimate > last + horizon)
        j["horizon_flag"] =
            "point estimate lies beyond the requested horizon";
    } else {
      const PolyTrendFit fit = poly_trend_fit(s, degree);
      const ConfidenceCurve cc = crossing_cc(fit, threshold, grid);
      write_curve_csv(out.reserve("crossing_curve.csv"), "year", "level",
                      cc.grid, cc.level);
      j["estimate"] = cc.point_estimate;
      j["cap"] = cc.cap;
      const Interval iv = interval(cc, level);
      j["interval"] = interval_json(iv);
      j["never_possible"] = (level >= cc.cap);
    }
    write_json(out, "crossing.json", j);
  }
};

struct SegmentedCmd {
  SeriesInput in;
  Output out;
  int i0 = 10;
  int bootstrap = 0;
  std::uint64_t seed = 1;

  void run() const {
    const GappedSeries s = in.load();
    const SegmentedFit fit = fit_segmented(s, i0);
    std::vector<double> taus(fit.tau_grid.begin(), fit.tau_grid.end());
    write_curve_csv(out.reserve("segmented_profile.csv"), "tau",
                    "profile_loglik", taus, fit.profile);

    const GlsArModel lin = trend_model(s);
    const Eigen::VectorXd y = values_vector(s);
    const GlsArFit linear = fit_ols(lin, y);
    GlsArModel quad = lin;
    quad.X.conservativeResize(quad.X.rows(), 3);
    std::vector<double> x(s.times.begin(), s.times.end());
    const double xbar = center(x).xbar;
    for (Eigen::Index i = 0; i < quad.X.rows(); ++i) {
      const double u = x[static_cast<std::size_t>(i)] - xbar;
      quad.X(i, 2) = u * u;
    }
    quad.column_names = {"intercept", "slope", "quad"};
    const GlsArFit quadratic = fit_ols(quad, y);

    json j = envelope("segmented", {in.path},
                      bootstrap > 0 ? std::optional<std::uint64_t>(seed)
                                    : std::nullopt);
    j["tau"] = fit.tau;
    j["a_left"] = fit.a_l;
    j["b_left"] = fit.b_l;
    j["a_right"] = fit.a_r;
    j["b_right"] = fit.b_r;
    j["sigma"] = fit.sigma;
    j["xbar"] = fit.xbar;
    j["loglik_max"] = fit.loglik_max;
    j["aic"] = fit.aic;
    j["aic_linear"] = linear.aic;
    j["aic_quadratic"] = quadratic.aic;
    j["aic_note"] =
        "the AIC regularity assumptions do not cover a break parameter; see "
        "bootstrap_p for a simulation-based comparison";
    if (bootstrap > 0) {
      const BreakTest test = segmented_break_test(s, i0, bootstrap, seed);
      j["bootstrap_replicates"] = test.replicates;
      j["bootstrap_gain"] = test.gain;
      j["bootstrap_p"] = test.p_value;
    }
    write_json(out, "segmented.json", j);
  }
};

struct MonitorCmd {
  Output out;
  std::string kind = "slope";
  SeriesInput in;          // slope/mean
  std::string response;    // loglik/param
  std::string response_time_col = "year";
  std::string response_value_col = "value";
  std::string monthly;     // wide csv year,m01..m12
  int i0 = 10;
  double rho = std::numeric_limits<double>::quiet_NaN();
  int paths = 20000;
  std::uint64_t seed = 1;
  std::vector<double> levels{0.90, 0.95, 0.99};
  int grid_steps = 2000;

  json bridge_json(const BridgeProcess& bp, const NullQuantiles& nq) const {
    json j;
    j["max_abs"] = bp.max_abs;
    j["eps"] = bp.eps;
    j["weighted_null"] = bridge_is_weighted(bp.kind);
    json qs = json::object();
    for (const auto& [level, q] : nq.quantiles) qs[format_double(level)] = q;
    j["null_quantiles"] = qs;
    const double gate = nq.quantiles.count(0.95) ? nq.quantiles.at(0.95)
                                                 : nq.quantiles.begin()->second;
    j["exceeded"] = bp.max_abs > gate;
    j["p_value"] = nq.p_value(bp.max_abs);
    j["holes"] = bp.holes;
    return j;
  }

  void run() const {
    json j = envelope("monitor", {}, seed);
    j["kind"] = kind;
    j["i0"] = i0;
    if (kind == "slope" || kind == "mean") {
      const GappedSeries s = in.load();
      j["inputs"][in.path] = file_hash_hex(in.path);
      BridgeProcess bp;
      if (kind == "slope") {
        bp = slope_bridge(s, i0);
      } else {
        const double r = std::isnan(rho) ? ar1_moment_estimate(s) : rho;
        j["rho"] = r;
        j["inflation_factor"] = inflation_factor(r);
        bp = mean_bridge(s, i0, r);
      }
      const NullQuantiles nq =
          simulate_null_quantiles(bp.kind, bp.eps, levels, paths, seed,
                                  grid_steps);
      std::vector<double> taus(bp.taus.begin(), bp.taus.end());
      write_curve_csv(out.reserve("bridge_" + kind + ".csv"), "tau", "value",
                      taus, bp.values);
      j["bridge"] = bridge_json(bp, nq);
    } else if (kind == "loglik" || kind == "param") {
      const GappedSeries resp =
          load_csv(response, response_time_col, response_value_col);
      const MonthlyPanel panel = MonthlyPanel::from_wide_csv(monthly);
      const LaggedDesign design =
          make_lagged_design(resp, winter_average_lags(panel));
      j["inputs"][response] = file_hash_hex(response);
      j["inputs"][monthly] = file_hash_hex(monthly);
      j["n"] = design.years.size();
      const int n = static_cast<int>(design.years.size());
      const LaggedScan scan = scan_lagged(design, i0);
      if (kind == "loglik") {
        const BridgeProcess bp = loglik_bridge(scan, n, i0);
        const NullQuantiles nq = simulate_null_quantiles(
            bp.kind, bp.eps, levels, paths, seed, grid_steps);
        std::vector<double> taus(bp.taus.begin(), bp.taus.end());
        write_curve_csv(out.reserve("bridge_loglik.csv"), "tau", "value",
                        taus, bp.values);
        j["bridge"] = bridge_json(bp, nq);
      } else {
        const GlsArFit full = fit_lagged(design);
        const auto bridges = param_bridges(scan, full, n, i0);
        const NullQuantiles nq = simulate_null_quantiles(
            BridgeKind::kParameter, bridges.front().eps, levels, paths, seed,
            grid_steps);
        json all = json::object();
        for (const auto& bp : bridges) {
          std::vector<double> taus(bp.taus.begin(), bp.taus.end());
          write_curve_csv(out.reserve("bridge_param_" + bp.param_name + ".csv"),
                          "tau", "value", taus, bp.values);
          all[bp.param_name] = bridge_json(bp, nq);
        }
        j["bridges"] = all;
      }
    } else {
      throw std::invalid_argument("unknown monitor kind '" + kind + "'");
    }
    write_json(out, "monitor.json", j);
  }
};

std::pair<double, double> parse_pair(const std::string& spec,
                                     const std::string& what) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(what + ": expected 'a:b', got '" + spec + "'");
  double a = 0, b = 0;
  if (!parse_double(spec.substr(0, colon), &a) ||
      !parse_double(spec.substr(colon + 1), &b))
    throw std::invalid_argument(what + ": bad numbers in '" + spec + "'");
  return {a, b};
}

struct FuseCmd {
  Output out;
  std::vector<std::string> source_files;
  std::vector<std::string> chisq_sd;        // "sigma_hat:m"
  std::vector<std::string> normal_prior;    // "mean:sd"
  std::vector<std::string> nonparam_quant;  // "file:q"
  std::vector<std::string> normal_quant;    // "file:q"
  std::string sample_col = "value";
  double grid_min = 0.0, grid_max = 1.0;
  int grid_points = 1001;
  std::vector<double> levels{0.95};

  void run() const {
    const std::vector<double> grid = linspace(grid_min, grid_max, grid_points);
    std::vector<SourceCC> sources;
    std::vector<std::string> inputs;
    json per_source = json::object();

    for (const auto& f : source_files) {
      const CsvTable t = read_csv(f);
      if (t.header.size() < 2)
        throw std::invalid_argument("source '" + f + "': need two columns");
      ConfidenceCurve cc;
      for (const auto& row : t.rows) {
        double x = 0, level = 0;
        if (!parse_double(row[0], &x) || !parse_double(row[1], &level))
          throw std::invalid_argument("source '" + f + "': bad row");
        cc.grid.push_back(x);
        cc.level.push_back(level);
      }
      sources.push_back({f, cc});
      inputs.push_back(f);
    }
    for (const auto& spec : chisq_sd) {
      const auto [sh, m] = parse_pair(spec, "--chisq-sd");
      const ChisqSdCd cd = chisq_sd_cd(sh, static_cast<int>(m));
      SourceCC src{"chisq-sd " + spec, cc_from_cd(cd.tabulate(grid))};
      const Interval iv = cd.central_interval(0.95);
      per_source[src.label]["interval_0.95"] = interval_json(iv);
      sources.push_back(std::move(src));
    }
    for (const auto& spec : normal_prior) {
      const auto [mean, sd] = parse_pair(spec, "--normal-prior");
      const NormalPriorCd cd = normal_prior_cd(mean, sd);
      sources.push_back({"normal-prior " + spec,
                         cc_from_cd(cd.tabulate(grid))});
    }
    for (const auto& spec : nonparam_quant) {
      const auto colon = spec.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--nonparam-quantile: expected 'file:q'");
      const std::string file = spec.substr(0, colon);
      double q = 0;
      if (!parse_double(spec.substr(colon + 1), &q))
        throw std::invalid_argument("--nonparam-quantile: bad q");
      const CsvTable t = read_csv(file);
      const std::size_t ci = t.col(sample_col);
      std::vector<double> sample;
      for (const auto& row : t.rows) {
        double v = 0;
        if (parse_double(row[ci], &v)) sample.push_back(v);
      }
      const NonparamQuantileCd cd = nonparam_quantile_cd(sample, q);
      sources.push_back({"nonparam-quantile " + spec,
                         cc_from_cd(cd.tabulate(grid))});
      inputs.push_back(file);
    }
    for (const auto& spec : normal_quant) {
      const auto colon = spec.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--normal-quantile: expected 'file:q'");
      const std::string file = spec.substr(0, colon);
      double q = 0;
      if (!parse_double(spec.substr(colon + 1), &q))
        throw std::invalid_argument("--normal-quantile: bad q");
      const CsvTable t = read_csv(file);
      const std::size_t ci = t.col(sample_col);
      std::vector<double> sample;
      for (const auto& row : t.rows) {
        double v = 0;
        if (parse_double(row[ci], &v)) sample.push_back(v);
      }
      sources.push_back({"normal-quantile " + spec,
                         normal_quantile_profile_cc(sample, q, grid)});
      inputs.push_back(file);
    }

    const ConfidenceCurve fused = fuse(sources, grid);
    write_curve_csv(out.reserve("fused.csv"), "focus", "level", fused.grid,
                    fused.level);
    json j = envelope("fuse", inputs, std::nullopt);
    j["point_estimate"] = fused.point_estimate;
    json ivs = json::object();
    for (double level : levels)
      ivs[format_double(level)] = interval_json(interval(fused, level));
    j["intervals"] = ivs;
    json labels = json::array();
    for (const auto& s : sources) labels.push_back(s.label);
    j["sources"] = labels;
    if (!per_source.empty()) j["per_source"] = per_source;
    write_json(out, "fused.json", j);
  }
};

struct ExtremesCmd {
  SeriesInput in;  // value-col used; time column optional
  Output out;
  double offset = 10.005;
  double threshold_raw = std::numeric_limits<double>::quiet_NaN();
  double threshold_y = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double seasons = std::numeric_limits<double>::quiet_NaN();
  double p_max = 0.5;
  int p_points = 800;
  double level = 0.90;

  void run() const {
    const CsvTable t = read_csv(in.path);
    const std::size_t ci = t.col(in.value_col);
    std::vector<double> raw;
    for (const auto& row : t.rows) {
      double v = 0;
      if (parse_double(row[ci], &v)) raw.push_back(v);
    }
    const std::vector<double> y = transform(raw, offset);
    const GpdFit fit = gpd_fit(y);

    SeasonModel season;
    season.transform_offset = offset;
    if (!std::isnan(threshold_y)) {
      season.y0 = threshold_y;
    } else if (!std::isnan(threshold_raw)) {
      season.y0 = offset - threshold_raw;
    } else {
      throw std::invalid_argument("need --threshold-raw or --threshold-y");
    }
    if (!(season.y0 > 0.0))
      throw std::invalid_argument("threshold must transform to y0 > 0");
    if (!std::isnan(lambda)) {
      season.lambda = lambda;
    } else if (!std::isnan(seasons)) {
      season.lambda = static_cast<double>(y.size()) / seasons;
    } else {
      throw std::invalid_argument("need --lambda or --seasons");
    }

    const double p_hat = season_exceed_prob(fit.a, fit.sigma, season);
    std::vector<double> grid;
    for (int i = 1; i <= p_points; ++i)
      grid.push_back(p_max * static_cast<double>(i) / (p_points + 1.0));
    const ConfidenceCurve cc = profile_cc_p(y, season, grid);
    const ConfidenceCurve bar = shock_barometer(cc);
    write_curve_csv(out.reserve("cc_p.csv"), "p", "level", cc.grid, cc.level);
    write_curve_csv(out.reserve("shock_barometer.csv"), "barometer", "level",
                    bar.grid, bar.level);

    json j = envelope("extremes", {in.path}, std::nullopt);
    j["n"] = y.size();
    j["offset"] = offset;
    j["a"] = fit.a;
    j["sigma"] = fit.sigma;
    j["loglik_max"] = fit.loglik_max;
    j["support_ok"] = fit.support_ok;
    j["boundary"] = fit.boundary;
    j["lambda"] = season.lambda;
    j["y0"] = season.y0;
    j["p_estimate"] = p_hat;
    Interval iv = interval(cc, level);
    if (iv.lo_unbounded) iv.lo = 0.0;  // p is bounded below by zero
    j["p_interval"] = interval_json(iv);
    j["shock_barometer"] = 100.0 * (1.0 - p_hat);
    j["level"] = level;
    write_json(out, "extremes.json", j);
  }
};

struct SimulateNullCmd {
  Output out;
  std::string kind = "weighted";
  double window = 0.025;
  int paths = 100000;
  std::uint64_t seed = 1;
  std::vector<double> levels{0.90, 0.95, 0.99};
  int grid_steps = 2000;

  void run() const {
    bool weighted;
    if (kind == "weighted" || kind == "slope" || kind == "mean") {
      weighted = true;
    } else if (kind == "unweighted" || kind == "bridge" || kind == "loglik" ||
               kind == "param") {
      weighted = false;
    } else {
      throw std::invalid_argument("unknown kind '" + kind + "'");
    }
    const NullQuantiles nq =
        simulate_null_quantiles(weighted, window, levels, paths, seed,
                                grid_steps);
    std::vector<double> ls, qs;
    for (const auto& [level, q] : nq.quantiles) {
      ls.push_back(level);
      qs.push_back(q);
    }
    write_curve_csv(out.reserve("null_quantiles.csv"), "level", "quantile",
                    ls, qs);
    json j = envelope("simulate-null", {}, seed);
    j["kind"] = kind;
    j["weighted"] = weighted;
    j["window"] = window;
    j["paths"] = paths;
    j["grid_steps"] = grid_steps;
    json table = json::object();
    for (const auto& [level, q] : nq.quantiles) table[format_double(level)] = q;
    j["quantiles"] = table;
    write_json(out, "null_quantiles.json", j);
  }
};

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Confidence-distribution toolkit for gapped climate-type "
               "time series"};
  app.require_subcommand(1);

  FitTrendCmd fit_trend;
  auto* c1 = app.add_subcommand("fit-trend",
                                "ML trend fit with AR(1) errors");
  add_series_flags(c1, &fit_trend.in);
  add_output_flags(c1, &fit_trend.out);
  c1->add_option("--model", fit_trend.model,
                 "ols | ar | hetero | terr");
  c1->add_option("--x-origin", fit_trend.x_origin,
                 "Covariate origin (x = year - origin)");

  CcRhoCmd cc_rho_cmd;
  auto* c2 = app.add_subcommand("cc-rho",
                                "Confidence curve for the AR(1) coefficient");
  add_series_flags(c2, &cc_rho_cmd.in);
  add_output_flags(c2, &cc_rho_cmd.out);
  c2->add_option("--grid-min", cc_rho_cmd.grid_min, "");
  c2->add_option("--grid-max", cc_rho_cmd.grid_max, "");
  c2->add_option("--grid-points", cc_rho_cmd.grid_points, "");
  c2->add_option("--level", cc_rho_cmd.levels, "Interval levels");
  c2->add_option("--x-origin", cc_rho_cmd.x_origin, "");

  PredictCmd predict;
  auto* c3 = app.add_subcommand("predict",
                                "Prediction CDs for future observations");
  add_series_flags(c3, &predict.in);
  add_output_flags(c3, &predict.out);
  c3->add_option("--at", predict.at, "Future year(s)")->required();
  c3->add_option("--level", predict.level, "Interval level");
  c3->add_option("--degree", predict.degree, "Trend degree 1..3");

  CrossingCmd crossing;
  auto* c4 = app.add_subcommand("crossing",
                                "Confidence curve for the barrier-crossing "
                                "year");
  add_series_flags(c4, &crossing.in);
  add_output_flags(c4, &crossing.out);
  c4->add_option("--threshold", crossing.threshold, "Barrier level y0")
      ->required();
  c4->add_option("--level", crossing.level, "");
  c4->add_option("--degree", crossing.degree, "Trend degree 1..3");
  c4->add_option("--horizon", crossing.horizon, "Years past the last datum");
  c4->add_option("--grid-points", crossing.grid_points, "");
  c4->add_flag("--allow-low-threshold", crossing.allow_low_threshold, "");

  SegmentedCmd segmented;
  auto* c5 = app.add_subcommand("segmented",
                                "Connected broken-line regression");
  add_series_flags(c5, &segmented.in);
  add_output_flags(c5, &segmented.out);
  c5->add_option("--i0", segmented.i0, "Minimum piece length");
  c5->add_option("--bootstrap", segmented.bootstrap,
                 "Parametric bootstrap replicates (0 = skip)");
  c5->add_option("--seed", segmented.seed, "");

  MonitorCmd monitor;
  auto* c6 = app.add_subcommand("monitor", "Constancy-monitoring bridges");
  add_output_flags(c6, &monitor.out);
  c6->add_option("--kind", monitor.kind, "slope | mean | loglik | param")
      ->required();
  c6->add_option("--input", monitor.in.path, "Series CSV (slope/mean)");
  c6->add_option("--time-col", monitor.in.time_col, "");
  c6->add_option("--value-col", monitor.in.value_col, "");
  c6->add_option("--response", monitor.response,
                 "Response CSV (loglik/param)");
  c6->add_option("--response-time-col", monitor.response_time_col, "");
  c6->add_option("--response-value-col", monitor.response_value_col, "");
  c6->add_option("--monthly", monitor.monthly,
                 "Monthly covariate CSV: year,m01..m12");
  c6->add_option("--i0", monitor.i0, "");
  c6->add_option("--rho", monitor.rho, "AR(1) estimate for the mean bridge");
  c6->add_option("--paths", monitor.paths, "Null simulation paths");
  c6->add_option("--seed", monitor.seed, "");
  c6->add_option("--level", monitor.levels, "");
  c6->add_option("--grid-steps", monitor.grid_steps, "");

  FuseCmd fuse_cmd;
  auto* c7 = app.add_subcommand("fuse", "II-CC-FF confidence fusion");
  add_output_flags(c7, &fuse_cmd.out);
  c7->add_option("--source", fuse_cmd.source_files,
                 "Curve CSV (focus,level), repeatable");
  c7->add_option("--chisq-sd", fuse_cmd.chisq_sd,
                 "Built-in source 'sigma_hat:m'");
  c7->add_option("--normal-prior", fuse_cmd.normal_prior,
                 "Built-in source 'mean:sd'");
  c7->add_option("--nonparam-quantile", fuse_cmd.nonparam_quant,
                 "Built-in source 'file:q'");
  c7->add_option("--normal-quantile", fuse_cmd.normal_quant,
                 "Built-in source 'file:q'");
  c7->add_option("--sample-col", fuse_cmd.sample_col, "");
  c7->add_option("--grid-min", fuse_cmd.grid_min, "")->required();
  c7->add_option("--grid-max", fuse_cmd.grid_max, "")->required();
  c7->add_option("--grid-points", fuse_cmd.grid_points, "");
  c7->add_option("--level", fuse_cmd.levels, "");

  ExtremesCmd extremes;
  auto* c8 = app.add_subcommand("extremes",
                                "Generalized Pareto exceedance analysis");
  c8->add_option("--input", extremes.in.path, "Raw values CSV")->required();
  c8->add_option("--value-col", extremes.in.value_col, "");
  add_output_flags(c8, &extremes.out);
  c8->add_option("--offset", extremes.offset, "Transform offset c (y = c - r)");
  c8->add_option("--threshold-raw", extremes.threshold_raw,
                 "Threshold on the raw scale");
  c8->add_option("--threshold-y", extremes.threshold_y,
                 "Threshold on the transformed scale");
  c8->add_option("--lambda", extremes.lambda, "Top events per season");
  c8->add_option("--seasons", extremes.seasons,
                 "Number of seasons (lambda = n / seasons)");
  c8->add_option("--p-max", extremes.p_max, "");
  c8->add_option("--p-points", extremes.p_points, "");
  c8->add_option("--level", extremes.level, "");

  SimulateNullCmd simnull;
  auto* c9 = app.add_subcommand("simulate-null",
                                "Quantiles of the (weighted) bridge maximum");
  add_output_flags(c9, &simnull.out);
  c9->add_option("--kind", simnull.kind,
                 "weighted | unweighted (or a bridge kind)");
  c9->add_option("--window", simnull.window, "Window epsilon");
  c9->add_option("--paths", simnull.paths, "");
  c9->add_option("--seed", simnull.seed, "");
  c9->add_option("--level", simnull.levels, "");
  c9->add_option("--grid-steps", simnull.grid_steps, "");

  c1->callback([&] { fit_trend.run(); });
  c2->callback([&] { cc_rho_cmd.run(); });
  c3->callback([&] { predict.run(); });
  c4->callback([&] { crossing.run(); });
  c5->callback([&] { segmented.run(); });
  c6->callback([&] { monitor.run(); });
  c7->callback([&] { fuse_cmd.run(); });
  c8->callback([&] { extremes.run(); });
  c9->callback([&] { simnull.run(); });

  std::vector<const char*> argv;
  argv.push_back("ccstat");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace ccstat::cli

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace ccstat {

// An annual (or monthly) measurement series on an integer calendar axis.
// Missing years are represented by absent rows, never by sentinel values,
// so gaps are visible only through the times vector.
struct GappedSeries {
  std::vector<int> times;
  std::vector<double> values;
  std::string label;

  std::size_t size() const { return times.size(); }
};

// Validates invariants (strictly increasing times, length >= 3, finite
// values) and returns the series; rows are expected pre-sorted.
GappedSeries make_series(std::vector<int> times, std::vector<double> values,
                         std::string label = {});

// Loads a two-column series from CSV.  Rows whose value cell is empty are
// dropped, creating gaps.  Rows are sorted by time; duplicate times are an
// error.
GappedSeries load_csv(const std::string& path, const std::string& time_col,
                      const std::string& value_col);

struct CenteredCovariate {
  double xbar = 0.0;             // mean of the covariate
  double m_n = 0.0;              // sum of squared deviations
  std::vector<double> w;         // (x - xbar) / sd(x), sd with divisor n-1
};

CenteredCovariate center(const std::vector<double>& covariate);

// Twelve monthly series for one location; index 0 is January.
struct MonthlyPanel {
  std::vector<GappedSeries> months;  // size 12

  // Wide format: columns year, m01..m12 (empty cells create gaps).
  static MonthlyPanel from_wide_csv(const std::string& path,
                                    const std::string& year_col = "year");
  // Twelve single-month files given in January..December order, each with
  // the stated time/value columns.
  static MonthlyPanel from_monthly_files(const std::vector<std::string>& paths,
                                         const std::string& time_col,
                                         const std::string& value_col);
};

// Per target year t: the winter covariate pair used by the lagged
// regression.  lag1(t) averages the listed months around the most recent
// winter (months >= July are read from year t-1, the rest from year t);
// lag2 is the same average one year earlier.  Years lacking any required
// month are dropped.
struct WinterLagSeries {
  std::vector<int> years;
  std::vector<double> lag1;
  std::vector<double> lag2;
};

WinterLagSeries winter_average_lags(
    const MonthlyPanel& panel,
    const std::vector<int>& months = {10, 11, 12, 1, 2});

// Response joined with [1, lag1, lag2]; rows with any missing piece are
// dropped.  Needs at least 10 usable rows.
struct LaggedDesign {
  std::vector<int> years;
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  // n x 3
};

LaggedDesign make_lagged_design(const GappedSeries& response,
                                const WinterLagSeries& winters);

}  // namespace ccstat

#include "ccstat/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ccstat/io.hpp"

namespace ccstat {

GappedSeries make_series(std::vector<int> times, std::vector<double> values,
                         std::string label) {
  if (times.size() != values.size())
    throw std::invalid_argument("series: times/values length mismatch");
  if (times.size() < 3)
    throw std::invalid_argument("series: fewer than 3 usable rows");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] == times[i - 1])
      throw std::invalid_argument("series: duplicated time " +
                                  std::to_string(times[i]));
    if (times[i] < times[i - 1])
      throw std::invalid_argument("series: times not increasing");
  }
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("series: non-finite value");
  return GappedSeries{std::move(times), std::move(values), std::move(label)};
}

GappedSeries load_csv(const std::string& path, const std::string& time_col,
                      const std::string& value_col) {
  const CsvTable table = read_csv(path);
  const std::size_t ti = table.col(time_col);
  const std::size_t vi = table.col(value_col);

  std::vector<std::pair<int, double>> rows;
  for (const auto& r : table.rows) {
    if (r[vi].empty()) continue;  // empty value cell -> gap
    long long t = 0;
    double v = 0.0;
    if (!parse_int(r[ti], &t))
      throw std::invalid_argument("csv: bad time value '" + r[ti] + "'");
    if (!parse_double(r[vi], &v))
      throw std::invalid_argument("csv: bad value '" + r[vi] + "'");
    rows.emplace_back(static_cast<int>(t), v);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> times;
  std::vector<double> values;
  times.reserve(rows.size());
  values.reserve(rows.size());
  for (const auto& [t, v] : rows) {
    times.push_back(t);
    values.push_back(v);
  }
  return make_series(std::move(times), std::move(values), path);
}

CenteredCovariate center(const std::vector<double>& covariate) {
  const std::size_t n = covariate.size();
  if (n < 2) throw std::invalid_argument("center: need at least 2 values");
  const double xbar =
      std::accumulate(covariate.begin(), covariate.end(), 0.0) /
      static_cast<double>(n);
  double m_n = 0.0;
  for (double x : covariate) m_n += (x - xbar) * (x - xbar);
  if (m_n <= 0.0)
    throw std::invalid_argument("center: constant covariate");
  const double sd = std::sqrt(m_n / static_cast<double>(n - 1));
  CenteredCovariate out;
  out.xbar = xbar;
  out.m_n = m_n;
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.w[i] = (covariate[i] - xbar) / sd;
  return out;
}

MonthlyPanel MonthlyPanel::from_wide_csv(const std::string& path,
                                         const std::string& year_col) {
  const CsvTable table = read_csv(path);
  const std::size_t yi = table.col(year_col);
  std::vector<std::size_t> mi(12);
  for (int m = 0; m < 12; ++m) {
    char name[8];
    std::snprintf(name, sizeof name, "m%02d", m + 1);
    mi[m] = table.col(name);
  }
  std::vector<std::vector<std::pair<int, double>>> rows(12);
  for (const auto& r : table.rows) {
    long long year = 0;
    if (!parse_int(r[yi], &year))
      throw std::invalid_argument("csv: bad year '" + r[yi] + "'");
    for (int m = 0; m < 12; ++m) {
      if (r[mi[m]].empty()) continue;
      double v = 0.0;
      if (!parse_double(r[mi[m]], &v))
        throw std::invalid_argument("csv: bad value '" + r[mi[m]] + "'");
      rows[m].emplace_back(static_cast<int>(year), v);
    }
  }
  MonthlyPanel panel;
  panel.months.resize(12);
  for (int m = 0; m < 12; ++m) {
    auto& rs = rows[m];
    std::sort(rs.begin(), rs.end());
    std::vector<int> t;
    std::vector<double> v;
    for (const auto& [yr, val] : rs) {
      t.push_back(yr);
      v.push_back(val);
    }
    panel.months[m] = make_series(std::move(t), std::move(v),
                                  "month " + std::to_string(m + 1));
  }
  return panel;
}

MonthlyPanel MonthlyPanel::from_monthly_files(
    const std::vector<std::string>& paths, const std::string& time_col,
    const std::string& value_col) {
  if (paths.size() != 12)
    throw std::invalid_argument("monthly panel: expected 12 files");
  MonthlyPanel panel;
  panel.months.reserve(12);
  for (const auto& p : paths) panel.months.push_back(load_csv(p, time_col, value_col));
  return panel;
}

namespace {

// Winter average ending in year t; months >= July read from year t-1.
bool winter_value(const MonthlyPanel& panel, const std::vector<int>& months,
                  int t, double* out) {
  double sum = 0.0;
  for (int m : months) {
    if (m < 1 || m > 12)
      throw std::invalid_argument("winter_average_lags: bad month");
    const int year = (m >= 7) ? t - 1 : t;
    const auto& s = panel.months[static_cast<std::size_t>(m - 1)];
    const auto it = std::lower_bound(s.times.begin(), s.times.end(), year);
    if (it == s.times.end() || *it != year) return false;
    sum += s.values[static_cast<std::size_t>(it - s.times.begin())];
  }
  *out = sum / static_cast<double>(months.size());
  return true;
}

}  // namespace

WinterLagSeries winter_average_lags(const MonthlyPanel& panel,
                                    const std::vector<int>& months) {
  if (panel.months.size() != 12)
    throw std::invalid_argument("winter_average_lags: panel needs 12 months");
  if (months.empty())
    throw std::invalid_argument("winter_average_lags: no months given");
  int lo = panel.months[0].times.front(), hi = panel.months[0].times.back();
  for (const auto& s : panel.months) {
    lo = std::min(lo, s.times.front());
    hi = std::max(hi, s.times.back());
  }
  WinterLagSeries out;
  for (int t = lo; t <= hi + 1; ++t) {
    double w1 = 0.0, w2 = 0.0;
    if (!winter_value(panel, months, t, &w1)) continue;
    if (!winter_value(panel, months, t - 1, &w2)) continue;
    out.years.push_back(t);
    out.lag1.push_back(w1);
    out.lag2.push_back(w2);
  }
  if (out.years.empty())
    throw std::invalid_argument("winter_average_lags: no overlapping years");
  return out;
}

LaggedDesign make_lagged_design(const GappedSeries& response,
                                const WinterLagSeries& winters) {
  std::map<int, std::pair<double, double>> by_year;
  for (std::size_t i = 0; i < winters.years.size(); ++i)
    by_year[winters.years[i]] = {winters.lag1[i], winters.lag2[i]};

  std::vector<int> years;
  std::vector<double> y, x1, x2;
  for (std::size_t i = 0; i < response.size(); ++i) {
    const auto it = by_year.find(response.times[i]);
    if (it == by_year.end()) continue;
    years.push_back(response.times[i]);
    y.push_back(response.values[i]);
    x1.push_back(it->second.first);
    x2.push_back(it->second.second);
  }
  const auto n = static_cast<Eigen::Index>(years.size());
  if (n < 10)
    throw std::invalid_argument("lagged design: fewer than 10 usable rows");
  LaggedDesign d;
  d.years = std::move(years);
  d.y.resize(n);
  d.X.resize(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.y(i) = y[static_cast<std::size_t>(i)];
    d.X(i, 0) = 1.0;
    d.X(i, 1) = x1[static_cast<std::size_t>(i)];
    d.X(i, 2) = x2[static_cast<std::size_t>(i)];
  }
  return d;
}

}  // namespace ccstat

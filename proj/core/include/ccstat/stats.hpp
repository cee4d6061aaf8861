#pragma once

#include <vector>

// Thin wrappers around the distribution functions the library needs.
// Everything is a plain function so call sites stay free of
// boost::math template noise.

namespace ccstat {

double norm_cdf(double x);
double norm_quantile(double p);

// Student t with m degrees of freedom.
double t_cdf(double x, double m);
double t_quantile(double p, double m);

// F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);
double f_quantile(double p, double d1, double d2);

// Chi-squared with k degrees of freedom.
double chisq_cdf(double x, double k);
double chisq_quantile(double p, double k);

// Binomial(n, p) distribution function P(X <= k) and pmf P(X = k).
double binom_cdf(int k, int n, double p);
double binom_pmf(int k, int n, double p);

// Kolmogorov-Smirnov test of a sample against Uniform(0,1).
// Returns the asymptotic two-sided p-value for sup|F_n - F|.
double ks_uniform_statistic(std::vector<double> sample);
double ks_uniform_pvalue(std::vector<double> sample);

}  // namespace ccstat

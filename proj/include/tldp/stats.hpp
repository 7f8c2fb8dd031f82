#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tldp::stats {

double mean(std::span<const double> v);

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sd(std::span<const double> v);

// One-sided paired t-test of H1: mean(a - b) < 0. Returns the p-value.
double paired_t_test_less(std::span<const double> a, std::span<const double> b);

// Kolmogorov-Smirnov statistic of the sample against a continuous CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

}  // namespace tldp::stats

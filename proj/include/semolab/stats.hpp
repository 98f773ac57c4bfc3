#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace semolab::stats {

/// Linear-interpolation quantile (type 7) of an unsorted sample; q in [0, 1].
/// Infinite values sort last, so a quantile that lands on them is infinite.
double quantile(std::vector<double> sample, double q);
inline double median(std::vector<double> sample) { return quantile(std::move(sample), 0.5); }

struct LinearFit {
    double intercept = 0;
    double slope = 0;
    std::vector<double> residuals;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
    double statistic = 0;
    std::size_t dof = 0;
    double p_value = 1;
    std::size_t bins = 0;  ///< bins after pooling sparse cells
};

using Histogram = std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t>;

/// Two-sample chi-square homogeneity test on histograms over the same key
/// space. Bins whose expected count is below `min_expected` in either
/// sample are pooled into one residual bin. A single surviving bin yields
/// statistic 0 and p = 1.
ChiSquareResult chi_square_two_sample(const Histogram& a, const Histogram& b,
                                      double min_expected = 5.0);

/// Upper-tail probability of the chi-square distribution.
double chi_square_survival(double statistic, double dof);

}  // namespace semolab::stats

#include "semolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace semolab::stats {

double quantile(std::vector<double> sample, double q) {
    if (sample.empty())
        throw std::invalid_argument("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    std::sort(sample.begin(), sample.end());
    const double h = q * static_cast<double>(sample.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sample.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0 || sample[lo] == sample[hi])
        return sample[lo];
    if (std::isinf(sample[hi]))
        return std::numeric_limits<double>::infinity();
    return sample[lo] + frac * (sample[hi] - sample[lo]);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least squares needs at least two (x, y) pairs");
    const auto m = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("least squares needs at least two distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residuals.push_back(y[i] - (fit.intercept + fit.slope * x[i]));
    return fit;
}

double chi_square_survival(double statistic, double dof) {
    if (dof <= 0)
        return 1.0;
    boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

ChiSquareResult chi_square_two_sample(const Histogram& a, const Histogram& b, double min_expected) {
    std::uint64_t total_a = 0;
    std::uint64_t total_b = 0;
    Histogram keys;
    for (const auto& [key, count] : a) {
        total_a += count;
        keys[key] += count;
    }
    for (const auto& [key, count] : b) {
        total_b += count;
        keys[key] += count;
    }
    if (total_a == 0 || total_b == 0)
        throw std::invalid_argument("chi-square test needs two non-empty samples");

    const double n_a = static_cast<double>(total_a);
    const double n_b = static_cast<double>(total_b);
    const double share_a = n_a / (n_a + n_b);
    const double share_b = 1.0 - share_a;
    auto count_in = [](const Histogram& h, const auto& key) -> double {
        auto it = h.find(key);
        return it == h.end() ? 0.0 : static_cast<double>(it->second);
    };

    // (observed a, observed b) per surviving bin, plus one residual bin.
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> residual{0.0, 0.0};
    for (const auto& [key, pooled] : keys) {
        const double p = static_cast<double>(pooled);
        const std::pair<double, double> obs{count_in(a, key), count_in(b, key)};
        if (p * share_a < min_expected || p * share_b < min_expected) {
            residual.first += obs.first;
            residual.second += obs.second;
        } else {
            bins.push_back(obs);
        }
    }
    const double residual_total = residual.first + residual.second;
    if (residual_total > 0) {
        if (residual_total * std::min(share_a, share_b) >= min_expected || bins.empty()) {
            bins.push_back(residual);
        } else {
            auto smallest = std::min_element(bins.begin(), bins.end(), [](const auto& l, const auto& r) {
                return l.first + l.second < r.first + r.second;
            });
            smallest->first += residual.first;
            smallest->second += residual.second;
        }
    }

    ChiSquareResult result;
    result.bins = bins.size();
    if (bins.size() < 2)
        return result;
    for (const auto& [oa, ob] : bins) {
        const double pooled = oa + ob;
        const double ea = pooled * share_a;
        const double eb = pooled * share_b;
        result.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    result.dof = bins.size() - 1;
    result.p_value = chi_square_survival(result.statistic, static_cast<double>(result.dof));
    return result;
}

}  // namespace semolab::stats

#include "semolab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

namespace semolab {

GeometricPhaseSet::GeometricPhaseSet(std::vector<double> success_probs)
    : probs_(std::move(success_probs)) {
    if (probs_.empty())
        throw std::invalid_argument("phase set must contain at least one probability");
    for (double p : probs_) {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("phase success probabilities must lie in (0, 1]");
        expectation_ += 1.0 / p;
        s_ += 1.0 / (p * p);
        p_min_ = std::min(p_min_, p);
    }
}

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0))
        throw std::invalid_argument("lambda must be non-negative");
}

}  // namespace

double log_witt_upper_tail(const GeometricPhaseSet& phases, double lambda) {
    check_lambda(lambda);
    return -0.25 * std::min(lambda * lambda / phases.s(), lambda * phases.p_min());
}

double log_witt_lower_tail(const GeometricPhaseSet& phases, double lambda) {
    check_lambda(lambda);
    return -lambda * lambda / (2.0 * phases.s());
}

double log_chernoff_lower_tail(double mean, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("delta must lie in [0, 1]");
    if (!(mean >= 0.0))
        throw std::invalid_argument("mean must be non-negative");
    return -delta * delta * mean / 2.0;
}

double witt_upper_tail(const GeometricPhaseSet& phases, double lambda) {
    return std::exp(log_witt_upper_tail(phases, lambda));
}

double witt_lower_tail(const GeometricPhaseSet& phases, double lambda) {
    return std::exp(log_witt_lower_tail(phases, lambda));
}

double chernoff_lower_tail(double mean, double delta) {
    return std::exp(log_chernoff_lower_tail(mean, delta));
}

TabulatedFunction::TabulatedFunction(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size())
        throw std::invalid_argument("tabulation needs matching, non-empty x and y columns");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw std::invalid_argument("tabulation knots must be strictly increasing");
    cumulative_.assign(xs_.size(), 0.0);
    for (std::size_t i = 1; i < xs_.size(); ++i)
        cumulative_[i] = cumulative_[i - 1] + 0.5 * (ys_[i] + ys_[i - 1]) * (xs_[i] - xs_[i - 1]);
}

double TabulatedFunction::operator()(double x) const {
    if (x <= xs_.front())
        return ys_.front();
    if (x >= xs_.back())
        return ys_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + w * (ys_[hi] - ys_[lo]);
}

double TabulatedFunction::antiderivative(double x) const {
    if (x <= xs_.front())
        return (x - xs_.front()) * ys_.front();
    if (x >= xs_.back())
        return cumulative_.back() + (x - xs_.back()) * ys_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    const std::size_t lo = hi - 1;
    return cumulative_[lo] + 0.5 * ((*this)(x) + ys_[lo]) * (x - xs_[lo]);
}

double TabulatedFunction::integral(double a, double b) const {
    return antiderivative(b) - antiderivative(a);
}

namespace {

constexpr double kQuadratureTolerance = 1e-9;

double integrate(const std::function<double(double)>& g, double a, double b) {
    if (a == b)
        return 0.0;
    if (std::isfinite(g(a)) && std::isfinite(g(b))) {
        double error = 0;
        const double value = boost::math::quadrature::trapezoidal(g, a, b, kQuadratureTolerance, 24, &error);
        if (std::isfinite(value) && error <= 1e-6 * std::max(1.0, std::abs(value)))
            return value;
    }
    // Endpoint singularity (or slow trapezoid convergence).
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0;
    double l1 = 0;
    double value = std::numeric_limits<double>::infinity();
    try {
        value = integrator.integrate(g, a, b, kQuadratureTolerance, &error, &l1);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(value) || error > 1e-6 * std::max(1.0, std::abs(value)))
        return std::numeric_limits<double>::infinity();
    return value;
}

void check_non_increasing(const std::function<double(double)>& g, double a, double b) {
    constexpr int kSamples = 1024;
    double previous = g(a);
    if (std::isnan(previous))
        throw std::invalid_argument("function is undefined on the sandwich interval");
    for (int i = 1; i <= kSamples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / kSamples;
        const double value = g(x);
        if (std::isnan(value))
            throw std::invalid_argument("function is undefined on the sandwich interval");
        if (std::isfinite(previous) && value > previous + 1e-12 * std::max(1.0, std::abs(previous)))
            throw std::invalid_argument("function is not monotonically non-increasing");
        previous = value;
    }
}

void check_range(double alpha, double beta) {
    if (!(alpha <= beta))
        throw std::invalid_argument("sandwich requires alpha <= beta");
}

}  // namespace

SumSandwich harmonic_sum_bounds(const std::function<double(double)>& g, double alpha, double beta) {
    check_range(alpha, beta);
    check_non_increasing(g, alpha - 1.0, beta + 1.0);
    return {integrate(g, alpha, beta + 1.0), integrate(g, alpha - 1.0, beta)};
}

SumSandwich harmonic_sum_bounds(const TabulatedFunction& g, double alpha, double beta) {
    check_range(alpha, beta);
    for (std::size_t i = 1; i < g.ys().size(); ++i)
        if (g.ys()[i] > g.ys()[i - 1])
            throw std::invalid_argument("tabulated function is not monotonically non-increasing");
    return {g.integral(alpha, beta + 1.0), g.integral(alpha - 1.0, beta)};
}

double sum_over_range(const std::function<double(double)>& g, double alpha, double beta) {
    double total = 0;
    for (std::int64_t i = 0; alpha + static_cast<double>(i) <= beta; ++i)
        total += g(alpha + static_cast<double>(i));
    return total;
}

double runtime_model_term(const BenchmarkSpec& spec) {
    const auto n = static_cast<double>(spec.n);
    if (spec.kind == BenchmarkKind::Ojzj)
        return std::pow(n, static_cast<double>(spec.k + 1));
    return n * n * std::log(n);
}

double expected_cover_reference(const BenchmarkSpec& spec, const AlgorithmSpec& /*algorithm*/,
                                double constant) {
    return constant * runtime_model_term(spec);
}

}  // namespace semolab

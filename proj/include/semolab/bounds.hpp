#pragma once

#include <functional>
#include <vector>

#include "semolab/benchmarks.hpp"
#include "semolab/engine.hpp"

namespace semolab {

/// Success probabilities of independent geometric phases D_1..D_k whose sum
/// T* is bounded by the Witt tail inequalities.
class GeometricPhaseSet {
public:
    /// Throws std::invalid_argument if empty or any p is outside (0, 1].
    explicit GeometricPhaseSet(std::vector<double> success_probs);

    const std::vector<double>& probabilities() const noexcept { return probs_; }
    /// E[T*] = sum 1/p_i.
    double expectation() const noexcept { return expectation_; }
    /// s = sum 1/p_i^2.
    double s() const noexcept { return s_; }
    double p_min() const noexcept { return p_min_; }

private:
    std::vector<double> probs_;
    double expectation_ = 0;
    double s_ = 0;
    double p_min_ = 1;
};

/// Upper bound on Pr[T* >= E[T*] + lambda]: exp(-1/4 min{lambda^2/s, lambda p_min}).
double witt_upper_tail(const GeometricPhaseSet& phases, double lambda);
/// Upper bound on Pr[T* <= E[T*] - lambda]: exp(-lambda^2 / (2s)).
double witt_lower_tail(const GeometricPhaseSet& phases, double lambda);

/// Upper bound on Pr[X <= (1 - delta) E[X]] for sums of independent [0,1]
/// variables: exp(-delta^2 mean / 2). Throws for delta outside [0, 1] or a
/// negative mean.
double chernoff_lower_tail(double mean, double delta);

/// Natural logarithms of the bounds above; the probability versions
/// exponentiate these.
double log_witt_upper_tail(const GeometricPhaseSet& phases, double lambda);
double log_witt_lower_tail(const GeometricPhaseSet& phases, double lambda);
double log_chernoff_lower_tail(double mean, double delta);

/// Piecewise-linear interpolation of (x, y) knots, held constant outside
/// the knot range.
class TabulatedFunction {
public:
    /// Knots must be strictly increasing in x; throws std::invalid_argument otherwise.
    TabulatedFunction(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    /// Exact integral of the interpolant over [a, b].
    double integral(double a, double b) const;

    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }

private:
    double antiderivative(double x) const;

    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> cumulative_;
};

struct SumSandwich {
    double lower = 0;  ///< integral of g over [alpha, beta + 1]
    double upper = 0;  ///< integral of g over [alpha - 1, beta]
};

/// Integral sandwich around sum_{x = alpha, alpha+1, ..., <= beta} g(x) for a
/// non-increasing g. Integrals use adaptive trapezoid quadrature (relative
/// tolerance 1e-9); an endpoint singularity switches to tanh-sinh and a
/// divergent integral yields +infinity. Throws std::invalid_argument if
/// alpha > beta or a sampled check finds g increasing.
SumSandwich harmonic_sum_bounds(const std::function<double(double)>& g, double alpha, double beta);
/// Same sandwich with exact integrals of the interpolant.
SumSandwich harmonic_sum_bounds(const TabulatedFunction& g, double alpha, double beta);

/// sum_{x = alpha, alpha+1, ..., <= beta} g(x).
double sum_over_range(const std::function<double(double)>& g, double alpha, double beta);

/// Model term of the expected cover time: n^2 ln n for COCZ and OMM,
/// n^(k+1) for OJZJ.
double runtime_model_term(const BenchmarkSpec& spec);

/// constant * runtime_model_term(spec). The constant is a fit parameter;
/// the algorithm only matters through the constant the caller supplies.
double expected_cover_reference(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm,
                                double constant = 1.0);

}  // namespace semolab

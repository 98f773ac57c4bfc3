#include "semolab/benchmarks.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace semolab {

std::string_view to_string(BenchmarkKind kind) noexcept {
    switch (kind) {
    case BenchmarkKind::Cocz: return "cocz";
    case BenchmarkKind::Omm: return "omm";
    case BenchmarkKind::Ojzj: return "ojzj";
    }
    return "?";
}

std::optional<BenchmarkKind> parse_benchmark_kind(std::string_view name) noexcept {
    if (name == "cocz") return BenchmarkKind::Cocz;
    if (name == "omm") return BenchmarkKind::Omm;
    if (name == "ojzj") return BenchmarkKind::Ojzj;
    return std::nullopt;
}

void BenchmarkSpec::validate() const {
    if (n < 2)
        throw std::invalid_argument("problem size n must be at least 2");
    if (kind == BenchmarkKind::Cocz && n % 2 != 0)
        throw std::invalid_argument("COCZ requires even n");
    if (kind == BenchmarkKind::Ojzj && (k < 2 || k > n))
        throw std::invalid_argument("OJZJ requires 2 <= k <= n");
}

std::string BenchmarkSpec::key() const {
    std::string out(to_string(kind));
    out += ":n=" + std::to_string(n);
    out += ":k=" + std::to_string(kind == BenchmarkKind::Ojzj ? k : 0);
    return out;
}

ParetoFront::ParetoFront(std::vector<ObjectivePair> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool ParetoFront::contains(const ObjectivePair& f) const noexcept {
    return std::binary_search(points_.begin(), points_.end(), f);
}

void ParetoFront::write_csv(std::ostream& out) const {
    out << "f1,f2\n";
    for (const auto& p : points_)
        out << p.f1 << ',' << p.f2 << '\n';
}

ObjectivePair eval_cocz(const Individual& x) {
    const std::size_t n = x.size();
    const auto half = static_cast<std::int64_t>(n / 2);
    const auto g1 = static_cast<std::int64_t>(x.count_range(0, n / 2));
    const auto g2 = static_cast<std::int64_t>(x.count_range(n / 2, n));
    return {g1 + g2, g1 + half - g2};
}

ObjectivePair eval_omm(const Individual& x) {
    const auto n = static_cast<std::int64_t>(x.size());
    const auto ones = static_cast<std::int64_t>(x.count());
    return {ones, n - ones};
}

ObjectivePair eval_ojzj(const Individual& x, std::size_t k) {
    const auto n = static_cast<std::int64_t>(x.size());
    const auto gap = static_cast<std::int64_t>(k);
    const auto ones = static_cast<std::int64_t>(x.count());
    const auto zeros = n - ones;
    const std::int64_t f1 = (ones <= n - gap || ones == n) ? gap + ones : n - ones;
    const std::int64_t f2 = (zeros <= n - gap || zeros == n) ? gap + zeros : n - zeros;
    return {f1, f2};
}

ParetoFront analytic_front(const BenchmarkSpec& spec) {
    spec.validate();
    const auto n = static_cast<std::int64_t>(spec.n);
    std::vector<ObjectivePair> points;
    switch (spec.kind) {
    case BenchmarkKind::Cocz:
        for (std::int64_t j = 0; j <= n / 2; ++j)
            points.push_back({n / 2 + j, n - j});
        break;
    case BenchmarkKind::Omm:
        for (std::int64_t i = 0; i <= n; ++i)
            points.push_back({i, n - i});
        break;
    case BenchmarkKind::Ojzj: {
        // Interior ones-counts [k..n-k] map to f1 in [2k..n]; the two
        // extremal strings 0^n and 1^n give f1 = k and f1 = n + k.
        const auto k = static_cast<std::int64_t>(spec.k);
        auto add = [&](std::int64_t a) { points.push_back({a, 2 * k + n - a}); };
        for (std::int64_t a = 2 * k; a <= n; ++a)
            add(a);
        add(k);
        add(n + k);
        break;
    }
    }
    return ParetoFront(std::move(points));
}

namespace {

ObjectivePair evaluate_spec(const BenchmarkSpec& spec, const Individual& x) {
    switch (spec.kind) {
    case BenchmarkKind::Cocz: return eval_cocz(x);
    case BenchmarkKind::Omm: return eval_omm(x);
    case BenchmarkKind::Ojzj: return eval_ojzj(x, spec.k);
    }
    return {};
}

void check_enumerable(const BenchmarkSpec& spec) {
    spec.validate();
    if (spec.n > kBruteForceMaxN)
        throw std::length_error("brute-force front refused: n = " + std::to_string(spec.n) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kBruteForceMaxN));
}

// Keeps the maximal elements of a set of distinct objective values.
ParetoFront maximal_points(std::vector<ObjectivePair> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<ObjectivePair> maximal;
    std::int64_t best_f2 = 0;
    bool first = true;
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        if (first || it->f2 > best_f2) {
            maximal.push_back(*it);
            best_f2 = it->f2;
            first = false;
        }
    }
    return ParetoFront(std::move(maximal));
}

void collect_values(const BenchmarkSpec& spec, std::uint64_t begin, std::uint64_t end,
                    std::vector<ObjectivePair>& out) {
    Individual x(spec.n);
    for (std::uint64_t bits = begin; bits < end; ++bits) {
        x.assign_low_bits(bits);
        out.push_back(evaluate_spec(spec, x));
        // Objective spaces are tiny compared with 2^n; compact periodically.
        if (out.size() >= 4096) {
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }
}

}  // namespace

ParetoFront brute_force_front_serial(const BenchmarkSpec& spec) {
    check_enumerable(spec);
    std::vector<ObjectivePair> values;
    collect_values(spec, 0, std::uint64_t{1} << spec.n, values);
    return maximal_points(std::move(values));
}

ParetoFront brute_force_front(const BenchmarkSpec& spec) {
    check_enumerable(spec);
    const std::uint64_t total = std::uint64_t{1} << spec.n;
    constexpr std::int64_t kChunks = 64;
    std::vector<std::vector<ObjectivePair>> partial(kChunks);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < kChunks; ++c) {
        const std::uint64_t begin = total * static_cast<std::uint64_t>(c) / kChunks;
        const std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / kChunks;
        collect_values(spec, begin, end, partial[static_cast<std::size_t>(c)]);
    }

    std::vector<ObjectivePair> values;
    for (auto& p : partial)
        values.insert(values.end(), p.begin(), p.end());
    return maximal_points(std::move(values));
}

bool is_pareto_optimal(const BenchmarkSpec& spec, const ObjectivePair& f) {
    return analytic_front(spec).contains(f);
}

Benchmark::Benchmark(const BenchmarkSpec& spec)
    : spec_(spec),
      max_slot_(spec.kind == BenchmarkKind::Cocz ? spec.n / 2 : spec.n),
      front_(analytic_front(spec)) {}

ObjectivePair Benchmark::evaluate(const Individual& x) const {
    return evaluate_spec(spec_, x);
}

std::size_t Benchmark::slot_key(const Individual& x) const {
    if (spec_.kind == BenchmarkKind::Cocz)
        return x.count_range(spec_.n / 2, spec_.n);
    return x.count();
}

bool Benchmark::is_pareto_optimal(const ObjectivePair& f) const noexcept {
    const auto n = static_cast<std::int64_t>(spec_.n);
    switch (spec_.kind) {
    case BenchmarkKind::Cocz:
        return f.f1 + f.f2 == 3 * n / 2 && f.f1 >= n / 2 && f.f1 <= n;
    case BenchmarkKind::Omm:
        return f.f1 + f.f2 == n && f.f1 >= 0 && f.f1 <= n;
    case BenchmarkKind::Ojzj: {
        const auto k = static_cast<std::int64_t>(spec_.k);
        if (f.f1 + f.f2 != 2 * k + n)
            return false;
        return (f.f1 >= 2 * k && f.f1 <= n) || f.f1 == k || f.f1 == n + k;
    }
    }
    return false;
}

}  // namespace semolab

#ifndef EVDFIT_SIMULATE_HPP
#define EVDFIT_SIMULATE_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "evdfit/data.hpp"
#include "evdfit/distributions.hpp"
#include "evdfit/fit.hpp"
#include "evdfit/params.hpp"

// Seeded sample generation by inverse-cdf sampling, censoring-scheme
// application, and a replicated harness comparing solver iteration counts.
// Uniform variates are built directly from the top 53 bits of a mt19937_64
// word, so identical seeds reproduce identical samples on every platform.

namespace evdfit {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in the open interval (0, 1)
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // uniform integer in [0, n), rejection-sampled to avoid modulo bias
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

inline Sample draw_sample(const GumbelParams& p, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = gumbel_quantile(rng.uniform01(), p);
    return Sample(std::move(v));
}

inline Sample draw_sample(const LevParams& p, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = lev_quantile(rng.uniform01(), p);
    return Sample(std::move(v));
}

inline Sample draw_sample(const WeibullParams& p, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = weibull_quantile(rng.uniform01(), p);
    return Sample(std::move(v));
}

struct CensoringScheme {
    enum class Kind { none, type1, type2, progressive };

    Kind kind = Kind::none;
    double time = 0.0;          // type1 cutoff
    int observed_count = 0;     // type2 failure count
    std::vector<int> removals;  // progressive withdrawals per failure

    static CensoringScheme none() { return {}; }
    static CensoringScheme type1(double time) {
        CensoringScheme s;
        s.kind = Kind::type1;
        s.time = time;
        return s;
    }
    static CensoringScheme type2(int observed_count) {
        CensoringScheme s;
        s.kind = Kind::type2;
        s.observed_count = observed_count;
        return s;
    }
    static CensoringScheme progressive(std::vector<int> removals) {
        CensoringScheme s;
        s.kind = Kind::progressive;
        s.removals = std::move(removals);
        return s;
    }
};

using CensoredData = std::variant<Sample, CensoredSample, ProgressiveSample>;

// Apply a censoring scheme to a complete sample. Type II keeps the r smallest
// values; Type I keeps values at or below the cutoff; progressive withdraws
// removals[i] randomly chosen survivors after the i-th failure (seeded).
inline CensoredData apply_censoring(const Sample& complete, const CensoringScheme& scheme,
                                    std::uint64_t seed = 0) {
    const int n = static_cast<int>(complete.size());
    switch (scheme.kind) {
        case CensoringScheme::Kind::none:
            return complete;

        case CensoringScheme::Kind::type2: {
            const int r = scheme.observed_count;
            if (r < 2 || r > n)
                throw std::invalid_argument("type2 scheme needs 2 <= r <= n");
            std::vector<double> observed(complete.values().begin(),
                                         complete.values().begin() + r);
            return CensoredSample::type2(std::move(observed), n);
        }

        case CensoringScheme::Kind::type1: {
            std::vector<double> observed;
            for (double x : complete.values())
                if (x <= scheme.time) observed.push_back(x);
            if (observed.empty())
                throw std::invalid_argument("type1 cutoff precedes every value: nothing observed");
            return CensoredSample::type1(std::move(observed), n, scheme.time);
        }

        case CensoringScheme::Kind::progressive: {
            const int r = static_cast<int>(scheme.removals.size());
            int total = r;
            for (int ri : scheme.removals) {
                if (ri < 0) throw std::invalid_argument("removal counts must be non-negative");
                total += ri;
            }
            if (total != n)
                throw std::invalid_argument(
                    "progressive scheme inconsistent: r + sum(removals) != n");
            Rng rng(seed);
            std::vector<double> alive = complete.values();  // ascending
            std::vector<double> observed;
            observed.reserve(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i) {
                observed.push_back(alive.front());  // next failure among survivors
                alive.erase(alive.begin());
                for (int j = 0; j < scheme.removals[static_cast<std::size_t>(i)]; ++j)
                    alive.erase(alive.begin() +
                                static_cast<std::ptrdiff_t>(rng.below(alive.size())));
            }
            return ProgressiveSample(std::move(observed), scheme.removals);
        }
    }
    throw std::invalid_argument("unknown censoring scheme");
}

using AnyParams = std::variant<GumbelParams, LevParams, WeibullParams>;

inline Family family_of(const AnyParams& p) {
    if (std::holds_alternative<GumbelParams>(p)) return Family::gumbel;
    if (std::holds_alternative<LevParams>(p)) return Family::lev;
    return Family::weibull;
}

struct SimConfig {
    AnyParams params;
    int n = 0;
    CensoringScheme scheme{};
    std::uint64_t seed = 0;
    int replications = 1;
};

struct ReplicationOutcome {
    bool ok = false;
    double estimate = 0.0;
    int iterations = 0;
    Termination termination = Termination::converged;
};

// One seeded draw + censoring + fit per replication; fit errors are recorded
// as failures. Each replication derives its own generator state from
// (seed, index), so outcomes do not depend on evaluation order.
inline std::vector<ReplicationOutcome> run_replications(const SimConfig& config, Method method,
                                                        const SolverConfig& solver_cfg = {}) {
    if (config.replications < 1)
        throw std::invalid_argument("replications must be >= 1");
    if (config.n < 1) throw std::invalid_argument("sample size must be >= 1");

    const Family family = family_of(config.params);
    std::vector<ReplicationOutcome> outcomes(static_cast<std::size_t>(config.replications));
    for (int i = 0; i < config.replications; ++i) {
        const std::uint64_t rep_seed =
            detail::splitmix64(config.seed ^ detail::splitmix64(static_cast<std::uint64_t>(i)));
        ReplicationOutcome& out = outcomes[static_cast<std::size_t>(i)];
        try {
            const Sample complete = std::visit(
                [&](const auto& p) { return draw_sample(p, config.n, rep_seed); },
                config.params);
            const CensoredData data =
                apply_censoring(complete, config.scheme, detail::splitmix64(rep_seed));
            const FitReport report = std::visit(
                [&](const auto& d) { return fit(d, family, solver_cfg, method); }, data);
            out.ok = report.solver.termination != Termination::max_iterations_exceeded;
            out.estimate = report.primary;
            out.iterations = report.solver.iterations;
            out.termination = report.solver.termination;
        } catch (const std::exception&) {
            out.ok = false;
        }
    }
    return outcomes;
}

struct MethodBenchmark {
    Method method;
    int replications = 0;
    int failures = 0;
    int min_iterations = 0;
    double median_iterations = 0.0;
    int max_iterations = 0;
};

// Iteration-count distribution per solver over a replicated simulation.
inline std::vector<MethodBenchmark> benchmark_iterations(const SimConfig& config,
                                                         const std::vector<Method>& methods,
                                                         const SolverConfig& solver_cfg = {}) {
    std::vector<MethodBenchmark> table;
    table.reserve(methods.size());
    for (Method m : methods) {
        const auto outcomes = run_replications(config, m, solver_cfg);
        MethodBenchmark row;
        row.method = m;
        row.replications = config.replications;
        std::vector<int> iters;
        for (const auto& o : outcomes) {
            if (!o.ok) {
                ++row.failures;
                continue;
            }
            iters.push_back(o.iterations);
        }
        if (!iters.empty()) {
            std::sort(iters.begin(), iters.end());
            row.min_iterations = iters.front();
            row.max_iterations = iters.back();
            const std::size_t mid = iters.size() / 2;
            row.median_iterations = iters.size() % 2 == 1
                                        ? iters[mid]
                                        : 0.5 * (iters[mid - 1] + iters[mid]);
        }
        table.push_back(row);
    }
    return table;
}

}  // namespace evdfit

#endif  // EVDFIT_SIMULATE_HPP

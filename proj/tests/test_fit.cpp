#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "evdfit/fit.hpp"
#include "evdfit/simulate.hpp"
#include "reference_data.hpp"

using namespace evdfit;
using Catch::Approx;

namespace {

SolverConfig tight() {
    SolverConfig cfg;
    cfg.tolerance = 1e-10;
    cfg.max_iterations = 5000;
    return cfg;
}

}  // namespace

TEST_CASE("Type-II Weibull fit reproduces the grinder analysis") {
    const CensoredSample data = CensoredSample::type2(table1_values, table1_total);
    const FitReport report = fit(data, Family::weibull);
    CHECK(report.primary == Approx(1.6467).margin(5e-4));
    CHECK(report.secondary == Approx(162.223).margin(0.05));
    CHECK(report.family == Family::weibull);
    CHECK(report.regime == Regime::type2);
    CHECK(report.solver.termination == Termination::converged);
    CHECK_FALSE(report.solver.residual_trace.empty());
    // the estimate is an actual fixed point of its map
    const IterationMap m = make_iteration_map(data, Family::weibull);
    CHECK(std::abs(report.primary - m(report.primary)) < 5e-5);
    CHECK(std::isfinite(report.log_likelihood));
}

TEST_CASE("progressive least-extreme fit reproduces the published analysis") {
    const ProgressiveSample data(table2_values, table2_removals);
    SolverConfig cfg;
    cfg.initial = 0.7912;
    cfg.tolerance = 5e-5;
    const FitReport report = fit(data, Family::lev, cfg);
    CHECK(report.primary == Approx(1.0264).margin(5e-4));
    CHECK(report.secondary == Approx(2.222).margin(2e-3));
    CHECK(report.solver.iterations >= 9);
    CHECK(report.solver.iterations <= 15);
    const IterationMap m = make_iteration_map(data, Family::lev);
    CHECK(std::abs(report.primary - m(report.primary)) < 5e-5);
}

TEST_CASE("the default seed also reaches the published optimum") {
    const ProgressiveSample data(table2_values, table2_removals);
    const FitReport report = fit(data, Family::lev);
    CHECK(report.primary == Approx(1.0264).margin(5e-4));
    CHECK(report.secondary == Approx(2.222).margin(2e-3));
}

TEST_CASE("log-transform duality connects the Weibull and least-extreme fits") {
    const CensoredSample data = CensoredSample::type2(table1_values, table1_total);
    const FitReport weib = fit(data, Family::weibull, tight());

    const CensoredSample logged = log_values(data);
    const FitReport lev = fit(logged, Family::lev, tight());
    CHECK(lev.primary == Approx(1.0 / 1.6467).margin(1e-3));   // sigma = 1/beta
    CHECK(lev.secondary == Approx(std::log(162.223)).margin(2e-3));

    const WeibullParams mapped = weibull_from_lev(LevParams(lev.secondary, lev.primary));
    CHECK(mapped.beta() == Approx(weib.primary).epsilon(1e-7));
    CHECK(mapped.theta() == Approx(weib.secondary).epsilon(1e-7));

    // and the other direction: exp(table2) fits as a progressive Weibull
    const ProgressiveSample t2(table2_values, table2_removals);
    std::vector<double> exp_values;
    for (double x : t2.observed()) exp_values.push_back(std::exp(x));
    const ProgressiveSample expd(exp_values, t2.removals());
    const FitReport weib2 = fit(expd, Family::weibull, tight());
    CHECK(weib2.primary == Approx(1.0 / 1.0264).margin(1e-3));
    CHECK(weib2.secondary == Approx(std::exp(2.222)).epsilon(5e-3));

    const FitReport lev2 = fit(t2, Family::lev, tight());
    const LevParams mapped2 = lev_from_weibull(WeibullParams(weib2.secondary, weib2.primary));
    CHECK(mapped2.sigma() == Approx(lev2.primary).epsilon(1e-7));
    CHECK(mapped2.mu() == Approx(lev2.secondary).margin(1e-7));
}

TEST_CASE("negation duality connects the Gumbel and least-extreme fits") {
    const Sample x = draw_sample(GumbelParams(60.3, 8.3), 38, 1207);
    const FitReport gum = fit(x, Family::gumbel, tight());
    const FitReport lev = fit(negated(x), Family::lev, tight());
    CHECK(gum.primary == Approx(lev.primary).epsilon(1e-8));
    CHECK(gum.secondary == Approx(-lev.secondary).epsilon(1e-8));
}

TEST_CASE("Gumbel fits are affine equivariant") {
    Rng rng(8899);
    const Sample x = draw_sample(GumbelParams(4.0, 2.0), 25, 31415);
    const FitReport base = fit(x, Family::gumbel, tight());
    for (int i = 0; i < 5; ++i) {
        const double a = 0.1 + 10.0 * rng.uniform01();
        const double b = -20.0 + 40.0 * rng.uniform01();
        std::vector<double> mapped;
        for (double v : x.values()) mapped.push_back(a * v + b);
        const FitReport scaled = fit(Sample(mapped), Family::gumbel, tight());
        CHECK(scaled.primary == Approx(a * base.primary).epsilon(1e-6));
        CHECK(scaled.secondary == Approx(a * base.secondary + b).margin(
                  1e-6 * (1.0 + std::abs(a * base.secondary + b))));
    }
}

TEST_CASE("Weibull fits are scale equivariant in every regime") {
    Rng rng(606);
    const Sample y = draw_sample(WeibullParams(9.0, 1.7), 30, 777);

    const FitReport complete = fit(y, Family::weibull, tight());
    const CensoredSample t2 = std::get<CensoredSample>(
        apply_censoring(y, CensoringScheme::type2(20), 0));
    const FitReport censored = fit(t2, Family::weibull, tight());
    std::vector<int> removals(18, 0);
    removals[5] = 6;
    removals[17] = 6;
    const ProgressiveSample prog = std::get<ProgressiveSample>(
        apply_censoring(y, CensoringScheme::progressive(removals), 42));
    const FitReport progressive = fit(prog, Family::weibull, tight());

    for (int i = 0; i < 4; ++i) {
        const double c = 0.05 + 20.0 * rng.uniform01();

        std::vector<double> yc;
        for (double v : y.values()) yc.push_back(c * v);
        const FitReport f1 = fit(Sample(yc), Family::weibull, tight());
        CHECK(f1.primary == Approx(complete.primary).epsilon(1e-6));
        CHECK(f1.secondary == Approx(c * complete.secondary).epsilon(1e-6));

        std::vector<double> oc;
        for (double v : t2.observed()) oc.push_back(c * v);
        const FitReport f2 = fit(CensoredSample::type2(oc, t2.total_n()), Family::weibull,
                                 tight());
        CHECK(f2.primary == Approx(censored.primary).epsilon(1e-6));
        CHECK(f2.secondary == Approx(c * censored.secondary).epsilon(1e-6));

        std::vector<double> pc;
        for (double v : prog.observed()) pc.push_back(c * v);
        const FitReport f3 = fit(ProgressiveSample(pc, prog.removals()), Family::weibull,
                                 tight());
        CHECK(f3.primary == Approx(progressive.primary).epsilon(1e-6));
        CHECK(f3.secondary == Approx(c * progressive.secondary).epsilon(1e-6));
    }
}

TEST_CASE("recasting mid-test removals as single censoring changes the fit") {
    const ProgressiveSample prog(table2_values, table2_removals);
    const FitReport progressive = fit(prog, Family::lev, tight());
    const CensoredSample recast = CensoredSample::type2(table2_values, 19);
    const FitReport type2 = fit(recast, Family::lev, tight());
    CHECK(std::abs(progressive.primary - type2.primary) > 0.1);
    CHECK(type2.primary == Approx(table2_as_type2_sigma_ref).margin(1e-6));
}

TEST_CASE("the fixed point is a stationary point of the profile log-likelihood") {
    SolverConfig cfg = tight();
    cfg.tolerance = 1e-12;

    const CensoredSample t1 = CensoredSample::type2(table1_values, table1_total);
    const FitReport w = fit(t1, Family::weibull, cfg);
    auto profile_w = [&](double beta) {
        return loglik(t1, WeibullParams(weibull_theta(beta, t1), beta));
    };
    const ProgressiveSample t2(table2_values, table2_removals);
    const FitReport l = fit(t2, Family::lev, cfg);
    auto profile_l = [&](double sigma) {
        return loglik(t2, LevParams(lev_mu(sigma, t2), sigma));
    };
    const Sample s01(std::vector<double>{0.0, 1.0});
    const FitReport g = fit(s01, Family::gumbel, cfg);
    auto profile_g = [&](double sigma) {
        return loglik(s01, GumbelParams(gumbel_mu(sigma, s01), sigma));
    };

    const std::pair<double, std::function<double(double)>> cases[] = {
        {w.primary, profile_w}, {l.primary, profile_l}, {g.primary, profile_g}};
    for (const auto& [arg, profile] : cases) {
        const double step = std::cbrt(std::numeric_limits<double>::epsilon()) *
                            std::max(1.0, arg);
        const double up = profile(arg + step);
        const double down = profile(arg - step);
        const double mid = profile(arg);
        const double first = (up - down) / (2.0 * step);
        const double second = (up - 2.0 * mid + down) / (step * step);
        REQUIRE(second < 0.0);  // interior maximum
        // curvature-scaled slope: the Newton correction at the fixed point
        CHECK(std::abs(first / second) < 1e-6 * std::max(1.0, arg));
    }
}

TEST_CASE("fit rejections") {
    CHECK_THROWS_AS(fit(Sample({3.0}), Family::gumbel), std::invalid_argument);
    CHECK_THROWS_AS(fit(Sample({3.0, 3.0, 3.0}), Family::gumbel), std::domain_error);
    CHECK_THROWS_AS(fit(Sample({-1.0, 2.0}), Family::weibull), std::domain_error);
    CHECK_THROWS_AS(fit(CensoredSample::type2({1.0, 2.0}, 4), Family::gumbel),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit(ProgressiveSample({1.0, 2.0}, {1, 1}), Family::gumbel),
                    std::invalid_argument);
}

TEST_CASE("fit accepts a complete sample in every family") {
    const Sample y = draw_sample(WeibullParams(5.0, 2.0), 24, 904);
    const FitReport w = fit(y, Family::weibull);
    CHECK(w.primary > 0.0);
    CHECK(w.secondary > 0.0);

    const Sample x = draw_sample(LevParams(1.0, 0.5), 24, 905);
    const FitReport l = fit(x, Family::lev);
    CHECK(l.solver.termination == Termination::converged);

    const FitReport g = fit(negated(x), Family::gumbel);
    CHECK(g.primary == Approx(l.primary).margin(2e-4));
}

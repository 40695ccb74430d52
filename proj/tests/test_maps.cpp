#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "evdfit/maps.hpp"
#include "evdfit/simulate.hpp"
#include "reference_data.hpp"

using namespace evdfit;
using Catch::Approx;

TEST_CASE("complete Gumbel map limits") {
    const Sample s01(std::vector<double>{0.0, 1.0});
    // sigma -> infinity: weighted mean approaches the plain mean
    CHECK(std::abs(gumbel_sigma_map(1e12, s01)) < 1e-9);
    // sigma -> 0+: map approaches mean(x) - min(x)
    CHECK(gumbel_sigma_map(1e-12, s01) == Approx(0.5).margin(1e-15));

    const Sample flat(std::vector<double>{3.3, 3.3, 3.3});
    for (double sigma : {0.25, 1.0, 9.0})
        CHECK(gumbel_sigma_map(sigma, flat) == Approx(0.0).margin(1e-12));
}

TEST_CASE("complete Gumbel map never overflows across the bracket") {
    const Sample s(std::vector<double>{-4000.0, -100.0, 2500.0, 9000.0});
    for (double sigma : {1e-300, 1e-12, 1e-3, 1.0, 1e6, 1e300}) {
        const double g = gumbel_sigma_map(sigma, s);
        CHECK(std::isfinite(g));
        CHECK(g >= 0.0);
        CHECK(g <= s.mean() - s.min() + 1e-9);
    }
}

TEST_CASE("gumbel location back-substitution cancels on flat data") {
    const Sample flat(std::vector<double>{2.0, 2.0});
    for (double sigma : {0.1, 1.0, 50.0})
        CHECK(gumbel_mu(sigma, flat) == Approx(2.0).margin(1e-12));
}

TEST_CASE("complete Weibull map behavior") {
    const Sample s(std::vector<double>{1.0, std::exp(1.0)});
    for (double beta : {1e-3, 0.5, 1.0, 5.0, 50.0}) CHECK(std::isfinite(weibull_beta_map(beta, s)));

    // scale invariance: the data scale cancels inside the map
    Rng rng(5150);
    const Sample base(std::vector<double>{0.7, 1.9, 3.4, 6.1, 11.0});
    for (int i = 0; i < 20; ++i) {
        const double c = 0.01 + 100.0 * rng.uniform01();
        const double beta = 0.2 + 5.0 * rng.uniform01();
        std::vector<double> scaled;
        for (double x : base.values()) scaled.push_back(c * x);
        CHECK(weibull_beta_map(beta, Sample(scaled)) ==
              Approx(weibull_beta_map(beta, base)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(weibull_beta_map(1.0, Sample({2.0, 2.0, 2.0})), std::domain_error);
    CHECK_THROWS_AS(weibull_beta_map(1.0, Sample({-1.0, 2.0})), std::domain_error);
}

TEST_CASE("complete Weibull scale back-substitution") {
    CHECK(weibull_theta(3.7, Sample({5.5, 5.5, 5.5})) == Approx(5.5).epsilon(1e-12));
    CHECK(weibull_theta(1.0, Sample({1.0, 2.0, 6.0})) == Approx(3.0).epsilon(1e-12));
    CHECK(weibull_theta(20.0, Sample({1.0, 2.0})) ==
          Approx(1.9318727499685162).epsilon(1e-12));
}

TEST_CASE("reduction lattice holds bitwise") {
    Rng rng(99);
    const std::vector<double> values = {0.3, 1.1, 2.7, 4.5, 8.2, 9.9};
    const int n = 11;
    const int r = static_cast<int>(values.size());

    const Sample complete(values);
    const CensoredSample type2 = CensoredSample::type2(values, n);
    const CensoredSample type2_full = CensoredSample::type2(values, r);
    const CensoredSample type1_at_xr = CensoredSample::type1(values, n, values.back());
    std::vector<int> tail_removals(values.size(), 0);
    tail_removals.back() = n - r;
    const ProgressiveSample prog_tail(values, tail_removals);
    const ProgressiveSample prog_zero(values, std::vector<int>(values.size(), 0));

    for (int i = 0; i < 25; ++i) {
        const double sigma = 0.05 + 20.0 * rng.uniform01();
        const double beta = 0.05 + 8.0 * rng.uniform01();

        // progressive with R = (0,...,0,n-r) == singly Type-II censored
        CHECK(lev_sigma_map(sigma, prog_tail) == lev_sigma_map(sigma, type2));
        CHECK(lev_mu(sigma, prog_tail) == lev_mu(sigma, type2));
        CHECK(weibull_beta_map(beta, prog_tail) == weibull_beta_map(beta, type2));
        CHECK(weibull_theta(beta, prog_tail) == weibull_theta(beta, type2));

        // Type-I with T = x(r) == Type-II
        CHECK(lev_sigma_map(sigma, type1_at_xr) == lev_sigma_map(sigma, type2));
        CHECK(lev_mu(sigma, type1_at_xr) == lev_mu(sigma, type2));
        CHECK(weibull_beta_map(beta, type1_at_xr) == weibull_beta_map(beta, type2));
        CHECK(weibull_theta(beta, type1_at_xr) == weibull_theta(beta, type2));

        // progressive with R == 0 == complete; r = n (either mode) == complete
        CHECK(lev_sigma_map(sigma, prog_zero) == lev_sigma_map(sigma, complete));
        CHECK(lev_mu(sigma, prog_zero) == lev_mu(sigma, complete));
        CHECK(weibull_beta_map(beta, prog_zero) == weibull_beta_map(beta, complete));
        CHECK(weibull_beta_map(beta, type2_full) == weibull_beta_map(beta, complete));
        CHECK(weibull_theta(beta, type2_full) == weibull_theta(beta, complete));
        CHECK(lev_sigma_map(sigma, type2_full) == lev_sigma_map(sigma, complete));
        const CensoredSample type1_full =
            CensoredSample::type1(values, r, values.back() + 3.0);
        CHECK(lev_sigma_map(sigma, type1_full) == lev_sigma_map(sigma, complete));
        CHECK(weibull_beta_map(beta, type1_full) == weibull_beta_map(beta, complete));
    }
}

TEST_CASE("least-extreme map on flat observed data") {
    const CensoredSample c = CensoredSample::type2({4.0, 4.0, 4.0}, 9);
    for (double sigma : {0.2, 1.0, 5.0})
        CHECK(lev_sigma_map(sigma, c) == Approx(0.0).margin(1e-12));
}

TEST_CASE("censored mu closed form on flat observed data") {
    const int n = 10;
    const int r = 4;
    const double c = 2.5;
    const CensoredSample cs = CensoredSample::type1(std::vector<double>(r, c), n, c);
    for (double sigma : {0.3, 1.0, 2.0})
        CHECK(lev_mu(sigma, cs) ==
              Approx(c + sigma * std::log(static_cast<double>(n) / r)).margin(1e-12));
}

TEST_CASE("published back-substitutions at the published scale estimates") {
    const ProgressiveSample t2(table2_values, table2_removals);
    CHECK(lev_mu(1.0264, t2) == Approx(2.222).margin(1e-3));

    const CensoredSample t1 = CensoredSample::type2(table1_values, table1_total);
    CHECK(weibull_theta(1.6467, t1) == Approx(162.223).margin(0.05));
}

TEST_CASE("censored theta closed forms") {
    const int n = 10;
    const int r = 4;
    const double c = 2.5;
    const CensoredSample cs = CensoredSample::type1(std::vector<double>(r, c), n, c);
    for (double beta : {0.7, 1.0, 3.0})
        CHECK(weibull_theta(beta, cs) ==
              Approx(c * std::pow(static_cast<double>(n) / r, 1.0 / beta)).epsilon(1e-12));

    const ProgressiveSample ps(std::vector<double>(4, c), {3, 0, 2, 1});
    for (double beta : {0.7, 1.0, 3.0})
        CHECK(weibull_theta(beta, ps) ==
              Approx(c * std::pow(10.0 / 4.0, 1.0 / beta)).epsilon(1e-12));
}

TEST_CASE("censored Weibull scale invariance") {
    Rng rng(404);
    const CensoredSample base = CensoredSample::type2(table1_values, table1_total);
    for (int i = 0; i < 15; ++i) {
        const double c = 0.01 + 50.0 * rng.uniform01();
        const double beta = 0.2 + 5.0 * rng.uniform01();
        std::vector<double> scaled;
        for (double x : base.observed()) scaled.push_back(c * x);
        const CensoredSample cs = CensoredSample::type2(scaled, table1_total);
        CHECK(weibull_beta_map(beta, cs) == Approx(weibull_beta_map(beta, base)).epsilon(1e-10));
    }
}

TEST_CASE("every constructed map is monotone non-increasing") {
    Rng rng(313);
    std::vector<IterationMap> corpus;
    corpus.push_back(make_iteration_map(Sample({0.0, 1.0}), Family::gumbel));
    corpus.push_back(
        make_iteration_map(ProgressiveSample(table2_values, table2_removals), Family::lev));
    corpus.push_back(
        make_iteration_map(CensoredSample::type2(table1_values, table1_total), Family::weibull));
    for (int i = 0; i < 6; ++i) {
        const Sample s = draw_sample(GumbelParams(5.0 * rng.uniform01(), 0.5 + 3.0 * rng.uniform01()),
                                     12, 1000 + i);
        corpus.push_back(make_iteration_map(s, Family::gumbel));
        corpus.push_back(make_iteration_map(s, Family::lev));
        const Sample w = draw_sample(WeibullParams(2.0 + 8.0 * rng.uniform01(),
                                                   0.5 + 3.0 * rng.uniform01()),
                                     12, 2000 + i);
        corpus.push_back(make_iteration_map(w, Family::weibull));
    }

    for (const auto& map : corpus) {
        const Interval br = map.bracket();
        for (int i = 0; i < 40; ++i) {
            const double a = br.lo * std::pow(br.hi / br.lo, rng.uniform01());
            const double b = br.lo * std::pow(br.hi / br.lo, rng.uniform01());
            const double s = std::min(a, b);
            const double t = std::max(a, b);
            if (s == t) continue;
            const double gs = map(s);
            const double gt = map(t);
            CHECK(gt <= gs + 1e-9 * (1.0 + std::abs(gs)));
        }
    }
}

TEST_CASE("brackets straddle the fixed point") {
    const Sample s01(std::vector<double>{0.0, 1.0});
    const IterationMap m = make_iteration_map(s01, Family::gumbel);
    const Interval br = m.bracket();
    CHECK(br.hi <= 0.5 + 1e-9);  // mean - min bound for {0, 1}
    CHECK(br.lo < gumbel01_sigma_ref);
    CHECK(gumbel01_sigma_ref <= br.hi);
    CHECK(br.lo - m(br.lo) < 0.0);
    CHECK(br.hi - m(br.hi) >= 0.0);

    const IterationMap mt2 =
        make_iteration_map(ProgressiveSample(table2_values, table2_removals), Family::lev);
    CHECK(mt2.bracket().lo < 1.0264);
    CHECK(1.0264 <= mt2.bracket().hi);
}

TEST_CASE("degenerate data cannot be bracketed or fitted") {
    CHECK_THROWS_AS(make_iteration_map(Sample({5.0, 5.0, 5.0}), Family::gumbel),
                    std::domain_error);
    CHECK_THROWS_AS(make_iteration_map(Sample({5.0, 5.0}), Family::weibull), std::domain_error);
    CHECK_THROWS_AS(make_iteration_map(Sample({42.0}), Family::gumbel), std::invalid_argument);
}

TEST_CASE("gumbel maps reject censored data") {
    const CensoredSample c = CensoredSample::type2({1.0, 2.0}, 4);
    CHECK_THROWS_AS(make_iteration_map(c, Family::gumbel), std::invalid_argument);
    const ProgressiveSample p({1.0, 2.0}, {1, 1});
    CHECK_THROWS_AS(make_iteration_map(p, Family::gumbel), std::invalid_argument);
}

TEST_CASE("weibull maps with a pole still produce a valid bracket") {
    // heavy removals at the smallest failure push the weighted log-mean below
    // the observed log-mean for small beta, so the map turns negative there
    const ProgressiveSample p({0.05, 1.0, 3.0, 5.0}, {20, 0, 0, 0});
    const double inner_limit = weibull_beta_map(1e-9, p);
    CHECK(inner_limit < 0.0);  // left of the pole

    const IterationMap m = make_iteration_map(p, Family::weibull);
    const Interval br = m.bracket();
    CHECK(br.lo > 0.0);
    CHECK(m(br.lo) > 0.0);
    CHECK(br.lo - m(br.lo) < 0.0);
    CHECK(br.hi - m(br.hi) >= 0.0);
}

TEST_CASE("map arguments must be positive") {
    const Sample s(std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(gumbel_sigma_map(0.0, s), std::invalid_argument);
    CHECK_THROWS_AS(gumbel_sigma_map(-1.0, s), std::invalid_argument);
    CHECK_THROWS_AS(weibull_beta_map(0.0, s), std::invalid_argument);
    CHECK_THROWS_AS(lev_mu(0.0, s), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "market_clock/experiment.hpp"

using namespace mclock;

TEST_CASE("experiment results do not depend on the thread count") {
    const auto spec = fixtures::d2();
    const auto g = maximize_growth(spec);
    ExperimentConfig cfg;
    cfg.reps = 300;
    cfg.master_seed = 77;
    cfg.threads = 1;
    const auto one = upcrossing_experiment(spec, g, Strategy::growth_optimal(), 1.0, 10.0, cfg);
    for (unsigned t : {2u, 4u, 16u}) {
        cfg.threads = t;
        const auto many = upcrossing_experiment(spec, g, Strategy::growth_optimal(), 1.0, 10.0, cfg);
        CHECK(many.mean_T == one.mean_T);
        CHECK(many.stderr_T == one.stderr_T);
        REQUIRE(many.rows.size() == one.rows.size());
        for (std::size_t i = 0; i < one.rows.size(); ++i) {
            CHECK(many.rows[i].rep == i);
            CHECK(many.rows[i].market_time == one.rows[i].market_time);
            CHECK(many.rows[i].tau == one.rows[i].tau);
        }
    }
    cfg.master_seed = 78;
    CHECK(upcrossing_experiment(spec, g, Strategy::growth_optimal(), 1.0, 10.0, cfg).mean_T != one.mean_T);
}

TEST_CASE("J1 numeraire hits e^2 at market time 2 on average") {
    const auto spec = fixtures::j1();
    const auto g = maximize_growth(spec);
    ExperimentConfig cfg;
    cfg.reps = 20000;
    cfg.master_seed = 3;
    const auto rep = upcrossing_experiment(spec, g, Strategy::growth_optimal(), 1.0, std::exp(2.0), cfg);
    CHECK(rep.reached == rep.reps);
    CHECK(rep.warnings.empty());
    CHECK(std::abs(rep.mean_T - 2.0) <= 3.0 * rep.stderr_T);
    // No positive jumps: every overshoot is zero up to rounding.
    for (double o : rep.overshoot_samples) CHECK(o <= 1e-9);
    CHECK(rep.overshoot_histogram.counts.size() == 1);
    CHECK(rep.mean_tau == doctest::Approx(rep.mean_T / g.g_star));
}

TEST_CASE("summary statistics of hand-built rows") {
    std::vector<ReplicationRow> rows(4);
    const double times[] = {1.0, 2.0, 3.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        rows[i].rep = i;
        rows[i].market_time = times[i];
        rows[i].tau = 10.0 * times[i];
        rows[i].reached = i < 3;
        rows[i].overshoot = 0.1 * i;
        rows[i].log1p_alpha = 0.2;
    }
    const auto r = summarize_replications(rows, Scheme::event, 5, 0.1);
    CHECK(r.reached == 3);
    CHECK(r.mean_T == doctest::Approx(2.0));
    CHECK(r.var_T == doctest::Approx(1.0));
    CHECK(r.stderr_T == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(r.mean_tau == doctest::Approx(20.0));
    CHECK(r.reached_fraction == doctest::Approx(0.75));
    CHECK(r.mean_log1p_alpha == doctest::Approx(0.2));
    CHECK(r.warnings.size() == 1);

    std::vector<ReplicationRow> none(2);
    const auto empty = summarize_replications(none, Scheme::grid, 1, 0.0);
    CHECK(std::isinf(empty.mean_T));
}

TEST_CASE("histogram binning") {
    const auto h = make_histogram({0.0, 0.05, 0.1, 0.25, 0.249}, 0.1);
    REQUIRE(h.counts.size() == 3);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[1] == 1);
    CHECK(h.counts[2] == 2);
    CHECK(make_histogram({0.0, 0.0}, 0.0).counts.size() == 1);
}

TEST_CASE("invalid experiment configurations") {
    const auto spec = fixtures::bs1();
    const auto g = maximize_growth(spec);
    ExperimentConfig cfg;
    cfg.reps = 0;
    CHECK_THROWS_AS(upcrossing_experiment(spec, g, Strategy::growth_optimal(), 1.0, 2.0, cfg), std::invalid_argument);
    cfg.reps = 10;
    CHECK_THROWS_AS(upcrossing_experiment(spec, g, Strategy::growth_optimal(), -1.0, 2.0, cfg), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "market_clock/ito_coefficients.hpp"
#include "market_clock/simulator.hpp"

using namespace mclock;
using fixtures::vec;

namespace {

ItoMarketSpec ito_one_asset(double a, double sigma) {
    ItoMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({a});
    s.sigma = Matrix::Constant(1, 1, sigma);
    return *validate_spec(s).spec;
}

}  // namespace

TEST_CASE("J1 path: linear drift between jumps of log(1/3)") {
    const auto spec = fixtures::j1();
    const auto g = maximize_growth(spec);
    SimulationOptions opt;
    opt.scheme = Scheme::event;
    Rng rng(1, 0);
    const auto path = simulate_levy_log_wealth(spec, g.rho, g, 1.0, std::exp(10.0), opt, rng);
    REQUIRE(path.status == PathStatus::reached);
    // Between jumps log-wealth grows at <rho, a> - rate <rho, z> = 2/15 + 1/15 = 0.2.
    for (std::size_t i = 1; i < path.events.size(); ++i) {
        const auto& prev = path.events[i - 1];
        const auto& e = path.events[i];
        double expected = prev.log_growth + 0.2 * (e.t - prev.t);
        if (e.kind == EventKind::jump) {
            CHECK(e.jump == doctest::Approx(std::log(1.0 / 3.0)));
            expected += std::log(1.0 / 3.0);
        }
        CHECK(e.log_growth == doctest::Approx(expected).epsilon(1e-9));
        CHECK(e.market_time == doctest::Approx(g.g_star * e.t));
    }
    CHECK(path.max_relative_jump == 0.0);
    const auto up = first_upcrossing(path, std::exp(10.0));
    CHECK(up.reached);
    CHECK(up.overshoot == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("simulation is deterministic per stream") {
    const auto spec = fixtures::d2();
    const auto g = maximize_growth(spec);
    for (auto scheme : {Scheme::event, Scheme::grid}) {
        SimulationOptions opt;
        opt.scheme = scheme;
        opt.dt = 0.01;
        Rng r1 = make_stream(4, 2), r2 = make_stream(4, 2);
        const auto a = simulate_levy_log_wealth(spec, g.rho, g, 1.0, 5.0, opt, r1);
        const auto b = simulate_levy_log_wealth(spec, g.rho, g, 1.0, 5.0, opt, r2);
        REQUIRE(a.events.size() == b.events.size());
        for (std::size_t i = 0; i < a.events.size(); ++i) {
            CHECK(a.events[i].t == b.events[i].t);
            CHECK(a.events[i].log_growth == b.events[i].log_growth);
        }
    }
}

TEST_CASE("grid scheme has the right drift for BS1") {
    const auto spec = fixtures::bs1();
    const auto g = maximize_growth(spec);
    SimulationOptions opt;
    opt.scheme = Scheme::grid;
    opt.dt = 0.01;
    opt.market_time_budget = 0.08 * 2000.0;  // horizon t = 2000
    Rng rng(2, 0);
    // Level far out of reach: the run ends on the budget.
    const auto path = simulate_levy_log_wealth(spec, g.rho, g, 1.0, 1e300, opt, rng);
    REQUIRE(path.status == PathStatus::budget_exhausted);
    const auto& last = path.events.back();
    CHECK(last.t == doctest::Approx(2000.0));
    // log X_t / t -> g* with sd sqrt(2 g* / t) = 0.0089.
    CHECK(std::abs(last.log_growth / last.t - 0.08) < 5.0 * std::sqrt(0.16 / 2000.0));
}

TEST_CASE("constant-coefficient Ito market time is g* t") {
    const auto spec = ito_one_asset(0.08, 0.2);
    SimulationOptions opt;
    opt.dt = 1e-2;
    Rng rng(3, 0);
    const auto path = simulate_ito_log_wealth(spec, Strategy::growth_optimal(), 1.0, 20.0, opt, rng);
    REQUIRE(path.status == PathStatus::reached);
    for (const auto& e : path.events) CHECK(e.market_time == doctest::Approx(0.08 * e.t).epsilon(1e-9));
}

TEST_CASE("zero risk premium never reaches and stops on the step cap") {
    const auto spec = ito_one_asset(0.0, 0.2);
    SimulationOptions opt;
    opt.dt = 1e-2;
    opt.max_steps = 10000;
    Rng rng(4, 0);
    const auto path = simulate_ito_log_wealth(spec, Strategy::growth_optimal(), 1.0, 2.0, opt, rng);
    CHECK(path.status == PathStatus::step_limit);
    CHECK_FALSE(first_upcrossing(path, 2.0).reached);
    for (const auto& e : path.events) CHECK(e.log_growth == 0.0);
}

TEST_CASE("unsolvable premium raises NoNumeraireError") {
    const auto spec = ito_one_asset(0.1, 0.0);
    SimulationOptions opt;
    Rng rng(5, 0);
    CHECK_THROWS_AS(simulate_ito_log_wealth(spec, Strategy::growth_optimal(), 1.0, 2.0, opt, rng), NoNumeraireError);
}

TEST_CASE("stochastic volatility: market time nondecreasing") {
    ItoMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({0.08});
    s.sigma = Matrix::Constant(1, 1, 0.2);
    s.model = StochasticVolModel{2.0, 0.5, 0.0};
    s = *validate_spec(s).spec;
    SimulationOptions opt;
    opt.dt = 1e-2;
    Rng rng(6, 0);
    const auto path = simulate_ito_log_wealth(s, Strategy::growth_optimal(), 1.0, 10.0, opt, rng);
    for (std::size_t i = 1; i < path.events.size(); ++i) {
        CHECK(path.events[i].market_time >= path.events[i - 1].market_time);
        CHECK(path.events[i].t > path.events[i - 1].t);
    }

    std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
    Rng r2(7, 0);
    const auto coefs = generate_coefficients(s, grid, r2);
    REQUIRE(coefs.size() == 4);
    CHECK(coefs[0].sigma(0, 0) == doctest::Approx(0.2));
    CHECK(coefs[3].t == 2.0);
}

TEST_CASE("schedule model switches coefficients") {
    ItoMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({0.08});
    s.sigma = Matrix::Constant(1, 1, 0.2);
    ScheduleModel sched;
    sched.times = {0.0, 1.0};
    sched.a = {vec({0.08}), vec({0.02})};
    sched.sigma = {Matrix::Constant(1, 1, 0.2), Matrix::Constant(1, 1, 0.1)};
    s.model = sched;
    s = *validate_spec(s).spec;
    std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
    Rng rng(8, 0);
    const auto c = generate_coefficients(s, grid, rng);
    CHECK(c[1].a(0) == 0.08);
    CHECK(c[2].a(0) == 0.02);
    CHECK(c[3].sigma(0, 0) == 0.1);

    // Market-time rate 0.08 on [0,1), then 0.02.
    SimulationOptions opt;
    opt.dt = 1e-3;
    opt.recording = Recording::full;
    Rng r2(9, 0);
    const auto path = simulate_ito_log_wealth(s, Strategy::growth_optimal(), 1.0, 1e100, opt, r2);
    for (const auto& e : path.events) {
        if (e.t > 3.0) break;
        const double expect = e.t <= 1.0 ? 0.08 * e.t : 0.08 + 0.02 * (e.t - 1.0);
        // one trapezoid step straddles the switch
        CHECK(std::abs(e.market_time - expect) <= 0.06 * opt.dt + 1e-9);
    }
}

TEST_CASE("first_upcrossing") {
    PathRecord p;
    p.initial_wealth = 1.0;
    p.events = {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.4}, {2.0, 1.0, 1.2}, {3.0, 1.5, 2.0}};
    const auto up = first_upcrossing(p, std::exp(1.0));
    CHECK(up.reached);
    CHECK(up.calendar_time == 2.0);
    CHECK(up.market_time == 1.0);
    CHECK(up.overshoot == doctest::Approx(0.2));

    CHECK_FALSE(first_upcrossing(p, std::exp(3.0)).reached);
    const auto below = first_upcrossing(p, 0.5);  // level <= x: zero time
    CHECK(below.reached);
    CHECK(below.market_time == 0.0);
}

TEST_CASE("scale invariance in wealth") {
    const auto spec = fixtures::j2();
    const auto g = maximize_growth(spec);
    for (auto scheme : {Scheme::event, Scheme::grid}) {
        SimulationOptions opt;
        opt.scheme = scheme;
        opt.dt = 0.01;
        for (int i = 0; i < 20; ++i) {
            Rng r1 = make_stream(10, i), r2 = make_stream(10, i);
            const auto a = simulate_levy_log_wealth(spec, g.rho, g, 1.0, 10.0, opt, r1);
            const auto b = simulate_levy_log_wealth(spec, g.rho, g, 2.0, 20.0, opt, r2);
            const auto ua = first_upcrossing(a, 10.0), ub = first_upcrossing(b, 20.0);
            CHECK(ua.reached == ub.reached);
            CHECK(ua.market_time == ub.market_time);
        }
    }
}

TEST_CASE("overshoot bounded by the largest jump") {
    const auto spec = fixtures::j2();
    const auto g = maximize_growth(spec);
    const double cap = std::log1p(g.alpha);
    SimulationOptions opt;
    opt.recording = Recording::sparse;
    for (int i = 0; i < 2000; ++i) {
        Rng rng = make_stream(11, i);
        const auto path = simulate_levy_log_wealth(spec, g.rho, g, 1.0, 30.0, opt, rng);
        CHECK(path.events.size() <= 2);
        const auto up = first_upcrossing(path, 30.0);
        REQUIRE(up.reached);
        CHECK(up.overshoot >= 0.0);
        CHECK(up.overshoot <= cap + 1e-9);
    }
}

TEST_CASE("infeasible portfolios are rejected") {
    const auto spec = fixtures::j1();
    const auto g = maximize_growth(spec);
    SimulationOptions opt;
    Rng rng(12, 0);
    CHECK_THROWS_AS(simulate_levy_log_wealth(spec, vec({3.0}), g, 1.0, 2.0, opt, rng), DomainError);
    CHECK_THROWS_AS(simulate_levy_log_wealth(spec, g.rho, g, 0.0, 2.0, opt, rng), std::invalid_argument);
}

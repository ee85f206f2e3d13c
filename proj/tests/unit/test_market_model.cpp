#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "market_clock/market_model.hpp"

using namespace mclock;
using fixtures::vec;

namespace {

bool has_error(const std::vector<std::string>& errors, const std::string& needle) {
    for (const auto& e : errors) {
        if (e.find(needle) != std::string::npos) return true;
    }
    return false;
}

LevyMarketSpec raw_one_asset(double a, double sigma) {
    LevyMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({a});
    s.sigma = Matrix::Constant(1, 1, sigma);
    return s;
}

}  // namespace

TEST_CASE("validate_spec materializes c from sigma") {
    const auto v = validate_spec(raw_one_asset(0.08, 0.2));
    REQUIRE(v.ok());
    CHECK(v.spec->c(0, 0) == doctest::Approx(0.04));
}

TEST_CASE("validate_spec rejects jumps below -1") {
    auto s = raw_one_asset(0.08, 0.2);
    s.atoms = {{vec({-1.5}), 0.1}};
    const auto v = validate_spec(s);
    CHECK_FALSE(v.ok());
    CHECK(has_error(v.errors, "jump below -1"));
}

TEST_CASE("validate_spec accepts a total-loss jump of exactly -1") {
    auto s = raw_one_asset(0.08, 0.2);
    s.atoms = {{vec({-1.0}), 0.1}};
    CHECK(validate_spec(s).ok());
}

TEST_CASE("validate_spec rejects nonpositive rates and zero atoms") {
    auto s = raw_one_asset(0.08, 0.2);
    s.atoms = {{vec({0.1}), 0.0}};
    CHECK(has_error(validate_spec(s).errors, "nonpositive rate"));
    s.atoms = {{vec({0.0}), 0.3}};
    CHECK(has_error(validate_spec(s).errors, "zero atom"));
}

TEST_CASE("validate_spec reports sigma shape mismatches") {
    auto s = raw_one_asset(0.08, 0.2);
    s.sigma = Matrix::Constant(1, 2, 0.1);  // m = 1 declared
    CHECK(has_error(validate_spec(s).errors, "dimension mismatch"));
}

TEST_CASE("validate_spec checks c") {
    LevyMarketSpec s;
    s.d = 2;
    s.a = vec({0.1, 0.1});
    s.c = Matrix(2, 2);
    s.c << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
    CHECK(has_error(validate_spec(s).errors, "c not PSD"));
    s.c << 1.0, 0.5, 0.0, 1.0;
    CHECK(has_error(validate_spec(s).errors, "c not symmetric"));

    SUBCASE("sigma and c must agree") {
        auto t = raw_one_asset(0.08, 0.2);
        t.c = Matrix::Constant(1, 1, 0.05);
        CHECK(has_error(validate_spec(t).errors, "disagree"));
        t.c = Matrix::Constant(1, 1, 0.04);
        CHECK(validate_spec(t).ok());
    }
    SUBCASE("one of sigma or c is required") {
        LevyMarketSpec t;
        t.d = 1;
        t.a = vec({0.1});
        CHECK_FALSE(validate_spec(t).ok());
    }
}

TEST_CASE("validate_spec is idempotent") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = fixtures::random_spec(gen, 1 + trial % 2);
        const auto again = validate_spec(spec);
        REQUIRE(again.ok());
        CHECK(again.spec->c == spec.c);
        CHECK(again.spec->a == spec.a);
        CHECK(again.spec->atoms.size() == spec.atoms.size());
    }
}

TEST_CASE("Ito specs validate coefficient models") {
    ItoMarketSpec s;
    s.d = 1;
    s.m = 1;
    s.a = vec({0.08});
    s.sigma = Matrix::Constant(1, 1, 0.2);
    CHECK(validate_spec(s).ok());

    ScheduleModel sched;
    sched.times = {0.0, 1.0};
    sched.a = {vec({0.08}), vec({0.02})};
    sched.sigma = {Matrix::Constant(1, 1, 0.2), Matrix::Constant(1, 2, 0.1)};
    s.model = sched;
    CHECK(has_error(validate_spec(s).errors, "dimension mismatch"));

    sched.sigma[1] = Matrix::Constant(1, 1, 0.1);
    sched.times = {0.5, 1.0};
    s.model = sched;
    CHECK(has_error(validate_spec(s).errors, "start at t=0"));

    s.model = StochasticVolModel{-1.0, 0.3, 0.0};
    CHECK(has_error(validate_spec(s).errors, "kappa"));
}

TEST_CASE("natural constraint set membership") {
    const std::vector<JumpAtom> atoms{{vec({-0.5}), 0.1}};
    const ConstraintQuery q(atoms);
    CHECK(in_constraint_set(vec({0.0}), q));
    CHECK(in_constraint_set(vec({2.0}), q));  // boundary: 1 - 1 = 0
    CHECK_FALSE(in_constraint_set(vec({2.5}), q));
    CHECK(in_constraint_set(vec({-100.0}), q));

    const ConstraintQuery none(std::span<const JumpAtom>{});
    CHECK(in_constraint_set(vec({1e9}), none));
}

TEST_CASE("recession cone membership") {
    const std::vector<JumpAtom> atoms{{vec({-0.5}), 0.1}};
    const ConstraintQuery q(atoms);
    CHECK_FALSE(in_recession_cone(vec({1.0}), q));
    CHECK(in_recession_cone(vec({-1.0}), q));
    CHECK(in_recession_cone(vec({0.0}), q));
    CHECK(in_recession_cone(vec({5.0}), ConstraintQuery(std::span<const JumpAtom>{})));
    CHECK_THROWS_AS(ConstraintQuery(atoms, -1.0), std::invalid_argument);
}

TEST_CASE("constraint set is star-shaped about 0 and the cone scales into it") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> wide(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = fixtures::random_spec(gen, 2);
        const ConstraintQuery q(spec);
        const Vector pi = vec({wide(gen), wide(gen)});
        if (in_constraint_set(pi, q)) CHECK(in_constraint_set(u(gen) * pi, q));
        const Vector eta = vec({wide(gen), wide(gen)});
        if (in_recession_cone(eta, q)) CHECK(in_constraint_set(100.0 * u(gen) * eta, q));
    }
}

#include "fogran/error.hpp"
#include "fogran/rational.hpp"
#include "fogran/topology.hpp"

#include <doctest.h>

#include <random>

using namespace fogran;

TEST_CASE("rational arithmetic is exact and reduced") {
    Rational a(6, 8);
    CHECK(a.str() == "3/4");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational::parse("65/8") == Rational(65, 8));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::from_double(0.375) == Rational(3, 8));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(pos(Rational(-1, 3)).is_zero());
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(Rational::parse("1/x"), DomainError);

    std::mt19937 rng(3);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    for (int i = 0; i < 500; ++i) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        CHECK((x + y) - y == x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("binomials follow the zero convention") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(3, 5) == 0);
    CHECK(binom(12, 6) == 924);
    CHECK(binom(30, 15) == 155117520);
    CHECK(binom(5, -1) == 0);
    CHECK(binom(-1, 2) == 0);
    CHECK(binom(0, 0) == 1);
}

TEST_CASE("topology invariants") {
    Topology t(4, 4, {6, 4, 3, 3}, 20);
    CHECK(t.K_sbs() == 16);
    CHECK(t.K() == 20);
    CHECK(t.L_prefix(2) == 10);
    CHECK(t.L_set({1, 3}) == 7);
    CHECK(t.sbs_of_user(3) == -1);
    CHECK(t.sbs_of_user(4) == 0);
    CHECK(t.sbs_of_user(10) == 1);
    CHECK(t.sbs_of_user(19) == 3);
    CHECK(t.first_user(2) == 14);

    CHECK_THROWS_AS(Topology(2, 1, {1, 2}, 5), DomainError);
    CHECK_THROWS_AS(Topology(2, 1, {2, 0}, 5), DomainError);

    Topology n = Topology::normalized(1, {1, 3, 2}, 5);
    CHECK(n.L() == std::vector<long>{3, 2, 1});
    CHECK(n.perm() == std::vector<int>{1, 2, 0});

    Topology c(2, 3, {9, 2}, 8);
    CHECK(c.L_clipped(0) == 5);
    CHECK(c.L_clipped(1) == 2);
}

TEST_CASE("demand validation") {
    Topology t(2, 1, {2, 1}, 4);
    CHECK_NOTHROW(Demand{{1, 2, 3, 4}}.validate(t));
    CHECK_THROWS_AS((Demand{{1, 2, 3}}.validate(t)), DomainError);
    CHECK_THROWS_AS((Demand{{1, 2, 3, 5}}.validate(t)), DomainError);
    CHECK_THROWS_AS((Demand{{0, 2, 3, 4}}.validate(t)), DomainError);
}

TEST_CASE("lower convex envelope keeps hull vertices only") {
    using V = std::vector<XY>;
    auto line = lower_convex_envelope({{0, 20}, {4, 16}, {8, 12}, {12, 8}, {16, 4}});
    CHECK(line == V{{0, 20}, {16, 4}});
    auto convex = lower_convex_envelope({{0, 4}, {1, 1}, {2, 1}});
    CHECK(convex == V{{0, 4}, {1, 1}, {2, 1}});
    auto cut = lower_convex_envelope({{0, 4}, {1, Rational(7, 2)}, {2, 1}});
    CHECK(cut == V{{0, 4}, {2, 1}});
    CHECK_THROWS_AS(lower_convex_envelope({}), DomainError);

    // slopes non-decreasing
    std::mt19937 rng(5);
    for (int k = 0; k < 50; ++k) {
        V pts;
        for (int i = 0; i < 8; ++i) pts.push_back({Rational(static_cast<long>(rng() % 20)), Rational(static_cast<long>(rng() % 20))});
        auto env = lower_convex_envelope(pts);
        for (size_t i = 2; i < env.size(); ++i) {
            Rational s1 = (env[i - 1].y - env[i - 2].y) / (env[i - 1].x - env[i - 2].x);
            Rational s2 = (env[i].y - env[i - 1].y) / (env[i].x - env[i - 1].x);
            CHECK(s1 <= s2);
        }
        for (const auto& p : pts) CHECK(envelope_at(env, p.x) <= p.y);
    }
}

TEST_CASE("envelope evaluation") {
    auto env = lower_convex_envelope({{0, 6}, {2, 2}, {4, 2}});
    CHECK(envelope_at(env, 1) == 4);
    CHECK(envelope_at(env, 3) == 2);
    CHECK(envelope_at(env, 10) == 2);  // unused memory
    auto right = lower_convex_envelope({{1, 3}, {3, 1}});
    CHECK_THROWS_AS(envelope_at(right, 0), DomainError);
}

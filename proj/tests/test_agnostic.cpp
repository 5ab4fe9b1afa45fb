#include "fogran/agnostic.hpp"
#include "fogran/error.hpp"
#include "fogran/scheme.hpp"

#include <doctest.h>

#include <cmath>

using namespace fogran;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }

TopologyDistribution small_histogram() {
    TopologyDistribution d;
    d.N = 8;
    d.K_mbs = CountDist::histogram({{1, r(1, 2)}, {2, r(1, 2)}});
    d.L.push_back(CountDist::histogram({{1, r(1, 2)}, {3, r(1, 2)}}));
    d.L.push_back(CountDist::fixed(1));
    d.L.push_back(CountDist::histogram({{0, r(1, 4)}, {2, r(3, 4)}}));
    return d;
}

TopologyDistribution poisson_config() {
    TopologyDistribution d;
    d.N = 140;
    d.K_mbs = CountDist::poisson(20);
    for (long l : {20, 20, 8, 6, 4, 2}) d.L.push_back(CountDist::poisson(l));
    return d;
}
}  // namespace

TEST_CASE("point-mass distributions reduce to the topology-aware points") {
    for (const auto& topo : {Topology(3, 2, {2, 1, 1}, 6), Topology(4, 3, {5, 3, 2, 1}, 30), Topology(3, 0, {4, 4, 1}, 9)}) {
        auto pm = TopologyDistribution::point_mass(topo);
        const long n = topo.K_mbs();
        for (int G = 1; G <= topo.H(); ++G)
            for (const auto& phi : enumerate_partitions(topo.H(), G))
                for (int t = 0; t <= G; ++t) {
                    auto a = agnostic_shared_point(pm, phi, t, n, EvalMode::exhaustive());
                    CHECK(a.point == asym_shared_point(topo, G, t, phi).point);
                    if (G < 2 || t < 1 || (topo.N() - n) * t < topo.N()) continue;
                    auto b = agnostic_sidelink_point(pm, phi, t, n, EvalMode::exhaustive());
                    auto side2 = approach_point(topo, SchemeDescriptor::asym(topo, phi, t, Approach::Side2));
                    auto side1 = approach_point(topo, SchemeDescriptor::asym(topo, phi, t, Approach::Side1));
                    CHECK(b.point.M == side2.M);
                    CHECK(b.point.R_mbs == side2.R_mbs);
                    CHECK(b.point.R_sbs == std::min(side1.R_sbs, side2.R_sbs));
                }
    }
}

TEST_CASE("exact expectations over a small histogram") {
    auto d = small_histogram();
    auto s = agnostic_shared_point(d, parse_partition("1|2,3", 3), 1, 2, EvalMode::exhaustive());
    CHECK(s.point.M == 3);
    CHECK(s.point.R_mbs == r(103, 32));
    CHECK(s.realizations == 8);
    auto l = agnostic_sidelink_point(d, singleton_partition(3), 2, 2, EvalMode::exhaustive());
    CHECK(l.point.M == 4);
    CHECK(l.point.R_mbs == r(3, 2));
    CHECK(l.point.R_sbs == r(37, 24));
}

TEST_CASE("per-realization conventions") {
    auto phi = parse_partition("1|2,3", 3);
    // no SBS users: only the MBS term remains
    CHECK(agnostic_shared_load(8, 2, {0, 0, 0}, phi, 1, 3) == 3);
    CHECK(agnostic_shared_load(8, 9, {0, 0, 0}, phi, 1, 3) == 8);
    // t = 0, n = 0: K_mbs plus the clipped distinct demand
    CHECK(agnostic_shared_load(8, 2, {3, 2, 2}, phi, 0, 0) == 2 + 3 + 4);
    CHECK(agnostic_shared_load(6, 2, {3, 2, 2}, phi, 0, 0) == 2 + 4 + 3);
    // n = 0: the first sidelink term vanishes
    auto phi3 = singleton_partition(3);
    Rational base = agnostic_sidelink_load(8, 2, {3, 2, 1}, phi3, 2, 0);
    CHECK(base == std::min(Rational(6) * r(1, 2), side2_load({3, 2, 1}, 2)));
    CHECK(agnostic_sidelink_load(8, 0, {3, 2, 1}, phi3, 2, 2) == base + r(3, 2) * 2);
    // unprimed bracket differs only when the t-th occupancy is clipped
    CHECK(agnostic_sidelink_load(3, 0, {4, 0, 1}, phi3, 1, 0, false) !=
          agnostic_sidelink_load(3, 0, {4, 0, 1}, phi3, 1, 0, true));
    CHECK(agnostic_sidelink_load(20, 2, {3, 2, 1}, phi3, 1, 0, false) ==
          agnostic_sidelink_load(20, 2, {3, 2, 1}, phi3, 1, 0, true));
    CHECK(std::abs(agnostic_shared_load_d(8, 2, {3, 2, 2}, phi, 1, 1) -
                   agnostic_shared_load(8, 2, {3, 2, 2}, phi, 1, 1).to_double()) < 1e-12);
}

TEST_CASE("preconditions") {
    auto d = small_histogram();
    auto phi = singleton_partition(3);
    CHECK_THROWS_AS(agnostic_shared_point(d, phi, 1, 8, EvalMode::exhaustive()), DomainError);
    CHECK_THROWS_AS(agnostic_shared_point(d, phi, 4, 0, EvalMode::exhaustive()), DomainError);
    CHECK_THROWS_WITH_AS(agnostic_sidelink_point(d, phi, 1, 2, EvalMode::exhaustive()),
                         doctest::Contains("library not fully stored"), DomainError);
    CHECK_THROWS_AS(agnostic_sidelink_point(d, parse_partition("1,2,3", 3), 1, 0, EvalMode::exhaustive()), DomainError);
    CHECK_THROWS_AS(agnostic_shared_point(poisson_config(), singleton_partition(6), 1, 0, EvalMode::exhaustive(1000)),
                    DomainError);
    CHECK_THROWS_AS(CountDist::histogram({{1, r(1, 2)}}), DomainError);
    CHECK_THROWS_AS(CountDist::poisson(-1), DomainError);
}

TEST_CASE("count distributions") {
    auto p = CountDist::poisson(4);
    auto sup = p.support();
    Rational total = 0, mean = 0;
    for (const auto& [v, m] : sup) total += m, mean += Rational(v) * m;
    CHECK(total == 1);
    CHECK(std::abs(mean.to_double() - 4.0) < 1e-9);
    CHECK(p.variance() == 4);
    auto h = CountDist::histogram({{0, r(1, 4)}, {2, r(3, 4)}});
    CHECK(h.mean() == r(3, 2));
    CHECK(h.variance() == r(3, 4));
}

TEST_CASE("Monte Carlo agrees with exhaustive evaluation") {
    auto d = small_histogram();
    auto phi = parse_partition("1|2,3", 3);
    auto ex = agnostic_shared_point(d, phi, 1, 2, EvalMode::exhaustive());
    auto mc = agnostic_shared_point(d, phi, 1, 2, EvalMode::monte_carlo(20000, 11));
    CHECK(std::abs(mc.point.R_mbs.to_double() - ex.point.R_mbs.to_double()) <= 3 * mc.stderr_mbs);
    auto mc2 = agnostic_shared_point(d, phi, 1, 2, EvalMode::monte_carlo(20000, 11));
    CHECK(mc.point == mc2.point);
    auto sx = agnostic_sidelink_point(d, singleton_partition(3), 2, 2, EvalMode::exhaustive());
    auto sm = agnostic_sidelink_point(d, singleton_partition(3), 2, 2, EvalMode::monte_carlo(20000, 3));
    CHECK(std::abs(sm.point.R_sbs.to_double() - sx.point.R_sbs.to_double()) <= 3 * sm.stderr_sbs);
}

TEST_CASE("shared load is non-increasing in t") {
    auto d = small_histogram();
    for (long n : {0, 1, 2})
        for (const auto& phi : {singleton_partition(3), parse_partition("1|2,3", 3)}) {
            Rational prev = -1;
            for (int t = 0; t <= phi.G(); ++t) {
                Rational v = agnostic_shared_point(d, phi, t, n, EvalMode::exhaustive()).point.R_mbs;
                if (t) CHECK(v <= prev);
                prev = v;
            }
        }
    auto pc = poisson_config();
    auto phi = variance_partition(pc, 3);
    double prev = 1e9;
    for (int t = 0; t <= 3; ++t) {
        double v = agnostic_shared_point(pc, phi, t, 4, EvalMode::monte_carlo(2000, 5)).point.R_mbs.to_double();
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("variance-minimizing partitions") {
    auto pc = poisson_config();
    CHECK(variance_partition(pc, 3).str() == "1|2|3,4,5,6");
    CHECK(variance_objective(pc, parse_partition("1|2|3,4,5,6", 6)) == 60);
    TopologyDistribution eq;
    eq.N = 50;
    eq.K_mbs = CountDist::fixed(0);
    for (int i = 0; i < 4; ++i) eq.L.push_back(CountDist::poisson(5));
    CHECK(variance_partition(eq, 4).str() == "1|2|3|4");
    TopologyDistribution ex;
    ex.N = 50;
    ex.K_mbs = CountDist::fixed(0);
    for (long l : {3, 1, 1, 1}) ex.L.push_back(CountDist::poisson(l));
    CHECK(variance_partition(ex, 2).str() == "1|2,3,4");
}

TEST_CASE("tail estimates") {
    auto over = TopologyDistribution::point_mass(Topology(2, 2, {2, 1}, 4));
    CHECK(sanity_tail_probability(over, 4, 100, 1).probability() == 1.0);
    auto fits = TopologyDistribution::point_mass(Topology(2, 1, {2, 1}, 4));
    CHECK(sanity_tail_probability(fits, 4, 100, 1).hits == 0);
    auto pc = poisson_config();
    CHECK(sanity_tail_probability(pc, 140, 100000, 42).hits == 0);
}

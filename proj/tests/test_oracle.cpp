#include "fogran/error.hpp"
#include "fogran/oracle.hpp"

#include <doctest.h>

using namespace fogran;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
const Topology ex1(3, 2, {2, 1, 1}, 6);
}  // namespace

TEST_CASE("demand space sizes") {
    Topology tiny(2, 1, {2, 1}, 4);
    CHECK(demand_space_size(tiny, false) == 256);
    std::size_t raw = 0, reduced = 0;
    for_each_demand(tiny, false, [&](const Demand&) { ++raw; });
    for_each_demand(tiny, true, [&](const Demand& d) {
        ++reduced;
        int mx = 0;
        for (int f : d.d) mx = std::max(mx, f);
        std::vector<bool> used(mx + 1, false);
        for (int f : d.d) used[f] = true;
        for (int f = 1; f <= mx; ++f) CHECK(used[f]);
    });
    CHECK(raw == 256);
    CHECK(BigInt(static_cast<long>(reduced)) == demand_space_size(tiny, true));
    CHECK(reduced == 75);  // ordered Bell number for K = 4
}

TEST_CASE("worst-case demands match frozen values") {
    Topology h2(2, 1, {2, 1}, 4);
    auto w = worst_case_demand(h2, SchemeDescriptor::sym(h2, 1, Approach::Shared2));
    CHECK(w.loads.R_mbs == 2);
    CHECK(w.plan_mismatches == 0);
    CHECK(worst_case_demand(h2, SchemeDescriptor::sym(h2, 1, Approach::Shared1)).loads.R_mbs == r(5, 2));

    auto s = worst_case_demand(ex1, SchemeDescriptor::sym(ex1, 2, Approach::Side2));
    CHECK(s.loads == Loads{2, r(2, 3)});
    CHECK(s.demands == 46656);
    CHECK_FALSE(s.reduced);

    auto phi = parse_partition("1|2,3", 3);
    CHECK(worst_case_demand(ex1, SchemeDescriptor::asym(ex1, phi, 1, Approach::Shared2)).loads == Loads{3, 0});
    CHECK(worst_case_demand(ex1, SchemeDescriptor::asym(ex1, phi, 1, Approach::Side2)).loads == Loads{2, 2});
}

TEST_CASE("reduced enumeration agrees with the raw one") {
    for (const auto& topo : {Topology(2, 1, {2, 1}, 4), Topology(3, 1, {1, 1, 1}, 3), Topology(2, 0, {3, 1}, 5)})
        for (int t = 0; t <= topo.H(); ++t)
            for (auto a : {Approach::Shared1, Approach::Shared2, Approach::Side1, Approach::Side2}) {
                SchemeDescriptor s;
                try {
                    s = SchemeDescriptor::sym(topo, t, a);
                    validate(topo, s);
                } catch (const DomainError&) {
                    continue;
                }
                auto raw = worst_case_demand(topo, s, {1'000'000, false});
                auto red = worst_case_demand(topo, s, {80, false});
                CHECK(red.reduced);
                CHECK(raw.loads == red.loads);
                CHECK(per_demand_loads(topo, s, red.demand) == per_demand_loads(topo, s, raw.demand));
            }
    Topology big(3, 2, {3, 3, 3}, 40);
    CHECK_THROWS_AS(worst_case_demand(big, SchemeDescriptor::sym(big, 1, Approach::Shared2), {10, false}),
                    DomainError);
}

TEST_CASE("achievable frontier and converse comparison") {
    auto pts = sym_points(ex1, LinkClass::Shared);
    auto f = achievable_frontier(pts, r(4, 3));
    REQUIRE_FALSE(f.empty());
    CHECK(f.min_rm(0) == r(11, 3));
    auto v = compare_with_converse(ex1, pts, LinkClass::Shared, make_grid(0, 4, r(1, 3)));
    CHECK_FALSE(v.equal());
    CHECK(*v.witness == r(1, 3));
    CHECK(v.points == 2);
}

TEST_CASE("exact optimality regime") {
    Topology t(3, 1, {4, 2, 2}, 8);
    auto v = check_exact_optimality(t, 2, LinkClass::Shared, make_grid(r(7, 2), 8, r(1, 4)));
    CHECK(v.points == 19);
    CHECK(v.equal());
    CHECK_FALSE(check_exact_optimality(t, 2, LinkClass::Shared, {r(3)}).equal());
    CHECK(check_exact_optimality(t, 2, LinkClass::Sidelink, make_grid(5, 8, r(1, 4))).equal());
    CHECK_FALSE(check_exact_optimality(t, 2, LinkClass::Sidelink, {r(4)}).equal());
    CHECK_THROWS_WITH_AS(check_exact_optimality(Topology(3, 1, {4, 2, 2}, 4), 2, LinkClass::Shared, {r(4)}),
                         doctest::Contains("optimality regime inapplicable"), DomainError);
    CHECK_THROWS_AS(check_exact_optimality(Topology(3, 1, {2, 2, 2}, 9), 2, LinkClass::Shared, {r(4)}),
                    DomainError);
}

TEST_CASE("gap report holds on the corpus") {
    auto corpus = random_corpus(40, 99);
    CHECK(corpus.size() == 40);
    auto again = random_corpus(40, 99);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(corpus[i].L() == again[i].L());
        CHECK(corpus[i].N() == again[i].N());
        CHECK(corpus[i].H() >= 2);
    }
    std::size_t checks = 0;
    for (const auto& topo : corpus) {
        auto rep = gap_report(topo, make_grid(0, topo.N(), 1));
        CHECK(rep.violations() == 0);
        checks += rep.checks.size();
    }
    CHECK(checks > 0);
    CHECK(gap_report(Topology(2, 5, {1, 1}, 5), make_grid(0, 5, 1)).checks.empty());
}

TEST_CASE("grid parsing") {
    auto g = parse_grid("0:2:1/2");
    REQUIRE(g.size() == 5);
    CHECK(g.back() == 2);
    CHECK(g[1] == r(1, 2));
    CHECK(parse_grid("3:3:1").size() == 1);
    CHECK_THROWS_AS(parse_grid("0:2"), DomainError);
    CHECK_THROWS_AS(parse_grid("0:2:0"), DomainError);
    CHECK_THROWS_AS(parse_grid("2:0:1"), DomainError);
}

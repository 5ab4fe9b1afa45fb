#include "fogran/delivery.hpp"
#include "fogran/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace fogran;

namespace {
using Groups = std::vector<std::vector<UserSlot>>;

std::multiset<std::string> step2_strings(const DeliveryPlan& p) {
    std::multiset<std::string> s;
    for (const auto& m : p.step2) s.insert(m.describe());
    return s;
}

Groups sorted_groups(Groups g) {
    for (auto& x : g) std::sort(x.begin(), x.end());
    return g;
}

const Topology ex(3, 2, {2, 1, 1}, 6);
}  // namespace

TEST_CASE("grouping rule on the worked example") {
    // counts (2,1,1), t=2: round robin gives {u(1,0),u(2,0),u(3,0)},{u(1,1)}; the last user moves.
    auto g = sorted_groups(build_groups({0, 1, 2}, {2, 1, 1}, 2));
    CHECK(g == Groups{{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}});
    auto direct = sorted_groups(build_groups({0, 1, 2}, {2, 1, 1}, 2, false));
    CHECK(direct == Groups{{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}}});
}

TEST_CASE("grouping rule edge cases") {
    // balanced counts: full groups, nothing moves
    auto eq = build_groups({0, 1, 2}, {2, 2, 2}, 2);
    CHECK(eq.size() == 2);
    for (const auto& grp : eq) CHECK(grp.size() == 3);
    // (3,1,0): hand trace gives group sizes 2,1,1
    auto g = sorted_groups(build_groups({0, 1, 2}, {3, 1, 0}, 2));
    CHECK(g == Groups{{{0, 0}, {1, 0}}, {{0, 1}}, {{0, 2}}});
    // (3,1,1), t=2: a3=1 <= 3-1, one move from group 1 to group a_t+1 = 2
    auto h = sorted_groups(build_groups({0, 1, 2}, {3, 1, 1}, 2));
    CHECK(h == Groups{{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}, {{0, 2}}});
    // (4,3,3), t=2: a3=3 > 4-3, so only a1-a_t = 1 move
    auto k = build_groups({0, 1, 2}, {4, 3, 3}, 2);
    std::vector<size_t> sizes;
    for (const auto& grp : k) sizes.push_back(grp.size());
    CHECK(sizes == std::vector<size_t>{2, 3, 3, 2});
    CHECK_THROWS_AS(build_groups({0, 1}, {1, 1, 1}, 2), DomainError);
}

TEST_CASE("worked example plans") {
    Demand d{{5, 6, 1, 2, 3, 4}};
    auto side = plan(ex, SchemeDescriptor::sym(ex, 2, Approach::Side2), d);
    CHECK(side.step1.size() == 2);
    CHECK(side.step1[0].describe() == "MBS: F_5 [6 units]");
    CHECK(side.step1[1].describe() == "MBS: F_6 [6 units]");
    CHECK(step2_strings(side) == std::multiset<std::string>{"SBS 3: F_{2,{2,3}} + F_{3,{1,3}} [2 units]",
                                                            "SBS 2: F_{1,{2,3}} + F_{4,{1,2}} [2 units]"});
    CHECK(side.R_mbs() == 2);
    CHECK(side.R_sbs() == Rational(2, 3));
    CHECK(side.per_sbs_loads() == std::vector<Rational>{0, Rational(1, 3), Rational(1, 3)});

    auto shared = plan(ex, SchemeDescriptor::asym(ex, parse_partition("1|2,3", 3), 1, Approach::Shared2), d);
    CHECK(step2_strings(shared) ==
          std::multiset<std::string>{"MBS: F_{1,{2}} + F_{3,{1}} [1 units]", "MBS: F_{2,{2}} + F_{4,{1}} [1 units]"});
    CHECK(shared.R_mbs() == 3);
    CHECK(shared.R_sbs() == 0);

    auto direct = plan(ex, SchemeDescriptor::sym(ex, 2, Approach::Side2Direct), d);
    CHECK(direct.R_sbs() == Rational(5, 6));

    Demand same{{1, 2, 1, 2, 2, 1}};
    auto c1 = plan(ex, SchemeDescriptor::sym(ex, 2, Approach::Side2), same);
    CHECK(c1.step2.empty());
    CHECK(c1.R_mbs() == 2);
}

TEST_CASE("message sizes follow their kind") {
    Topology t(4, 1, {2, 2, 1, 1}, 6);
    Demand d{{1, 2, 3, 4, 5, 6, 2}};
    for (int tt = 1; tt <= 3; ++tt) {
        for (auto a : {Approach::Shared1, Approach::Shared2, Approach::Side1, Approach::Side2, Approach::Side2Direct}) {
            auto s = SchemeDescriptor::sym(t, tt, a);
            auto p = plan(t, s, d);
            for (const auto& m : p.step2) {
                if (m.kind == MsgKind::XorSubfiles) CHECK(p.size(m) == Rational(1) / binomq(4, tt));
                if (m.kind == MsgKind::XorSubpieces) CHECK(p.size(m) == Rational(1) / (Rational(tt) * binomq(4, tt)));
            }
            auto l = per_demand_loads(t, s, d);
            CHECK(p.R_mbs() == l.R_mbs);
            CHECK(p.R_sbs() == l.R_sbs);
        }
    }
}

TEST_CASE("plan sizes equal the per-demand formula on a full demand sweep") {
    Topology t(3, 1, {2, 1, 1}, 4);
    std::vector<SchemeDescriptor> schemes;
    for (int tt = 0; tt <= 3; ++tt)
        for (auto a : {Approach::Shared1, Approach::Shared2, Approach::Side1, Approach::Side2, Approach::Side2Direct}) {
            if (class_of(a) == LinkClass::Sidelink && tt == 0) continue;
            schemes.push_back(SchemeDescriptor::sym(t, tt, a));
            schemes.push_back(SchemeDescriptor::asym(t, parse_partition("1|2,3", 3), std::min(tt, 2), a));
        }
    Demand d{{1, 1, 1, 1, 1}};
    long count = 0;
    while (true) {
        for (const auto& s : schemes) {
            auto p = plan(t, s, d);
            auto l = per_demand_loads(t, s, d);
            CHECK(p.R_mbs() == l.R_mbs);
            CHECK(p.R_sbs() == l.R_sbs);
        }
        ++count;
        int i = 4;
        while (i >= 0 && d.d[i] == 4) d.d[i--] = 1;
        if (i < 0) break;
        ++d.d[i];
    }
    CHECK(count == 1024);
}

TEST_CASE("set helpers") {
    CHECK(set_str(0b101) == "{1,3}");
    CHECK(popcount(0b1011) == 3);
    CHECK(subset_rank(0b011, 3) == 0);
    CHECK(subset_rank(0b101, 3) == 1);
    CHECK(subset_rank(0b110, 3) == 2);
    CHECK(sbs_set_str(0b10, parse_partition("1|2,3", 3)) == "{2,3}");
}

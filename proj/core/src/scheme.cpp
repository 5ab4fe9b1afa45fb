#include "fogran/scheme.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fogran {

LinkClass class_of(Approach a) {
    return (a == Approach::Shared1 || a == Approach::Shared2) ? LinkClass::Shared : LinkClass::Sidelink;
}

std::string to_string(Family f) { return f == Family::Sym ? "sym" : "asym"; }
std::string to_string(LinkClass c) { return c == LinkClass::Shared ? "shared" : "sidelink"; }
std::string to_string(Approach a) {
    switch (a) {
        case Approach::Shared1: return "shared1";
        case Approach::Shared2: return "shared2";
        case Approach::Side1: return "side1";
        case Approach::Side2: return "side2";
        case Approach::Side2Direct: return "side2-direct";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "sym") return Family::Sym;
    if (s == "asym") return Family::Asym;
    throw DomainError("unknown family '" + s + "'");
}

LinkClass parse_class(const std::string& s) {
    if (s == "shared") return LinkClass::Shared;
    if (s == "sidelink") return LinkClass::Sidelink;
    throw DomainError("unknown class '" + s + "'");
}

Approach parse_approach(const std::string& s) {
    for (auto a : {Approach::Shared1, Approach::Shared2, Approach::Side1, Approach::Side2, Approach::Side2Direct})
        if (to_string(a) == s) return a;
    throw DomainError("unknown approach '" + s + "'");
}

Rational SchemeDescriptor::M(const Topology& topo) const {
    return Rational(t) * Rational(topo.N() - topo.K_mbs()) / Rational(G());
}

SchemeDescriptor SchemeDescriptor::sym(const Topology& topo, int t, Approach a) {
    SchemeDescriptor s{Family::Sym, t, singleton_partition(topo.H()), a};
    validate(topo, s);
    return s;
}

SchemeDescriptor SchemeDescriptor::asym(const Topology& topo, const Partition& phi, int t, Approach a) {
    SchemeDescriptor s{Family::Asym, t, normalize(phi, topo), a};
    validate(topo, s);
    return s;
}

void validate(const Topology& topo, const SchemeDescriptor& s) {
    validate_partition(s.phi, topo.H());
    if (s.family == Family::Sym) {
        if (topo.N() <= topo.K_mbs()) throw DomainError("N <= K_mbs: the MBS unicasts the whole library; no caching scheme applies");
        if (s.G() != topo.H()) throw DomainError("symmetric scheme uses one group per SBS");
    } else if (topo.N() < topo.K_mbs()) {
        throw DomainError("asymmetric scheme requires N >= K_mbs");
    }
    if (s.t < 0 || s.t > s.G()) throw DomainError("t must lie in [0..G]");
    if (s.cls() == LinkClass::Sidelink && s.t < 1) throw DomainError("sidelink scheme requires t >= 1");
    if (s.approach == Approach::Side1 && s.G() < 2) throw DomainError("sidelink approach 1 requires G >= 2");
}

Rational side2_subset_term(const std::vector<long>& a, int t) {
    // a_1 + [a_{t+1} - a_1 + a_t]^+ / t
    Rational extra = pos(Rational(a[t] - a[0] + a[t - 1]));
    return Rational(a[0]) + extra / Rational(t);
}

Rational side2_direct_subset_term(const std::vector<long>& a, int t) {
    return Rational(a[0]) + Rational(a[t]) / Rational(t);
}

namespace {

// Visits all k-subsets of [n] in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& fn) {
    if (k > n || k < 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Rational side2_load(const std::vector<long>& counts, int t, bool direct) {
    const int G = static_cast<int>(counts.size());
    if (t < 1) throw DomainError("sidelink scheme requires t >= 1");
    BigInt num_acc = 0;
    Rational total = 0;
    std::vector<long> a(t + 1);
    for_each_subset(G, t + 1, [&](const std::vector<int>& S) {
        for (int i = 0; i <= t; ++i) a[i] = counts[S[i]];
        std::sort(a.begin(), a.end(), std::greater<>());
        // integer part a_1*t plus bracket, accumulated over t to stay in integers
        long bracket = direct ? a[t] : std::max(0L, a[t] - a[0] + a[t - 1]);
        num_acc += BigInt(a[0]) * t + bracket;
    });
    total = Rational(num_acc) / Rational(t);
    return total / binomq(G, t);
}

Rational shared2_load(const std::vector<long>& counts, int t) {
    const long G = static_cast<long>(counts.size());
    std::vector<long> a = counts;
    std::sort(a.begin(), a.end(), std::greater<>());
    BigInt acc = 0;
    for (long r = 1; r <= G - t; ++r) acc += BigInt(a[r - 1]) * binom(G - r, t);
    return Rational(acc) / binomq(G, t);
}

MemoryLoadPoint approach_point(const Topology& topo, const SchemeDescriptor& s) {
    validate(topo, s);
    const long room = topo.N() - topo.K_mbs();
    const long G = s.G(), t = s.t;
    const Rational K0(topo.K_mbs());
    const Rational worst_files(std::min(room, topo.K_sbs()));
    auto q = clipped_sorted(group_occupancies(s.phi, topo), room);
    MemoryLoadPoint p{s.M(topo), K0, 0};
    switch (s.approach) {
        case Approach::Shared1: p.R_mbs += worst_files * Rational(G - t, G); break;
        case Approach::Shared2: p.R_mbs += shared2_load(q, t); break;
        case Approach::Side1: p.R_sbs = worst_files * Rational(G - t, G - 1); break;
        case Approach::Side2: p.R_sbs = side2_load(q, t); break;
        case Approach::Side2Direct: p.R_sbs = side2_load(q, t, true); break;
    }
    if (room == 0) p.R_mbs = Rational(std::min(topo.N(), topo.K_mbs()));
    return p;
}

MemoryLoadPoint sym_shared_point(const Topology& topo, int t) {
    auto a = approach_point(topo, SchemeDescriptor::sym(topo, t, Approach::Shared1));
    auto b = approach_point(topo, SchemeDescriptor::sym(topo, t, Approach::Shared2));
    return {a.M, std::min(a.R_mbs, b.R_mbs), 0};
}

MemoryLoadPoint sym_sidelink_point(const Topology& topo, int t) {
    if (t < 1) throw DomainError("sidelink scheme requires t >= 1");
    auto b = approach_point(topo, SchemeDescriptor::sym(topo, t, Approach::Side2));
    if (topo.H() < 2) return b;
    auto a = approach_point(topo, SchemeDescriptor::sym(topo, t, Approach::Side1));
    return {a.M, a.R_mbs, std::min(a.R_sbs, b.R_sbs)};
}

namespace {

bool canonical_less(const Partition& a, const Partition& b) {
    return a.canonical().groups < b.canonical().groups;
}

template <class Eval>
PartitionChoice best_partition(const Topology& topo, int G, const std::optional<Partition>& given, Eval eval) {
    if (G < 1 || G > topo.H()) throw DomainError("need 1 <= G <= H");
    if (given) {
        if (given->G() != G) throw DomainError("partition has the wrong number of groups");
        Partition p = normalize(*given, topo);
        return {p, eval(p)};
    }
    if (topo.H() > partition_cap()) throw DomainError("partition space too large");
    std::optional<PartitionChoice> best;
    std::set<std::vector<long>> seen;
    for_each_rgs(topo.H(), G, [&](const std::vector<int>& rgs) {
        Partition p = from_rgs(rgs, G);
        auto q = group_occupancies(p, topo);
        std::sort(q.begin(), q.end(), std::greater<>());
        bool dup = !seen.insert(q).second;
        if (dup && best && !canonical_less(p, best->phi)) return;  // same loads, worse tie-break
        p = normalize(p, topo);
        MemoryLoadPoint v = eval(p);
        if (!best) {
            best = PartitionChoice{p, v};
            return;
        }
        Rational cur = v.R_mbs + v.R_sbs, old = best->point.R_mbs + best->point.R_sbs;
        if (cur < old || (cur == old && canonical_less(p, best->phi))) best = PartitionChoice{p, v};
    });
    return *best;
}

}  // namespace

PartitionChoice asym_shared_point(const Topology& topo, int G, int t, const std::optional<Partition>& given) {
    return best_partition(topo, G, given, [&](const Partition& p) {
        return approach_point(topo, SchemeDescriptor{Family::Asym, t, p, Approach::Shared2});
    });
}

PartitionChoice asym_sidelink_point(const Topology& topo, int G, int t, const std::optional<Partition>& given) {
    if (t < 1) throw DomainError("sidelink scheme requires t >= 1");
    return best_partition(topo, G, given, [&](const Partition& p) {
        return approach_point(topo, SchemeDescriptor{Family::Asym, t, p, Approach::Side2});
    });
}

MemoryLoadPoint asym_app1_point(const Topology& topo) {
    if (topo.N() < topo.K_mbs()) throw DomainError("asymmetric scheme requires N >= K_mbs");
    const long room = topo.N() - topo.K_mbs();
    return {Rational(room, topo.H()), Rational(topo.K_mbs()), Rational(std::min(room, topo.K_sbs()))};
}

std::vector<MemoryLoadPoint> sym_points(const Topology& topo, LinkClass c) {
    std::vector<MemoryLoadPoint> pts;
    if (c == LinkClass::Shared)
        for (int t = 0; t <= topo.H(); ++t) pts.push_back(sym_shared_point(topo, t));
    else
        for (int t = 1; t <= topo.H(); ++t) pts.push_back(sym_sidelink_point(topo, t));
    return pts;
}

std::vector<MemoryLoadPoint> asym_points(const Topology& topo, LinkClass c) {
    std::vector<MemoryLoadPoint> pts;
    for (int G = 1; G <= topo.H(); ++G) {
        if (c == LinkClass::Shared)
            for (int t = 0; t <= G; ++t) pts.push_back(asym_shared_point(topo, G, t).point);
        else
            for (int t = 1; t <= G; ++t) pts.push_back(asym_sidelink_point(topo, G, t).point);
    }
    if (c == LinkClass::Sidelink) pts.push_back(asym_app1_point(topo));
    return pts;
}

std::vector<XY> class_envelope(const std::vector<MemoryLoadPoint>& pts, LinkClass c) {
    std::vector<XY> xy;
    for (const auto& p : pts) xy.push_back({p.M, c == LinkClass::Shared ? p.R_mbs : p.R_sbs});
    return lower_convex_envelope(std::move(xy));
}

BigInt subpacketization_level(int n, int t) {
    if (t < 0 || t > n) throw DomainError("t must lie in [0..n]");
    return binom(n, t);
}

std::vector<long> DemandAnalysis::counts() const {
    std::vector<long> c;
    for (const auto& u : U) c.push_back(static_cast<long>(u.size()));
    return c;
}

DemandAnalysis analyze_demand(const Topology& topo, const Partition& phi, const Demand& d) {
    d.validate(topo);
    DemandAnalysis a;
    const long K0 = topo.K_mbs();
    std::set<int> mbs(d.d.begin(), d.d.begin() + K0);
    std::set<int> sbs;
    for (long k = K0; k < topo.K(); ++k)
        if (!mbs.count(d.d[k])) sbs.insert(d.d[k]);
    a.D_mbs.assign(mbs.begin(), mbs.end());
    a.D_sbs.assign(sbs.begin(), sbs.end());
    a.case1 = static_cast<long>(mbs.size() + sbs.size()) <= K0;
    a.step1 = a.D_mbs;
    if (a.case1) {
        a.step1.insert(a.step1.end(), a.D_sbs.begin(), a.D_sbs.end());
    } else {
        size_t extra = static_cast<size_t>(K0) - a.D_mbs.size();
        a.step1.insert(a.step1.end(), a.D_sbs.begin(), a.D_sbs.begin() + extra);
        a.D_prime.assign(a.D_sbs.begin() + extra, a.D_sbs.end());
    }
    std::set<int> prime(a.D_prime.begin(), a.D_prime.end());
    a.U.assign(phi.G(), {});
    std::vector<int> group_of(topo.H());
    for (int g = 0; g < phi.G(); ++g)
        for (int h : phi.groups[g]) group_of[h] = g;
    std::vector<std::set<int>> taken(phi.G());
    for (long k = topo.K() - 1; k >= K0; --k) {
        int f = d.d[k];
        if (!prime.count(f)) continue;
        int g = group_of[topo.sbs_of_user(k)];
        if (taken[g].insert(f).second) a.U[g].push_back(k);
    }
    return a;
}

Loads per_demand_loads(const Topology& topo, const SchemeDescriptor& s, const Demand& d) {
    validate(topo, s);
    DemandAnalysis a = analyze_demand(topo, s.phi, d);
    if (a.case1) return {Rational(static_cast<long>(a.step1.size())), 0};
    const long G = s.G(), t = s.t;
    const long nprime = static_cast<long>(a.D_prime.size());
    Loads l{Rational(topo.K_mbs()), 0};
    switch (s.approach) {
        case Approach::Shared1: l.R_mbs += Rational(nprime) * Rational(G - t, G); break;
        case Approach::Shared2: l.R_mbs += shared2_load(a.counts(), t); break;
        case Approach::Side1:
            l.R_sbs = Rational(nprime) * Rational(G) * binomq(G - 2, t - 1) / (Rational(t) * binomq(G, t));
            break;
        case Approach::Side2: l.R_sbs = side2_load(a.counts(), t); break;
        case Approach::Side2Direct: l.R_sbs = side2_load(a.counts(), t, true); break;
    }
    return l;
}

}  // namespace fogran

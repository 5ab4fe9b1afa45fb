#include "fogran/delivery.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace fogran {

int popcount(GroupSet W) { return std::popcount(W); }

std::string set_str(GroupSet W) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int g = 0; g < 32; ++g)
        if (W >> g & 1u) {
            os << (first ? "" : ",") << g + 1;
            first = false;
        }
    os << '}';
    return os.str();
}

std::string sbs_set_str(GroupSet W, const Partition& phi) {
    std::vector<int> sbs;
    for (int g = 0; g < phi.G(); ++g)
        if (W >> g & 1u) sbs.insert(sbs.end(), phi.groups[g].begin(), phi.groups[g].end());
    std::sort(sbs.begin(), sbs.end());
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < sbs.size(); ++i) os << (i ? "," : "") << sbs[i] + 1;
    os << '}';
    return os.str();
}

long subset_rank(GroupSet W, int G) {
    // lexicographic rank of the sorted index tuple among |W|-subsets of [G]
    int k = popcount(W);
    long rank = 0;
    int prev = -1, i = 0;
    for (int g = 0; g < G; ++g) {
        if (!(W >> g & 1u)) continue;
        for (int v = prev + 1; v < g; ++v) rank += binom_small(G - 1 - v, k - 1 - i);
        prev = g;
        ++i;
    }
    return rank;
}

std::string Message::describe() const {
    std::ostringstream os;
    os << (source == 0 ? std::string("MBS") : "SBS " + std::to_string(source)) << ": ";
    switch (kind) {
        case MsgKind::WholeFile: os << "F_" << file; break;
        case MsgKind::RLC:
            if (rlc.kind == RlcSet::WholeFile)
                os << "RLC(F_" << rlc.file << ")";
            else
                os << "RLC(F_{" << rlc.file << ",W," << rlc.g + 1 << "})";
            break;
        case MsgKind::XorSubfiles:
            for (size_t i = 0; i < subfiles.size(); ++i)
                os << (i ? " + " : "") << "F_{" << subfiles[i].file << "," << set_str(subfiles[i].W) << "}";
            break;
        case MsgKind::XorSubpieces:
            for (size_t i = 0; i < pieces.size(); ++i)
                os << (i ? " + " : "") << "F_{" << pieces[i].file << "," << set_str(pieces[i].W) << ","
                   << pieces[i].g + 1 << "}";
            break;
    }
    os << " [" << units << " units]";
    return os.str();
}

Rational DeliveryPlan::R_mbs() const {
    long u = 0;
    for (const auto* list : {&step1, &step2})
        for (const auto& m : *list)
            if (m.source == 0) u += m.units;
    return Rational(u, units_per_file);
}

std::vector<Rational> DeliveryPlan::per_sbs_loads() const {
    std::vector<long> u(H, 0);
    for (const auto* list : {&step1, &step2})
        for (const auto& m : *list)
            if (m.source > 0) u[m.source - 1] += m.units;
    std::vector<Rational> r;
    for (long x : u) r.push_back(Rational(x, units_per_file));
    return r;
}

Rational DeliveryPlan::R_sbs() const {
    long u = 0;
    for (const auto* list : {&step1, &step2})
        for (const auto& m : *list)
            if (m.source > 0) u += m.units;
    return Rational(u, units_per_file);
}

std::vector<std::vector<UserSlot>> build_groups(const std::vector<int>& S, const std::vector<long>& counts, int t,
                                               bool apply_moves) {
    if (t < 1) throw DomainError("grouping requires t >= 1");
    if (static_cast<int>(S.size()) != t + 1) throw DomainError("|S| must equal t+1");
    std::vector<int> v = S;
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
        return counts[a] != counts[b] ? counts[a] > counts[b] : a < b;
    });
    const long a1 = counts[v[0]], at = counts[v[t - 1]], at1 = counts[v[t]];
    std::vector<std::vector<UserSlot>> groups(a1);
    for (long j = 0; j < a1; ++j)
        for (int g : v)
            if (counts[g] > j) groups[j].push_back({g, static_cast<int>(j)});
    if (apply_moves) {
        const long moves = (at1 <= a1 - at) ? at1 : a1 - at;
        const int last = v[t];
        for (long j = 0; j < moves; ++j) {
            auto& from = groups[j];
            auto it = std::find(from.begin(), from.end(), UserSlot{last, static_cast<int>(j)});
            if (it == from.end()) throw VerificationError("grouping rule: moved user missing");
            from.erase(it);
            groups[at + j].push_back({last, static_cast<int>(j)});
        }
    }
    return groups;
}

DeliveryPlan plan(const Topology& topo, const SchemeDescriptor& s, const Demand& d) {
    validate(topo, s);
    const int G = s.G(), t = s.t;
    if (G > 30) throw DomainError("plans support at most 30 groups");
    DemandAnalysis a = analyze_demand(topo, s.phi, d);
    DeliveryPlan p;
    p.H = topo.H();
    const long pieces_per_subfile = std::max(t, 1);
    const long nsub = binom_small(G, t);
    p.units_per_file = pieces_per_subfile * nsub;
    for (int f : a.step1) {
        Message m;
        m.source = 0;
        m.kind = MsgKind::WholeFile;
        m.file = f;
        m.units = p.units_per_file;
        p.step1.push_back(m);
    }
    if (a.case1) return p;

    // transmitter of group g: lowest-index SBS of the group (1-based id)
    auto tx = [&](int g) { return s.phi.groups[g].front() + 1; };
    auto demand_of = [&](int g, int round) { return d.d[a.U[g][round]]; };
    const auto counts = a.counts();

    std::vector<GroupSet> subsets;  // (t+1)-subsets of [G] in lexicographic order
    if (t + 1 <= G) {
        std::vector<int> idx(t + 1);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            GroupSet S = 0;
            for (int i : idx) S |= 1u << i;
            subsets.push_back(S);
            int i = t;
            while (i >= 0 && idx[i] == G - (t + 1) + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j <= t; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    auto members = [](GroupSet S) {
        std::vector<int> m;
        for (int g = 0; g < 32; ++g)
            if (S >> g & 1u) m.push_back(g);
        return m;
    };

    switch (s.approach) {
        case Approach::Shared1: {
            const long units = binom_small(G - 1, t) * pieces_per_subfile;
            if (units == 0) break;
            for (int f : a.D_prime) {
                Message m;
                m.source = 0;
                m.kind = MsgKind::RLC;
                m.rlc = {RlcSet::WholeFile, f, -1};
                m.units = units;
                p.step2.push_back(m);
            }
            break;
        }
        case Approach::Shared2: {
            const long rounds = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
            for (long j = 0; j < rounds; ++j) {
                for (GroupSet S : subsets) {
                    Message m;
                    m.source = 0;
                    m.kind = MsgKind::XorSubfiles;
                    for (int g : members(S))
                        if (counts[g] > j) m.subfiles.push_back({demand_of(g, static_cast<int>(j)), S & ~(1u << g)});
                    if (m.subfiles.empty()) continue;
                    m.units = pieces_per_subfile;
                    p.step2.push_back(std::move(m));
                }
            }
            break;
        }
        case Approach::Side1: {
            const long units = binom_small(G - 2, t - 1);
            if (units == 0) break;
            for (int f : a.D_prime) {
                for (int g = 0; g < G; ++g) {
                    Message m;
                    m.source = tx(g);
                    m.kind = MsgKind::RLC;
                    m.rlc = {RlcSet::PiecesOfGroup, f, g};
                    m.units = units;
                    p.step2.push_back(m);
                }
            }
            break;
        }
        case Approach::Side2:
        case Approach::Side2Direct: {
            const bool moves = s.approach == Approach::Side2;
            for (GroupSet S : subsets) {
                auto groups = build_groups(members(S), counts, t, moves);
                for (const auto& grp : groups) {
                    if (grp.empty()) continue;
                    if (static_cast<int>(grp.size()) == t + 1) {
                        // Case A: each group in S sends one XOR of sub-pieces
                        for (int h : members(S)) {
                            Message m;
                            m.source = tx(h);
                            m.kind = MsgKind::XorSubpieces;
                            for (auto [g, r] : grp)
                                if (g != h) m.pieces.push_back({demand_of(g, r), S & ~(1u << g), h});
                            m.units = 1;
                            p.step2.push_back(std::move(m));
                        }
                    } else {
                        // Case B: the smallest group in S without a user here sends whole subfiles
                        GroupSet present = 0;
                        for (auto [g, r] : grp) present |= 1u << g;
                        GroupSet idle = S & ~present;
                        int h = std::countr_zero(idle);
                        Message m;
                        m.source = tx(h);
                        m.kind = MsgKind::XorSubfiles;
                        for (auto [g, r] : grp) m.subfiles.push_back({demand_of(g, r), S & ~(1u << g)});
                        m.units = pieces_per_subfile;
                        p.step2.push_back(std::move(m));
                    }
                }
            }
            break;
        }
    }
    return p;
}

}  // namespace fogran

#include "fogran/oracle.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <random>

namespace fogran {

BigInt demand_space_size(const Topology& topo, bool reduced) {
    const long K = topo.K(), N = topo.N();
    if (!reduced) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(K));
        return r;
    }
    BigInt total = 0, fact = 1;
    for (long k = 1; k <= std::min(N, K); ++k) {
        fact *= k;
        total += fact * stirling2(static_cast<int>(K), static_cast<int>(k));
    }
    return total;
}

void for_each_demand(const Topology& topo, bool reduced, const std::function<void(const Demand&)>& fn) {
    const long K = topo.K();
    const int N = static_cast<int>(topo.N());
    Demand d;
    d.d.assign(K, 1);
    if (!reduced) {
        while (true) {
            fn(d);
            long i = K - 1;
            while (i >= 0 && d.d[i] == N) d.d[i--] = 1;
            if (i < 0) return;
            ++d.d[i];
        }
    }
    // Labels used must be exactly {1..max}; prune when the gaps cannot be filled.
    const int m = static_cast<int>(std::min<long>(N, K));
    std::vector<int> uses(m + 2, 0);
    std::function<void(long, int, int)> rec = [&](long pos, int maxv, int missing) {
        if (pos == K) {
            if (missing == 0) fn(d);
            return;
        }
        for (int v = 1; v <= m; ++v) {
            int newmax = std::max(maxv, v);
            int newmissing = missing + (newmax - maxv) - (uses[v] == 0 ? 1 : 0);
            if (newmissing > K - pos - 1) continue;
            d.d[pos] = v;
            ++uses[v];
            rec(pos + 1, newmax, newmissing);
            --uses[v];
        }
    };
    rec(0, 0, 0);
}

WorstCase worst_case_demand(const Topology& topo, const SchemeDescriptor& s, const WorstCaseOptions& opt) {
    validate(topo, s);
    WorstCase w;
    const BigInt cap(static_cast<unsigned long>(opt.cap));
    if (demand_space_size(topo, false) > cap) {
        if (demand_space_size(topo, true) > cap)
            throw DomainError("demand space exceeds cap even after symmetry reduction");
        w.reduced = true;
    }
    const bool shared = s.cls() == LinkClass::Shared;
    bool first = true;
    Rational best_key;
    for_each_demand(topo, w.reduced, [&](const Demand& d) {
        Loads l = per_demand_loads(topo, s, d);
        ++w.demands;
        if (opt.check_plans) {
            DeliveryPlan p = plan(topo, s, d);
            if (p.R_mbs() != l.R_mbs || p.R_sbs() != l.R_sbs) {
                if (!w.mismatch_witness) w.mismatch_witness = d;
                ++w.plan_mismatches;
            }
        }
        const Rational& key = shared ? l.R_mbs : l.R_sbs;
        if (first) {
            w.loads = l, w.demand = d, best_key = key, first = false;
            return;
        }
        w.loads.R_mbs = std::max(w.loads.R_mbs, l.R_mbs);
        w.loads.R_sbs = std::max(w.loads.R_sbs, l.R_sbs);
        if (key > best_key) best_key = key, w.demand = d;
    });
    return w;
}

Frontier achievable_frontier(const std::vector<MemoryLoadPoint>& pts, const Rational& M) {
    std::vector<Corner> cand;
    for (const auto& p : pts)
        if (p.M <= M) cand.push_back({p.R_sbs, p.R_mbs});
    // Two-point memory sharing that uses exactly M.
    for (const auto& lo : pts) {
        if (!(lo.M < M)) continue;
        for (const auto& hi : pts) {
            if (!(hi.M > M)) continue;
            Rational lam = (hi.M - M) / (hi.M - lo.M);  // weight on lo
            Rational mu = Rational(1) - lam;
            cand.push_back({lam * lo.R_sbs + mu * hi.R_sbs, lam * lo.R_mbs + mu * hi.R_mbs});
        }
    }
    if (cand.empty()) throw DomainError("no achievable point at this cache size");
    return Frontier::of_points(std::move(cand));
}

std::size_t GapReport::violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const GapCheck& c) { return !c.ok; }));
}

GapReport gap_report(const Topology& topo, const std::vector<Rational>& M_grid) {
    GapReport rep;
    const long N = topo.N(), K0 = topo.K_mbs(), room = N - K0, H = topo.H();
    if (N <= K0) return rep;  // exact optimality, nothing to bound
    const bool rs_regime = N <= K0 + topo.L(0);
    const bool joint_regime = N > K0 + topo.L(0);
    const bool uniform = std::all_of(topo.L().begin(), topo.L().end(), [&](long l) { return l == topo.L(0); });

    std::vector<MemoryLoadPoint> sym = sym_points(topo, LinkClass::Shared);
    for (const auto& p : sym_points(topo, LinkClass::Sidelink)) sym.push_back(p);
    std::vector<MemoryLoadPoint> asym_side;
    std::vector<int> leader_G;
    if (N >= K0 + topo.L(0) && H <= partition_cap()) {
        for (int G = 2; G <= H; ++G)
            if (has_singleton_leader(topo, G)) leader_G.push_back(G);
        if (!leader_G.empty()) asym_side = asym_points(topo, LinkClass::Sidelink);
    }

    for (const auto& M : M_grid) {
        if (M.sign() < 0 || M > Rational(N)) throw DomainError("grid point outside [0, N]");
        Frontier conv = converse_frontier(topo, M);
        auto joint_checks = [&](const char* name, const Rational& bound, bool scale_rm) {
            Frontier ach = achievable_frontier(sym, M);
            for (const auto& c : conv.corners()) {
                GapCheck g{name, M, c, ach.min_scale(c, true, scale_rm), bound, false};
                g.ok = g.ratio && *g.ratio <= bound;
                rep.checks.push_back(std::move(g));
            }
        };
        if (rs_regime && M < Rational(room)) joint_checks("rs_H", Rational(H, H - 1), false);
        if (joint_regime) {
            Rational g = M.is_zero() ? Rational(H) : std::min(Rational(H), Rational(room) / M);
            joint_checks("joint_2g", Rational(2) * g, true);
            if (uniform) joint_checks("uniform_22", Rational(22), true);
        }
        for (int G : leader_G) {
            if (M < Rational(G - 1, G) * Rational(room)) continue;
            Rational conv_rs = *conv.min_rs(Rational(K0));
            auto ach_rs = achievable_frontier(asym_side, M).min_rs(Rational(K0));
            GapCheck g{"grouped_G", M, {conv_rs, Rational(K0)}, std::nullopt, Rational(G, G - 1), false};
            if (ach_rs) {
                if (conv_rs.sign() > 0)
                    g.ratio = *ach_rs / conv_rs;
                else if (ach_rs->is_zero())
                    g.ratio = Rational(1);
            }
            g.ok = g.ratio && *g.ratio <= g.bound;
            rep.checks.push_back(std::move(g));
        }
    }
    return rep;
}

OptimalityVerdict compare_with_converse(const Topology& topo, const std::vector<MemoryLoadPoint>& pts, LinkClass c,
                                        const std::vector<Rational>& M_grid) {
    OptimalityVerdict v;
    auto env = class_envelope(pts, c);
    for (const auto& M : M_grid) {
        Frontier conv = converse_frontier(topo, M);
        auto target = c == LinkClass::Shared ? conv.min_rm(Rational(0)) : conv.min_rs(Rational(topo.K_mbs()));
        Rational ach = envelope_at(env, M);
        ++v.points;
        if (!target || ach != *target) {
            v.witness = M;
            return v;
        }
    }
    return v;
}

OptimalityVerdict check_exact_optimality(const Topology& topo, int G, LinkClass c,
                                         const std::vector<Rational>& M_grid) {
    if (topo.N() < topo.K_mbs() + topo.L(0) || !has_singleton_leader(topo, G))
        throw DomainError("optimality regime inapplicable");
    return compare_with_converse(topo, asym_points(topo, c), c, M_grid);
}

std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    if (step.sign() <= 0) throw DomainError("grid step must be positive");
    if (hi < lo) throw DomainError("grid upper end below lower end");
    std::vector<Rational> g;
    for (Rational m = lo; m <= hi; m += step) g.push_back(m);
    return g;
}

std::vector<Rational> parse_grid(const std::string& spec) {
    auto a = spec.find(':');
    auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw DomainError("grid must look like lo:hi:step");
    return make_grid(Rational::parse(spec.substr(0, a)), Rational::parse(spec.substr(a + 1, b - a - 1)),
                     Rational::parse(spec.substr(b + 1)));
}

std::vector<Topology> random_corpus(std::size_t count, std::uint64_t seed, int maxH, long maxN) {
    std::mt19937_64 rng(seed);
    auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    std::vector<Topology> out;
    for (std::size_t i = 0; out.size() < count; ++i) {
        int H = static_cast<int>(uni(2, maxH));
        long K0 = uni(0, 6);
        std::vector<long> L(H);
        if (i % 4 == 0) {
            std::fill(L.begin(), L.end(), uni(1, 6));
        } else {
            for (auto& l : L) l = uni(1, 8);
        }
        std::sort(L.begin(), L.end(), std::greater<>());
        long N;
        switch (i % 4) {
            case 1: N = uni(K0 + 1, K0 + L[0]); break;                 // N <= K_mbs + L_1
            case 0:
            case 2: N = uni(K0 + L[0] + 1, std::max(K0 + L[0] + 1, maxN)); break;  // N > K_mbs + L_1
            default: N = uni(1, maxN); break;
        }
        if (N > maxN) continue;
        out.emplace_back(H, K0, L, N);
    }
    return out;
}

}  // namespace fogran

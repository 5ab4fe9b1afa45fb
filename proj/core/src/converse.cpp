#include "fogran/converse.hpp"

#include "fogran/error.hpp"

#include <algorithm>

namespace fogran {

namespace {

// [1 - sM/(N-K_mbs)]^+, requires N > K_mbs
Rational residual(const Topology& topo, const Rational& M, long s) {
    return pos(Rational(1) - Rational(s) * M / Rational(topo.N() - topo.K_mbs()));
}

}  // namespace

Rational converse_sum_rhs(const Topology& topo, const Rational& M, int s) {
    if (topo.N() <= topo.K_mbs()) throw DomainError("sum bound requires N > K_mbs");
    if (s < 1 || s > topo.H()) throw DomainError("s out of range");
    long cap = std::min(topo.L_prefix(s), topo.N() - topo.K_mbs());
    return Rational(topo.K_mbs()) + Rational(cap) * residual(topo, M, s);
}

HalfspaceSystem converse_system(const Topology& topo, const Rational& M) {
    if (M.sign() < 0 || M > Rational(topo.N())) throw DomainError("M must lie in [0, N]");
    HalfspaceSystem sys;
    sys.M = M;
    auto& in = sys.inequalities;
    const long N = topo.N(), K0 = topo.K_mbs(), H = topo.H();
    in.push_back({1, 0, 0, "nonneg-mbs"});
    in.push_back({0, 1, 0, "nonneg-sbs"});
    in.push_back({1, 0, std::min(N, K0), "trivial"});
    if (N > K0) {
        for (int s = 1; s <= H; ++s) in.push_back({1, 1, converse_sum_rhs(topo, M, s), "sum"});
    }
    if (N >= topo.K()) {
        for (int s = 1; s <= H; ++s) {
            Rational b = Rational(1) - Rational(s, H);
            Rational c = Rational(K0) + Rational(s, H) * Rational(topo.K_sbs()) * residual(topo, M, s);
            in.push_back({1, b, c, "weighted"});
        }
    }
    if (N > K0) {
        Rational c = Rational(K0) + Rational(std::min(topo.K_sbs(), N - K0)) * residual(topo, M, H);
        in.push_back({1, 0, c, "mbs-only"});
    }
    return sys;
}

std::vector<Corner> region_corners(const HalfspaceSystem& sys) {
    const auto& in = sys.inequalities;
    auto feasible = [&](const Corner& p) {
        for (const auto& h : in)
            if (h.a * p.rm + h.b * p.rs < h.c) return false;
        return true;
    };
    std::vector<Corner> vertices;
    for (size_t i = 0; i < in.size(); ++i) {
        for (size_t j = i + 1; j < in.size(); ++j) {
            const auto& p = in[i];
            const auto& q = in[j];
            Rational det = p.a * q.b - p.b * q.a;
            if (det.is_zero()) continue;
            Corner c{(p.a * q.c - q.a * p.c) / det, (p.c * q.b - q.c * p.b) / det};
            if (feasible(c)) vertices.push_back(c);
        }
    }
    if (vertices.empty()) throw VerificationError("converse system has no vertex");
    std::sort(vertices.begin(), vertices.end(), [](const Corner& a, const Corner& b) {
        return a.rs != b.rs ? a.rs < b.rs : a.rm < b.rm;
    });
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<Corner> out;
    for (const auto& v : vertices) {
        bool dominated = false;
        for (const auto& w : vertices)
            if (!(w == v) && w.rs <= v.rs && w.rm <= v.rm) dominated = true;
        if (!dominated) out.push_back(v);
    }
    return out;
}

Frontier converse_frontier(const Topology& topo, const Rational& M) {
    return Frontier::of_points(region_corners(converse_system(topo, M)));
}

Rational cutset_bound(const Topology& topo, const Rational& M, int s) {
    if (topo.N() <= topo.K_mbs()) throw DomainError("cut-set bound requires N > K_mbs");
    if (s < 1 || s > topo.H()) throw DomainError("s out of range");
    long Ls = topo.L_prefix(s);
    long room = topo.N() - topo.K_mbs();
    if (Ls > room) throw DomainError("bound inapplicable: L_[s] exceeds N - K_mbs");
    long fl = room / Ls;
    return Rational(topo.K_mbs()) + pos(Rational(Ls) - Rational(s) * M / Rational(fl));
}

}  // namespace fogran

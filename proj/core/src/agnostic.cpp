#include "fogran/agnostic.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

namespace fogran {

CountDist CountDist::fixed(long v) {
    if (v < 0) throw DomainError("counts must be non-negative");
    CountDist d;
    d.kind = Fixed;
    d.value = v;
    return d;
}

CountDist CountDist::poisson(const Rational& lambda) {
    if (lambda.sign() < 0) throw DomainError("Poisson rate must be non-negative");
    CountDist d;
    d.kind = Poisson;
    d.lambda = lambda;
    return d;
}

CountDist CountDist::histogram(std::vector<std::pair<long, Rational>> masses) {
    if (masses.empty()) throw DomainError("empty histogram");
    Rational total = 0;
    for (const auto& [v, p] : masses) {
        if (v < 0 || p.sign() < 0) throw DomainError("histogram entries must be non-negative");
        total += p;
    }
    if (total != Rational(1)) throw DomainError("histogram masses must sum to 1");
    std::sort(masses.begin(), masses.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    CountDist d;
    d.kind = Histogram;
    d.masses = std::move(masses);
    return d;
}

Rational CountDist::mean() const {
    switch (kind) {
        case Fixed: return Rational(value);
        case Poisson: return lambda;
        case Histogram: {
            Rational m = 0;
            for (const auto& [v, p] : masses) m += Rational(v) * p;
            return m;
        }
    }
    return 0;
}

Rational CountDist::variance() const {
    switch (kind) {
        case Fixed: return 0;
        case Poisson: return lambda;
        case Histogram: {
            Rational m = mean(), s = 0;
            for (const auto& [v, p] : masses) s += (Rational(v) - m) * (Rational(v) - m) * p;
            return s;
        }
    }
    return 0;
}

std::vector<std::pair<long, Rational>> CountDist::support() const {
    if (kind == Fixed) return {{value, Rational(1)}};
    if (kind == Histogram) return masses;
    const double lam = lambda.to_double();
    if (lam == 0) return {{0, Rational(1)}};
    std::vector<std::pair<long, Rational>> out;
    double p = std::exp(-lam), cum = 0;
    if (p == 0) throw DomainError("Poisson rate too large for exhaustive support");
    for (long k = 0;; ++k) {
        if (k > 0) p *= lam / static_cast<double>(k);
        cum += p;
        if (p > 0) out.push_back({k, Rational::from_double(p)});
        if (k > lam && 1.0 - cum < 1e-12) break;
    }
    Rational total = 0;
    for (const auto& e : out) total += e.second;
    for (auto& e : out) e.second /= total;
    return out;
}

long CountDist::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Fixed: return value;
        case Poisson: {
            std::poisson_distribution<long> pd(lambda.to_double());
            return pd(rng);
        }
        case Histogram: {
            double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng), cum = 0;
            for (const auto& [v, p] : masses) {
                cum += p.to_double();
                if (u < cum) return v;
            }
            return masses.back().first;
        }
    }
    return 0;
}

TopologyDistribution TopologyDistribution::point_mass(const Topology& topo) {
    TopologyDistribution d;
    d.K_mbs = CountDist::fixed(topo.K_mbs());
    for (long l : topo.L()) d.L.push_back(CountDist::fixed(l));
    d.N = topo.N();
    return d;
}

namespace {

std::vector<long> sorted_group_sums(const std::vector<long>& l, const Partition& phi) {
    std::vector<long> q;
    for (const auto& g : phi.groups) {
        long s = 0;
        for (int h : g) s += l[h];
        q.push_back(s);
    }
    std::sort(q.begin(), q.end(), std::greater<>());
    return q;
}

void check_common(long N, const Partition& phi, int t, long n, int H) {
    validate_partition(phi, H);
    if (n < 0 || n >= N) throw DomainError("n must lie in [0..N-1]");
    if (t < 0 || t > phi.G()) throw DomainError("t must lie in [0..G]");
}

void check_sidelink(long N, const Partition& phi, int t, long n) {
    if (phi.G() < 2) throw DomainError("sidelink scheme requires G >= 2");
    if (t < 1) throw DomainError("sidelink scheme requires t >= 1");
    if ((N - n) * t < N) throw DomainError("library not fully stored across SBSs");
}

// Sum over (t+1)-subsets of sorted-descending group occupancies, in units of 1/t.
template <class Acc>
void for_each_side_term(const std::vector<long>& qc, const std::vector<long>& qraw, int t, bool unprimed, Acc&& acc) {
    const int G = static_cast<int>(qc.size());
    std::vector<int> idx(t + 1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        // qc and qraw share the same descending order, so idx order is the v-order
        long a1 = qc[idx[0]], at = unprimed ? qraw[idx[t - 1]] : qc[idx[t - 1]], at1 = qc[idx[t]];
        acc(a1 * t + std::max(0L, at1 - a1 + at));
        int i = t;
        while (i >= 0 && idx[i] == G - (t + 1) + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j <= t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Rational agnostic_shared_load(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n) {
    const long G = phi.G();
    const long room = std::max(0L, N - k0);
    const long sumL = std::accumulate(l.begin(), l.end(), 0L);
    Rational base(std::min(N, std::max(k0, n)));
    if (sumL == 0) return base;
    auto q = clipped_sorted(sorted_group_sums(l, phi), room);
    BigInt acc = 0;
    for (long r = 1; r <= G - t; ++r) acc += BigInt(q[r - 1]) * binom(G - r, t);
    Rational factor = pos(Rational(sumL - std::max(0L, n - k0))) / (binomq(G, t) * Rational(sumL));
    return base + factor * Rational(acc);
}

double agnostic_shared_load_d(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n) {
    const long G = phi.G();
    const long room = std::max(0L, N - k0);
    const long sumL = std::accumulate(l.begin(), l.end(), 0L);
    double base = static_cast<double>(std::min(N, std::max(k0, n)));
    if (sumL == 0) return base;
    auto q = clipped_sorted(sorted_group_sums(l, phi), room);
    double acc = 0;
    for (long r = 1; r <= G - t; ++r) acc += double(q[r - 1]) * binom(G - r, t).get_d();
    double factor = std::max(0.0, double(sumL - std::max(0L, n - k0))) / (binom(G, t).get_d() * double(sumL));
    return base + factor * acc;
}

Rational agnostic_sidelink_load(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n,
                                bool unprimed_qt) {
    const long G = phi.G();
    const long room = std::max(0L, N - k0);
    const long sumL = std::accumulate(l.begin(), l.end(), 0L);
    auto raw = sorted_group_sums(l, phi);
    auto q = clipped_sorted(raw, room);
    Rational side1 = Rational(std::min(room, sumL)) * Rational(G - t, G - 1);
    BigInt acc = 0;
    if (t + 1 <= G) for_each_side_term(q, raw, t, unprimed_qt, [&](long v) { acc += v; });
    Rational side2 = Rational(acc) / (Rational(t) * binomq(G, t));
    Rational extra = Rational(G, G - 1) * Rational(std::max(0L, n - k0));
    return extra + std::min(side1, side2);
}

double agnostic_sidelink_load_d(long N, long k0, const std::vector<long>& l, const Partition& phi, int t, long n,
                                bool unprimed_qt) {
    const long G = phi.G();
    const long room = std::max(0L, N - k0);
    const long sumL = std::accumulate(l.begin(), l.end(), 0L);
    auto raw = sorted_group_sums(l, phi);
    auto q = clipped_sorted(raw, room);
    double side1 = double(std::min(room, sumL)) * double(G - t) / double(G - 1);
    double acc = 0;
    if (t + 1 <= G) for_each_side_term(q, raw, t, unprimed_qt, [&](long v) { acc += double(v); });
    double side2 = acc / (double(t) * binom(G, t).get_d());
    double extra = double(G) / double(G - 1) * double(std::max(0L, n - k0));
    return extra + std::min(side1, side2);
}

namespace {

struct Moments {
    Rational mbs, sbs;
    double se_mbs = 0, se_sbs = 0;
    std::size_t count = 0;
};

// Expectation of (f_mbs, f_sbs) over realizations (k0, l).
template <class FR, class FD>
Moments expectation(const TopologyDistribution& dist, const EvalMode& mode, FR exact, FD approx) {
    Moments out;
    const int H = dist.H();
    if (mode.kind == EvalMode::Exhaustive) {
        std::vector<std::vector<std::pair<long, Rational>>> sup;
        sup.push_back(dist.K_mbs.support());
        for (const auto& d : dist.L) sup.push_back(d.support());
        double total = 1;
        for (const auto& s : sup) total *= double(s.size());
        if (total > double(mode.cap)) throw DomainError("exhaustive support exceeds cap; use Monte Carlo");
        std::vector<size_t> pos(sup.size(), 0);
        std::vector<long> l(H);
        while (true) {
            Rational p = 1;
            for (size_t i = 0; i < sup.size(); ++i) p *= sup[i][pos[i]].second;
            long k0 = sup[0][pos[0]].first;
            for (int h = 0; h < H; ++h) l[h] = sup[h + 1][pos[h + 1]].first;
            auto [a, b] = exact(k0, l);
            out.mbs += p * a;
            out.sbs += p * b;
            ++out.count;
            size_t i = 0;
            while (i < sup.size() && ++pos[i] == sup[i].size()) pos[i++] = 0;
            if (i == sup.size()) break;
        }
        return out;
    }
    if (mode.samples == 0) throw DomainError("Monte Carlo needs at least one sample");
    std::mt19937_64 rng(mode.seed);
    std::vector<long> l(H);
    double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
    for (std::size_t i = 0; i < mode.samples; ++i) {
        long k0 = dist.K_mbs.sample(rng);
        for (int h = 0; h < H; ++h) l[h] = dist.L[h].sample(rng);
        auto [a, b] = approx(k0, l);
        s1 += a, q1 += a * a, s2 += b, q2 += b * b;
    }
    const double n = double(mode.samples);
    auto se = [n](double s, double q) {
        if (n < 2) return 0.0;
        double var = std::max(0.0, (q - s * s / n) / (n - 1));
        return std::sqrt(var / n);
    };
    out.mbs = Rational::from_double(s1 / n);
    out.sbs = Rational::from_double(s2 / n);
    out.se_mbs = se(s1, q1);
    out.se_sbs = se(s2, q2);
    out.count = mode.samples;
    return out;
}

}  // namespace

AgnosticResult agnostic_shared_point(const TopologyDistribution& dist, const Partition& phi, int t, long n,
                                     const EvalMode& mode) {
    const long N = dist.N;
    check_common(N, phi, t, n, dist.H());
    auto m = expectation(
        dist, mode,
        [&](long k0, const std::vector<long>& l) {
            return std::pair<Rational, Rational>{agnostic_shared_load(N, k0, l, phi, t, n), 0};
        },
        [&](long k0, const std::vector<long>& l) {
            return std::pair<double, double>{agnostic_shared_load_d(N, k0, l, phi, t, n), 0.0};
        });
    AgnosticResult r;
    r.point = {Rational(t) * Rational(N - n) / Rational(phi.G()), m.mbs, 0};
    r.stderr_mbs = m.se_mbs;
    r.realizations = m.count;
    return r;
}

AgnosticResult agnostic_sidelink_point(const TopologyDistribution& dist, const Partition& phi, int t, long n,
                                       const EvalMode& mode, bool unprimed_qt) {
    const long N = dist.N;
    check_common(N, phi, t, n, dist.H());
    check_sidelink(N, phi, t, n);
    auto m = expectation(
        dist, mode,
        [&](long k0, const std::vector<long>& l) {
            return std::pair<Rational, Rational>{Rational(k0),
                                                 agnostic_sidelink_load(N, k0, l, phi, t, n, unprimed_qt)};
        },
        [&](long k0, const std::vector<long>& l) {
            return std::pair<double, double>{double(k0),
                                             agnostic_sidelink_load_d(N, k0, l, phi, t, n, unprimed_qt)};
        });
    AgnosticResult r;
    r.point = {Rational(t) * Rational(N - n) / Rational(phi.G()), m.mbs, m.sbs};
    r.stderr_mbs = m.se_mbs;
    r.stderr_sbs = m.se_sbs;
    r.realizations = m.count;
    return r;
}

Rational variance_objective(const TopologyDistribution& dist, const Partition& phi) {
    validate_partition(phi, dist.H());
    Rational total = 0;
    for (const auto& d : dist.L) total += d.mean();
    const Rational target = total / Rational(phi.G());
    Rational obj = 0;
    for (const auto& g : phi.groups) {
        Rational m = 0, v = 0;
        for (int h : g) m += dist.L[h].mean(), v += dist.L[h].variance();
        obj += v + (m - target) * (m - target);
    }
    return obj;
}

Partition variance_partition(const TopologyDistribution& dist, int G) {
    const int H = dist.H();
    if (G < 1 || G > H) throw DomainError("need 1 <= G <= H");
    std::optional<std::pair<Rational, Partition>> best;
    auto consider = [&](Partition p) {
        p = p.canonical();
        Rational v = variance_objective(dist, p);
        if (!best || v < best->first || (v == best->first && p.groups < best->second.groups)) best = {v, p};
    };
    if (H <= partition_cap()) {
        for_each_rgs(H, G, [&](const std::vector<int>& rgs) { consider(from_rgs(rgs, G)); });
        return best->second;
    }
    // Greedy largest-mean-first assignment, then single-element moves while they help.
    std::vector<int> order(H);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dist.L[a].mean() > dist.L[b].mean(); });
    std::vector<int> rgs(H, -1);
    std::vector<Rational> load(G, 0);
    for (int i = 0; i < H; ++i) {
        int h = order[i];
        int g = i < G ? i : static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
        rgs[h] = g;
        load[g] += dist.L[h].mean();
    }
    Partition cur = from_rgs(rgs, G);
    Rational cur_v = variance_objective(dist, cur);
    for (bool improved = true; improved;) {
        improved = false;
        for (int h = 0; h < H && !improved; ++h) {
            for (int g = 0; g < G && !improved; ++g) {
                if (g == rgs[h]) continue;
                auto trial = rgs;
                trial[h] = g;
                if (std::count(trial.begin(), trial.end(), rgs[h]) == 0) continue;
                Partition p = from_rgs(trial, G);
                Rational v = variance_objective(dist, p);
                if (v < cur_v) rgs = trial, cur = p, cur_v = v, improved = true;
            }
        }
    }
    return cur.canonical();
}

TailEstimate sanity_tail_probability(const TopologyDistribution& dist, long N, std::size_t samples,
                                     std::uint64_t seed) {
    if (samples == 0) throw DomainError("samples must be >= 1");
    std::mt19937_64 rng(seed);
    TailEstimate e;
    e.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        long total = dist.K_mbs.sample(rng);
        for (const auto& d : dist.L) total += d.sample(rng);
        if (total > N) ++e.hits;
    }
    return e;
}

}  // namespace fogran

#include "fogran/topology.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <numeric>

namespace fogran {

Topology::Topology(int H, long K_mbs, std::vector<long> L, long N)
    : K_mbs_(K_mbs), N_(N), L_(std::move(L)) {
    if (H < 1) throw DomainError("topology needs at least one SBS");
    if (static_cast<int>(L_.size()) != H) throw DomainError("L must have H entries");
    if (K_mbs_ < 0) throw DomainError("K_mbs must be non-negative");
    if (N_ < 1) throw DomainError("library needs at least one file");
    for (int h = 0; h < H; ++h) {
        if (L_[h] <= 0) throw DomainError("occupancies must be positive");
        if (h > 0 && L_[h] > L_[h - 1]) throw DomainError("occupancies must be sorted non-increasing");
    }
    perm_.resize(H);
    std::iota(perm_.begin(), perm_.end(), 0);
    long next = K_mbs_;
    for (long l : L_) {
        first_user_.push_back(next);
        next += l;
    }
    K_sbs_ = next - K_mbs_;
}

Topology Topology::normalized(long K_mbs, std::vector<long> L, long N) {
    std::vector<int> idx(L.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return L[a] > L[b]; });
    std::vector<long> sorted;
    for (int i : idx) sorted.push_back(L[i]);
    Topology t(static_cast<int>(L.size()), K_mbs, std::move(sorted), N);
    t.perm_ = idx;
    return t;
}

long Topology::L_prefix(int s) const {
    if (s < 0 || s > H()) throw DomainError("prefix index out of range");
    return std::accumulate(L_.begin(), L_.begin() + s, 0L);
}

long Topology::L_set(const std::vector<int>& S) const {
    long r = 0;
    for (int h : S) r += L_.at(h);
    return r;
}

long Topology::L_clipped(int h) const { return std::max(0L, std::min(L_[h], N_ - K_mbs_)); }

int Topology::sbs_of_user(long k) const {
    if (k < 0 || k >= K()) throw DomainError("user index out of range");
    if (k < K_mbs_) return -1;
    auto it = std::upper_bound(first_user_.begin(), first_user_.end(), k);
    return static_cast<int>(it - first_user_.begin()) - 1;
}

void Demand::validate(const Topology& topo) const {
    if (static_cast<long>(d.size()) != topo.K())
        throw DomainError("demand length " + std::to_string(d.size()) + " differs from K=" +
                          std::to_string(topo.K()));
    for (int f : d)
        if (f < 1 || f > topo.N()) throw DomainError("demanded file out of range");
}

std::vector<XY> lower_convex_envelope(std::vector<XY> points) {
    if (points.empty()) throw DomainError("no points");
    std::sort(points.begin(), points.end(), [](const XY& a, const XY& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::vector<XY> hull;
    for (const auto& p : points) {
        if (!hull.empty() && hull.back().x == p.x) continue;  // keep lowest y per x
        while (hull.size() >= 2) {
            const XY& a = hull[hull.size() - 2];
            const XY& b = hull.back();
            // drop b unless it lies strictly below segment a-p
            if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) <= Rational(0))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

Rational envelope_at(const std::vector<XY>& hull, const Rational& x) {
    if (hull.empty()) throw DomainError("no points");
    if (x < hull.front().x) throw DomainError("point left of envelope support");
    size_t last = 0;
    for (size_t i = 1; i < hull.size(); ++i)
        if (hull[i].y < hull[last].y) last = i;
    if (x >= hull[last].x) return hull[last].y;
    for (size_t i = 0; i + 1 <= last; ++i) {
        const XY& a = hull[i];
        const XY& b = hull[i + 1];
        if (x <= b.x) return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }
    return hull[last].y;
}

}  // namespace fogran

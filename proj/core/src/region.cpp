#include "fogran/region.hpp"

#include "fogran/error.hpp"

#include <algorithm>

namespace fogran {

Frontier Frontier::of_points(std::vector<Corner> pts) {
    if (pts.empty()) throw DomainError("no points");
    std::sort(pts.begin(), pts.end(), [](const Corner& a, const Corner& b) {
        return a.rs != b.rs ? a.rs < b.rs : a.rm < b.rm;
    });
    // Pareto filter: keep points whose rm is strictly below every point with smaller rs.
    std::vector<Corner> pareto;
    for (const auto& p : pts) {
        if (!pareto.empty() && (pareto.back().rs == p.rs || pareto.back().rm <= p.rm)) continue;
        pareto.push_back(p);
    }
    // Lower convex hull of the staircase.
    Frontier f;
    for (const auto& p : pareto) {
        while (f.corners_.size() >= 2) {
            const Corner& a = f.corners_[f.corners_.size() - 2];
            const Corner& b = f.corners_.back();
            if ((b.rs - a.rs) * (p.rm - a.rm) - (b.rm - a.rm) * (p.rs - a.rs) <= Rational(0))
                f.corners_.pop_back();
            else
                break;
        }
        f.corners_.push_back(p);
    }
    return f;
}

std::vector<Halfspace> Frontier::halfspaces() const {
    std::vector<Halfspace> hs;
    if (corners_.empty()) return hs;
    hs.push_back({0, 1, corners_.front().rs, "left"});
    hs.push_back({1, 0, corners_.back().rm, "bottom"});
    for (size_t i = 0; i + 1 < corners_.size(); ++i) {
        const Corner& p = corners_[i];
        const Corner& q = corners_[i + 1];
        Rational A = p.rm - q.rm;  // coefficient on rs
        Rational Bc = q.rs - p.rs; // coefficient on rm
        hs.push_back({Bc, A, A * p.rs + Bc * p.rm, "edge"});
    }
    return hs;
}

bool Frontier::contains(const Corner& p) const {
    for (const auto& h : halfspaces())
        if (h.a * p.rm + h.b * p.rs < h.c) return false;
    return !corners_.empty();
}

std::optional<Rational> Frontier::min_rm(const Rational& rs) const {
    if (corners_.empty() || rs < corners_.front().rs) return std::nullopt;
    for (size_t i = 0; i + 1 < corners_.size(); ++i) {
        const Corner& p = corners_[i];
        const Corner& q = corners_[i + 1];
        if (rs <= q.rs) return p.rm + (q.rm - p.rm) * (rs - p.rs) / (q.rs - p.rs);
    }
    return corners_.back().rm;
}

std::optional<Rational> Frontier::min_rs(const Rational& rm) const {
    if (corners_.empty() || rm < corners_.back().rm) return std::nullopt;
    for (size_t i = 0; i + 1 < corners_.size(); ++i) {
        const Corner& p = corners_[i];
        const Corner& q = corners_[i + 1];
        if (rm >= q.rm) {
            if (rm >= p.rm) return p.rs;
            return p.rs + (q.rs - p.rs) * (rm - p.rm) / (q.rm - p.rm);
        }
    }
    return corners_.back().rs;
}

std::optional<Rational> Frontier::min_scale(const Corner& p, bool scale_rs, bool scale_rm) const {
    if (corners_.empty()) return std::nullopt;
    Rational rs0 = scale_rs ? Rational(0) : p.rs, drs = scale_rs ? p.rs : Rational(0);
    Rational rm0 = scale_rm ? Rational(0) : p.rm, drm = scale_rm ? p.rm : Rational(0);
    Rational alpha = 0;
    for (const auto& h : halfspaces()) {
        Rational coef = h.a * drm + h.b * drs;
        Rational rhs = h.c - h.a * rm0 - h.b * rs0;
        if (coef.sign() > 0) {
            alpha = std::max(alpha, rhs / coef);
        } else if (rhs.sign() > 0) {
            return std::nullopt;
        }
    }
    return alpha;
}

}  // namespace fogran

#pragma once

#include "fogran/rational.hpp"

#include <optional>
#include <vector>

namespace fogran {

// Point in the (R_sbs, R_mbs) plane.
struct Corner {
    Rational rs, rm;
    friend bool operator==(const Corner&, const Corner&) = default;
};

// a*R_mbs + b*R_sbs >= c
struct Halfspace {
    Rational a, b, c;
    const char* label = "";
};

// Upward-closed convex region given by its Pareto-optimal vertices
// (sorted by rs ascending, rm strictly descending).
class Frontier {
public:
    Frontier() = default;
    // Lower-left convex frontier of conv(points) + nonnegative orthant.
    static Frontier of_points(std::vector<Corner> points);

    const std::vector<Corner>& corners() const { return corners_; }
    bool empty() const { return corners_.empty(); }

    // Half-space description of the region (edges plus the two boundary rays).
    std::vector<Halfspace> halfspaces() const;
    bool contains(const Corner& p) const;
    // Smallest R_mbs reachable with R_sbs <= rs; nullopt if rs is left of the region.
    std::optional<Rational> min_rm(const Rational& rs) const;
    // Smallest R_sbs reachable with R_mbs <= rm; nullopt if rm is below the region.
    std::optional<Rational> min_rs(const Rational& rm) const;
    // Smallest alpha with (rs*(scale_rs?alpha:1), rm*(scale_rm?alpha:1)) in the region;
    // nullopt if no finite alpha works.
    std::optional<Rational> min_scale(const Corner& p, bool scale_rs, bool scale_rm) const;

private:
    std::vector<Corner> corners_;
};

}  // namespace fogran

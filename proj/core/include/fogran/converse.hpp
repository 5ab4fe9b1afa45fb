#pragma once

#include "fogran/region.hpp"
#include "fogran/topology.hpp"

#include <vector>

namespace fogran {

struct HalfspaceSystem {
    std::vector<Halfspace> inequalities;
    Rational M;
};

// Outer bound on (R_mbs, R_sbs) at cache size M, including nonnegativity.
HalfspaceSystem converse_system(const Topology& topo, const Rational& M);

// Pareto-optimal vertices sorted by R_sbs ascending.
std::vector<Corner> region_corners(const HalfspaceSystem& sys);
Frontier converse_frontier(const Topology& topo, const Rational& M);

// Cut-set lower bound on R_mbs + R_sbs for the first s SBSs (s counted from 1).
Rational cutset_bound(const Topology& topo, const Rational& M, int s);

// Right-hand side of the sum bound K_mbs + min{L_[s],N-K_mbs}[1 - sM/(N-K_mbs)]^+.
Rational converse_sum_rhs(const Topology& topo, const Rational& M, int s);

}  // namespace fogran

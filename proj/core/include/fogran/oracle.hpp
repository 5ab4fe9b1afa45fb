#pragma once

#include "fogran/converse.hpp"
#include "fogran/delivery.hpp"
#include "fogran/scheme.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fogran {

// Demand enumeration. Raw mode visits all N^K vectors; reduced mode visits only
// vectors whose used labels are exactly {1..k}, which covers every demand up to an
// order-preserving relabeling of files (loads depend on labels only through their order).
BigInt demand_space_size(const Topology& topo, bool reduced);
void for_each_demand(const Topology& topo, bool reduced, const std::function<void(const Demand&)>& fn);

struct WorstCaseOptions {
    std::size_t cap = 1'000'000;
    bool check_plans = true;  // build a plan for every demand and compare with the per-demand formula
};

struct WorstCase {
    Demand demand;          // first demand attaining the maximum of the class coordinate
    Loads loads;            // component-wise maximum over all demands
    std::size_t demands = 0;
    bool reduced = false;
    std::size_t plan_mismatches = 0;
    std::optional<Demand> mismatch_witness;
};

// Throws DomainError when even the reduced space exceeds the cap.
WorstCase worst_case_demand(const Topology& topo, const SchemeDescriptor& s, const WorstCaseOptions& opt = {});

// Achievable (R_sbs, R_mbs) region at cache size M by memory sharing among the given points.
Frontier achievable_frontier(const std::vector<MemoryLoadPoint>& pts, const Rational& M);

struct GapCheck {
    std::string check;       // "rs_H", "joint_2g", "uniform_22", "grouped_G"
    Rational M;
    Corner corner;           // converse corner (grouped_G: the corner at R_mbs = K_mbs)
    std::optional<Rational> ratio;  // nullopt: not achievable at any scale
    Rational bound;
    bool ok = false;
};

struct GapReport {
    std::vector<GapCheck> checks;
    std::size_t violations() const;
};

// Every applicable gap check at every grid point.
GapReport gap_report(const Topology& topo, const std::vector<Rational>& M_grid);

struct OptimalityVerdict {
    std::size_t points = 0;
    std::optional<Rational> witness;  // first M where the envelope exceeds the converse
    bool equal() const { return !witness.has_value(); }
};

// Compares the asymmetric envelope of one class with the converse at every grid M
// (shared: min R_mbs at R_sbs = 0; sidelink: min R_sbs at R_mbs = K_mbs).
// Throws DomainError "optimality regime inapplicable" unless N >= K_mbs + L_1 and a G-way
// partition with leader {1} exists.
OptimalityVerdict check_exact_optimality(const Topology& topo, int G, LinkClass c,
                                         const std::vector<Rational>& M_grid);
// Same comparison for an arbitrary point list, without applicability checks.
OptimalityVerdict compare_with_converse(const Topology& topo, const std::vector<MemoryLoadPoint>& pts, LinkClass c,
                                        const std::vector<Rational>& M_grid);

// "a:b:step" with rational fields.
std::vector<Rational> parse_grid(const std::string& spec);
std::vector<Rational> make_grid(const Rational& lo, const Rational& hi, const Rational& step);

// Deterministic pseudo-random topologies (H in [2..maxH], N <= maxN), every fourth with uniform L.
std::vector<Topology> random_corpus(std::size_t count, std::uint64_t seed, int maxH = 6, long maxN = 40);

}  // namespace fogran

#pragma once

#include "fogran/partition.hpp"
#include "fogran/topology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fogran {

enum class Family { Sym, Asym };
enum class LinkClass { Shared, Sidelink };
// Side2Direct: multi-round sidelink delivery without the user-moving rule.
enum class Approach { Shared1, Shared2, Side1, Side2, Side2Direct };

LinkClass class_of(Approach a);
std::string to_string(Family f);
std::string to_string(LinkClass c);
std::string to_string(Approach a);
Family parse_family(const std::string& s);
LinkClass parse_class(const std::string& s);
Approach parse_approach(const std::string& s);

// A concrete placement/delivery scheme. The symmetric family is the G = H singleton case.
struct SchemeDescriptor {
    Family family = Family::Sym;
    int t = 0;
    Partition phi;  // normalized; groups index the virtual SBSs
    Approach approach = Approach::Shared2;

    int G() const { return phi.G(); }
    LinkClass cls() const { return class_of(approach); }
    Rational M(const Topology& topo) const;

    static SchemeDescriptor sym(const Topology& topo, int t, Approach a);
    static SchemeDescriptor asym(const Topology& topo, const Partition& phi, int t, Approach a);
};

// Throws DomainError when the scheme does not apply to the topology.
void validate(const Topology& topo, const SchemeDescriptor& s);

// Closed-form worst-case loads of one delivery approach.
MemoryLoadPoint approach_point(const Topology& topo, const SchemeDescriptor& s);

MemoryLoadPoint sym_shared_point(const Topology& topo, int t);
MemoryLoadPoint sym_sidelink_point(const Topology& topo, int t);

struct PartitionChoice {
    Partition phi;
    MemoryLoadPoint point;
};
// Minimizes over all G-way partitions unless one is given.
PartitionChoice asym_shared_point(const Topology& topo, int G, int t,
                                  const std::optional<Partition>& given = std::nullopt);
PartitionChoice asym_sidelink_point(const Topology& topo, int G, int t,
                                    const std::optional<Partition>& given = std::nullopt);
// ((N-K_mbs)/H, K_mbs, min{N-K_mbs, K_sbs})
MemoryLoadPoint asym_app1_point(const Topology& topo);

// Sidelink load of the MAN-grouped delivery for one (t+1)-subset, given the
// sorted-descending counts a_1 >= ... >= a_{t+1} (in units of one subfile).
Rational side2_subset_term(const std::vector<long>& sorted_counts, int t);
Rational side2_direct_subset_term(const std::vector<long>& sorted_counts, int t);
// Sum over (t+1)-subsets of [G] of the sidelink term, divided by C(G,t).
Rational side2_load(const std::vector<long>& counts, int t, bool direct = false);
// Multi-round MAN shared-link load sum_r a_(r) C(G-r,t)/C(G,t).
Rational shared2_load(const std::vector<long>& counts, int t);

// Point lists feeding the envelopes (all t, and for the asymmetric family all G).
std::vector<MemoryLoadPoint> sym_points(const Topology& topo, LinkClass c);
std::vector<MemoryLoadPoint> asym_points(const Topology& topo, LinkClass c);
// Envelope in (M, R) with R = R_mbs for shared, R_sbs for sidelink.
std::vector<XY> class_envelope(const std::vector<MemoryLoadPoint>& pts, LinkClass c);

BigInt subpacketization_level(int n, int t);

// Step-1 bookkeeping and distinct-demand user lists for one demand.
struct DemandAnalysis {
    std::vector<int> D_mbs, D_sbs;  // sorted, 1-based file ids
    bool case1 = false;
    std::vector<int> step1;         // files broadcast in step 1, in order
    std::vector<int> D_prime;       // sorted remaining SBS files
    // Per group: users (0-based ids) representing distinct D' files, descending id.
    std::vector<std::vector<long>> U;
    std::vector<long> counts() const;
};
DemandAnalysis analyze_demand(const Topology& topo, const Partition& phi, const Demand& d);

struct Loads {
    Rational R_mbs, R_sbs;
    friend bool operator==(const Loads&, const Loads&) = default;
};
// Per-demand loads from the closed-form per-demand expressions.
Loads per_demand_loads(const Topology& topo, const SchemeDescriptor& s, const Demand& d);

}  // namespace fogran

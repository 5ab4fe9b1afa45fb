#pragma once

#include "fogran/rational.hpp"
#include "fogran/topology.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fogran {

// G disjoint nonempty groups of 0-based SBS indices, each group sorted ascending.
struct Partition {
    std::vector<std::vector<int>> groups;

    int G() const { return static_cast<int>(groups.size()); }
    // Groups ordered by smallest member; used for tie-breaking and topology-free identity.
    Partition canonical() const;
    // "1|2,3" with 1-based members.
    std::string str() const;
    friend bool operator==(const Partition&, const Partition&) = default;
};

Partition parse_partition(std::string_view literal, int H);
Partition singleton_partition(int H);
void validate_partition(const Partition& p, int H);

// Groups ordered by aggregate occupancy, non-increasing; ties by smallest member.
Partition normalize(const Partition& p, const Topology& topo);
std::vector<long> group_occupancies(const Partition& p, const Topology& topo);
// q'_j over the given group occupancies: sorted descending and clipped at N - K_mbs.
std::vector<long> clipped_sorted(std::vector<long> q, long cap);

// Exhaustive-search cap on H; FOGRAN_PARTITION_CAP overrides the default 14.
int partition_cap();
BigInt stirling2(int n, int k);
// Visits all restricted-growth strings of length H with exactly G blocks.
void for_each_rgs(int H, int G, const std::function<void(const std::vector<int>&)>& fn);
Partition from_rgs(const std::vector<int>& rgs, int G);
// Every partition of [H] into G groups (canonical form); throws if H exceeds the cap.
std::vector<Partition> enumerate_partitions(int H, int G);

// Whether some G-way partition has {first SBS} as a group of maximal aggregate occupancy.
bool has_singleton_leader(const Topology& topo, int G);

}  // namespace fogran

#pragma once

#include "fogran/scheme.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fogran {

using GroupSet = std::uint32_t;  // bitmask over group indices (G <= 30)

// F_{file,W}
struct SubfileRef {
    int file;
    GroupSet W;
    friend bool operator==(const SubfileRef&, const SubfileRef&) = default;
    friend auto operator<=>(const SubfileRef&, const SubfileRef&) = default;
};

// F_{file,W,g}: the sub-piece of F_{file,W} associated with group g in W
struct SubpieceRef {
    int file;
    GroupSet W;
    int g;
    friend bool operator==(const SubpieceRef&, const SubpieceRef&) = default;
    friend auto operator<=>(const SubpieceRef&, const SubpieceRef&) = default;
};

// Symbol set mixed by a random-linear-combination message.
struct RlcSet {
    enum Kind { WholeFile, PiecesOfGroup } kind = WholeFile;
    int file = 0;
    int g = -1;  // PiecesOfGroup: all F_{file,W,g} with g in W
    friend bool operator==(const RlcSet&, const RlcSet&) = default;
};

enum class MsgKind { WholeFile, RLC, XorSubfiles, XorSubpieces };

struct Message {
    int source = 0;  // 0 = MBS, h in [1..H] = SBS h (sorted order)
    MsgKind kind = MsgKind::WholeFile;
    int file = 0;                        // WholeFile
    RlcSet rlc;                          // RLC
    std::vector<SubfileRef> subfiles;    // XorSubfiles
    std::vector<SubpieceRef> pieces;     // XorSubpieces
    long units = 0;                      // size in plan units (1/units_per_file of a file)

    std::string describe() const;
};

struct DeliveryPlan {
    long units_per_file = 1;  // max(t,1) * C(G,t)
    int H = 0;
    std::vector<Message> step1, step2;

    Rational size(const Message& m) const { return Rational(m.units, units_per_file); }
    Rational R_mbs() const;
    Rational R_sbs() const;
    // R_h for h = 1..H (index 0 holds SBS 1)
    std::vector<Rational> per_sbs_loads() const;
};

// (group index, round index) user slots per transmission group.
using UserSlot = std::pair<int, int>;
// Round-robin grouping over the (t+1)-set S followed by the user-moving rule;
// counts[g] = |U'_g| for every group index g (only entries in S are read).
std::vector<std::vector<UserSlot>> build_groups(const std::vector<int>& S, const std::vector<long>& counts,
                                               int t, bool apply_moves = true);

DeliveryPlan plan(const Topology& topo, const SchemeDescriptor& s, const Demand& d);

// 1-based, comma separated group list such as "{2,3}".
std::string set_str(GroupSet W);
// Union of the SBSs (1-based) in the groups of W.
std::string sbs_set_str(GroupSet W, const Partition& phi);
int popcount(GroupSet W);
// Position of W among the |W|-subsets of [G] in lexicographic (colex-free) order.
long subset_rank(GroupSet W, int G);

}  // namespace fogran

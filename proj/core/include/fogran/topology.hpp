#pragma once

#include "fogran/rational.hpp"

#include <vector>

namespace fogran {

// Network shape. SBS indices are 0-based internally; L is non-increasing.
class Topology {
public:
    // Rejects unsorted or non-positive occupancies.
    Topology(int H, long K_mbs, std::vector<long> L, long N);
    // Sorts L non-increasing (stable) and records where each sorted SBS came from.
    static Topology normalized(long K_mbs, std::vector<long> L, long N);

    int H() const { return static_cast<int>(L_.size()); }
    long K_mbs() const { return K_mbs_; }
    long N() const { return N_; }
    const std::vector<long>& L() const { return L_; }
    long L(int h) const { return L_[h]; }
    long K_sbs() const { return K_sbs_; }
    long K() const { return K_mbs_ + K_sbs_; }
    // L_[s] = L_1 + ... + L_s (s counted from 1).
    long L_prefix(int s) const;
    long L_set(const std::vector<int>& S) const;
    // L'_h = min{L_h, N - K_mbs}, clipped at 0.
    long L_clipped(int h) const;
    // perm()[h] = index in the user-supplied order of the sorted SBS h.
    const std::vector<int>& perm() const { return perm_; }

    // Users are numbered 0..K-1: MBS users first, then SBS 0's users, SBS 1's, ...
    // Returns -1 for MBS users.
    int sbs_of_user(long k) const;
    long first_user(int h) const { return first_user_[h]; }

private:
    long K_mbs_, N_, K_sbs_ = 0;
    std::vector<long> L_;
    std::vector<int> perm_;
    std::vector<long> first_user_;
};

// d[k] in [1..N], ordered as the topology numbers users.
struct Demand {
    std::vector<int> d;
    void validate(const Topology& topo) const;
};

struct MemoryLoadPoint {
    Rational M, R_mbs, R_sbs;
    friend bool operator==(const MemoryLoadPoint&, const MemoryLoadPoint&) = default;
};

struct XY {
    Rational x, y;
    friend bool operator==(const XY&, const XY&) = default;
};

// Vertices of the lower convex hull, sorted by x; collinear interior points dropped.
std::vector<XY> lower_convex_envelope(std::vector<XY> points);

// Value at x of the best memory-sharing curve through the hull, allowing unused
// memory: the hull is cut at its minimum and extended flat to the right.
// Throws DomainError if x lies left of the first vertex.
Rational envelope_at(const std::vector<XY>& hull, const Rational& x);

}  // namespace fogran

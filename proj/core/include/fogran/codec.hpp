#pragma once

#include "fogran/delivery.hpp"
#include "fogran/error.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fogran {

struct Library {
    long N = 0, B = 0;
    std::vector<std::uint8_t> data;  // file f (1-based) occupies [(f-1)B, fB)
    static Library random(long N, long B, std::uint64_t seed);
    std::uint8_t at(int file, long sym) const { return data[(file - 1) * B + sym]; }
};

// Symbol layout of a scheme: B = units_per_file * c, subfile W has units
// [rank(W)*max(t,1), (rank(W)+1)*max(t,1)), sub-piece g of W is unit rank(W)*t + pos(g in W).
struct SymbolLayout {
    int G = 1, t = 0;
    long N = 0, B = 0, c = 1;
    long units_per_file() const;
    long subfile_len() const { return std::max(t, 1) * c; }
    long symbol(int file, long offset) const { return (file - 1) * B + offset; }
    long subfile_offset(GroupSet W) const;
    long piece_offset(GroupSet W, int g) const;
};

long default_B(const SchemeDescriptor& s, long c = 2);

// Coded cache block for one t-subset W: rows over the N*b symbols {F_{i,W}}.
struct CacheBlock {
    GroupSet W = 0;
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> coef;   // rows x cols
    std::vector<std::uint8_t> value;  // rows
    int attempts = 0;
};

struct CacheContents {
    SymbolLayout layout;
    std::vector<CacheBlock> blocks;            // one per t-subset of groups
    std::vector<std::vector<int>> sbs_blocks;  // block indices cached at each SBS
    long stored_symbols(int h) const;
};

CacheContents place(const Topology& topo, const SchemeDescriptor& s, const Library& lib, std::uint64_t seed);

struct Transcript {
    long B = 0;
    std::vector<bool> decoded;            // per user
    std::vector<long> symbols_per_link;   // [0] MBS downlink, [h] sidelink of SBS h
    std::vector<long> cache_symbols;      // per SBS
    std::vector<int> rlc_attempts;        // per step-2 RLC message
    Rational R_mbs, R_sbs;
    std::vector<Rational> R_h;
};

struct DecodeError : VerificationError {
    DecodeError(const std::string& what, int node, std::string missing)
        : VerificationError(what), node(node), missing(std::move(missing)) {}
    int node;  // 0 = MBS users, h = SBS h
    std::string missing;
};

Transcript execute(const Topology& topo, const SchemeDescriptor& s, const Library& lib, const CacheContents& cache,
                   const DeliveryPlan& plan, const Demand& d, std::uint64_t seed);

// place + plan + execute with B = default_B(s) unless given.
Transcript simulate(const Topology& topo, const SchemeDescriptor& s, const Demand& d, std::uint64_t seed,
                    long B = 0);

}  // namespace fogran

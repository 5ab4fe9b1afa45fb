#include "fogran/codec.hpp"

#include "fogran/gf256.hpp"

#include <algorithm>
#include <initializer_list>
#include <unordered_map>

namespace fogran {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based byte stream: a pure function of the key tuple.
std::uint8_t draw(std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = 0x6a09e667f3bcc909ull;
    for (auto k : key) h = splitmix(h ^ k);
    return static_cast<std::uint8_t>(h & 0xFF);
}

enum Tag : std::uint64_t { kLibrary = 0, kCache = 1, kRlc = 2 };

struct Row {
    std::vector<std::pair<long, std::uint8_t>> terms;
    std::uint8_t rhs = 0;
};

struct Node {
    std::vector<std::int16_t> v;  // -1 = unknown
    bool knows(long sym) const { return v[sym] >= 0; }
};

struct BlockResult {
    int unknowns = 0, rank = 0, learned = 0;
};

// Substitutes known symbols, row-reduces the residual system and (optionally)
// records every unknown that the block determines uniquely.
BlockResult solve_block(const std::vector<Row>& rows, Node& node, bool commit) {
    std::unordered_map<long, int> col;
    std::vector<long> syms;
    for (const auto& r : rows)
        for (auto [s, c] : r.terms)
            if (c && !node.knows(s) && col.emplace(s, static_cast<int>(syms.size())).second) syms.push_back(s);
    BlockResult res;
    res.unknowns = static_cast<int>(syms.size());
    if (syms.empty()) return res;
    const int n = static_cast<int>(rows.size()), w = res.unknowns + 1;
    std::vector<std::uint8_t> m(static_cast<size_t>(n) * w, 0);
    for (int i = 0; i < n; ++i) {
        std::uint8_t rhs = rows[i].rhs;
        for (auto [s, c] : rows[i].terms) {
            if (!c) continue;
            if (node.knows(s))
                rhs ^= gf256::mul(c, static_cast<std::uint8_t>(node.v[s]));
            else
                m[i * w + col[s]] ^= c;
        }
        m[i * w + w - 1] = rhs;
    }
    std::vector<int> piv;
    res.rank = gf256::rref(m, n, w, res.unknowns, &piv);
    if (!commit) return res;
    std::vector<char> is_pivot(res.unknowns, 0);
    for (int c : piv) is_pivot[c] = 1;
    for (int i = 0; i < res.rank; ++i) {
        bool alone = true;
        for (int c = 0; c < res.unknowns && alone; ++c)
            if (!is_pivot[c] && m[i * w + c]) alone = false;
        if (!alone) continue;
        node.v[syms[piv[i]]] = m[i * w + w - 1];
        ++res.learned;
    }
    return res;
}

std::vector<GroupSet> t_subsets(int G, int t) {
    std::vector<GroupSet> out;
    for (GroupSet W = 0; W < (1u << G); ++W)
        if (popcount(W) == t) out.push_back(W);
    std::sort(out.begin(), out.end(), [G](GroupSet a, GroupSet b) { return subset_rank(a, G) < subset_rank(b, G); });
    return out;
}

}  // namespace

Library Library::random(long N, long B, std::uint64_t seed) {
    Library lib;
    lib.N = N;
    lib.B = B;
    lib.data.resize(static_cast<size_t>(N * B));
    for (size_t i = 0; i < lib.data.size(); ++i) lib.data[i] = draw({seed, kLibrary, i});
    return lib;
}

long SymbolLayout::units_per_file() const { return std::max(t, 1) * binom_small(G, t); }

long SymbolLayout::subfile_offset(GroupSet W) const { return subset_rank(W, G) * subfile_len(); }

long SymbolLayout::piece_offset(GroupSet W, int g) const {
    long pos = popcount(W & ((1u << g) - 1u));
    return (subset_rank(W, G) * t + pos) * c;
}

long default_B(const SchemeDescriptor& s, long c) { return std::max(s.t, 1) * binom_small(s.G(), s.t) * c; }

long CacheContents::stored_symbols(int h) const {
    long n = 0;
    for (int b : sbs_blocks[h]) n += blocks[b].rows;
    return n;
}

CacheContents place(const Topology& topo, const SchemeDescriptor& s, const Library& lib, std::uint64_t seed) {
    validate(topo, s);
    if (s.G() > 20) throw DomainError("simulation supports at most 20 groups");
    CacheContents cc;
    auto& L = cc.layout;
    L.G = s.G();
    L.t = s.t;
    L.N = topo.N();
    L.B = lib.B;
    if (lib.N != topo.N()) throw DomainError("library size differs from N");
    if (lib.B % L.units_per_file()) throw DomainError("B must be a multiple of " + std::to_string(L.units_per_file()));
    L.c = lib.B / L.units_per_file();
    cc.sbs_blocks.assign(topo.H(), {});
    if (s.t == 0) return cc;

    const long room = topo.N() - topo.K_mbs();
    const long b = L.subfile_len();
    const int rows = static_cast<int>(room * b), cols = static_cast<int>(topo.N() * b);
    // every set of K_mbs step-1 files must leave a solvable square system
    std::vector<std::vector<int>> keep_sets;
    if (rows > 0 && topo.N() <= 20 && binom(topo.N(), topo.K_mbs()) <= 512) {
        for (GroupSet drop = 0; drop < (1u << topo.N()); ++drop) {
            if (popcount(drop) != topo.K_mbs()) continue;
            std::vector<int> keep;
            for (int f = 0; f < topo.N(); ++f)
                if (!(drop >> f & 1u))
                    for (long j = 0; j < b; ++j) keep.push_back(static_cast<int>(f * b + j));
            keep_sets.push_back(std::move(keep));
        }
    }
    for (GroupSet W : t_subsets(s.G(), s.t)) {
        CacheBlock blk;
        blk.W = W;
        blk.rows = rows;
        blk.cols = cols;
        const long rank_w = subset_rank(W, s.G());
        bool ok = rows == 0;
        for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
            blk.attempts = attempt + 1;
            blk.coef.assign(static_cast<size_t>(rows) * cols, 0);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    blk.coef[i * cols + j] = draw({seed, kCache, static_cast<std::uint64_t>(rank_w),
                                                   static_cast<std::uint64_t>(attempt), static_cast<std::uint64_t>(i),
                                                   static_cast<std::uint64_t>(j)});
            ok = gf256::rank(blk.coef, rows, cols) == rows;
            for (const auto& keep : keep_sets) {
                if (!ok) break;
                std::vector<std::uint8_t> sub(static_cast<size_t>(rows) * keep.size());
                for (int i = 0; i < rows; ++i)
                    for (size_t j = 0; j < keep.size(); ++j) sub[i * keep.size() + j] = blk.coef[i * cols + keep[j]];
                ok = gf256::rank(std::move(sub), rows, static_cast<int>(keep.size())) == rows;
            }
        }
        if (!ok) throw VerificationError("degenerate field sampling");
        blk.value.assign(rows, 0);
        const long off = L.subfile_offset(W);
        for (int i = 0; i < rows; ++i) {
            std::uint8_t acc = 0;
            for (int j = 0; j < cols; ++j)
                acc ^= gf256::mul(blk.coef[i * cols + j], lib.at(static_cast<int>(j / b) + 1, off + j % b));
            blk.value[i] = acc;
        }
        cc.blocks.push_back(std::move(blk));
    }
    for (int g = 0; g < s.G(); ++g)
        for (size_t bi = 0; bi < cc.blocks.size(); ++bi)
            if (cc.blocks[bi].W >> g & 1u)
                for (int h : s.phi.groups[g]) cc.sbs_blocks[h].push_back(static_cast<int>(bi));
    for (int h = 0; h < topo.H(); ++h)
        if (Rational(cc.stored_symbols(h)) > s.M(topo) * Rational(lib.B))
            throw VerificationError("cache of SBS " + std::to_string(h + 1) + " exceeds M*B");
    return cc;
}

namespace {

std::vector<Row> cache_rows(const CacheContents& cc, const CacheBlock& blk) {
    const auto& L = cc.layout;
    const long b = L.subfile_len(), off = L.subfile_offset(blk.W);
    std::vector<Row> rows(blk.rows);
    for (int i = 0; i < blk.rows; ++i) {
        rows[i].rhs = blk.value[i];
        rows[i].terms.reserve(blk.cols);
        for (int j = 0; j < blk.cols; ++j)
            rows[i].terms.push_back({L.symbol(static_cast<int>(j / b) + 1, off + j % b), blk.coef[i * blk.cols + j]});
    }
    return rows;
}

std::vector<long> rlc_support(const SymbolLayout& L, const RlcSet& set) {
    std::vector<long> sup;
    if (set.kind == RlcSet::WholeFile) {
        for (long o = 0; o < L.B; ++o) sup.push_back(L.symbol(set.file, o));
    } else {
        for (GroupSet W : t_subsets(L.G, L.t)) {
            if (!(W >> set.g & 1u)) continue;
            long off = L.piece_offset(W, set.g);
            for (long o = 0; o < L.c; ++o) sup.push_back(L.symbol(set.file, off + o));
        }
    }
    return sup;
}

std::vector<Row> message_rows(const SymbolLayout& L, const Library& lib, const Message& m, std::uint64_t seed,
                              std::uint64_t index, int attempt) {
    std::vector<Row> rows;
    auto value = [&](long sym) { return lib.data[sym]; };
    switch (m.kind) {
        case MsgKind::WholeFile:
            for (long o = 0; o < L.B; ++o) {
                long s = L.symbol(m.file, o);
                rows.push_back({{{s, 1}}, value(s)});
            }
            break;
        case MsgKind::XorSubfiles:
            for (long o = 0; o < L.subfile_len(); ++o) {
                Row r;
                for (const auto& ref : m.subfiles) {
                    long s = L.symbol(ref.file, L.subfile_offset(ref.W) + o);
                    r.terms.push_back({s, 1});
                    r.rhs ^= value(s);
                }
                rows.push_back(std::move(r));
            }
            break;
        case MsgKind::XorSubpieces:
            for (long o = 0; o < L.c; ++o) {
                Row r;
                for (const auto& ref : m.pieces) {
                    long s = L.symbol(ref.file, L.piece_offset(ref.W, ref.g) + o);
                    r.terms.push_back({s, 1});
                    r.rhs ^= value(s);
                }
                rows.push_back(std::move(r));
            }
            break;
        case MsgKind::RLC: {
            auto sup = rlc_support(L, m.rlc);
            for (long i = 0; i < m.units * L.c; ++i) {
                Row r;
                for (size_t j = 0; j < sup.size(); ++j) {
                    std::uint8_t c = draw({seed, kRlc, index, static_cast<std::uint64_t>(attempt),
                                           static_cast<std::uint64_t>(i), j});
                    r.terms.push_back({sup[j], c});
                    r.rhs ^= gf256::mul(c, value(sup[j]));
                }
                rows.push_back(std::move(r));
            }
            break;
        }
    }
    return rows;
}

std::string describe_symbol(const SymbolLayout& L, long sym) {
    int file = static_cast<int>(sym / L.B) + 1;
    long unit = (sym % L.B) / L.c;
    long sub = unit / std::max(L.t, 1);
    std::string W = "?";
    for (GroupSet cand : t_subsets(L.G, L.t))
        if (subset_rank(cand, L.G) == sub) W = set_str(cand);
    return "F_{" + std::to_string(file) + "," + W + "}";
}

}  // namespace

Transcript execute(const Topology& topo, const SchemeDescriptor& s, const Library& lib, const CacheContents& cache,
                   const DeliveryPlan& plan, const Demand& d, std::uint64_t seed) {
    d.validate(topo);
    const auto& L = cache.layout;
    const int H = topo.H();
    if (s.G() != L.G || s.t != L.t || L.units_per_file() != plan.units_per_file) throw DomainError("plan and placement use different schemes");
    Transcript tr;
    tr.B = L.B;
    tr.symbols_per_link.assign(H + 1, 0);
    for (int h = 0; h < H; ++h) tr.cache_symbols.push_back(cache.stored_symbols(h));

    const size_t nsym = static_cast<size_t>(L.N * L.B);
    std::vector<Node> sbs(H, Node{std::vector<std::int16_t>(nsym, -1)});
    Node mbs_view{std::vector<std::int16_t>(nsym, -1)};

    for (const auto& m : plan.step1) {
        if (m.source != 0) throw VerificationError("step-1 messages must come from the MBS");
        auto rows = message_rows(L, lib, m, seed, 0, 0);
        tr.symbols_per_link[0] += static_cast<long>(rows.size());
        for (auto& n : sbs) solve_block(rows, n, true);
        solve_block(rows, mbs_view, true);
    }
    std::vector<std::vector<std::vector<Row>>> cached(H);
    for (int h = 0; h < H; ++h)
        for (int b : cache.sbs_blocks[h]) {
            cached[h].push_back(cache_rows(cache, cache.blocks[b]));
            solve_block(cached[h].back(), sbs[h], true);
        }
    const std::vector<Node> sender_view = sbs;

    std::vector<std::vector<Row>> sent;
    for (size_t idx = 0; idx < plan.step2.size(); ++idx) {
        const auto& m = plan.step2[idx];
        std::vector<Node*> receivers;
        for (int h = 0; h < H; ++h)
            if (h != m.source - 1) receivers.push_back(&sbs[h]);
        if (m.source == 0) receivers.push_back(&mbs_view);
        std::vector<Row> rows;
        if (m.kind == MsgKind::RLC) {
            bool ok = false;
            for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
                rows = message_rows(L, lib, m, seed, idx, attempt);
                ok = true;
                for (Node* n : receivers) {
                    auto r = solve_block(rows, *n, false);
                    if (r.unknowns <= static_cast<int>(rows.size()) && r.rank < r.unknowns) ok = false;
                }
                if (ok) tr.rlc_attempts.push_back(attempt + 1);
            }
            if (!ok) throw VerificationError("degenerate field sampling");
        } else {
            rows = message_rows(L, lib, m, seed, idx, 0);
        }
        if (m.source > 0) {
            const Node& tx = sender_view[m.source - 1];
            for (const auto& r : rows)
                for (auto [sym, c] : r.terms)
                    if (c && !tx.knows(sym))
                        throw DecodeError("SBS " + std::to_string(m.source) + " cannot form its message",
                                          m.source, describe_symbol(L, sym));
        }
        tr.symbols_per_link[m.source] += static_cast<long>(rows.size());
        for (Node* n : receivers) solve_block(rows, *n, true);
        sent.push_back(std::move(rows));
    }

    auto file_known = [&](const Node& n, int f) {
        for (long o = 0; o < L.B; ++o)
            if (!n.knows(L.symbol(f, o))) return L.symbol(f, o);
        return -1L;
    };
    auto all_done = [&] {
        for (long k = topo.K_mbs(); k < topo.K(); ++k)
            if (file_known(sbs[topo.sbs_of_user(k)], d.d[k]) >= 0) return false;
        return true;
    };
    // Later messages can unlock earlier ones; iterate to a fixed point.
    for (int pass = 0; pass < 8 && !all_done(); ++pass) {
        int learned = 0;
        for (int h = 0; h < H; ++h) {
            for (const auto& rows : cached[h]) learned += solve_block(rows, sbs[h], true).learned;
            for (size_t idx = 0; idx < sent.size(); ++idx)
                if (plan.step2[idx].source - 1 != h) learned += solve_block(sent[idx], sbs[h], true).learned;
        }
        if (!learned) break;
    }

    tr.decoded.assign(topo.K(), false);
    for (long k = 0; k < topo.K(); ++k) {
        int h = topo.sbs_of_user(k);
        const Node& n = h < 0 ? mbs_view : sbs[h];
        long miss = file_known(n, d.d[k]);
        if (miss >= 0)
            throw DecodeError("user " + std::to_string(k + 1) + " cannot decode F_" + std::to_string(d.d[k]), h + 1,
                              describe_symbol(L, miss));
        tr.decoded[k] = true;
    }
    tr.R_mbs = Rational(tr.symbols_per_link[0], L.B);
    tr.R_sbs = 0;
    for (int h = 1; h <= H; ++h) {
        tr.R_h.push_back(Rational(tr.symbols_per_link[h], L.B));
        tr.R_sbs += tr.R_h.back();
    }
    return tr;
}

Transcript simulate(const Topology& topo, const SchemeDescriptor& s, const Demand& d, std::uint64_t seed, long B) {
    if (B == 0) B = default_B(s);
    Library lib = Library::random(topo.N(), B, seed);
    CacheContents cc = place(topo, s, lib, seed);
    DeliveryPlan p = plan(topo, s, d);
    return execute(topo, s, lib, cc, p, d, seed);
}

}  // namespace fogran

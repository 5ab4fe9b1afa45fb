#include "fogran/partition.hpp"

#include "fogran/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace fogran {

Partition Partition::canonical() const {
    Partition p = *this;
    for (auto& g : p.groups) std::sort(g.begin(), g.end());
    std::sort(p.groups.begin(), p.groups.end());
    return p;
}

std::string Partition::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < groups.size(); ++i) {
        if (i) os << '|';
        for (size_t j = 0; j < groups[i].size(); ++j) os << (j ? "," : "") << groups[i][j] + 1;
    }
    return os.str();
}

void validate_partition(const Partition& p, int H) {
    std::vector<int> seen(H, 0);
    for (const auto& g : p.groups) {
        if (g.empty()) throw DomainError("partition has an empty group");
        for (int h : g) {
            if (h < 0 || h >= H) throw DomainError("partition member out of range");
            if (seen[h]++) throw DomainError("partition groups overlap");
        }
    }
    for (int h = 0; h < H; ++h)
        if (!seen[h]) throw DomainError("partition does not cover SBS " + std::to_string(h + 1));
}

Partition parse_partition(std::string_view literal, int H) {
    Partition p;
    std::string s(literal);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    std::stringstream groups(s);
    std::string grp;
    while (std::getline(groups, grp, '|')) {
        std::vector<int> g;
        std::stringstream members(grp);
        std::string m;
        while (std::getline(members, m, ',')) {
            if (m.empty()) throw DomainError("malformed partition literal '" + s + "'");
            try {
                size_t used = 0;
                int v = std::stoi(m, &used);
                if (used != m.size()) throw DomainError("");
                g.push_back(v - 1);
            } catch (const std::exception&) {
                throw DomainError("malformed partition literal '" + s + "'");
            }
        }
        std::sort(g.begin(), g.end());
        p.groups.push_back(std::move(g));
    }
    validate_partition(p, H);
    return p;
}

Partition singleton_partition(int H) {
    Partition p;
    for (int h = 0; h < H; ++h) p.groups.push_back({h});
    return p;
}

std::vector<long> group_occupancies(const Partition& p, const Topology& topo) {
    std::vector<long> q;
    for (const auto& g : p.groups) q.push_back(topo.L_set(g));
    return q;
}

Partition normalize(const Partition& p, const Topology& topo) {
    validate_partition(p, topo.H());
    Partition c = p.canonical();
    std::stable_sort(c.groups.begin(), c.groups.end(), [&](const auto& a, const auto& b) {
        return topo.L_set(a) > topo.L_set(b);
    });
    return c;
}

std::vector<long> clipped_sorted(std::vector<long> q, long cap) {
    std::sort(q.begin(), q.end(), std::greater<>());
    for (auto& v : q) v = std::max(0L, std::min(v, cap));
    return q;
}

int partition_cap() {
    if (const char* env = std::getenv("FOGRAN_PARTITION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 14;
}

BigInt stirling2(int n, int k) {
    if (n < 0 || k < 0) return 0;
    std::vector<BigInt> row(k + 1, 0);
    row[0] = 1;  // S(0,0)
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) row[j] = BigInt(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

void for_each_rgs(int H, int G, const std::function<void(const std::vector<int>&)>& fn) {
    if (G < 1 || G > H) return;
    std::vector<int> a(H, 0);
    // recursive fill: a[i] <= max(a[0..i-1]) + 1, exactly G blocks in total
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == H) {
            if (used == G) fn(a);
            return;
        }
        if (used + (H - i) < G) return;
        for (int v = 0; v <= std::min(used, G - 1); ++v) {
            a[i] = v;
            rec(i + 1, std::max(used, v + 1));
        }
    };
    rec(0, 0);
}

Partition from_rgs(const std::vector<int>& rgs, int G) {
    Partition p;
    p.groups.assign(G, {});
    for (int h = 0; h < static_cast<int>(rgs.size()); ++h) p.groups[rgs[h]].push_back(h);
    return p;
}

std::vector<Partition> enumerate_partitions(int H, int G) {
    if (G < 1 || G > H) throw DomainError("need 1 <= G <= H");
    if (H > partition_cap()) throw DomainError("partition space too large");
    std::vector<Partition> out;
    for_each_rgs(H, G, [&](const std::vector<int>& rgs) { out.push_back(from_rgs(rgs, G)); });
    return out;
}

bool has_singleton_leader(const Topology& topo, int G) {
    const int H = topo.H();
    if (G < 1 || G > H) return false;
    if (G == 1) return H == 1;
    const long lead = topo.L(0);
    // Place SBSs 2..H into G-1 nonempty groups each with occupancy <= L_1 (first-fit search).
    std::vector<long> load(G - 1, 0);
    std::vector<int> count(G - 1, 0);
    std::function<bool(int)> rec = [&](int h) -> bool {
        if (h == H) {
            for (int c : count)
                if (c == 0) return false;
            return true;
        }
        int empty = 0;
        for (int c : count) empty += (c == 0);
        if (empty > H - h) return false;
        bool tried_empty = false;
        for (int g = 0; g < G - 1; ++g) {
            if (count[g] == 0) {
                if (tried_empty) continue;  // empty groups are interchangeable
                tried_empty = true;
            }
            if (load[g] + topo.L(h) > lead) continue;
            load[g] += topo.L(h), ++count[g];
            if (rec(h + 1)) return true;
            load[g] -= topo.L(h), --count[g];
        }
        return false;
    };
    return rec(1);
}

}  // namespace fogran

#include "fogran/figures.hpp"

#include "fogran/agnostic.hpp"
#include "fogran/converse.hpp"
#include "fogran/error.hpp"
#include "fogran/oracle.hpp"

#include <cstdio>
#include <functional>

namespace fogran {

namespace {

using Curve = std::function<std::optional<Rational>(const Rational&)>;

Curve envelope_curve(const std::vector<MemoryLoadPoint>& pts, LinkClass c) {
    auto env = class_envelope(pts, c);
    return [env](const Rational& M) -> std::optional<Rational> {
        if (M < env.front().x) return std::nullopt;
        return envelope_at(env, M);
    };
}

Curve converse_curve(const Topology& topo, LinkClass c) {
    return [topo, c](const Rational& M) {
        Frontier f = converse_frontier(topo, M);
        return c == LinkClass::Shared ? f.min_rm(Rational(0)) : f.min_rs(Rational(topo.K_mbs()));
    };
}

FigureTable sweep(const std::string& id, const std::vector<Rational>& grid,
                  const std::vector<std::pair<std::string, Curve>>& curves) {
    FigureTable t{id, {"M"}, {}};
    for (const auto& [name, _] : curves) t.columns.push_back(name);
    for (const auto& M : grid) {
        std::vector<std::optional<Rational>> row{M};
        for (const auto& [_, f] : curves) row.push_back(f(M));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<MemoryLoadPoint> approach_points(const Topology& topo, Approach a) {
    std::vector<MemoryLoadPoint> pts;
    for (int t = class_of(a) == LinkClass::Shared ? 0 : 1; t <= topo.H(); ++t)
        pts.push_back(approach_point(topo, SchemeDescriptor::sym(topo, t, a)));
    return pts;
}

const Topology fig3_topology(4, 4, {6, 4, 3, 3}, 20);
const Topology fig5_topology(6, 10, {20, 20, 8, 6, 4, 2}, 70);

Topology fig6_topology() {
    std::vector<long> L(30, 3);
    for (int h = 0; h < 10; ++h) L[h] = 30;
    return Topology(30, 0, L, 360);
}

Partition fig6_partition() {
    Partition p;
    for (int h = 0; h < 10; ++h) p.groups.push_back({h});
    p.groups.emplace_back();
    p.groups.emplace_back();
    for (int h = 10; h < 20; ++h) p.groups[10].push_back(h);
    for (int h = 20; h < 30; ++h) p.groups[11].push_back(h);
    return p;
}

TopologyDistribution fig7_distribution() {
    TopologyDistribution d;
    d.N = 140;
    d.K_mbs = CountDist::poisson(20);
    for (long l : {20, 20, 8, 6, 4, 2}) d.L.push_back(CountDist::poisson(l));
    return d;
}

// Agnostic points over (G, t, n); G restricted to {H} when asym is false, n to {0} when coded is false.
std::vector<MemoryLoadPoint> agnostic_points(const TopologyDistribution& dist, LinkClass c, bool asym, bool coded) {
    const EvalMode mode = EvalMode::monte_carlo(4000, 7);
    const int H = dist.H();
    std::vector<MemoryLoadPoint> pts;
    for (int G = asym ? (c == LinkClass::Shared ? 1 : 2) : H; G <= H; ++G) {
        Partition phi = G == H ? singleton_partition(H) : variance_partition(dist, G);
        for (long n = 0; n <= (coded ? 40 : 0); n += 2) {
            for (int t = c == LinkClass::Shared ? 0 : 1; t <= G; ++t) {
                if (c == LinkClass::Shared) {
                    pts.push_back(agnostic_shared_point(dist, phi, t, n, mode).point);
                } else if ((dist.N - n) * t >= dist.N) {
                    pts.push_back(agnostic_sidelink_point(dist, phi, t, n, mode).point);
                }
            }
        }
    }
    return pts;
}

}  // namespace

std::vector<MemoryLoadPoint> man_placement_points(const Topology& topo, LinkClass c) {
    const long room = topo.N() - topo.K_mbs();
    std::vector<long> L;
    for (int h = 0; h < topo.H(); ++h) L.push_back(topo.L_clipped(h));
    std::vector<MemoryLoadPoint> pts;
    for (int t = c == LinkClass::Shared ? 0 : 1; t <= topo.H(); ++t) {
        Rational M = Rational(t) * Rational(topo.N()) / Rational(topo.H());
        if (c == LinkClass::Shared)
            pts.push_back({M, Rational(topo.K_mbs()) + (room > 0 ? shared2_load(L, t) : Rational(0)), 0});
        else
            pts.push_back({M, Rational(topo.K_mbs()), side2_load(L, t)});
    }
    return pts;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"2", "3a", "3b", "5a", "5b", "6", "7a", "7b"};
    return ids;
}

FigureTable make_figure(const std::string& id) {
    const auto S = LinkClass::Shared, D = LinkClass::Sidelink;
    if (id == "2") {
        FigureTable t{id, {"R_sbs", "R_mbs"}, {}};
        for (const auto& c : region_corners(converse_system(fig3_topology, Rational(5)))) t.rows.push_back({c.rs, c.rm});
        return t;
    }
    if (id == "3a") {
        const auto& T = fig3_topology;
        return sweep(id, make_grid(0, 20, Rational(1, 2)),
                     {{"proposed", envelope_curve(sym_points(T, S), S)},
                      {"man_placement", envelope_curve(man_placement_points(T, S), S)},
                      {"converse", converse_curve(T, S)}});
    }
    if (id == "3b") {
        const auto& T = fig3_topology;
        return sweep(id, make_grid(4, 20, Rational(1, 2)),
                     {{"proposed", envelope_curve(sym_points(T, D), D)},
                      {"direct_d2d", envelope_curve(approach_points(T, Approach::Side2Direct), D)},
                      {"man_placement", envelope_curve(man_placement_points(T, D), D)},
                      {"converse", converse_curve(T, D)}});
    }
    if (id == "5a" || id == "5b") {
        const auto& T = fig5_topology;
        const auto c = id == "5a" ? S : D;
        return sweep(id, make_grid(0, 70, Rational(1)),
                     {{"asymmetric", envelope_curve(asym_points(T, c), c)},
                      {"symmetric", envelope_curve(sym_points(T, c), c)},
                      {"man_placement", envelope_curve(man_placement_points(T, c), c)},
                      {"converse", converse_curve(T, c)}});
    }
    if (id == "6") {
        const Topology T = fig6_topology();
        const Partition phi = fig6_partition();
        std::vector<MemoryLoadPoint> asym;
        for (int t = 0; t <= 12; ++t) asym.push_back(asym_shared_point(T, 12, t, phi).point);
        return sweep(id, make_grid(0, 360, Rational(6)),
                     {{"asymmetric_12way", envelope_curve(asym, S)},
                      {"man_placement", envelope_curve(approach_points(T, Approach::Shared2), S)},
                      {"converse", converse_curve(T, S)}});
    }
    if (id == "7a" || id == "7b") {
        const auto dist = fig7_distribution();
        const auto c = id == "7a" ? S : D;
        return sweep(id, make_grid(0, 140, Rational(5)),
                     {{"proposed", envelope_curve(agnostic_points(dist, c, true, true), c)},
                      {"inter_file_only", envelope_curve(agnostic_points(dist, c, false, true), c)},
                      {"asymmetric_only", envelope_curve(agnostic_points(dist, c, true, false), c)},
                      {"man_placement", envelope_curve(agnostic_points(dist, c, false, false), c)}});
    }
    throw DomainError("unknown figure id '" + id + "'");
}

void write_csv(const FigureTable& table, std::ostream& out) {
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i] << "," << table.columns[i] << "_exact";
    out << "\n";
    char buf[64];
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            if (!row[i]) {
                out << ",";
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.12g", row[i]->to_double());
            out << buf << "," << row[i]->str();
        }
        out << "\n";
    }
}

}  // namespace fogran

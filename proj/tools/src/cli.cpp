#include "fogran/cli.hpp"

#include "fogran/agnostic.hpp"
#include "fogran/codec.hpp"
#include "fogran/converse.hpp"
#include "fogran/error.hpp"
#include "fogran/figures.hpp"
#include "fogran/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fogran::cli {

namespace {

using json = nlohmann::json;

json load_json(const std::string& arg) {
    std::string text = arg;
    if (arg.empty() || arg.front() != '{') {
        std::ifstream in(arg);
        if (!in) throw DomainError("cannot read '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

Rational rational_of(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) return Rational::parse(j.dump());
    throw DomainError("expected a number");
}

// Topology as given by the user plus the mapping to the internal (sorted) order.
struct Input {
    Topology topo;
    std::vector<long> orig_L;
    std::vector<int> inv;  // inv[original SBS] = sorted SBS

    long external_user(long k) const {
        const long K0 = topo.K_mbs();
        if (k < K0) return k;
        int h = topo.sbs_of_user(k);
        int j = topo.perm()[h];
        long off = K0;
        for (int i = 0; i < j; ++i) off += orig_L[i];
        return off + (k - topo.first_user(h));
    }

    Demand internal_demand(const std::vector<int>& d) const {
        if (static_cast<long>(d.size()) != topo.K())
            throw DomainError("demand must list " + std::to_string(topo.K()) + " files");
        Demand out;
        out.d.resize(d.size());
        for (long k = 0; k < topo.K(); ++k) out.d[k] = d[external_user(k)];
        return out;
    }

    Partition internal_partition(const std::string& literal) const {
        Partition p = parse_partition(literal, topo.H());
        for (auto& g : p.groups) {
            for (int& h : g) h = inv[h];
            std::sort(g.begin(), g.end());
        }
        return p;
    }

    std::string external_partition(const Partition& p) const {
        Partition q = p;
        for (auto& g : q.groups) {
            for (int& h : g) h = topo.perm()[h];
            std::sort(g.begin(), g.end());
        }
        return q.str();
    }
};

Input load_topology(const std::string& arg) {
    json j = load_json(arg);
    try {
        std::vector<long> L = j.at("L").get<std::vector<long>>();
        if (j.contains("H") && j.at("H").get<long>() != static_cast<long>(L.size()))
            throw DomainError("H does not match the length of L");
        for (long l : L)
            if (l <= 0) throw DomainError("occupancies must be positive");
        Topology topo = Topology::normalized(j.at("K_mbs").get<long>(), L, j.at("N").get<long>());
        std::vector<int> inv(L.size());
        for (int h = 0; h < topo.H(); ++h) inv[topo.perm()[h]] = h;
        return {topo, L, inv};
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad topology: ") + e.what());
    }
}

CountDist count_of(const json& j) {
    if (j.is_number_integer()) return CountDist::fixed(j.get<long>());
    if (j.contains("fixed")) return CountDist::fixed(j.at("fixed").get<long>());
    if (j.contains("poisson")) return CountDist::poisson(rational_of(j.at("poisson")));
    if (j.contains("histogram")) {
        std::vector<std::pair<long, Rational>> m;
        for (const auto& e : j.at("histogram")) m.push_back({e.at(0).get<long>(), rational_of(e.at(1))});
        return CountDist::histogram(std::move(m));
    }
    throw DomainError("count distribution must be an integer or have fixed/poisson/histogram");
}

TopologyDistribution load_distribution(const std::string& arg) {
    json j = load_json(arg);
    try {
        TopologyDistribution d;
        d.N = j.at("N").get<long>();
        d.K_mbs = count_of(j.at("K_mbs"));
        for (const auto& e : j.at("L")) d.L.push_back(count_of(e));
        if (d.L.empty()) throw DomainError("need at least one SBS");
        return d;
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad distribution: ") + e.what());
    }
}

std::vector<int> parse_demand(const std::string& s) {
    std::vector<int> d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            d.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("bad demand entry '" + tok + "'");
        }
    }
    return d;
}

json point_json(const MemoryLoadPoint& p) {
    return {{"M", p.M.str()}, {"R_mbs", p.R_mbs.str()}, {"R_sbs", p.R_sbs.str()}};
}

std::string decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", r.to_double());
    return buf;
}

struct SchemeOpts {
    std::string family = "sym", cls = "shared", approach, partition;
    int t = 0, G = 0;
};

void add_scheme_options(CLI::App* sc, SchemeOpts& o) {
    sc->add_option("--family", o.family, "sym or asym")->check(CLI::IsMember({"sym", "asym"}));
    sc->add_option("--class", o.cls, "shared or sidelink")->check(CLI::IsMember({"shared", "sidelink"}));
    sc->add_option("--approach", o.approach, "shared1|shared2|side1|side2|side2-direct")
        ->check(CLI::IsMember({"shared1", "shared2", "side1", "side2", "side2-direct"}));
    sc->add_option("--t", o.t, "placement parameter")->required();
    sc->add_option("--G", o.G, "number of groups (asym)");
    sc->add_option("--partition", o.partition, "partition literal such as \"1|2,3\"");
}

LinkClass class_of_opts(const SchemeOpts& o) {
    return o.approach.empty() ? parse_class(o.cls) : class_of(parse_approach(o.approach));
}

int groups_of(const Input& in, const SchemeOpts& o) {
    if (o.G) return o.G;
    if (!o.partition.empty()) return in.internal_partition(o.partition).G();
    return in.topo.H();
}

std::optional<Partition> given_partition(const Input& in, const SchemeOpts& o) {
    if (o.partition.empty()) return std::nullopt;
    return in.internal_partition(o.partition);
}

SchemeDescriptor resolve(const Input& in, const SchemeOpts& o) {
    const Topology& topo = in.topo;
    const LinkClass c = class_of_opts(o);
    if (parse_family(o.family) == Family::Sym) {
        if (!o.partition.empty() || (o.G && o.G != topo.H())) throw DomainError("symmetric scheme takes no partition");
        if (!o.approach.empty()) return SchemeDescriptor::sym(topo, o.t, parse_approach(o.approach));
        // Pick the approach attaining the class point; ties go to the second approach.
        if (c == LinkClass::Shared) {
            auto a = SchemeDescriptor::sym(topo, o.t, Approach::Shared1);
            auto b = SchemeDescriptor::sym(topo, o.t, Approach::Shared2);
            return approach_point(topo, a).R_mbs < approach_point(topo, b).R_mbs ? a : b;
        }
        auto b = SchemeDescriptor::sym(topo, o.t, Approach::Side2);
        if (topo.H() < 2) return b;
        auto a = SchemeDescriptor::sym(topo, o.t, Approach::Side1);
        return approach_point(topo, a).R_sbs < approach_point(topo, b).R_sbs ? a : b;
    }
    const int G = groups_of(in, o);
    Partition phi = c == LinkClass::Shared ? asym_shared_point(topo, G, o.t, given_partition(in, o)).phi
                                           : asym_sidelink_point(topo, G, o.t, given_partition(in, o)).phi;
    Approach a = o.approach.empty() ? (c == LinkClass::Shared ? Approach::Shared2 : Approach::Side2)
                                    : parse_approach(o.approach);
    return SchemeDescriptor::asym(topo, phi, o.t, a);
}

json scheme_json(const Input& in, const SchemeDescriptor& s) {
    return {{"family", to_string(s.family)},
            {"class", to_string(s.cls())},
            {"approach", to_string(s.approach)},
            {"t", s.t},
            {"G", s.G()},
            {"partition", in.external_partition(s.phi)},
            {"M", s.M(in.topo).str()}};
}

std::string kind_str(MsgKind k) {
    switch (k) {
        case MsgKind::WholeFile: return "whole-file";
        case MsgKind::RLC: return "rlc";
        case MsgKind::XorSubfiles: return "xor-subfiles";
        case MsgKind::XorSubpieces: return "xor-subpieces";
    }
    return "?";
}

int external_source(const Input& in, int source) { return source == 0 ? 0 : in.topo.perm()[source - 1] + 1; }

json plan_json(const Input& in, const DeliveryPlan& p) {
    auto msgs = [&](const std::vector<Message>& ms) {
        json a = json::array();
        for (const auto& m : ms)
            a.push_back({{"source", external_source(in, m.source)},
                         {"kind", kind_str(m.kind)},
                         {"size", p.size(m).str()},
                         {"message", m.describe()}});
        return a;
    };
    auto per = p.per_sbs_loads();
    json sbs = json::array();
    for (size_t j = 0; j < per.size(); ++j) sbs.push_back(per[in.inv[j]].str());
    // Message strings use the sorted SBS numbering; sbs_order[h-1] is the input id of sorted SBS h.
    json order = json::array();
    for (int h = 0; h < in.topo.H(); ++h) order.push_back(in.topo.perm()[h] + 1);
    return {{"units_per_file", p.units_per_file}, {"sbs_order", order}, {"step1", msgs(p.step1)}, {"step2", msgs(p.step2)},
            {"R_mbs", p.R_mbs().str()}, {"R_sbs", p.R_sbs().str()}, {"per_sbs", sbs}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Memory-load tradeoffs for cache-aided Fog-RAN networks", "fogran"};
    app.require_subcommand(1);
    std::string format;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string topo_arg, dist_arg, M_arg, demand_arg, grid_arg, fig_id;
    SchemeOpts so;
    std::uint64_t seed = 1;
    long B = 0, n = 0;
    std::size_t cap = 1'000'000, mc = 0;
    bool no_plans = false, unprimed = false;

    auto* region = app.add_subcommand("region", "converse region at a cache size");
    region->add_option("--topology", topo_arg, "topology JSON file or inline object")->required();
    region->add_option("--M", M_arg, "cache size, p/q or decimal")->required();

    auto* scheme = app.add_subcommand("scheme", "achievable memory-load point");
    scheme->add_option("--topology", topo_arg)->required();
    add_scheme_options(scheme, so);

    auto* plan_cmd = app.add_subcommand("plan", "delivery plan for one demand");
    plan_cmd->add_option("--topology", topo_arg)->required();
    plan_cmd->add_option("--demand", demand_arg, "comma separated file ids, MBS users first")->required();
    add_scheme_options(plan_cmd, so);

    auto* sim = app.add_subcommand("simulate", "bit-exact placement, delivery and decoding");
    sim->add_option("--topology", topo_arg)->required();
    sim->add_option("--demand", demand_arg)->required();
    sim->add_option("--seed", seed);
    sim->add_option("--B", B, "symbols per file (0 = minimal)");
    add_scheme_options(sim, so);

    auto* agn = app.add_subcommand("agnostic", "expected loads over a random topology");
    agn->add_option("--dist", dist_arg, "distribution JSON file or inline object")->required();
    agn->add_option("--class", so.cls)->check(CLI::IsMember({"shared", "sidelink"}));
    agn->add_option("--G", so.G);
    agn->add_option("--t", so.t)->required();
    agn->add_option("--n", n, "files with coded placement");
    agn->add_option("--partition", so.partition);
    agn->add_option("--mc", mc, "Monte Carlo samples (0 = exhaustive)");
    agn->add_option("--seed", seed);
    agn->add_option("--cap", cap, "exhaustive realization cap");
    agn->add_flag("--unprimed-qt", unprimed, "use the unclipped q_t inside the sidelink bracket");

    auto* verify = app.add_subcommand("verify", "exhaustive worst-case demand check");
    verify->add_option("--topology", topo_arg)->required();
    verify->add_option("--cap", cap);
    verify->add_option("--seed", seed);
    verify->add_flag("--no-plans", no_plans, "skip per-demand plan construction");
    add_scheme_options(verify, so);

    auto* gaps = app.add_subcommand("gaps", "gap-factor report");
    gaps->add_option("--topology", topo_arg)->required();
    gaps->add_option("--grid", grid_arg, "lo:hi:step");

    auto* fig = app.add_subcommand("figure", "curve data for a figure");
    fig->add_option("--id", fig_id)->required()->check(CLI::IsMember(figure_ids()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        auto fmt = [&](const char* dflt) { return format.empty() ? std::string(dflt) : format; };
        if (*region) {
            Input in = load_topology(topo_arg);
            Rational M = Rational::parse(M_arg);
            auto sys = converse_system(in.topo, M);
            auto corners = region_corners(sys);
            if (fmt("json") == "csv") {
                out << "R_sbs,R_sbs_exact,R_mbs,R_mbs_exact\n";
                for (const auto& c : corners)
                    out << decimal(c.rs) << "," << c.rs.str() << "," << decimal(c.rm) << "," << c.rm.str() << "\n";
                return Ok;
            }
            json ineq = json::array(), cs = json::array();
            for (const auto& h : sys.inequalities)
                ineq.push_back({{"a", h.a.str()}, {"b", h.b.str()}, {"c", h.c.str()}, {"label", h.label}});
            for (const auto& c : corners) cs.push_back({c.rs.str(), c.rm.str()});
            emit(out, {{"M", M.str()}, {"inequalities", ineq}, {"corners", cs}});
            return Ok;
        }
        if (*scheme) {
            Input in = load_topology(topo_arg);
            const auto& topo = in.topo;
            const LinkClass c = class_of_opts(so);
            json j;
            MemoryLoadPoint p;
            if (!so.approach.empty()) {
                auto s = resolve(in, so);
                p = approach_point(topo, s);
                j = scheme_json(in, s);
            } else if (parse_family(so.family) == Family::Sym) {
                if (!so.partition.empty() || (so.G && so.G != topo.H()))
                    throw DomainError("symmetric scheme takes no partition");
                p = c == LinkClass::Shared ? sym_shared_point(topo, so.t) : sym_sidelink_point(topo, so.t);
                j = {{"family", "sym"}, {"class", to_string(c)}, {"t", so.t}, {"G", topo.H()}};
            } else {
                const int G = groups_of(in, so);
                auto choice = c == LinkClass::Shared ? asym_shared_point(topo, G, so.t, given_partition(in, so))
                                                     : asym_sidelink_point(topo, G, so.t, given_partition(in, so));
                p = choice.point;
                j = {{"family", "asym"}, {"class", to_string(c)}, {"t", so.t}, {"G", G},
                     {"partition", in.external_partition(choice.phi)},
                     {"partition_search", so.partition.empty() ? "exhaustive" : "given"}};
                if (c == LinkClass::Sidelink) j["app1_point"] = point_json(asym_app1_point(topo));
            }
            j["point"] = point_json(p);
            j["subpacketization"] = subpacketization_level(j["G"].get<int>(), so.t).get_str();
            emit(out, j);
            return Ok;
        }
        if (*plan_cmd || *sim) {
            Input in = load_topology(topo_arg);
            auto s = resolve(in, so);
            Demand d = in.internal_demand(parse_demand(demand_arg));
            d.validate(in.topo);
            DeliveryPlan p = plan(in.topo, s, d);
            if (*plan_cmd) {
                json j = plan_json(in, p);
                j["scheme"] = scheme_json(in, s);
                emit(out, j);
                return Ok;
            }
            try {
                Transcript tr = simulate(in.topo, s, d, seed, B);
                json dec = json::array(), links = json::array(), cache = json::array();
                std::vector<bool> ext(tr.decoded.size());
                for (size_t k = 0; k < tr.decoded.size(); ++k) ext[in.external_user(k)] = tr.decoded[k];
                for (bool b : ext) dec.push_back(b);
                links.push_back(tr.symbols_per_link[0]);
                for (size_t j = 0; j < in.orig_L.size(); ++j) links.push_back(tr.symbols_per_link[in.inv[j] + 1]);
                for (size_t j = 0; j < in.orig_L.size(); ++j) cache.push_back(tr.cache_symbols[in.inv[j]]);
                bool match = tr.R_mbs == p.R_mbs() && tr.R_sbs == p.R_sbs();
                emit(out, {{"scheme", scheme_json(in, s)},
                           {"B", tr.B},
                           {"decoded", dec},
                           {"measured_loads", {{"R_mbs", tr.R_mbs.str()}, {"R_sbs", tr.R_sbs.str()}}},
                           {"plan_loads", {{"R_mbs", p.R_mbs().str()}, {"R_sbs", p.R_sbs().str()}}},
                           {"symbols_per_link", links},
                           {"cache_symbols", cache},
                           {"cache_budget", (s.M(in.topo) * Rational(tr.B)).str()},
                           {"loads_match_plan", match}});
                return match ? Ok : VerificationFailure;
            } catch (const DecodeError& e) {
                err << json{{"error", e.what()}, {"node", external_source(in, e.node)}, {"missing", e.missing}}.dump()
                    << "\n";
                return VerificationFailure;
            }
        }
        if (*agn) {
            TopologyDistribution dist = load_distribution(dist_arg);
            const LinkClass c = parse_class(so.cls);
            const int G = so.G ? so.G : dist.H();
            Partition phi = so.partition.empty() ? (G == dist.H() ? singleton_partition(G) : variance_partition(dist, G))
                                                 : parse_partition(so.partition, dist.H());
            EvalMode mode = mc ? EvalMode::monte_carlo(mc, seed) : EvalMode::exhaustive(cap);
            auto r = c == LinkClass::Shared ? agnostic_shared_point(dist, phi, so.t, n, mode)
                                            : agnostic_sidelink_point(dist, phi, so.t, n, mode, unprimed);
            json j{{"class", to_string(c)}, {"G", phi.G()}, {"t", so.t}, {"n", n}, {"partition", phi.str()},
                   {"mode", mc ? "monte-carlo" : "exhaustive"}, {"realizations", r.realizations},
                   {"point", point_json(r.point)},
                   {"decimal", {{"R_mbs", r.point.R_mbs.to_double()}, {"R_sbs", r.point.R_sbs.to_double()}}}};
            if (mc) j["stderr"] = {{"R_mbs", r.stderr_mbs}, {"R_sbs", r.stderr_sbs}};
            emit(out, j);
            return Ok;
        }
        if (*verify) {
            Input in = load_topology(topo_arg);
            auto s = resolve(in, so);
            WorstCaseOptions opt;
            opt.cap = cap;
            opt.check_plans = !no_plans;
            WorstCase w = worst_case_demand(in.topo, s, opt);
            MemoryLoadPoint cf = approach_point(in.topo, s);
            Transcript tr = simulate(in.topo, s, w.demand, seed);
            DeliveryPlan p = plan(in.topo, s, w.demand);
            std::vector<int> ext(w.demand.d.size());
            for (size_t k = 0; k < ext.size(); ++k) ext[in.external_user(k)] = w.demand.d[k];
            bool closed = cf.R_mbs == w.loads.R_mbs && cf.R_sbs == w.loads.R_sbs;
            bool sim_ok = tr.R_mbs == p.R_mbs() && tr.R_sbs == p.R_sbs();
            json j{{"scheme", scheme_json(in, s)},
                   {"closed_form", point_json(cf)},
                   {"worst_case", {{"R_mbs", w.loads.R_mbs.str()}, {"R_sbs", w.loads.R_sbs.str()}}},
                   {"argmax_demand", ext},
                   {"demands", w.demands},
                   {"symmetry_reduced", w.reduced},
                   {"plan_mismatches", w.plan_mismatches},
                   {"closed_form_matches", closed},
                   {"simulation_matches_plan", sim_ok}};
            emit(out, j);
            return closed && sim_ok && w.plan_mismatches == 0 ? Ok : VerificationFailure;
        }
        if (*gaps) {
            Input in = load_topology(topo_arg);
            auto grid = grid_arg.empty() ? make_grid(0, in.topo.N(), 1) : parse_grid(grid_arg);
            GapReport rep = gap_report(in.topo, grid);
            if (fmt("csv") == "csv") {
                out << "check,M,corner_rs,corner_rm,ratio,bound,ok\n";
                for (const auto& c : rep.checks)
                    out << c.check << "," << c.M.str() << "," << c.corner.rs.str() << "," << c.corner.rm.str() << ","
                        << (c.ratio ? c.ratio->str() : "") << "," << c.bound.str() << "," << (c.ok ? 1 : 0) << "\n";
            } else {
                json a = json::array();
                for (const auto& c : rep.checks)
                    a.push_back({{"check", c.check}, {"M", c.M.str()},
                                 {"corner", {c.corner.rs.str(), c.corner.rm.str()}},
                                 {"ratio", c.ratio ? json(c.ratio->str()) : json(nullptr)},
                                 {"bound", c.bound.str()}, {"ok", c.ok}});
                emit(out, {{"checks", a}, {"violations", rep.violations()}});
            }
            return rep.violations() == 0 ? Ok : VerificationFailure;
        }
        if (*fig) {
            FigureTable t = make_figure(fig_id);
            if (fmt("csv") == "csv") {
                write_csv(t, out);
            } else {
                json rows = json::array();
                for (const auto& r : t.rows) {
                    json row = json::array();
                    for (const auto& v : r) row.push_back(v ? json(v->str()) : json(nullptr));
                    rows.push_back(row);
                }
                emit(out, {{"id", t.id}, {"columns", t.columns}, {"rows", rows}});
            }
            return Ok;
        }
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << "\n";
        return VerificationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return DomainFailure;
    }
    return Usage;
}

}  // namespace fogran::cli

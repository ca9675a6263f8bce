#include "sdic/cli.hpp"

#include "sdic/error.hpp"
#include "sdic/mc_oracle.hpp"
#include "sdic/param_spec.hpp"
#include "sdic/strong.hpp"
#include "sdic/sweep.hpp"
#include "sdic/very_strong.hpp"
#include "sdic/weak.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace sdic::cli {

namespace {

using nlohmann::ordered_json;
using namespace sdic::names;

struct Options {
    std::map<std::string, double> params;
    std::string config;
    bool bits = false;
    bool nats = false;
    std::string out;
    std::string channel;
    std::string check;
    std::vector<std::string> axes;
    std::string scene;
    int steps = kDefaultSplitSteps;
    std::uint64_t seed = 1;
    std::int64_t n = kMcDefaultSamples;
    double tol = kMcDefaultTol;
};

ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

void add_common(CLI::App* sub, Options& o) {
    for (const auto& key : ParamSpec::keys()) {
        sub->add_option("--" + key, o.params[key], key + " parameter");
    }
    sub->add_option("--config", o.config, "key = value parameter file; flags override it");
    auto* b = sub->add_flag("--bits", o.bits, "report in bits (default)");
    auto* n = sub->add_flag("--nats", o.nats, "report in nats");
    b->excludes(n);
}

// Plain "key = value" lines; '#' starts a comment. Values must be numbers.
ParamSpec read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    ParamSpec spec;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        char* end = nullptr;
        const double v = std::strtod(val.c_str(), &end);
        if (val.empty() || end != val.c_str() + val.size()) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": value of '" + key + "' is not a number");
        }
        spec.set(key, v);
    }
    return spec;
}

ParamSpec gather(const CLI::App* sub, const Options& o) {
    ParamSpec spec = o.config.empty() ? ParamSpec{} : read_config(o.config);
    for (const auto& key : ParamSpec::keys()) {
        if (sub->get_option("--" + key)->count() > 0) spec.set(key, o.params.at(key));
    }
    return spec;
}

double base_of(const Options& o) { return o.nats ? kNats : kBits; }

ordered_json header(const char* command, const Options& o) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["units"] = o.nats ? "nats" : "bits";
    return j;
}

ordered_json params_json(const IcParams& p) {
    return ordered_json{{"a", p.a},   {"b", p.b},   {"P1", p.P1},  {"P2", p.P2},
                        {"Q1", p.Q1}, {"Q2", p.Q2}, {"rho", p.rho}};
}

ordered_json condition_json(const Condition& c) {
    return ordered_json{{"name", c.name}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"margin", num(c.margin)},
                        {"holds", c.holds}};
}

ordered_json report_json(const ConditionReport& r) {
    ordered_json j;
    j["achieves_capacity"] = r.achieves_capacity;
    j["conditions"] = ordered_json::array();
    for (const auto& c : r.conditions) j["conditions"].push_back(condition_json(c));
    j["cross_checks"] = ordered_json::array();
    for (const auto& c : r.cross_checks) j["cross_checks"].push_back(condition_json(c));
    if (r.capacity_rect) {
        j["capacity_rect"] = {{"R1", r.capacity_rect->first}, {"R2", r.capacity_rect->second}};
    } else {
        j["capacity_rect"] = nullptr;
    }
    j["values"] = ordered_json::object();
    for (const auto& [k, v] : r.values) j["values"][k] = num(v);
    return j;
}

Channel channel_from(const Options& o, const IcParams& p) {
    if (o.channel.empty()) return channel_of(p);
    if (o.channel == "ic") return Channel::IC;
    if (o.channel == "zic") return Channel::ZIC;
    throw UsageError("--channel must be ic or zic");
}

double need_split(const ParamSpec& spec) {
    if (!spec.p1dp) throw UsageError("missing parameter 'p1dp'");
    return *spec.p1dp;
}

void write_out(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

int cmd_classify(const CLI::App* sub, const Options& o, std::ostream& out) {
    const IcParams p = gather(sub, o).resolve();
    p.validate();
    const Channel ch = channel_from(o, p);
    const Regime r = classify(p, ch);
    auto j = header("classify", o);
    j["params"] = params_json(p);
    j["channel"] = ch == Channel::IC ? "IC" : "ZIC";
    j["regime"] = to_string(r.kind);
    j["needs_index_swap"] = r.needs_index_swap;
    j["margins"] = ordered_json::object();
    for (const auto& [k, v] : r.margins) j["margins"][k] = num(v);
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_report(const char* name, const CLI::App* sub, const Options& o, std::ostream& out) {
    const ParamSpec spec = gather(sub, o);
    const IcParams p = spec.resolve();
    const std::string n = name;
    ConditionReport r;
    if (n == "vs-ic") r = vs_ic_check(p, base_of(o));
    else if (n == "vs-zic") r = vs_zic_check(p, base_of(o));
    else if (n == "strong-ic") r = strong_ic_check(p, need_split(spec), base_of(o));
    else r = strong_zic_check(p, need_split(spec), base_of(o));
    auto j = header(name, o);
    j["params"] = params_json(p);
    if (spec.p1dp) j["p1dp"] = *spec.p1dp;
    j["report"] = report_json(r);
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_weak(const CLI::App* sub, const Options& o, std::ostream& out) {
    const IcParams p = gather(sub, o).resolve();
    p.validate();
    const Channel ch = channel_from(o, p);
    const double c = ch == Channel::IC ? weak_ic_sum_capacity(p, base_of(o)) : weak_zic_sum_capacity(p, base_of(o));
    auto j = header("weak", o);
    j["params"] = params_json(p);
    j["channel"] = ch == Channel::IC ? "IC" : "ZIC";
    j["sum_capacity"] = c;
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const CLI::App* sub, const Options& o, std::ostream& out) {
    SweepGrid grid;
    const auto check = parse_check(o.check);
    if (!check) throw UsageError("unknown --check '" + o.check + "'");
    grid.check = *check;
    for (const auto& a : o.axes) {
        Axis ax = parse_axis(a);
        if (std::find(ParamSpec::keys().begin(), ParamSpec::keys().end(), ax.param) == ParamSpec::keys().end()) {
            throw UsageError("unknown axis parameter '" + ax.param + "'");
        }
        grid.axes.push_back(std::move(ax));
    }
    grid.fixed = gather(sub, o);
    grid.log_base = base_of(o);
    const auto cells = run_sweep(grid, Exec::Parallel);

    auto j = header("sweep", o);
    j["check"] = to_string(grid.check);
    j["axes"] = ordered_json::array();
    for (const auto& ax : grid.axes) {
        j["axes"].push_back({{"param", ax.param}, {"lo", ax.lo}, {"hi", ax.hi}, {"steps", ax.steps}});
    }
    j["fixed"] = ordered_json::object();
    for (const auto& key : ParamSpec::keys()) {
        if (auto v = grid.fixed.get(key)) j["fixed"][key] = *v;
    }
    j["cell_count"] = cells.size();
    std::map<std::string, int> tally;
    for (const auto& c : cells) ++tally[c.verdict];
    j["verdicts"] = tally;
    if (!o.out.empty()) {
        std::ostringstream csv;
        write_csv(csv, grid, cells);
        write_out(o.out, csv.str());
        j["csv"] = o.out;
    } else {
        j["cells"] = ordered_json::array();
        for (const auto& c : cells) {
            ordered_json cj;
            for (std::size_t i = 0; i < grid.axes.size(); ++i) cj[grid.axes[i].param] = c.coords[i];
            cj["verdict"] = c.verdict;
            const auto& mn = margin_names(grid.check);
            for (std::size_t i = 0; i < mn.size(); ++i) cj[mn[i]] = c.margins[i] ? num(*c.margins[i]) : nullptr;
            const auto& rn = rate_names(grid.check);
            for (std::size_t i = 0; i < rn.size(); ++i) cj[rn[i]] = c.rates[i] ? num(*c.rates[i]) : nullptr;
            j["cells"].push_back(std::move(cj));
        }
    }
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_segment(const CLI::App* sub, const Options& o, std::ostream& out) {
    const IcParams p = gather(sub, o).resolve();
    const Segment seg = strong_zic_segment(p, o.steps, base_of(o));
    auto j = header("segment", o);
    j["params"] = params_json(p);
    j["grid_steps"] = seg.grid_steps;
    j["degenerate"] = seg.degenerate;
    j["p1dp_min"] = seg.P1dp_min ? ordered_json(*seg.P1dp_min) : ordered_json(nullptr);
    std::ostringstream csv;
    csv << "# schema_version=" << kCsvSchemaVersion << "\np1dp,R1,R2\n";
    j["points"] = ordered_json::array();
    for (const auto& r : seg.rates) {
        j["points"].push_back({{"p1dp", r.P1_doubleprime}, {"R1", r.R1}, {"R2", r.R2}});
        csv << format_number(r.P1_doubleprime) << ',' << format_number(r.R1) << ',' << format_number(r.R2) << '\n';
    }
    if (!o.out.empty()) {
        write_out(o.out, csv.str());
        j["csv"] = o.out;
    }
    out << j.dump(2) << '\n';
    return 0;
}

McQuery composed(std::string desc, std::vector<MiTerm> terms) {
    return {std::move(desc), std::move(terms), kMcComposedTol};
}

int cmd_validate_mc(const CLI::App* sub, const Options& o, std::ostream& out) {
    const ParamSpec spec = gather(sub, o);
    const IcParams p = spec.resolve();
    p.validate();
    GaussianScene scene;
    std::vector<McQuery> q;
    const std::string& sc = o.scene;
    if (sc == "vs-ic") {
        scene = vs_ic_scene(p, vs_ic_coefficients(p, decompose(p, DecompDirection::S1_on_S2)));
        q.push_back(mi_query("I(U;V,Y1)", {"U"}, {"V", Y1}));
        q.push_back(mi_query("I(U;S1',S2)", {"U"}, {S1p, S2}));
        q.push_back(mi_query("I(V;U,Y2)", {"V"}, {"U", Y2}));
        q.push_back(mi_query("I(V;S1',S2)", {"V"}, {S1p, S2}));
        q.push_back(mi_query("I(U;Y2)", {"U"}, {Y2}));
        q.push_back(mi_query("I(V;Y1)", {"V"}, {Y1}));
        q.push_back(composed("I(U;V,Y1)-I(U;S1',S2)", {{{"U"}, {"V", Y1}, {}, 1.0}, {{"U"}, {S1p, S2}, {}, -1.0}}));
        q.push_back(composed("I(V;U,Y2)-I(V;S1',S2)", {{{"V"}, {"U", Y2}, {}, 1.0}, {{"V"}, {S1p, S2}, {}, -1.0}}));
    } else if (sc == "vs-zic") {
        scene = vs_zic_scene(p, vs_zic_coefficients(p, decompose(p, DecompDirection::S1_on_S2)));
        q.push_back(mi_query("I(U;V,Y1)", {"U"}, {"V", Y1}));
        q.push_back(mi_query("I(U;S1',S2)", {"U"}, {S1p, S2}));
        q.push_back(mi_query("I(V;Y1)", {"V"}, {Y1}));
        q.push_back(mi_query("I(V;Y2)", {"V"}, {Y2}));
        q.push_back(mi_query("I(V;S2)", {"V"}, {S2}));
        q.push_back(composed("I(V;Y2)-I(V;S2)", {{{"V"}, {Y2}, {}, 1.0}, {{"V"}, {S2}, {}, -1.0}}));
    } else if (sc == "strong-ic" || sc == "strong-zic") {
        const double split = need_split(spec);
        const Channel ch = sc == "strong-ic" ? Channel::IC : Channel::ZIC;
        if (ch == Channel::ZIC && p.b != 0.0) throw UsageError("strong-zic scene needs b = 0");
        const StrongScheme k = strong_scheme(p, split);
        scene = strong_scene(p, k, ch);
        q.push_back(mi_query("I(U1;Y1)", {"U1"}, {Y1}));
        q.push_back(mi_query("I(U1;S1)", {"U1"}, {S1}));
        q.push_back(mi_query("I(U2;V,Y1|U1)", {"U2"}, {"V", Y1}, {"U1"}));
        q.push_back(mi_query("I(U2;S1|U1)", {"U2"}, {S1}, {"U1"}));
        q.push_back(mi_query("I(V;U1,Y1)", {"V"}, {"U1", Y1}));
        q.push_back(mi_query("I(V;S1)", {"V"}, {S1}));
        q.push_back(mi_query("I(V;Y2)", {"V"}, {Y2}));
        q.push_back(composed("I(V;U1,Y1)-I(V;S1)", {{{"V"}, {"U1", Y1}, {}, 1.0}, {{"V"}, {S1}, {}, -1.0}}));
    } else {
        throw UsageError("--scene must be vs-ic, vs-zic, strong-ic or strong-zic");
    }
    if (o.n < 2) throw UsageError("--n must be at least 2");
    const McReport rep = validate(scene, q, o.n, o.seed, o.tol, base_of(o), Exec::Parallel);

    auto j = header("validate-mc", o);
    j["scene"] = sc;
    j["params"] = params_json(p);
    j["generator"] = rep.generator;
    j["n_samples"] = rep.n_samples;
    j["seed"] = rep.seed;
    j["pass"] = rep.pass;
    j["pairs"] = ordered_json::array();
    for (const auto& pr : rep.pairs) {
        j["pairs"].push_back({{"description", pr.description},
                              {"analytic", num(pr.analytic)},
                              {"empirical", num(pr.empirical)},
                              {"abs_err", num(pr.abs_err)},
                              {"tol", pr.tol},
                              {"pass", pr.pass}});
    }
    out << j.dump(2) << '\n';
    return 0;
}

void error_json(std::ostream& err, std::string_view code, const std::string& message) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["error"] = code;
    j["message"] = message;
    err << j.dump(2) << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    apply_thread_cap_from_env();
    CLI::App app{"State-dependent Gaussian interference channel toolkit"};
    app.name("sdic");
    app.require_subcommand(1);
    Options o;

    auto* classify_cmd = app.add_subcommand("classify", "classify the interference regime");
    add_common(classify_cmd, o);
    classify_cmd->add_option("--channel", o.channel, "ic or zic (default: zic when b = 0)");

    std::vector<CLI::App*> report_cmds;
    for (const char* name : {"vs-ic", "vs-zic", "strong-ic", "strong-zic"}) {
        auto* s = app.add_subcommand(name, std::string("capacity conditions: ") + name);
        add_common(s, o);
        report_cmds.push_back(s);
    }

    auto* weak_cmd = app.add_subcommand("weak", "weak-interference sum capacity");
    add_common(weak_cmd, o);
    weak_cmd->add_option("--channel", o.channel, "ic or zic (default: zic when b = 0)");

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep of one check over a 1-D or 2-D grid");
    add_common(sweep_cmd, o);
    sweep_cmd->add_option("--check", o.check, "vs-ic | vs-ic-curves | vs-zic | strong-ic | strong-zic | weak-ic | weak-zic")
        ->required();
    sweep_cmd->add_option("--axis", o.axes, "name:lo:hi:steps (repeat for a second axis)")->required();
    sweep_cmd->add_option("--out", o.out, "CSV output path");

    auto* segment_cmd = app.add_subcommand("segment", "certified part of the Z-channel sum-capacity line");
    add_common(segment_cmd, o);
    segment_cmd->add_option("--steps", o.steps, "split grid points");
    segment_cmd->add_option("--out", o.out, "CSV output path");

    auto* mc_cmd = app.add_subcommand("validate-mc", "Monte-Carlo check of a scheme's information terms");
    add_common(mc_cmd, o);
    mc_cmd->add_option("--scene", o.scene, "vs-ic | vs-zic | strong-ic | strong-zic")->required();
    mc_cmd->add_option("--seed", o.seed, "generator seed");
    mc_cmd->add_option("--n", o.n, "sample count");
    mc_cmd->add_option("--tol", o.tol, "tolerance for single terms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(classify_cmd, o, out);
        for (auto* s : report_cmds) {
            if (s->parsed()) return cmd_report(s->get_name().c_str(), s, o, out);
        }
        if (weak_cmd->parsed()) return cmd_weak(weak_cmd, o, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_cmd, o, out);
        if (segment_cmd->parsed()) return cmd_segment(segment_cmd, o, out);
        if (mc_cmd->parsed()) return cmd_validate_mc(mc_cmd, o, out);
    } catch (const UsageError& e) {
        error_json(err, "UsageError", e.what());
        return 1;
    } catch (const DomainError& e) {
        error_json(err, to_string(e.code()), e.what());
        return 2;
    }
    return 1;
}

} // namespace sdic::cli

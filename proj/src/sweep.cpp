#include "sdic/sweep.hpp"

#include "sdic/error.hpp"
#include "sdic/strong.hpp"
#include "sdic/very_strong.hpp"
#include "sdic/weak.hpp"

#include <omp.h>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <set>

namespace sdic {

namespace {

const char* verdict_of(const ConditionReport& r) { return r.achieves_capacity ? "achieves" : "fails"; }

std::string verdict_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::WrongRegime: return "out_of_regime";
    case ErrorCode::OrderingViolated: return "ordering_violated";
    default: return "invalid";
    }
}

void fill_rates(SweepCell& cell, const ConditionReport& r) {
    if (r.capacity_rect) {
        cell.rates[0] = r.capacity_rect->first;
        cell.rates[1] = r.capacity_rect->second;
    }
}

double parse_double(std::string_view s, std::string_view what) {
    // std::from_chars for double is not available on every toolchain we target
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
        throw UsageError("bad number '" + buf + "' in " + std::string(what));
    }
    return v;
}

ParamSpec cell_spec(const SweepGrid& grid, std::size_t index, std::vector<double>& coords) {
    ParamSpec spec = grid.fixed;
    coords.assign(grid.axes.size(), 0.0);
    // row-major: the last axis varies fastest
    for (std::size_t ax = grid.axes.size(); ax-- > 0;) {
        const Axis& axis = grid.axes[ax];
        const auto i = static_cast<int>(index % static_cast<std::size_t>(axis.steps));
        index /= static_cast<std::size_t>(axis.steps);
        coords[ax] = axis.value(i);
        spec.set(axis.param, coords[ax]);
    }
    return spec;
}

SweepCell run_cell(const SweepGrid& grid, std::size_t index) {
    std::vector<double> coords;
    const ParamSpec spec = cell_spec(grid, index, coords);
    SweepCell cell = evaluate_cell(grid.check, spec, grid.log_base);
    cell.coords = std::move(coords);
    return cell;
}

} // namespace

std::optional<CheckKind> parse_check(std::string_view s) {
    if (s == "vs-ic") return CheckKind::VsIc;
    if (s == "vs-ic-curves") return CheckKind::VsIcCurves;
    if (s == "vs-zic") return CheckKind::VsZic;
    if (s == "strong-ic") return CheckKind::StrongIc;
    if (s == "strong-zic") return CheckKind::StrongZic;
    if (s == "weak-ic") return CheckKind::WeakIc;
    if (s == "weak-zic") return CheckKind::WeakZic;
    return std::nullopt;
}

std::string_view to_string(CheckKind k) {
    switch (k) {
    case CheckKind::VsIc: return "vs-ic";
    case CheckKind::VsIcCurves: return "vs-ic-curves";
    case CheckKind::VsZic: return "vs-zic";
    case CheckKind::StrongIc: return "strong-ic";
    case CheckKind::StrongZic: return "strong-zic";
    case CheckKind::WeakIc: return "weak-ic";
    case CheckKind::WeakZic: return "weak-zic";
    }
    return "";
}

Axis parse_axis(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 4) throw UsageError("axis must be name:lo:hi:steps, got '" + std::string(text) + "'");
    Axis a;
    a.param = std::string(parts[0]);
    a.lo = parse_double(parts[1], "axis lo");
    a.hi = parse_double(parts[2], "axis hi");
    int steps = 0;
    auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), steps);
    if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size()) {
        throw UsageError("bad step count in axis '" + std::string(text) + "'");
    }
    a.steps = steps;
    return a;
}

void SweepGrid::validate() const {
    if (axes.empty() || axes.size() > 2) throw UsageError("a sweep takes one or two axes");
    std::set<std::string> seen;
    for (const auto& ax : axes) {
        if (ax.steps < 2) throw UsageError("axis '" + ax.param + "' needs at least 2 steps");
        if (!(ax.lo < ax.hi)) throw UsageError("axis '" + ax.param + "' needs lo < hi");
        if (fixed.get(ax.param)) throw UsageError("axis '" + ax.param + "' is also given as a fixed value");
        if (!seen.insert(ax.param).second) throw UsageError("axis '" + ax.param + "' given twice");
    }
    if ((check == CheckKind::StrongIc || check == CheckKind::StrongZic) && !fixed.p1dp && !seen.count("p1dp")) {
        throw UsageError("strong-regime sweeps need p1dp, fixed or as an axis");
    }
}

std::size_t SweepGrid::cell_count() const {
    std::size_t n = 1;
    for (const auto& ax : axes) n *= static_cast<std::size_t>(ax.steps);
    return n;
}

const std::vector<std::string>& margin_names(CheckKind k) {
    static const std::vector<std::string> vs_ic{"cond1", "cond2"};
    static const std::vector<std::string> curves{"lhs1", "rhs1", "lhs2", "rhs2"};
    static const std::vector<std::string> closed_vs_mi{"eq_closed_form", "mi_gate"};
    static const std::vector<std::string> layers{"layer1", "layer2", "layer3"};
    static const std::vector<std::string> weak{"weak"};
    switch (k) {
    case CheckKind::VsIc: return vs_ic;
    case CheckKind::VsIcCurves: return curves;
    case CheckKind::VsZic:
    case CheckKind::StrongZic: return closed_vs_mi;
    case CheckKind::StrongIc: return layers;
    case CheckKind::WeakIc:
    case CheckKind::WeakZic: return weak;
    }
    return vs_ic;
}

const std::vector<std::string>& rate_names(CheckKind k) {
    static const std::vector<std::string> pair{"R1", "R2"};
    static const std::vector<std::string> none{};
    static const std::vector<std::string> sum{"Csum"};
    switch (k) {
    case CheckKind::VsIcCurves: return none;
    case CheckKind::WeakIc:
    case CheckKind::WeakZic: return sum;
    default: return pair;
    }
}

SweepCell evaluate_cell(CheckKind k, const ParamSpec& spec, double base) {
    SweepCell cell;
    cell.margins.assign(margin_names(k).size(), std::nullopt);
    cell.rates.assign(rate_names(k).size(), std::nullopt);
    try {
        const IcParams p = spec.resolve();
        switch (k) {
        case CheckKind::VsIc: {
            const auto r = vs_ic_check(p, base);
            cell.margins = {r.conditions[0].margin, r.conditions[1].margin};
            fill_rates(cell, r);
            cell.verdict = verdict_of(r);
            break;
        }
        case CheckKind::VsIcCurves: {
            const auto r = vs_ic_evaluate(p, base);
            cell.margins = {r.values.at("curve_lhs1"), r.values.at("curve_rhs1"), r.values.at("curve_lhs2"),
                            r.values.at("curve_rhs2")};
            cell.verdict = classify(p, Channel::IC).kind == RegimeKind::VeryStrongIC ? verdict_of(r) : "out_of_regime";
            break;
        }
        case CheckKind::VsZic: {
            const auto r = vs_zic_check(p, base);
            cell.margins = {r.conditions[0].margin, r.cross_checks[0].margin};
            fill_rates(cell, r);
            cell.verdict = verdict_of(r);
            break;
        }
        case CheckKind::StrongIc:
        case CheckKind::StrongZic: {
            if (!spec.p1dp) throw UsageError("missing parameter 'p1dp'");
            const auto r = k == CheckKind::StrongIc ? strong_ic_check(p, *spec.p1dp, base)
                                                    : strong_zic_check(p, *spec.p1dp, base);
            if (k == CheckKind::StrongIc) {
                cell.margins = {r.conditions[0].margin, r.conditions[1].margin, r.conditions[2].margin};
            } else {
                cell.margins = {r.conditions[0].margin, r.cross_checks[0].margin};
            }
            fill_rates(cell, r);
            cell.verdict = verdict_of(r);
            break;
        }
        case CheckKind::WeakIc:
        case CheckKind::WeakZic: {
            const Channel ch = k == CheckKind::WeakIc ? Channel::IC : Channel::ZIC;
            cell.margins = {classify(p, ch).margins.at("weak")};
            cell.rates = {k == CheckKind::WeakIc ? weak_ic_sum_capacity(p, base) : weak_zic_sum_capacity(p, base)};
            cell.verdict = "achieves";
            break;
        }
        }
    } catch (const DomainError& e) {
        cell.verdict = verdict_of(e.code());
        if (e.code() == ErrorCode::WrongRegime && k != CheckKind::VsIcCurves) {
            cell.margins.assign(margin_names(k).size(), std::nullopt);
        }
        cell.rates.assign(rate_names(k).size(), std::nullopt);
    }
    return cell;
}

std::vector<SweepCell> run_sweep(const SweepGrid& grid, Exec exec) {
    grid.validate();
    const std::size_t n = grid.cell_count();
    {
        // surface usage errors (missing parameters) before entering the parallel region
        std::vector<double> coords;
        try {
            cell_spec(grid, 0, coords).resolve();
        } catch (const DomainError&) {
        }
    }
    std::vector<SweepCell> cells(n);
    if (exec == Exec::Parallel) {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                cells[static_cast<std::size_t>(i)] = run_cell(grid, static_cast<std::size_t>(i));
            } catch (const UsageError&) {
                cells[static_cast<std::size_t>(i)].verdict = "invalid";
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) cells[i] = run_cell(grid, i);
    }
    return cells;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& os, const SweepGrid& grid, const std::vector<SweepCell>& cells) {
    os << "# schema_version=" << kCsvSchemaVersion << '\n';
    for (const auto& ax : grid.axes) os << ax.param << ',';
    os << "verdict";
    for (const auto& m : margin_names(grid.check)) os << ',' << m;
    for (const auto& r : rate_names(grid.check)) os << ',' << r;
    os << '\n';
    auto opt = [&](const std::optional<double>& v) {
        os << ',';
        if (v) os << format_number(*v);
    };
    for (const auto& c : cells) {
        for (double x : c.coords) os << format_number(x) << ',';
        os << c.verdict;
        for (const auto& m : c.margins) opt(m);
        for (const auto& r : c.rates) opt(r);
        os << '\n';
    }
}

void apply_thread_cap_from_env() {
    if (const char* env = std::getenv("SDIC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

} // namespace sdic

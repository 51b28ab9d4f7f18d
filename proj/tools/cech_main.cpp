#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cech/bundle.hpp"
#include "cech/cochain.hpp"
#include "cech/cover.hpp"
#include "cech/errors.hpp"
#include "cech/io.hpp"
#include "cech/lift.hpp"
#include "cech/nerve.hpp"
#include "cech/pou.hpp"

namespace {

using cech::io::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitObstruction = 2;

json make_report(const std::string& command, json inputs, json result,
                 std::optional<double> total_ms)
{
    json report;
    report["command"] = command;
    report["inputs"] = std::move(inputs);
    report["result"] = std::move(result);
    if (total_ms)
        report["timings_ms"] = json{{"total", *total_ms}};
    report["version"] = kVersion;
    return report;
}

json cycle_to_json(const cech::Nerve& nerve, const cech::FundamentalCycle& cycle)
{
    json steps = json::array();
    for (const cech::CycleStep& step : cycle.steps) {
        json s;
        s["simplex"] = json::array({nerve.edges[step.edge].a, nerve.edges[step.edge].b});
        s["sign"] = step.sign;
        steps.push_back(std::move(s));
    }
    json j;
    j["base_vertex"] = cycle.base_vertex;
    j["chord"] = json::array({nerve.edges[cycle.chord].a, nerve.edges[cycle.chord].b});
    j["steps"] = std::move(steps);
    return j;
}

json obstruction_to_json(const cech::Nerve& nerve, const cech::CoboundaryObstruction& obstruction)
{
    json j;
    j["cycle"] = cycle_to_json(nerve, obstruction.cycle);
    j["holonomy"] = cech::io::value_to_json(obstruction.holonomy);
    return j;
}

/** Rebuild a cochain's values under an adjusted comparison tolerance. */
cech::Cochain1 with_eps(const cech::Cochain1& r, double eps)
{
    cech::GroupSpec spec = r.spec;
    spec.eps = eps;
    spec.validate();
    cech::Cochain1 out;
    out.spec = spec;
    for (const cech::GroupElement& v : r.values) {
        switch (spec.tag) {
        case cech::GroupTag::Z:
        case cech::GroupTag::Zmod:
        case cech::GroupTag::Sign:
            out.values.push_back(cech::GroupElement::make(spec, v.integer()));
            break;
        case cech::GroupTag::R:
        case cech::GroupTag::T:
            out.values.push_back(cech::GroupElement::make(spec, v.real()));
            break;
        case cech::GroupTag::UnitQuaternion:
        case cech::GroupTag::QuaternionNonzero:
            out.values.push_back(cech::GroupElement::make(spec, v.quaternion()));
            break;
        case cech::GroupTag::GL:
            out.values.push_back(cech::GroupElement::make(spec, v.matrix()));
            break;
        }
    }
    return out;
}

/** Cross-check a file's group against flags like --group/--n when given. */
void require_group_match(const cech::GroupSpec& from_file, const std::string& group_flag, int n_flag)
{
    if (group_flag.empty())
        return;
    cech::GroupSpec expected;
    expected.tag = cech::io::group_tag_from_name(group_flag);
    expected.n = n_flag;
    if (!from_file.compatible(expected))
        throw cech::InputError("the cochain file carries group "
                               + cech::io::group_spec_to_json(from_file).dump()
                               + ", which does not match --group " + group_flag);
}

cech::GroupSpec parse_coefficients(const std::string& coeff)
{
    if (coeff == "z")
        return cech::GroupSpec::integers();
    if (coeff == "r")
        return cech::GroupSpec::reals();
    if (coeff.rfind("zmod:", 0) == 0) {
        try {
            return cech::GroupSpec::integers_mod(std::stoi(coeff.substr(5)));
        } catch (const std::logic_error&) {
            throw cech::InputError("malformed coefficient modulus in \"" + coeff + "\"");
        }
    }
    throw cech::InputError("unknown coefficients \"" + coeff + "\"; expected z, r or zmod:N");
}

cech::HomSpec parse_via(const std::string& via)
{
    const auto number_after = [&via](std::size_t pos, std::size_t* next) {
        try {
            return std::stoi(via.substr(pos), next);
        } catch (const std::logic_error&) {
            throw cech::InputError("malformed map description \"" + via + "\"");
        }
    };
    if (via == "r-to-t")
        return cech::HomSpec::r_to_t();
    if (via.rfind("z-to-zmod:", 0) == 0)
        return cech::HomSpec::z_to_zmod(number_after(10, nullptr));
    if (via.rfind("zmod-to-zmod:", 0) == 0) {
        std::size_t used = 0;
        const int n = number_after(13, &used);
        const std::size_t colon = 13 + used;
        if (colon >= via.size() || via[colon] != ':')
            throw cech::InputError("malformed map description \"" + via
                                   + "\"; expected zmod-to-zmod:N:M");
        const int m = number_after(colon + 1, nullptr);
        return cech::HomSpec::zmod_to_zmod(n, m);
    }
    if (via.rfind("gl-det:", 0) == 0)
        return cech::HomSpec::gl_det(number_after(7, nullptr));
    throw cech::InputError("unknown map \"" + via
                           + "\"; expected r-to-t, z-to-zmod:N or zmod-to-zmod:N:M");
}

struct CommandOutput {
    json result;
    int exit_code = kExitOk;
};

CommandOutput run_analyze(const std::string& cover_file)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::CoverReport report = cech::analyze_cover(cover);
    json result;
    result["order"] = report.order;
    result["witness"] = report.witness ? json(cover.space->ids[*report.witness]) : json(nullptr);
    result["covers_space"] = report.covers_space;
    result["adjacency_classes"] = report.adjacency_classes;
    return {std::move(result), kExitOk};
}

CommandOutput run_nerve(const std::string& cover_file, int max_dim)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, max_dim);
    return {cech::io::nerve_to_json(nerve, cover), kExitOk};
}

CommandOutput run_check(const std::string& cochain_file, const std::string& cover_file,
                        const std::string& convention, const std::string& group_flag, int n_flag,
                        std::optional<double> eps)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, 2);
    cech::Cochain1 r = cech::io::cochain1_from_json(cech::io::read_json_file(cochain_file), nerve);
    require_group_match(r.spec, group_flag, n_flag);
    if (eps)
        r = with_eps(r, *eps);
    const cech::Convention conv = cech::io::convention_from_string(convention);
    const cech::CocycleCheck check = cech::check_cocycle(nerve, r, conv);
    json result;
    result["ok"] = check.ok;
    if (!check.ok) {
        const cech::NerveTriangle& tri = nerve.triangles[check.triangle];
        result["triangle"] = json::array({tri.a, tri.b, tri.c});
        result["defect"] = cech::io::value_to_json(*check.defect);
    }
    return {std::move(result), check.ok ? kExitOk : kExitObstruction};
}

CommandOutput run_solve(const std::string& cochain_file, const std::string& cover_file,
                        const std::string& convention, const std::string& group_flag, int n_flag,
                        std::optional<double> eps)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, 2);
    cech::Cochain1 r = cech::io::cochain1_from_json(cech::io::read_json_file(cochain_file), nerve);
    require_group_match(r.spec, group_flag, n_flag);
    if (eps)
        r = with_eps(r, *eps);
    const cech::Convention conv = cech::io::convention_from_string(convention);
    const cech::CoboundaryResult res = cech::solve_coboundary(nerve, r, conv);
    json result;
    result["solved"] = res.solved();
    if (res.solved())
        result["solution"] = cech::io::cochain0_to_json(nerve, *res.solution);
    else
        result["obstruction"] = obstruction_to_json(nerve, *res.obstruction);
    return {std::move(result), res.solved() ? kExitOk : kExitObstruction};
}

CommandOutput run_lift(const std::string& cochain_file, const std::string& cover_file,
                       const std::string& via)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, 2);
    const cech::Cochain1 rho =
        cech::io::cochain1_from_json(cech::io::read_json_file(cochain_file), nerve);
    const cech::HomSpec hom = parse_via(via);
    if (!rho.spec.compatible(hom.target()))
        throw cech::InputError("the cochain file carries group "
                               + cech::io::group_spec_to_json(rho.spec).dump()
                               + ", which is not the target of " + via);
    const cech::LiftResult res = cech::lift_cocycle(nerve, rho, hom);
    const int code = res.status == cech::LiftStatus::Obstructed ? kExitObstruction : kExitOk;
    return {cech::io::lift_result_to_json(nerve, res), code};
}

CommandOutput run_h1(const std::string& cover_file, const std::string& coeff)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, 2);
    const cech::GroupSpec spec = parse_coefficients(coeff);
    const cech::H1Description desc = cech::h1(nerve, spec);
    json result = cech::io::h1_to_json(desc);
    result["coefficients"] = cech::io::group_spec_to_json(spec);
    return {std::move(result), kExitOk};
}

CommandOutput run_section(const std::string& bundle_file)
{
    const cech::Bundle bundle = cech::io::bundle_from_file(bundle_file);
    const cech::SectionResult res = cech::section_exists(bundle);
    json result;
    result["exists"] = res.exists();
    if (res.exists())
        result["section"] = cech::io::cochain0_to_json(bundle.nerve, *res.section);
    else
        result["obstruction"] = obstruction_to_json(bundle.nerve, *res.obstruction);
    // Circle bundles carry an integer invariant per fundamental cycle; it is
    // reported alongside the verdict because a section can exist over T while
    // the underlying classes are nonzero.
    if (bundle.spec.tag == cech::GroupTag::T)
        result["winding"] = cech::winding_class(bundle.nerve, bundle.transitions);
    return {std::move(result), res.exists() ? kExitOk : kExitObstruction};
}

CommandOutput run_holonomy(const std::string& bundle_file)
{
    const cech::Bundle bundle = cech::io::bundle_from_file(bundle_file);
    const std::vector<cech::GroupElement> holonomies = cech::flat_holonomy(bundle);
    const std::vector<cech::FundamentalCycle> cycles = cech::fundamental_cycles(bundle.nerve);
    bool trivial = true;
    json list = json::array();
    for (std::size_t i = 0; i < holonomies.size(); ++i) {
        json entry;
        const cech::NerveEdge& chord = bundle.nerve.edges[cycles[i].chord];
        entry["chord"] = json::array({chord.a, chord.b});
        entry["value"] = cech::io::value_to_json(holonomies[i]);
        trivial = trivial && cech::is_identity(holonomies[i]);
        list.push_back(std::move(entry));
    }
    json result;
    result["cycles"] = std::move(list);
    result["trivial"] = trivial;
    return {std::move(result), kExitOk};
}

CommandOutput run_refine_intervals(const std::string& cover_file, const std::string& out_file)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Cover refined = cech::refine_intervals_order1(cover);
    json result;
    result["set_count"] = refined.set_count();
    result["order"] = cech::cover_order(refined).order;
    result["cover"] = cech::io::cover_to_json(refined);
    if (!out_file.empty())
        cech::io::write_json_file(out_file, result["cover"]);
    return {std::move(result), kExitOk};
}

CommandOutput run_pou_solve(const std::string& fcochain_file, const std::string& cover_file)
{
    const cech::Cover cover = cech::io::cover_from_json(cech::io::read_json_file(cover_file));
    const cech::Nerve nerve = cech::build_nerve(cover, 2);
    const cech::FunctionCochain1 r = cech::io::function_cochain_from_json(
        cech::io::read_json_file(fcochain_file), cover, nerve);
    const cech::PartitionOfUnity pou = cech::partition_of_unity(cover);
    const cech::FunctionSolveResult solved = cech::solve_function_cocycle(cover, nerve, r, pou);

    const auto lookup = [](const cech::FunctionTable& table, int point) {
        for (const auto& [p, value] : table.entries)
            if (p == point)
                return value;
        throw cech::ConsistencyError("solver table is missing a point it must cover");
    };
    double max_residual = 0;
    for (int e = 0; e < nerve.edge_count(); ++e) {
        const cech::NerveEdge& edge = nerve.edges[e];
        const int pa = nerve.vertex_position(edge.a);
        const int pb = nerve.vertex_position(edge.b);
        for (const auto& [point, value] : r.edges[e].entries) {
            const double residual =
                lookup(solved.sections[pb], point) - lookup(solved.sections[pa], point) - value;
            max_residual = std::max(max_residual, std::abs(residual));
        }
    }

    json sections = json::array();
    for (int v = 0; v < nerve.vertex_count(); ++v) {
        json table = json::array();
        for (const auto& [point, value] : solved.sections[v].entries) {
            json cell;
            cell["point"] = cover.space->ids[point];
            cell["value"] = value;
            table.push_back(std::move(cell));
        }
        json entry;
        entry["set"] = nerve.vertices[v].set_index;
        entry["table"] = std::move(table);
        sections.push_back(std::move(entry));
    }
    json result;
    result["sections"] = std::move(sections);
    result["max_residual"] = max_residual;
    return {std::move(result), kExitOk};
}

CommandOutput run_generate_brick(int rows, int cols, double eps, bool aligned,
                                 const std::string& out_file)
{
    const cech::Cover cover = cech::brick_cover(rows, cols, eps, !aligned);
    cech::io::write_json_file(out_file, cech::io::cover_to_json(cover));
    json result;
    result["file"] = out_file;
    result["set_count"] = cover.set_count();
    result["point_count"] = cover.point_count();
    result["order"] = cech::cover_order(cover).order;
    return {std::move(result), kExitOk};
}

CommandOutput run_generate_intervals(int count, unsigned seed, const std::string& out_file)
{
    if (count < 3)
        throw cech::InputError("interval fixtures need at least 3 intervals");
    const int points = 101;
    auto space = std::make_shared<cech::SampleSpace>();
    Eigen::MatrixXd coords(points, 1);
    for (int i = 0; i < points; ++i) {
        space->ids.push_back("x" + std::to_string(i));
        coords(i, 0) = static_cast<double>(i) / (points - 1);
    }
    space->coords = coords;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> start(-0.05, 0.85);
    std::uniform_real_distribution<double> length(0.15, 0.45);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<double, double>> intervals;
        for (int i = 0; i < count; ++i) {
            const double lo = start(rng);
            intervals.emplace_back(lo, lo + length(rng));
        }
        const cech::Cover cover = cech::make_interval_cover(space, intervals);
        if (!cover.covers_space())
            continue;
        cech::io::write_json_file(out_file, cech::io::cover_to_json(cover));
        json result;
        result["file"] = out_file;
        result["set_count"] = cover.set_count();
        result["order"] = cech::cover_order(cover).order;
        result["attempts"] = attempt + 1;
        return {std::move(result), kExitOk};
    }
    throw cech::InputError("no covering interval family found for this count and seed");
}

CommandOutput run_generate_circle_arcs(const std::string& out_file)
{
    const int points = 12;
    auto space = std::make_shared<cech::SampleSpace>();
    Eigen::MatrixXd coords(points, 2);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < points; ++i) {
        space->ids.push_back("p" + std::to_string(i));
        const double angle = 2.0 * pi * i / points;
        coords(i, 0) = std::cos(angle);
        coords(i, 1) = std::sin(angle);
    }
    space->coords = coords;

    // Three arcs centered at 90, 210 and 330 degrees. The radius reaches
    // points within 70 degrees of arc, so consecutive arcs overlap in a
    // single sample point and the triple intersection is empty: the nerve is
    // a 3-cycle, the discrete circle.
    const double radius = 2.0 * std::sin(35.0 * pi / 180.0);
    const cech::Cover cover =
        cech::make_ball_cover(space, {{3, radius}, {7, radius}, {11, radius}});
    cech::io::write_json_file(out_file, cech::io::cover_to_json(cover));
    json result;
    result["file"] = out_file;
    result["set_count"] = cover.set_count();
    result["order"] = cech::cover_order(cover).order;
    return {std::move(result), kExitOk};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finite open covers, nerves, group-valued cocycles and discrete bundles"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    bool no_timings = false;
    app.add_flag("--no-timings", no_timings, "omit timing data from the report");

    std::string cover_file;
    std::string cochain_file;
    std::string bundle_file;
    std::string out_file;
    std::string convention = "gba";
    std::string group_flag;
    std::string coeff = "z";
    std::string via;
    int n_flag = 0;
    int max_dim = 2;
    int rows = 3;
    int cols = 3;
    int count = 8;
    double gen_eps = 0.05;
    bool aligned = false;
    unsigned seed = 7;
    std::optional<double> eps_flag;

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "order, coverage and adjacency of a cover");
    cmd_analyze->add_option("cover", cover_file, "cover file")->required();

    CLI::App* cmd_nerve = app.add_subcommand("nerve", "nerve of a cover, up to dimension 2");
    cmd_nerve->add_option("cover", cover_file, "cover file")->required();
    cmd_nerve->add_option("--max-dim", max_dim, "largest simplex dimension (0, 1 or 2)");

    CLI::App* cmd_check = app.add_subcommand("check", "test the cocycle condition of a 1-cochain");
    cmd_check->add_option("cochain", cochain_file, "cochain file")->required();
    cmd_check->add_option("cover", cover_file, "cover file")->required();
    cmd_check->add_option("--convention", convention, "ordering convention: abg or gba");
    cmd_check->add_option("--group", group_flag, "expected group (cross-checked against the file)");
    cmd_check->add_option("--n", n_flag, "group parameter for --group");
    cmd_check->add_option("--eps", eps_flag, "comparison tolerance override");

    CLI::App* cmd_solve = app.add_subcommand("solve", "solve r = delta t or report the obstruction");
    cmd_solve->add_option("cochain", cochain_file, "cochain file")->required();
    cmd_solve->add_option("cover", cover_file, "cover file")->required();
    cmd_solve->add_option("--convention", convention, "ordering convention: abg or gba");
    cmd_solve->add_option("--group", group_flag, "expected group (cross-checked against the file)");
    cmd_solve->add_option("--n", n_flag, "group parameter for --group");
    cmd_solve->add_option("--eps", eps_flag, "comparison tolerance override");

    CLI::App* cmd_lift = app.add_subcommand("lift", "lift a cocycle along a central-kernel map");
    cmd_lift->add_option("cochain", cochain_file, "cochain file over the map's target")->required();
    cmd_lift->add_option("cover", cover_file, "cover file")->required();
    cmd_lift->add_option("--via", via, "r-to-t, z-to-zmod:N or zmod-to-zmod:N:M")->required();

    CLI::App* cmd_h1 = app.add_subcommand("h1", "first cohomology of the nerve");
    cmd_h1->add_option("cover", cover_file, "cover file")->required();
    cmd_h1->add_option("--coeff", coeff, "coefficients: z, r or zmod:N");

    CLI::App* cmd_section = app.add_subcommand("section", "does the bundle admit a global section");
    cmd_section->add_option("bundle", bundle_file, "bundle file")->required();

    CLI::App* cmd_holonomy = app.add_subcommand("holonomy", "flat holonomy around fundamental cycles");
    cmd_holonomy->add_option("bundle", bundle_file, "bundle file")->required();

    CLI::App* cmd_refine = app.add_subcommand("refine-intervals",
                                              "refine an interval cover down to order 1");
    cmd_refine->add_option("cover", cover_file, "cover file")->required();
    cmd_refine->add_option("--out", out_file, "also write the refined cover to this file");

    CLI::App* cmd_generate = app.add_subcommand("generate", "write fixture files");
    cmd_generate->require_subcommand(1);
    CLI::App* gen_brick = cmd_generate->add_subcommand("brick", "brick cover of the unit square");
    gen_brick->add_option("--rows", rows, "brick rows");
    gen_brick->add_option("--cols", cols, "brick columns");
    gen_brick->add_option("--eps", gen_eps, "brick inflation");
    gen_brick->add_flag("--aligned", aligned, "aligned grid instead of shifted rows");
    gen_brick->add_option("--out", out_file, "output cover file")->required();
    CLI::App* gen_intervals = cmd_generate->add_subcommand("intervals", "random interval cover");
    gen_intervals->add_option("--count", count, "number of intervals");
    gen_intervals->add_option("--seed", seed, "generator seed");
    gen_intervals->add_option("--out", out_file, "output cover file")->required();
    CLI::App* gen_arcs = cmd_generate->add_subcommand("circle-arcs",
                                                      "three arcs covering a 12-point circle");
    gen_arcs->add_option("--out", out_file, "output cover file")->required();

    CLI::App* cmd_pou = app.add_subcommand("pou-solve",
                                           "solve a function-valued cocycle with tent weights");
    cmd_pou->add_option("cochain", cochain_file, "function cochain file")->required();
    cmd_pou->add_option("cover", cover_file, "ball cover file")->required();

    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    std::string command;
    const auto started = std::chrono::steady_clock::now();
    try {
        CommandOutput out;
        if (*cmd_analyze) {
            command = "analyze";
            out = run_analyze(cover_file);
        } else if (*cmd_nerve) {
            command = "nerve";
            out = run_nerve(cover_file, max_dim);
        } else if (*cmd_check) {
            command = "check";
            out = run_check(cochain_file, cover_file, convention, group_flag, n_flag, eps_flag);
        } else if (*cmd_solve) {
            command = "solve";
            out = run_solve(cochain_file, cover_file, convention, group_flag, n_flag, eps_flag);
        } else if (*cmd_lift) {
            command = "lift";
            out = run_lift(cochain_file, cover_file, via);
        } else if (*cmd_h1) {
            command = "h1";
            out = run_h1(cover_file, coeff);
        } else if (*cmd_section) {
            command = "section";
            out = run_section(bundle_file);
        } else if (*cmd_holonomy) {
            command = "holonomy";
            out = run_holonomy(bundle_file);
        } else if (*cmd_refine) {
            command = "refine-intervals";
            out = run_refine_intervals(cover_file, out_file);
        } else if (*cmd_generate) {
            command = "generate";
            if (*gen_brick)
                out = run_generate_brick(rows, cols, gen_eps, aligned, out_file);
            else if (*gen_intervals)
                out = run_generate_intervals(count, seed, out_file);
            else if (*gen_arcs)
                out = run_generate_circle_arcs(out_file);
        } else if (*cmd_pou) {
            command = "pou-solve";
            out = run_pou_solve(cochain_file, cover_file);
        }

        json inputs = json::object();
        if (!cover_file.empty()) inputs["cover"] = cover_file;
        if (!cochain_file.empty()) inputs["cochain"] = cochain_file;
        if (!bundle_file.empty()) inputs["bundle"] = bundle_file;
        if (*cmd_check || *cmd_solve) inputs["convention"] = convention;
        if (*cmd_lift) inputs["via"] = via;
        if (*cmd_h1) inputs["coeff"] = coeff;
        if (*cmd_generate && *gen_intervals) inputs["seed"] = seed;

        std::optional<double> total_ms;
        if (!no_timings) {
            const auto elapsed = std::chrono::steady_clock::now() - started;
            total_ms = std::chrono::duration<double, std::milli>(elapsed).count();
        }
        std::cout << make_report(command, std::move(inputs), std::move(out.result), total_ms).dump(2)
                  << '\n';
        return out.exit_code;
    } catch (const cech::InputError& err) {
        json report;
        report["command"] = command;
        report["error"] = json{{"kind", "input"}, {"message", err.what()}};
        report["version"] = kVersion;
        std::cout << report.dump(2) << '\n';
        return kExitInputError;
    } catch (const cech::ConsistencyError& err) {
        json report;
        report["command"] = command;
        report["error"] = json{{"kind", "internal-consistency"}, {"message", err.what()}};
        report["version"] = kVersion;
        std::cout << report.dump(2) << '\n';
        return kExitInputError;
    } catch (const std::exception& err) {
        json report;
        report["command"] = command;
        report["error"] = json{{"kind", "unexpected"}, {"message", err.what()}};
        report["version"] = kVersion;
        std::cout << report.dump(2) << '\n';
        return kExitInputError;
    }
}

#ifndef CECH_TESTS_SUPPORT_HPP
#define CECH_TESTS_SUPPORT_HPP

#include <array>
#include <cstdio>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

#include "cech/cochain.hpp"
#include "cech/cover.hpp"
#include "cech/nerve.hpp"

namespace testsupport {

/**
 * Cover whose nerve is a prescribed simplicial complex: one private point
 * per vertex, one shared point per requested edge, one per requested
 * triangle. Triangles must sit on requested edges, so the requested complex
 * is downward closed and the nerve reproduces it exactly.
 */
inline cech::Cover make_star_cover(int vertex_count,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<std::array<int, 3>>& triangles = {})
{
    auto space = std::make_shared<cech::SampleSpace>();
    const int points = vertex_count + static_cast<int>(edges.size() + triangles.size());
    for (int i = 0; i < points; ++i)
        space->ids.push_back("w" + std::to_string(i));

    std::vector<std::vector<int>> members(vertex_count);
    for (int v = 0; v < vertex_count; ++v)
        members[v].push_back(v);
    int next = vertex_count;
    for (const auto& [a, b] : edges) {
        members[a].push_back(next);
        members[b].push_back(next);
        ++next;
    }
    for (const auto& [a, b, c] : triangles) {
        members[a].push_back(next);
        members[b].push_back(next);
        members[c].push_back(next);
        ++next;
    }
    return cech::make_explicit_cover(space, members);
}

/** The 3-cycle (discrete circle): vertices 0, 1, 2 and all three edges. */
inline cech::Cover circle_cover()
{
    return make_star_cover(3, {{0, 1}, {0, 2}, {1, 2}});
}

/** A single full triangle: 3 vertices, 3 edges, 1 triangle. */
inline cech::Cover triangle_cover()
{
    return make_star_cover(3, {{0, 1}, {0, 2}, {1, 2}}, {{{0, 1, 2}}});
}

/**
 * Six-vertex triangulation of the real projective plane (the antipodal
 * quotient of the icosahedron): 15 edges, 10 triangles, every edge shared
 * by exactly two triangles.
 */
inline cech::Cover projective_plane_cover()
{
    const std::vector<std::array<int, 3>> triangles = {
        {{0, 1, 3}}, {{0, 1, 4}}, {{0, 2, 3}}, {{0, 2, 5}}, {{0, 4, 5}},
        {{1, 2, 4}}, {{1, 2, 5}}, {{1, 3, 5}}, {{2, 3, 4}}, {{3, 4, 5}}};
    std::set<std::pair<int, int>> edge_set;
    for (const auto& t : triangles) {
        edge_set.insert({t[0], t[1]});
        edge_set.insert({t[0], t[2]});
        edge_set.insert({t[1], t[2]});
    }
    const std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    return make_star_cover(6, edges, triangles);
}

/** Uniform random element of the group, pushed through make() so it is valid. */
inline cech::GroupElement random_element(const cech::GroupSpec& spec, std::mt19937& rng)
{
    using cech::GroupElement;
    using cech::GroupTag;
    std::uniform_int_distribution<long long> ints(-6, 6);
    std::uniform_real_distribution<double> reals(-2.0, 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    switch (spec.tag) {
    case GroupTag::Z:
    case GroupTag::Zmod:
        return GroupElement::make(spec, ints(rng));
    case GroupTag::R:
    case GroupTag::T:
        return GroupElement::make(spec, reals(rng));
    case GroupTag::Sign:
        return GroupElement::make(spec, static_cast<long long>(rng() % 2 == 0 ? 1 : -1));
    case GroupTag::UnitQuaternion: {
        cech::Quaternion q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        double m = q.modulus();
        while (m < 1e-6) {
            q = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
            m = q.modulus();
        }
        return GroupElement::make(spec, (1.0 / m) * q);
    }
    case GroupTag::QuaternionNonzero: {
        cech::Quaternion q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        while (q.modulus() < 1e-3)
            q = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        return GroupElement::make(spec, q);
    }
    case GroupTag::GL: {
        Eigen::MatrixXd m(spec.n, spec.n);
        for (;;) {
            for (int i = 0; i < spec.n; ++i)
                for (int j = 0; j < spec.n; ++j)
                    m(i, j) = gauss(rng);
            if (std::abs(Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant()) > 1e-3)
                return GroupElement::make(spec, m);
        }
    }
    }
    throw std::logic_error("unhandled group tag");
}

inline cech::Cochain0 random_cochain0(const cech::Nerve& nerve, const cech::GroupSpec& spec,
                                      std::mt19937& rng)
{
    cech::Cochain0 t;
    t.spec = spec;
    for (int v = 0; v < nerve.vertex_count(); ++v)
        t.values.push_back(random_element(spec, rng));
    return t;
}

inline cech::Cochain1 random_cochain1(const cech::Nerve& nerve, const cech::GroupSpec& spec,
                                      std::mt19937& rng)
{
    cech::Cochain1 r;
    r.spec = spec;
    for (int e = 0; e < nerve.edge_count(); ++e)
        r.values.push_back(random_element(spec, rng));
    return r;
}

/**
 * Random simplicial complex realized as a star cover: a graph on up to
 * max_vertices vertices plus a random subset of its 3-cliques as triangles.
 */
inline cech::Cover random_complex_cover(std::mt19937& rng, int max_vertices,
                                        double edge_probability = 0.2,
                                        double triangle_probability = 0.5)
{
    std::uniform_int_distribution<int> nv(2, max_vertices);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int v = nv(rng);
    std::vector<std::vector<bool>> adj(v, std::vector<bool>(v, false));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            if (coin(rng) < edge_probability) {
                adj[a][b] = true;
                edges.emplace_back(a, b);
            }
    std::vector<std::array<int, 3>> triangles;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            for (int c = b + 1; c < v; ++c)
                if (adj[a][b] && adj[a][c] && adj[b][c] && coin(rng) < triangle_probability)
                    triangles.push_back({a, b, c});
    return make_star_cover(v, edges, triangles);
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

/**
 * Run the command-line tool with the given arguments, capturing stdout.
 * A nonempty workdir runs the tool from that directory, so the arguments
 * can name files relative to it.
 */
inline CliResult run_cli(const std::string& args, const std::string& workdir = "")
{
    std::string command = std::string(CECH_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!workdir.empty())
        command = "cd " + workdir + " && " + command;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("cannot spawn: " + command);
    CliResult result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string fixture_path(const std::string& name)
{
    return std::string(CECH_FIXTURES_DIR) + "/" + name;
}

/**
 * One deterministic tool invocation per fixture, with the exact expected
 * stdout stored under fixtures/golden. Paths are relative to the fixtures
 * directory; run with run_cli(args, CECH_FIXTURES_DIR).
 */
struct GoldenCommand {
    std::string args;
    std::string golden;
    int exit_code = 0;
};

inline std::vector<GoldenCommand> golden_commands()
{
    return {
        {"--no-timings analyze circle_arcs.json", "analyze_circle.json", 0},
        {"--no-timings nerve circle_arcs.json", "nerve_circle.json", 0},
        {"--no-timings check ones_z.json circle_arcs.json", "check_ones.json", 0},
        {"--no-timings check bad_mod3.json triangle_cover.json", "check_bad.json", 2},
        {"--no-timings solve ones_z.json circle_arcs.json", "solve_ones.json", 2},
        {"--no-timings lift rho_mod2.json triangle_cover.json --via z-to-zmod:2", "lift_rho.json",
         0},
        {"--no-timings h1 circle_arcs.json --coeff z", "h1_circle_z.json", 0},
        {"--no-timings h1 circle_arcs.json --coeff zmod:4", "h1_circle_zmod4.json", 0},
        {"--no-timings section moebius_bundle.json", "section_moebius.json", 2},
        {"--no-timings section product_bundle.json", "section_product.json", 0},
        {"--no-timings section third_bundle.json", "section_third.json", 0},
        {"--no-timings holonomy moebius_bundle.json", "holonomy_moebius.json", 0},
        {"--no-timings pou-solve fdiff.json two_balls_cover.json", "pou_solve.json", 0},
        {"--no-timings refine-intervals intervals_cover.json", "refine_intervals.json", 0},
    };
}

inline std::string read_file(const std::string& path)
{
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::string content;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), f)) > 0)
        content.append(buffer.data(), got);
    std::fclose(f);
    return content;
}

} // namespace testsupport

#endif // CECH_TESTS_SUPPORT_HPP

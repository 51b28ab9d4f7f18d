#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cech/io.hpp"
#include "support.hpp"

using namespace cech;
using cech::io::json;

namespace {

const char* kCoverText = R"({
  "space": {
    "points": ["p0", "p1", "p2", "p3", "p4"],
    "coords": [[0.0], [0.25], [0.5], [0.75], [1.0]],
    "metric": "euclidean"
  },
  "sets": [
    {"id": 0, "kind": "explicit", "members": [0, 1, 2]},
    {"id": 1, "kind": "ball", "center": 2, "radius": 0.3},
    {"id": 2, "kind": "interval", "lo": 0.6, "hi": 1.1}
  ]
})";

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path()
               / ("cech-io-" + std::to_string(::getpid()) + "-"
                  + std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter()
    {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& text) const
    {
        const std::string full = (path / name).string();
        std::ofstream out(full);
        out << text;
        return full;
    }
};

} // namespace

TEST_CASE("covers parse with derived and explicit members")
{
    const Cover cover = io::cover_from_json(json::parse(kCoverText));
    REQUIRE(cover.set_count() == 3);
    CHECK(cover.point_count() == 5);
    CHECK(cover.sets[0].members.count() == 3);
    // Ball of radius 0.3 around p2 keeps p1, p2, p3 (strict inequality).
    CHECK(cover.sets[1].members.count() == 3);
    CHECK(cover.sets[1].members.test(1));
    CHECK_FALSE(cover.sets[1].members.test(0));
    // Interval (0.6, 1.1) keeps p3 and p4.
    CHECK(cover.sets[2].members.count() == 2);
    CHECK(cover.sets[2].is_interval());
}

TEST_CASE("cover serialization round trips to identical JSON")
{
    const json original = json::parse(kCoverText);
    const Cover cover = io::cover_from_json(original);
    const json written = io::cover_to_json(cover);
    CHECK(written == original);
    const Cover again = io::cover_from_json(written);
    for (int k = 0; k < cover.set_count(); ++k)
        CHECK(again.sets[k].members == cover.sets[k].members);
}

TEST_CASE("covers with inconsistencies are rejected field by field")
{
    json bad = json::parse(kCoverText);
    bad["sets"][1]["members"] = {0, 1, 2};  // disagrees with the derived ball
    CHECK_THROWS_AS(io::cover_from_json(bad), InputError);

    json unsorted = json::parse(kCoverText);
    unsorted["sets"][0]["members"] = {2, 1, 0};
    CHECK_THROWS_AS(io::cover_from_json(unsorted), InputError);

    json dup = json::parse(kCoverText);
    dup["sets"][1]["id"] = 0;
    CHECK_THROWS_AS(io::cover_from_json(dup), InputError);

    json kind = json::parse(kCoverText);
    kind["sets"][0]["kind"] = "polygon";
    CHECK_THROWS_AS(io::cover_from_json(kind), InputError);

    json range = json::parse(kCoverText);
    range["sets"][1]["center"] = 11;
    CHECK_THROWS_AS(io::cover_from_json(range), InputError);

    json dup_id = json::parse(kCoverText);
    dup_id["space"]["points"][1] = "p0";
    CHECK_THROWS_AS(io::cover_from_json(dup_id), InputError);
}

TEST_CASE("spaces accept explicit metric matrices")
{
    const json j = json::parse(R"({
      "points": ["a", "b"],
      "metric": {"matrix": [[0.0, 2.0], [2.0, 0.0]]}
    })");
    const SampleSpace space = io::space_from_json(j);
    CHECK(space.distance(0, 1) == doctest::Approx(2.0));

    json asym = j;
    asym["metric"]["matrix"][0][1] = 1.0;
    CHECK_THROWS_AS(io::space_from_json(asym), InputError);

    json silly = j;
    silly["metric"] = "taxicab";
    CHECK_THROWS_AS(io::space_from_json(silly), InputError);
}

TEST_CASE("group specs parse names, moduli and tolerances")
{
    const GroupSpec zmod = io::group_spec_from_json(json::parse(R"({"group": "Zmod", "n": 5})"));
    CHECK(zmod.tag == GroupTag::Zmod);
    CHECK(zmod.n == 5);

    const GroupSpec gl =
        io::group_spec_from_json(json::parse(R"({"group": "GL", "n": 2, "eps": 1e-6})"));
    CHECK(gl.tag == GroupTag::GL);
    CHECK(gl.eps == doctest::Approx(1e-6));

    CHECK_THROWS_AS(io::group_spec_from_json(json::parse(R"({"group": "SO"})")), InputError);
    CHECK_THROWS_AS(io::group_spec_from_json(json::parse(R"({"group": "Zmod", "n": 1})")),
                    InputError);

    // Serialization carries only the fields the group actually uses.
    const json z = io::group_spec_to_json(GroupSpec::integers());
    CHECK_FALSE(z.contains("n"));
    CHECK_FALSE(z.contains("eps"));
    const json back = io::group_spec_to_json(gl);
    CHECK(back["n"] == 2);
    CHECK(io::group_spec_from_json(back).compatible(gl));
}

TEST_CASE("group values round trip through their JSON encodings")
{
    const GroupElement z = io::value_from_json(GroupSpec::integers(), json(-3));
    CHECK(z.integer() == -3);
    CHECK(io::value_to_json(z) == json(-3));

    const GroupElement t = io::value_from_json(GroupSpec::circle(), json(1.25));
    CHECK(t.real() == doctest::Approx(0.25));  // canonicalized on construction

    const GroupElement q = io::value_from_json(GroupSpec::nonzero_quaternions(),
                                               json::parse("[1.0, 2.0, 3.0, 4.0]"));
    CHECK(q.quaternion().b == doctest::Approx(2.0));
    CHECK(io::value_to_json(q) == json::parse("[1.0, 2.0, 3.0, 4.0]"));

    const GroupElement m = io::value_from_json(GroupSpec::general_linear(2),
                                               json::parse("[[1.0, 0.5], [0.0, 1.0]]"));
    CHECK(m.matrix()(0, 1) == doctest::Approx(0.5));

    CHECK_THROWS_AS(io::value_from_json(GroupSpec::integers(), json(0.5)), InputError);
    CHECK_THROWS_AS(io::value_from_json(GroupSpec::unit_quaternions(), json::parse("[1, 0]")),
                    InputError);
}

TEST_CASE("1-cochains default to the identity and store reversed edges inverted")
{
    const Cover cover = testsupport::circle_cover();
    const Nerve nerve = build_nerve(cover);
    const json j = json::parse(R"({
      "spec": {"group": "Z"},
      "degree": 1,
      "values": [
        {"simplex": [0, 1], "value": 4},
        {"simplex": [2, 1], "value": 9}
      ]
    })");
    const Cochain1 r = io::cochain1_from_json(j, nerve);
    CHECK(r.values[nerve.edge_index(0, 1)].integer() == 4);
    CHECK(r.values[nerve.edge_index(1, 2)].integer() == -9);  // reversed listing
    CHECK(r.values[nerve.edge_index(0, 2)].integer() == 0);   // unlisted

    json dup = j;
    dup["values"].push_back(json::parse(R"({"simplex": [1, 0], "value": 1})"));
    CHECK_THROWS_AS(io::cochain1_from_json(dup, nerve), InputError);

    json degenerate = j;
    degenerate["values"][0]["simplex"] = {1, 1};
    CHECK_THROWS_AS(io::cochain1_from_json(degenerate, nerve), InputError);

    json missing_edge = j;
    missing_edge["values"][0]["simplex"] = {0, 7};
    CHECK_THROWS_AS(io::cochain1_from_json(missing_edge, nerve), InputError);

    json no_value = j;
    no_value["values"][0].erase("value");
    CHECK_THROWS_AS(io::cochain1_from_json(no_value, nerve), InputError);

    json degree = j;
    degree["degree"] = 0;
    CHECK_THROWS_AS(io::cochain1_from_json(degree, nerve), InputError);
}

TEST_CASE("0-cochains map vertices by set index")
{
    const Cover cover = testsupport::circle_cover();
    const Nerve nerve = build_nerve(cover);
    const json j = json::parse(R"({
      "spec": {"group": "R"},
      "degree": 0,
      "values": [{"simplex": [2], "value": 1.5}]
    })");
    const Cochain0 t = io::cochain0_from_json(j, nerve);
    CHECK(t.values[nerve.vertex_position(2)].real() == doctest::Approx(1.5));
    CHECK(t.values[0].real() == 0.0);

    json ghost = j;
    ghost["values"][0]["simplex"] = {9};
    CHECK_THROWS_AS(io::cochain0_from_json(ghost, nerve), InputError);
}

TEST_CASE("cochain writing lists every simplex in storage order")
{
    const Cover cover = testsupport::circle_cover();
    const Nerve nerve = build_nerve(cover);
    Cochain1 r = identity_cochain1(nerve, GroupSpec::integers());
    r.values[0] = GroupElement::make(GroupSpec::integers(), 5LL);
    const json j = io::cochain1_to_json(nerve, r);
    CHECK(j["degree"] == 1);
    REQUIRE(j["values"].size() == 3);
    CHECK(j["values"][0]["simplex"] == json::array({0, 1}));
    CHECK(j["values"][0]["value"] == 5);
    const Cochain1 back = io::cochain1_from_json(j, nerve);
    for (int e = 0; e < nerve.edge_count(); ++e)
        CHECK(approx_equal(back.values[e], r.values[e]));
}

TEST_CASE("function cochains resolve point ids and negate reversed tables")
{
    auto space = std::make_shared<SampleSpace>();
    space->ids = {"x", "y", "z"};
    const Cover cover = make_explicit_cover(space, {{0, 1}, {1, 2}});
    const Nerve nerve = build_nerve(cover);
    const json j = json::parse(R"({
      "edges": [
        {"simplex": [1, 0], "table": [{"point": "y", "value": 2.5}]}
      ]
    })");
    const FunctionCochain1 r = io::function_cochain_from_json(j, cover, nerve);
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0].entries[0].first == 1);
    CHECK(r.edges[0].entries[0].second == doctest::Approx(-2.5));

    json unknown = j;
    unknown["edges"][0]["table"][0]["point"] = "w";
    CHECK_THROWS_AS(io::function_cochain_from_json(unknown, cover, nerve), InputError);

    json missing = j;
    missing["edges"] = json::array();
    CHECK_THROWS_AS(io::function_cochain_from_json(missing, cover, nerve), InputError);
}

TEST_CASE("nerve export names witnesses by point id")
{
    auto space = std::make_shared<SampleSpace>();
    space->ids = {"first", "second"};
    const Cover cover = make_explicit_cover(space, {{0, 1}, {1}});
    const Nerve nerve = build_nerve(cover);
    const json j = io::nerve_to_json(nerve, cover);
    CHECK(j["set_count"] == 2);
    CHECK(j["vertices"][0]["witness"] == "first");
    CHECK(j["vertices"][1]["witness"] == "second");
    REQUIRE(j["edges"].size() == 1);
    CHECK(j["edges"][0]["simplex"] == json::array({0, 1}));
    CHECK(j["edges"][0]["witness"] == "second");
}

TEST_CASE("bundle files resolve their parts relative to their own directory")
{
    TempDir dir;
    dir.file("cover.json", kCoverText);
    dir.file("transitions.json", R"({
      "spec": {"group": "Sign"},
      "degree": 1,
      "values": [{"simplex": [1, 2], "value": -1}]
    })");
    const std::string bundle_path = dir.file("bundle.json", R"({
      "cover": "cover.json",
      "spec": {"group": "Sign"},
      "convention": "gba",
      "transitions": "transitions.json"
    })");

    const Bundle bundle = io::bundle_from_file(bundle_path);
    CHECK(bundle.spec.tag == GroupTag::Sign);
    CHECK(bundle.convention == Convention::GBA);
    const int e12 = bundle.nerve.edge_index(1, 2);
    REQUIRE(e12 >= 0);
    CHECK(bundle.transitions.values[e12].integer() == -1);

    // The convention key may be omitted and defaults to gba.
    const std::string terse = dir.file("terse.json", R"({
      "cover": "cover.json",
      "spec": {"group": "Sign"},
      "transitions": "transitions.json"
    })");
    CHECK(io::bundle_from_file(terse).convention == Convention::GBA);

    const std::string broken = dir.file("broken.json", R"({"cover": "cover.json"})");
    CHECK_THROWS_AS(io::bundle_from_file(broken), InputError);
}

TEST_CASE("file loading errors carry the path")
{
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/never.json"), InputError);
    TempDir dir;
    const std::string mangled = dir.file("broken.json", "{ not json");
    try {
        io::read_json_file(mangled);
        FAIL("expected an input error");
    } catch (const InputError& err) {
        CHECK(std::string(err.what()).find("broken.json") != std::string::npos);
    }
}

TEST_CASE("lift results serialize status, data and certificates")
{
    const Nerve nerve = build_nerve(testsupport::triangle_cover());
    Cochain1 rho{GroupSpec::integers_mod(2),
                 {GroupElement::make(GroupSpec::integers_mod(2), 1LL),
                  GroupElement::make(GroupSpec::integers_mod(2), 0LL),
                  GroupElement::make(GroupSpec::integers_mod(2), 1LL)}};
    const LiftResult res = lift_cocycle(nerve, rho, HomSpec::z_to_zmod(2));
    const json j = io::lift_result_to_json(nerve, res);
    CHECK(j["status"] == "CorrectedStrict");
    CHECK(j["lift"]["spec"]["group"] == "Z");
    CHECK(j["obstruction"]["values"][0]["value"] == 1);
    CHECK(j["correction"]["values"][0]["value"] == 1);
    CHECK_FALSE(j.contains("certificate"));

    const json h = io::h1_to_json(h1(nerve, GroupSpec::integers()));
    CHECK(h["free_rank"] == 0);
    CHECK(h["torsion"] == json::array());
}

TEST_CASE("conventions parse strictly")
{
    CHECK(io::convention_from_string("abg") == Convention::ABG);
    CHECK(io::convention_from_string("gba") == Convention::GBA);
    CHECK_THROWS_AS(io::convention_from_string("bga"), InputError);
    CHECK(io::convention_to_string(Convention::ABG) == "abg");
}

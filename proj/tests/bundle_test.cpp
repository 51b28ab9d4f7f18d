#include "doctest.h"

#include <random>

#include "cech/bundle.hpp"
#include "cech/lift.hpp"
#include "support.hpp"

using namespace cech;

namespace {

GroupElement sign_of(long long v) { return GroupElement::make(GroupSpec::sign(), v); }
GroupElement circ(double v) { return GroupElement::make(GroupSpec::circle(), v); }
GroupElement real_of(double v) { return GroupElement::make(GroupSpec::reals(), v); }

/** Sign transitions of the open Moebius band glued over three arcs:
 *  stored (0,1) -> +1, (0,2) -> -1, (1,2) -> +1. */
Cochain1 moebius_transitions()
{
    return {GroupSpec::sign(), {sign_of(1), sign_of(-1), sign_of(1)}};
}

Bundle moebius_bundle()
{
    return build_bundle(testsupport::circle_cover(), GroupSpec::sign(), Convention::GBA,
                        moebius_transitions());
}

} // namespace

TEST_CASE("bundles validate their fiber group and transition data")
{
    const Cover cover = testsupport::circle_cover();

    Cochain1 ints{GroupSpec::integers(), {}};
    CHECK_THROWS_AS(build_bundle(cover, GroupSpec::integers(), Convention::GBA, ints),
                    InputError);

    Cochain1 two{GroupSpec::sign(), {sign_of(1), sign_of(1)}};
    CHECK_THROWS_AS(build_bundle(cover, GroupSpec::sign(), Convention::GBA, two), InputError);

    Cochain1 mixed{GroupSpec::circle(), {circ(0), circ(0), circ(0)}};
    CHECK_THROWS_AS(build_bundle(cover, GroupSpec::sign(), Convention::GBA, mixed), InputError);
}

TEST_CASE("cocycle violations name the offending cover sets")
{
    const Cover cover = testsupport::triangle_cover();
    Cochain1 bad{GroupSpec::sign(), {sign_of(-1), sign_of(1), sign_of(1)}};
    try {
        build_bundle(cover, GroupSpec::sign(), Convention::GBA, bad);
        FAIL("expected an input error");
    } catch (const InputError& err) {
        const std::string message = err.what();
        CHECK(message.find("cocycle") != std::string::npos);
        CHECK(message.find("0") != std::string::npos);
        CHECK(message.find("1") != std::string::npos);
        CHECK(message.find("2") != std::string::npos);
    }
}

TEST_CASE("the Moebius orientation bundle has no global section")
{
    const Bundle bundle = moebius_bundle();
    const SectionResult res = section_exists(bundle);
    CHECK_FALSE(res.exists());
    REQUIRE(res.obstruction.has_value());
    CHECK(res.obstruction->holonomy.integer() == -1);
}

TEST_CASE("the trivial orientation bundle has a section with compatible overlaps")
{
    const Bundle bundle =
        build_bundle(testsupport::circle_cover(), GroupSpec::sign(), Convention::GBA,
                     {GroupSpec::sign(), {sign_of(1), sign_of(1), sign_of(1)}});
    const SectionResult res = section_exists(bundle);
    REQUIRE(res.exists());
    const Cochain1 back = delta0(bundle.nerve, *res.section, bundle.convention);
    for (int e = 0; e < bundle.nerve.edge_count(); ++e)
        CHECK(approx_equal(back.values[e], bundle.transitions.values[e]));
}

TEST_CASE("a winding circle bundle still has a section, and the winding survives it")
{
    // 1/3 per directed transition: trivial as a T-cocycle, yet the integer
    // winding distinguishes it from the product bundle.
    const Bundle bundle = build_bundle(
        testsupport::circle_cover(), GroupSpec::circle(), Convention::GBA,
        {GroupSpec::circle(), {circ(1.0 / 3), circ(2.0 / 3), circ(1.0 / 3)}});
    const SectionResult res = section_exists(bundle);
    CHECK(res.exists());
    const std::vector<long long> w = winding_class(bundle.nerve, bundle.transitions);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == 1);
}

TEST_CASE("a fractional holonomy blocks circle-bundle sections")
{
    const Bundle bundle = build_bundle(
        testsupport::circle_cover(), GroupSpec::circle(), Convention::GBA,
        {GroupSpec::circle(), {circ(0.25), circ(0.0), circ(0.0)}});
    const SectionResult res = section_exists(bundle);
    CHECK_FALSE(res.exists());
    REQUIRE(res.obstruction.has_value());
    CHECK(res.obstruction->holonomy.real() == doctest::Approx(0.25));
}

TEST_CASE("flat holonomy reproduces the cycle holonomy transported to the root")
{
    std::mt19937 rng(59);
    const GroupSpec spec = GroupSpec::unit_quaternions();
    for (Convention conv : {Convention::GBA, Convention::ABG}) {
        Cochain1 transitions{spec, {testsupport::random_element(spec, rng),
                                    testsupport::random_element(spec, rng),
                                    testsupport::random_element(spec, rng)}};
        const Bundle bundle =
            build_bundle(testsupport::circle_cover(), spec, conv, transitions);
        const std::vector<GroupElement> hol = flat_holonomy(bundle);
        REQUIRE(hol.size() == 1);

        const auto cycles = fundamental_cycles(bundle.nerve);
        const GroupElement at_base = cycle_holonomy(bundle.nerve, transitions, cycles[0], conv);
        // The base vertex 1 hangs below the root 0 through edge (0, 1).
        const GroupElement d = transitions.values[bundle.nerve.edge_index(0, 1)];
        const GroupElement expected = (conv == Convention::GBA)
                                          ? op(op(inverse(d), at_base), d)
                                          : op(op(d, at_base), inverse(d));
        CHECK(approx_equal(hol[0], expected));
    }
}

TEST_CASE("gauge twists conjugate every holonomy by the root gauge")
{
    std::mt19937 rng(61);
    const GroupSpec spec = GroupSpec::unit_quaternions();
    // A wedge of two 3-cycles: two fundamental cycles, both rooted at 0.
    const Cover cover = testsupport::make_star_cover(
        5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
    for (Convention conv : {Convention::GBA, Convention::ABG}) {
        const Nerve nerve = build_nerve(cover);
        Cochain1 transitions = testsupport::random_cochain1(nerve, spec, rng);
        const Bundle bundle = build_bundle(cover, spec, conv, transitions);
        const std::vector<GroupElement> hol = flat_holonomy(bundle);

        std::vector<GroupElement> tau;
        for (int v = 0; v < nerve.vertex_count(); ++v)
            tau.push_back(testsupport::random_element(spec, rng));
        Cochain1 twisted{spec, {}};
        for (const NerveEdge& e : nerve.edges) {
            const GroupElement& r = transitions.values[nerve.edge_index(e.a, e.b)];
            const GroupElement& ta = tau[nerve.vertex_position(e.a)];
            const GroupElement& tb = tau[nerve.vertex_position(e.b)];
            twisted.values.push_back(conv == Convention::GBA ? op(op(tb, r), inverse(ta))
                                                             : op(op(inverse(ta), r), tb));
        }
        const Bundle moved = build_bundle(cover, spec, conv, twisted);
        const std::vector<GroupElement> hol2 = flat_holonomy(moved);
        REQUIRE(hol2.size() == hol.size());

        // Both cycles are rooted at vertex 0, the smallest of the component.
        const GroupElement& root_gauge = tau[0];
        for (size_t c = 0; c < hol.size(); ++c) {
            const GroupElement expected =
                conv == Convention::GBA
                    ? op(op(root_gauge, hol[c]), inverse(root_gauge))
                    : op(op(inverse(root_gauge), hol[c]), root_gauge);
            CHECK(approx_equal(hol2[c], expected));
        }
    }
}

TEST_CASE("integer differences of real data glue to circle labels")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    const std::vector<GroupElement> phis = {real_of(0.3), real_of(1.3), real_of(2.3)};
    const SubgroupGlueResult res =
        subgroup_glue(nerve, phis, SubgroupKind::IntegersInReals, 0, std::nullopt);
    CHECK(res.in_subgroup);
    REQUIRE(res.quotient_labels.size() == 3);
    for (const GroupElement& label : res.quotient_labels) {
        CHECK(label.spec().tag == GroupTag::T);
        CHECK(label.real() == doctest::Approx(0.3));
    }
}

TEST_CASE("non-integer differences are flagged with the offending edge")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    const std::vector<GroupElement> phis = {real_of(0.3), real_of(0.8), real_of(1.3)};
    const SubgroupGlueResult res =
        subgroup_glue(nerve, phis, SubgroupKind::IntegersInReals, 0, std::nullopt);
    CHECK_FALSE(res.in_subgroup);
    REQUIRE(res.violating_edge.has_value());
    CHECK(*res.violating_edge == 0);
    REQUIRE(res.violating_value.has_value());
    CHECK(res.violating_value->real() == doctest::Approx(0.5));
}

TEST_CASE("an integer tau flattens the local data to one global value")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    const std::vector<GroupElement> phis = {real_of(0.3), real_of(1.3), real_of(2.3)};
    const std::vector<GroupElement> tau = {real_of(0.0), real_of(1.0), real_of(2.0)};
    const SubgroupGlueResult res =
        subgroup_glue(nerve, phis, SubgroupKind::IntegersInReals, 0, tau);
    REQUIRE(res.global_map.has_value());
    CHECK_FALSE(res.mismatch_edge.has_value());
    for (const GroupElement& v : *res.global_map)
        CHECK(v.real() == doctest::Approx(0.3));

    // A tau that fails to flatten reports the first disagreeing overlap.
    const std::vector<GroupElement> lazy = {real_of(0.0), real_of(0.0), real_of(0.0)};
    const SubgroupGlueResult bad =
        subgroup_glue(nerve, phis, SubgroupKind::IntegersInReals, 0, lazy);
    CHECK_FALSE(bad.global_map.has_value());
    REQUIRE(bad.mismatch_edge.has_value());
    CHECK(*bad.mismatch_edge == 0);

    const std::vector<GroupElement> crooked = {real_of(0.5), real_of(1.0), real_of(2.0)};
    CHECK_THROWS_AS(subgroup_glue(nerve, phis, SubgroupKind::IntegersInReals, 0, crooked),
                    InputError);
}

TEST_CASE("cyclic subgroups of the circle glue through multiplication by k")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    const std::vector<GroupElement> phis = {circ(0.1), circ(0.35), circ(0.6)};
    const SubgroupGlueResult res =
        subgroup_glue(nerve, phis, SubgroupKind::CyclicInCircle, 4, std::nullopt);
    CHECK(res.in_subgroup);
    for (const GroupElement& label : res.quotient_labels)
        CHECK(distance(label, circ(0.4)) < 1e-7);

    const std::vector<GroupElement> off = {circ(0.1), circ(0.4), circ(0.6)};
    const SubgroupGlueResult bad =
        subgroup_glue(nerve, off, SubgroupKind::CyclicInCircle, 4, std::nullopt);
    CHECK_FALSE(bad.in_subgroup);
    CHECK(*bad.violating_edge == 0);

    CHECK_THROWS_AS(subgroup_glue(nerve, phis, SubgroupKind::CyclicInCircle, 0, std::nullopt),
                    InputError);
}

TEST_CASE("sign ambiguities in matrix data cancel in the canonicalized labels")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    Eigen::MatrixXd m(2, 2);
    m << 0.0, -1.0, 1.0, 0.0;  // a quarter turn
    const GroupSpec gl = GroupSpec::general_linear(2);
    const GroupElement plus = GroupElement::make(gl, Eigen::MatrixXd(m));
    const GroupElement minus = GroupElement::make(gl, Eigen::MatrixXd(-m));

    const SubgroupGlueResult res = subgroup_glue(nerve, {plus, minus, plus},
                                                 SubgroupKind::SignsInGL, 0, std::nullopt);
    CHECK(res.in_subgroup);
    for (const GroupElement& label : res.quotient_labels)
        CHECK(distance(label, res.quotient_labels[0]) < 1e-9);

    const GroupElement skew =
        GroupElement::make(gl, Eigen::MatrixXd(2.0 * m));  // difference 2I is not a sign
    const SubgroupGlueResult bad = subgroup_glue(nerve, {plus, skew, plus},
                                                 SubgroupKind::SignsInGL, 0, std::nullopt);
    CHECK_FALSE(bad.in_subgroup);
}

TEST_CASE("subgroup gluing validates its inputs")
{
    const Nerve nerve = build_nerve(testsupport::circle_cover());
    CHECK_THROWS_AS(subgroup_glue(nerve, {real_of(0.0)}, SubgroupKind::IntegersInReals, 0,
                                  std::nullopt),
                    InputError);
    const std::vector<GroupElement> ints = {
        GroupElement::make(GroupSpec::integers(), 0LL),
        GroupElement::make(GroupSpec::integers(), 0LL),
        GroupElement::make(GroupSpec::integers(), 0LL)};
    CHECK_THROWS_AS(subgroup_glue(nerve, ints, SubgroupKind::IntegersInReals, 0, std::nullopt),
                    InputError);
}

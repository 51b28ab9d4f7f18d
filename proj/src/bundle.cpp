#include "cech/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cech/errors.hpp"

namespace cech {

namespace {

/** Tree path from the component root down to vertex position v. */
std::vector<CycleStep> path_from_root(const Nerve& nerve, const SpanningForest& forest, int v)
{
    std::vector<CycleStep> down;
    int cur = v;
    while (forest.parent[cur] != -1) {
        const int e = forest.parent_edge[cur];
        const int child_set = nerve.vertices[cur].set_index;
        const int sign = (nerve.edges[e].b == child_set) ? 1 : -1;
        down.push_back({e, sign});
        cur = forest.parent[cur];
    }
    std::reverse(down.begin(), down.end());
    return down;
}

void require_fiber_group(const GroupSpec& spec)
{
    switch (spec.tag) {
    case GroupTag::T:
    case GroupTag::GL:
    case GroupTag::Sign:
    case GroupTag::UnitQuaternion:
        return;
    default:
        throw InputError("unsupported fiber group " + group_name(spec.tag)
                         + "; expected one of T, GL, Sign, UnitQuaternion");
    }
}

} // namespace

Bundle build_bundle(const Cover& cover, const GroupSpec& spec, Convention convention,
                    const Cochain1& transitions)
{
    spec.validate();
    require_fiber_group(spec);
    cover.validate();
    if (!transitions.spec.compatible(spec))
        throw InputError("transition values do not live in the requested fiber group");

    Nerve nerve = build_nerve(cover, 2);
    if (static_cast<int>(transitions.values.size()) != nerve.edge_count())
        throw InputError("expected one transition value per nerve edge: got "
                         + std::to_string(transitions.values.size()) + " for "
                         + std::to_string(nerve.edge_count()) + " edges");

    const CocycleCheck check = check_cocycle(nerve, transitions, convention);
    if (!check.ok) {
        const NerveTriangle& tri = nerve.triangles[check.triangle];
        throw InputError("transitions violate the cocycle condition on the overlap of sets "
                         + std::to_string(cover.sets[tri.a].id) + ", "
                         + std::to_string(cover.sets[tri.b].id) + " and "
                         + std::to_string(cover.sets[tri.c].id));
    }

    // Gluing fibers over a single sample point must not depend on the order
    // in which the overlapping sets are traversed. With constant transition
    // values this repeats the cocycle test point by point, so any failure
    // past this line indicates internal breakage, not bad input.
    const Cochain2 defect = delta1(nerve, transitions, convention);
    for (int t = 0; t < nerve.triangle_count(); ++t) {
        const NerveTriangle& tri = nerve.triangles[t];
        Bitset overlap = cover.sets[tri.a].members & cover.sets[tri.b].members;
        overlap &= cover.sets[tri.c].members;
        for (auto p = overlap.find_first(); p != Bitset::npos; p = overlap.find_next(p)) {
            if (!is_identity(defect.values[t]))
                throw ConsistencyError("fiber identification over point " + cover.space->ids[p]
                                       + " is path dependent although the cocycle test passed");
        }
    }

    Bundle bundle;
    bundle.cover = cover;
    bundle.nerve = std::move(nerve);
    bundle.spec = spec;
    bundle.convention = convention;
    bundle.transitions = transitions;
    return bundle;
}

SectionResult section_exists(const Bundle& bundle)
{
    CoboundaryResult res = solve_coboundary(bundle.nerve, bundle.transitions, bundle.convention);
    SectionResult out;
    out.section = std::move(res.solution);
    out.obstruction = std::move(res.obstruction);
    return out;
}

std::vector<GroupElement> flat_holonomy(const Bundle& bundle)
{
    const Nerve& nerve = bundle.nerve;
    const SpanningForest forest = spanning_forest(nerve);
    std::vector<GroupElement> out;
    for (const FundamentalCycle& cycle : fundamental_cycles(nerve)) {
        const int base = nerve.vertex_position(cycle.base_vertex);
        if (base < 0)
            throw ConsistencyError("fundamental cycle based at a vertex missing from the nerve");
        const std::vector<CycleStep> down = path_from_root(nerve, forest, base);
        std::vector<CycleStep> steps = down;
        steps.insert(steps.end(), cycle.steps.begin(), cycle.steps.end());
        for (auto it = down.rbegin(); it != down.rend(); ++it)
            steps.push_back({it->edge, -it->sign});
        out.push_back(walk_holonomy(nerve, bundle.transitions, steps, bundle.convention));
    }
    return out;
}

namespace {

GroupTag ambient_tag(SubgroupKind kind)
{
    switch (kind) {
    case SubgroupKind::IntegersInReals: return GroupTag::R;
    case SubgroupKind::CyclicInCircle: return GroupTag::T;
    case SubgroupKind::SignsInGL: return GroupTag::GL;
    }
    throw ConsistencyError("unhandled subgroup kind");
}

/** Distance from x to the nearest multiple of 1/k on the circle. */
double circle_gap(double x, int k)
{
    const double y = x * k;
    return std::abs(y - std::round(y)) / k;
}

bool subgroup_member(const GroupElement& g, SubgroupKind kind, int k)
{
    const double eps = g.spec().eps;
    switch (kind) {
    case SubgroupKind::IntegersInReals:
        return std::abs(g.real() - std::round(g.real())) <= eps;
    case SubgroupKind::CyclicInCircle:
        return circle_gap(g.real(), k) <= eps;
    case SubgroupKind::SignsInGL: {
        const Eigen::MatrixXd& m = g.matrix();
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
        return (m - id).cwiseAbs().maxCoeff() <= eps || (m + id).cwiseAbs().maxCoeff() <= eps;
    }
    }
    throw ConsistencyError("unhandled subgroup kind");
}

GroupElement quotient_label(const GroupElement& g, SubgroupKind kind, int k)
{
    switch (kind) {
    case SubgroupKind::IntegersInReals:
        return GroupElement::make(GroupSpec::circle(g.spec().eps), g.real());
    case SubgroupKind::CyclicInCircle:
        return GroupElement::make(GroupSpec::circle(g.spec().eps), g.real() * k);
    case SubgroupKind::SignsInGL: {
        Eigen::MatrixXd m = g.matrix();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (std::abs(m(i, j)) > 1e-12) {
                    if (m(i, j) < 0) m = -m;
                    return GroupElement::make(g.spec(), m);
                }
            }
        }
        throw ConsistencyError("matrix with no significant entry cannot be canonicalized");
    }
    }
    throw ConsistencyError("unhandled subgroup kind");
}

/** Tolerance for comparing derived labels across an overlap; looser than the
 *  raw eps because both sides accumulate one round of arithmetic. */
double label_tolerance(SubgroupKind kind, int k, const GroupElement& a, const GroupElement& b)
{
    const double eps = a.spec().eps;
    switch (kind) {
    case SubgroupKind::IntegersInReals:
        return 4 * eps;
    case SubgroupKind::CyclicInCircle:
        return 4 * eps * k;
    case SubgroupKind::SignsInGL: {
        const double scale = std::max({1.0, a.matrix().cwiseAbs().maxCoeff(),
                                       b.matrix().cwiseAbs().maxCoeff()});
        return 4 * eps * scale * a.matrix().cols();
    }
    }
    throw ConsistencyError("unhandled subgroup kind");
}

} // namespace

SubgroupGlueResult subgroup_glue(const Nerve& nerve, const std::vector<GroupElement>& phis,
                                 SubgroupKind kind, int k,
                                 const std::optional<std::vector<GroupElement>>& tau)
{
    if (static_cast<int>(phis.size()) != nerve.vertex_count())
        throw InputError("expected one local value per nerve vertex: got "
                         + std::to_string(phis.size()) + " for "
                         + std::to_string(nerve.vertex_count()) + " vertices");
    if (kind == SubgroupKind::CyclicInCircle && k < 1)
        throw InputError("the cyclic subgroup order must be at least 1");

    SubgroupGlueResult result;
    result.in_subgroup = true;
    if (phis.empty()) return result;

    const GroupSpec ambient = phis.front().spec();
    if (ambient.tag != ambient_tag(kind))
        throw InputError("local values live in " + group_name(ambient.tag)
                         + ", which does not match the chosen subgroup scenario");
    for (const GroupElement& phi : phis)
        if (!phi.spec().compatible(ambient))
            throw InputError("local values carry mismatched group parameters");

    for (int e = 0; e < nerve.edge_count(); ++e) {
        const NerveEdge& edge = nerve.edges[e];
        const int pa = nerve.vertex_position(edge.a);
        const int pb = nerve.vertex_position(edge.b);
        const GroupElement rho = op(inverse(phis[pa]), phis[pb]);
        if (!subgroup_member(rho, kind, k)) {
            result.in_subgroup = false;
            result.violating_edge = e;
            result.violating_value = rho;
            return result;
        }
    }

    result.quotient_labels.reserve(phis.size());
    for (const GroupElement& phi : phis)
        result.quotient_labels.push_back(quotient_label(phi, kind, k));
    for (int e = 0; e < nerve.edge_count(); ++e) {
        const NerveEdge& edge = nerve.edges[e];
        const GroupElement& la = result.quotient_labels[nerve.vertex_position(edge.a)];
        const GroupElement& lb = result.quotient_labels[nerve.vertex_position(edge.b)];
        if (distance(la, lb) > label_tolerance(kind, k, phis.front(), phis.front()))
            throw ConsistencyError(
                "quotient labels disagree on an overlap although the differences lie in the subgroup");
    }

    if (tau) {
        if (tau->size() != phis.size())
            throw InputError("expected one subgroup value per nerve vertex in tau");
        for (std::size_t a = 0; a < tau->size(); ++a) {
            if (!(*tau)[a].spec().compatible(ambient))
                throw InputError("tau values carry mismatched group parameters");
            if (!subgroup_member((*tau)[a], kind, k))
                throw InputError("tau must take values in the subgroup");
        }
        std::vector<GroupElement> adjusted;
        adjusted.reserve(phis.size());
        for (std::size_t a = 0; a < phis.size(); ++a)
            adjusted.push_back(op(phis[a], inverse((*tau)[a])));
        bool consistent = true;
        for (int e = 0; e < nerve.edge_count() && consistent; ++e) {
            const NerveEdge& edge = nerve.edges[e];
            const GroupElement& va = adjusted[nerve.vertex_position(edge.a)];
            const GroupElement& vb = adjusted[nerve.vertex_position(edge.b)];
            if (distance(va, vb) > label_tolerance(kind, k, va, vb)) {
                result.mismatch_edge = e;
                consistent = false;
            }
        }
        if (consistent) result.global_map = std::move(adjusted);
    }
    return result;
}

} // namespace cech

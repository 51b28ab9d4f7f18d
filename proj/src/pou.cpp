#include "cech/pou.hpp"

#include <algorithm>
#include <cmath>

namespace cech {

namespace {

double table_lookup(const FunctionTable& table, int point, bool* found)
{
    auto it = std::lower_bound(table.entries.begin(), table.entries.end(), point,
                               [](const std::pair<int, double>& e, int p) { return e.first < p; });
    if (it == table.entries.end() || it->first != point) {
        *found = false;
        return 0.0;
    }
    *found = true;
    return it->second;
}

} // namespace

PartitionOfUnity partition_of_unity(const Cover& cover)
{
    const int k = cover.set_count();
    const int n = cover.point_count();
    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(k, n);
    for (int a = 0; a < k; ++a) {
        const auto* ball = std::get_if<BallShape>(&cover.sets[a].shape);
        if (!ball)
            throw InputError("partition of unity requires every set to be a metric ball");
        for (int p = 0; p < n; ++p) {
            double d = cover.space->distance(ball->center, p);
            raw(a, p) = std::max(0.0, 1.0 - d / ball->radius);
        }
    }
    PartitionOfUnity pou;
    pou.weights = Eigen::MatrixXd::Zero(k, n);
    for (int p = 0; p < n; ++p) {
        double total = raw.col(p).sum();
        if (total <= 0.0)
            throw InputError("point " + cover.space->ids[p] + " is covered by no ball");
        pou.weights.col(p) = raw.col(p) / total;
    }
    return pou;
}

FunctionSolveResult solve_function_cocycle(const Cover& cover, const Nerve& nerve,
                                           const FunctionCochain1& r,
                                           const PartitionOfUnity& pou)
{
    if (nerve.set_count != cover.set_count())
        throw InputError("nerve does not belong to this cover");
    if (static_cast<int>(r.edges.size()) != nerve.edge_count())
        throw InputError("function cochain is not aligned with the nerve's edges");
    if (pou.weights.rows() != cover.set_count() || pou.weights.cols() != cover.point_count())
        throw InputError("partition of unity has the wrong shape for this cover");

    // Each edge table must be defined on exactly the intersection.
    for (int e = 0; e < nerve.edge_count(); ++e) {
        const NerveEdge& edge = nerve.edges[e];
        Bitset inter = cover.sets[edge.a].members & cover.sets[edge.b].members;
        const FunctionTable& table = r.edges[e];
        if (table.entries.size() != inter.count())
            throw InputError("edge (" + std::to_string(edge.a) + "," + std::to_string(edge.b)
                             + ") table does not match the intersection size");
        int prev = -1;
        for (auto [p, value] : table.entries) {
            (void)value;
            if (p <= prev)
                throw InputError("edge table entries must be sorted by point with no repeats");
            prev = p;
            if (p < 0 || p >= cover.point_count() || !inter.test(p))
                throw InputError("edge (" + std::to_string(edge.a) + "," + std::to_string(edge.b)
                                 + ") table mentions a point outside the intersection");
        }
    }

    // Pointwise cocycle identity on every triple overlap.
    for (const NerveTriangle& t : nerve.triangles) {
        int eab = nerve.edge_index(t.a, t.b);
        int ebc = nerve.edge_index(t.b, t.c);
        int eac = nerve.edge_index(t.a, t.c);
        Bitset triple = cover.sets[t.a].members & cover.sets[t.b].members
                        & cover.sets[t.c].members;
        for (auto p = triple.find_first(); p != Bitset::npos; p = triple.find_next(p)) {
            bool f1 = false, f2 = false, f3 = false;
            double ab = table_lookup(r.edges[eab], static_cast<int>(p), &f1);
            double bc = table_lookup(r.edges[ebc], static_cast<int>(p), &f2);
            double ac = table_lookup(r.edges[eac], static_cast<int>(p), &f3);
            if (!f1 || !f2 || !f3)
                throw ConsistencyError("triple-overlap point missing from an edge table");
            if (std::abs(ab + bc - ac) > r.eps)
                throw InputError("pointwise cocycle violated on triple ("
                                 + std::to_string(t.a) + "," + std::to_string(t.b) + ","
                                 + std::to_string(t.c) + ") at point "
                                 + cover.space->ids[p]);
        }
    }

    // t_a(p) = - sum_g r_ag(p) eta_g(p), summed over the sets g containing p.
    FunctionSolveResult out;
    out.sections.resize(nerve.vertex_count());
    for (int vi = 0; vi < nerve.vertex_count(); ++vi) {
        int a = nerve.vertices[vi].set_index;
        const Bitset& members = cover.sets[a].members;
        for (auto p = members.find_first(); p != Bitset::npos; p = members.find_next(p)) {
            double acc = 0.0;
            for (int gi = 0; gi < nerve.vertex_count(); ++gi) {
                int g = nerve.vertices[gi].set_index;
                if (g == a || !cover.sets[g].members.test(p))
                    continue;
                double eta = pou.weights(g, static_cast<int>(p));
                if (eta == 0.0)
                    continue;
                int e = g > a ? nerve.edge_index(a, g) : nerve.edge_index(g, a);
                if (e < 0)
                    throw ConsistencyError("overlapping sets missing a nerve edge");
                bool found = false;
                double val = table_lookup(r.edges[e], static_cast<int>(p), &found);
                if (!found)
                    throw ConsistencyError("overlap point missing from an edge table");
                double r_ag = g > a ? val : -val;
                acc -= r_ag * eta;
            }
            out.sections[vi].entries.emplace_back(static_cast<int>(p), acc);
        }
    }
    return out;
}

} // namespace cech

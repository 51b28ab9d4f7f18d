#include "cech/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace cech {

namespace {

std::vector<GroupElement> filled(int count, const GroupElement& e)
{
    return std::vector<GroupElement>(static_cast<size_t>(count), e);
}

void check_alignment(const Nerve& nerve, const Cochain1& r)
{
    if (static_cast<int>(r.values.size()) != nerve.edge_count())
        throw InputError("1-cochain has " + std::to_string(r.values.size())
                         + " values for a nerve with " + std::to_string(nerve.edge_count())
                         + " edges");
}

} // namespace

Cochain0 identity_cochain0(const Nerve& nerve, const GroupSpec& spec)
{
    return {spec, filled(nerve.vertex_count(), identity(spec))};
}

Cochain1 identity_cochain1(const Nerve& nerve, const GroupSpec& spec)
{
    return {spec, filled(nerve.edge_count(), identity(spec))};
}

Cochain2 identity_cochain2(const Nerve& nerve, const GroupSpec& spec)
{
    return {spec, filled(nerve.triangle_count(), identity(spec))};
}

GroupElement directed_value(const Nerve& nerve, const Cochain1& r, int u, int v)
{
    check_alignment(nerve, r);
    if (u == v)
        throw InputError("directed edge value requires distinct endpoints");
    int e = u < v ? nerve.edge_index(u, v) : nerve.edge_index(v, u);
    if (e < 0)
        throw InputError("nerve has no edge between sets " + std::to_string(u) + " and "
                         + std::to_string(v));
    return u < v ? r.values[e] : inverse(r.values[e]);
}

Cochain1 delta0(const Nerve& nerve, const Cochain0& t, Convention conv)
{
    if (static_cast<int>(t.values.size()) != nerve.vertex_count())
        throw InputError("0-cochain is not aligned with the nerve's vertices");
    Cochain1 r{t.spec, {}};
    r.values.reserve(nerve.edge_count());
    for (const NerveEdge& e : nerve.edges) {
        const GroupElement& ta = t.values[nerve.vertex_position(e.a)];
        const GroupElement& tb = t.values[nerve.vertex_position(e.b)];
        if (t.spec.abelian() || conv == Convention::GBA)
            r.values.push_back(op(tb, inverse(ta)));
        else
            r.values.push_back(op(inverse(ta), tb));
    }
    return r;
}

Cochain2 delta1(const Nerve& nerve, const Cochain1& r, Convention conv)
{
    check_alignment(nerve, r);
    Cochain2 v{r.spec, {}};
    v.values.reserve(nerve.triangle_count());
    for (const NerveTriangle& t : nerve.triangles) {
        GroupElement ab = r.values[nerve.edge_index(t.a, t.b)];
        GroupElement bc = r.values[nerve.edge_index(t.b, t.c)];
        GroupElement ac = r.values[nerve.edge_index(t.a, t.c)];
        if (r.spec.abelian() || conv == Convention::ABG)
            v.values.push_back(op(op(ab, bc), inverse(ac)));
        else
            v.values.push_back(op(op(inverse(ac), bc), ab));
    }
    return v;
}

CocycleCheck check_cocycle(const Nerve& nerve, const Cochain1& r, Convention conv)
{
    Cochain2 defects = delta1(nerve, r, conv);
    for (int t = 0; t < nerve.triangle_count(); ++t) {
        if (!is_identity(defects.values[t]))
            return {false, t, defects.values[t]};
    }
    return {};
}

GroupElement walk_holonomy(const Nerve& nerve, const Cochain1& r,
                           const std::vector<CycleStep>& steps, Convention conv)
{
    check_alignment(nerve, r);
    GroupElement acc = identity(r.spec);
    for (const CycleStep& s : steps) {
        GroupElement val = s.sign > 0 ? r.values[s.edge] : inverse(r.values[s.edge]);
        if (r.spec.abelian() || conv == Convention::ABG)
            acc = op(acc, val);
        else
            acc = op(val, acc);
    }
    return acc;
}

GroupElement cycle_holonomy(const Nerve& nerve, const Cochain1& r, const FundamentalCycle& cycle,
                            Convention conv)
{
    return walk_holonomy(nerve, r, cycle.steps, conv);
}

CoboundaryResult solve_coboundary(const Nerve& nerve, const Cochain1& r, Convention conv)
{
    check_alignment(nerve, r);
    SpanningForest forest = spanning_forest(nerve);

    std::vector<GroupElement> t(nerve.vertex_count(), identity(r.spec));
    for (int v : forest.bfs_order) {
        if (forest.parent[v] < 0)
            continue;
        int u = forest.parent[v];
        int e = forest.parent_edge[v];
        // Directed transition u -> v along the tree edge.
        bool forward = nerve.vertex_position(nerve.edges[e].a) == u;
        GroupElement d = forward ? r.values[e] : inverse(r.values[e]);
        if (r.spec.abelian() || conv == Convention::ABG)
            t[v] = op(t[u], d);
        else
            t[v] = op(d, t[u]);
    }

    std::optional<int> bad_chord;
    for (int e = 0; e < nerve.edge_count() && !bad_chord; ++e) {
        if (forest.tree_edge[e])
            continue;
        int pa = nerve.vertex_position(nerve.edges[e].a);
        int pb = nerve.vertex_position(nerve.edges[e].b);
        GroupElement expected;
        if (r.spec.abelian() || conv == Convention::GBA)
            expected = op(t[pb], inverse(t[pa]));
        else
            expected = op(inverse(t[pa]), t[pb]);
        if (!approx_equal(expected, r.values[e]))
            bad_chord = e;
    }

    CoboundaryResult result;
    if (!bad_chord) {
        result.solution = Cochain0{r.spec, std::move(t)};
        return result;
    }
    for (FundamentalCycle& cyc : fundamental_cycles(nerve)) {
        if (cyc.chord == *bad_chord) {
            GroupElement h = cycle_holonomy(nerve, r, cyc, conv);
            result.obstruction = CoboundaryObstruction{std::move(cyc), std::move(h)};
            return result;
        }
    }
    throw ConsistencyError("failing chord has no fundamental cycle");
}

LocalDifferenceResult solve_local_difference(const LocalDifferenceProblem& problem)
{
    const int n = problem.point_count;
    if (n <= 0)
        throw InputError("local difference problem needs a positive point count");

    // Canonicalize to x < y, merging duplicates and rejecting conflicts.
    std::map<std::pair<int, int>, double> table;
    for (auto [x, y, f] : problem.differences) {
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw InputError("difference pair references unknown point");
        if (x == y) {
            if (std::abs(f) > problem.eps)
                throw InputError("difference of a point with itself must be 0");
            continue;
        }
        double canon = x < y ? f : -f;
        auto key = std::minmax(x, y);
        auto [it, inserted] = table.emplace(std::pair(key.first, key.second), canon);
        if (!inserted && std::abs(it->second - canon) > problem.eps)
            throw InputError("conflicting difference values for one pair");
    }

    std::vector<std::vector<std::pair<int, double>>> adj(n);  // (neighbour, F(this -> neighbour))
    std::vector<std::pair<std::pair<int, int>, double>> pairs(table.begin(), table.end());
    for (auto& [key, f] : pairs) {
        adj[key.first].emplace_back(key.second, f);
        adj[key.second].emplace_back(key.first, -f);
    }

    std::vector<double> fval(n, 0.0);
    std::vector<int> parent(n, -1);
    std::vector<bool> visited(n, false), tree_pair(pairs.size(), false);
    for (int root = 0; root < n; ++root) {
        if (visited[root])
            continue;
        std::deque<int> queue{root};
        visited[root] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (auto [v, f] : adj[u]) {
                if (visited[v])
                    continue;
                visited[v] = true;
                parent[v] = u;
                fval[v] = fval[u] + f;
                auto key = std::minmax(u, v);
                auto it = table.find(std::pair(key.first, key.second));
                tree_pair[std::distance(table.begin(), it)] = true;
                queue.push_back(v);
            }
        }
    }

    for (size_t k = 0; k < pairs.size(); ++k) {
        if (tree_pair[k])
            continue;
        auto [x, y] = pairs[k].first;
        double f = pairs[k].second;
        if (std::abs(fval[y] - fval[x] - f) <= problem.eps)
            continue;
        // Closed walk: across the chord x -> y, then back to x through the tree.
        PointCycleObstruction obs;
        obs.points.push_back(x);
        obs.points.push_back(y);
        obs.sum = f;
        std::vector<int> path_y, path_x;
        for (int p = y; p >= 0; p = parent[p])
            path_y.push_back(p);
        for (int p = x; p >= 0; p = parent[p])
            path_x.push_back(p);
        // Drop the shared tail above the meeting point of the two root paths.
        while (path_y.size() > 1 && path_x.size() > 1
               && path_y[path_y.size() - 1] == path_x[path_x.size() - 1]
               && path_y[path_y.size() - 2] == path_x[path_x.size() - 2]) {
            path_y.pop_back();
            path_x.pop_back();
        }
        for (size_t i = 1; i < path_y.size(); ++i) {
            obs.sum += fval[path_y[i]] - fval[path_y[i - 1]];
            obs.points.push_back(path_y[i]);
        }
        for (size_t i = path_x.size() - 1; i-- > 0;) {
            obs.sum += fval[path_x[i]] - fval[path_x[i + 1]];
            obs.points.push_back(path_x[i]);
        }
        LocalDifferenceResult res;
        res.obstruction = std::move(obs);
        return res;
    }

    LocalDifferenceResult res;
    res.solution = std::move(fval);
    return res;
}

} // namespace cech

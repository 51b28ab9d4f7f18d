#include "cech/nerve.hpp"

#include <algorithm>
#include <deque>

namespace cech {

int Nerve::vertex_position(int a) const
{
    auto it = std::lower_bound(vertices.begin(), vertices.end(), a,
                               [](const NerveVertex& v, int x) { return v.set_index < x; });
    if (it == vertices.end() || it->set_index != a)
        return -1;
    return static_cast<int>(it - vertices.begin());
}

int Nerve::edge_index(int a, int b) const
{
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair<int, int>(a, b),
                               [](const NerveEdge& e, const std::pair<int, int>& q) {
                                   return std::pair(e.a, e.b) < q;
                               });
    if (it == edges.end() || it->a != a || it->b != b)
        return -1;
    return static_cast<int>(it - edges.begin());
}

int Nerve::triangle_index(int a, int b, int c) const
{
    auto it = std::lower_bound(triangles.begin(), triangles.end(), std::tuple<int, int, int>(a, b, c),
                               [](const NerveTriangle& t, const std::tuple<int, int, int>& q) {
                                   return std::tuple(t.a, t.b, t.c) < q;
                               });
    if (it == triangles.end() || it->a != a || it->b != b || it->c != c)
        return -1;
    return static_cast<int>(it - triangles.begin());
}

Nerve build_nerve(const Cover& cover, int max_dim)
{
    if (max_dim < 0 || max_dim > 2)
        throw InputError("nerve truncation dimension must be 0, 1 or 2");
    Nerve n;
    n.set_count = cover.set_count();
    for (int a = 0; a < cover.set_count(); ++a) {
        if (cover.sets[a].members.any())
            n.vertices.push_back({a, static_cast<int>(cover.sets[a].members.find_first())});
    }
    if (max_dim < 1)
        return n;
    for (size_t i = 0; i < n.vertices.size(); ++i) {
        for (size_t j = i + 1; j < n.vertices.size(); ++j) {
            int a = n.vertices[i].set_index;
            int b = n.vertices[j].set_index;
            Bitset inter = cover.sets[a].members & cover.sets[b].members;
            if (inter.any())
                n.edges.push_back({a, b, static_cast<int>(inter.find_first())});
        }
    }
    if (max_dim < 2)
        return n;
    for (size_t i = 0; i < n.vertices.size(); ++i) {
        for (size_t j = i + 1; j < n.vertices.size(); ++j) {
            int a = n.vertices[i].set_index;
            int b = n.vertices[j].set_index;
            Bitset ab = cover.sets[a].members & cover.sets[b].members;
            if (ab.none())
                continue;
            for (size_t k = j + 1; k < n.vertices.size(); ++k) {
                int c = n.vertices[k].set_index;
                Bitset abc = ab & cover.sets[c].members;
                if (abc.any())
                    n.triangles.push_back({a, b, c, static_cast<int>(abc.find_first())});
            }
        }
    }
    return n;
}

Eigen::MatrixXi boundary_matrix(const Nerve& nerve, int dim)
{
    if (dim == 1) {
        Eigen::MatrixXi m = Eigen::MatrixXi::Zero(nerve.vertex_count(), nerve.edge_count());
        for (int e = 0; e < nerve.edge_count(); ++e) {
            m(nerve.vertex_position(nerve.edges[e].a), e) = -1;
            m(nerve.vertex_position(nerve.edges[e].b), e) = 1;
        }
        return m;
    }
    if (dim == 2) {
        Eigen::MatrixXi m = Eigen::MatrixXi::Zero(nerve.edge_count(), nerve.triangle_count());
        for (int t = 0; t < nerve.triangle_count(); ++t) {
            const NerveTriangle& tr = nerve.triangles[t];
            m(nerve.edge_index(tr.b, tr.c), t) += 1;
            m(nerve.edge_index(tr.a, tr.c), t) -= 1;
            m(nerve.edge_index(tr.a, tr.b), t) += 1;
        }
        return m;
    }
    throw InputError("boundary matrix dimension must be 1 or 2");
}

SpanningForest spanning_forest(const Nerve& nerve)
{
    const int nv = nerve.vertex_count();
    // Adjacency in edge-list order; since edges are lexicographic this
    // enumerates each vertex's neighbours in ascending set index.
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbour pos, edge idx)
    for (int e = 0; e < nerve.edge_count(); ++e) {
        int u = nerve.vertex_position(nerve.edges[e].a);
        int v = nerve.vertex_position(nerve.edges[e].b);
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }

    SpanningForest f;
    f.parent.assign(nv, -1);
    f.parent_edge.assign(nv, -1);
    f.depth.assign(nv, 0);
    f.tree_edge.assign(nerve.edge_count(), false);
    std::vector<bool> visited(nv, false);
    for (int root = 0; root < nv; ++root) {
        if (visited[root])
            continue;
        ++f.components;
        std::deque<int> queue{root};
        visited[root] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            f.bfs_order.push_back(u);
            for (auto [v, e] : adj[u]) {
                if (visited[v])
                    continue;
                visited[v] = true;
                f.parent[v] = u;
                f.parent_edge[v] = e;
                f.depth[v] = f.depth[u] + 1;
                f.tree_edge[e] = true;
                queue.push_back(v);
            }
        }
    }
    return f;
}

std::vector<FundamentalCycle> fundamental_cycles(const Nerve& nerve)
{
    SpanningForest forest = spanning_forest(nerve);
    const std::vector<int>& parent = forest.parent;
    const std::vector<int>& parent_edge = forest.parent_edge;
    const std::vector<int>& depth = forest.depth;

    // One step from child towards its parent, with the traversal sign.
    auto step_up = [&](int child) -> CycleStep {
        int e = parent_edge[child];
        bool child_is_a = nerve.vertex_position(nerve.edges[e].a) == child;
        return {e, child_is_a ? 1 : -1};
    };

    std::vector<FundamentalCycle> cycles;
    for (int e = 0; e < nerve.edge_count(); ++e) {
        if (forest.tree_edge[e])
            continue;
        int u = nerve.vertex_position(nerve.edges[e].a);
        int v = nerve.vertex_position(nerve.edges[e].b);
        FundamentalCycle cyc;
        cyc.base_vertex = nerve.edges[e].a;
        cyc.chord = e;
        cyc.steps.push_back({e, 1});  // a -> b across the chord
        // Tree path from v back to u: ascend both endpoints to their common
        // ancestor, then descend to u.
        std::vector<CycleStep> up_from_v, up_from_u;
        int x = v, y = u;
        while (depth[x] > depth[y]) {
            up_from_v.push_back(step_up(x));
            x = parent[x];
        }
        while (depth[y] > depth[x]) {
            up_from_u.push_back(step_up(y));
            y = parent[y];
        }
        while (x != y) {
            up_from_v.push_back(step_up(x));
            up_from_u.push_back(step_up(y));
            x = parent[x];
            y = parent[y];
        }
        for (const CycleStep& s : up_from_v)
            cyc.steps.push_back(s);
        for (auto it = up_from_u.rbegin(); it != up_from_u.rend(); ++it)
            cyc.steps.push_back({it->edge, -it->sign});
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

} // namespace cech

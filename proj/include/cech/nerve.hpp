#ifndef CECH_NERVE_HPP
#define CECH_NERVE_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cech/cover.hpp"

namespace cech {

struct NerveVertex {
    int set_index = 0;  // index of the (nonempty) cover set
    int witness = 0;    // smallest member point
};

struct NerveEdge {
    int a = 0, b = 0;   // cover-set indices, a < b
    int witness = 0;    // smallest point of the intersection
};

struct NerveTriangle {
    int a = 0, b = 0, c = 0;  // cover-set indices, a < b < c
    int witness = 0;
};

/**
 * Nerve of a cover, truncated at dimension 2: one vertex per nonempty set,
 * one edge per nonempty pairwise intersection, one triangle per nonempty
 * triple intersection. Simplices are listed in lexicographic order of their
 * set indices and each carries a witness point inside the intersection.
 *
 * The connectivity flags record whether an intersection is connected at
 * some user-chosen subcover granularity. They are storage only: nothing in
 * the library infers them.
 */
struct Nerve {
    int set_count = 0;
    std::vector<NerveVertex> vertices;
    std::vector<NerveEdge> edges;
    std::vector<NerveTriangle> triangles;
    std::optional<std::vector<bool>> edge_connectivity;
    std::optional<std::vector<bool>> triangle_connectivity;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    /** Position of set index a in the vertex list, -1 if absent. */
    int vertex_position(int a) const;
    /** Position of edge (a, b) with a < b in the edge list, -1 if absent. */
    int edge_index(int a, int b) const;
    /** Position of triangle (a, b, c) with a < b < c, -1 if absent. */
    int triangle_index(int a, int b, int c) const;
};

/**
 * Build the nerve of a cover. max_dim in {0, 1, 2} truncates the output
 * (a max_dim of 1 skips triangles, 0 also skips edges).
 */
Nerve build_nerve(const Cover& cover, int max_dim = 2);

/**
 * Signed incidence matrix of the nerve over the integers.
 * dim 1: vertices x edges, edge (a, b) has -1 at a and +1 at b.
 * dim 2: edges x triangles, triangle (a, b, c) has +1 at (b, c), -1 at
 * (a, c), +1 at (a, b). The composite of the two matrices vanishes.
 */
Eigen::MatrixXi boundary_matrix(const Nerve& nerve, int dim);

/**
 * Breadth-first spanning forest of the 1-skeleton, rooted at the smallest
 * vertex of each component, neighbours visited in ascending set index.
 * All entries are indexed by vertex position.
 */
struct SpanningForest {
    std::vector<int> parent;       // parent vertex position, -1 at roots
    std::vector<int> parent_edge;  // edge index towards the parent, -1 at roots
    std::vector<int> depth;
    std::vector<int> bfs_order;    // vertex positions in visiting order
    std::vector<bool> tree_edge;   // per edge
    int components = 0;
};

SpanningForest spanning_forest(const Nerve& nerve);

struct CycleStep {
    int edge = 0;  // index into nerve.edges
    int sign = 1;  // +1 traverses a -> b, -1 traverses b -> a
};

/** A cycle of the nerve's 1-skeleton: the chord (non-tree edge) followed by
 *  the tree path closing it up. steps[0] is always the chord. */
struct FundamentalCycle {
    int base_vertex = 0;  // set index where the traversal starts and ends
    int chord = 0;        // index into nerve.edges
    std::vector<CycleStep> steps;
};

/**
 * Fundamental cycles of the 1-skeleton with respect to a breadth-first
 * spanning forest rooted at the smallest vertex of each component: one
 * cycle per non-tree edge, listed in lexicographic order of the chords.
 * The number of cycles is #edges - #vertices + #components.
 */
std::vector<FundamentalCycle> fundamental_cycles(const Nerve& nerve);

} // namespace cech

#endif // CECH_NERVE_HPP

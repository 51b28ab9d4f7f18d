#ifndef CECH_COVER_HPP
#define CECH_COVER_HPP

#include <Eigen/Dense>
#include <boost/dynamic_bitset.hpp>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cech/errors.hpp"

namespace cech {

using Bitset = boost::dynamic_bitset<>;

/**
 * A finite point sample with a metric. Distances come either from an
 * explicit symmetric matrix or from Euclidean coordinates (one row per
 * point). Point ids are unique strings; all other code refers to points by
 * index into `ids`.
 */
struct SampleSpace {
    std::vector<std::string> ids;
    std::optional<Eigen::MatrixXd> coords;  // points x dim
    std::optional<Eigen::MatrixXd> metric;  // points x points, overrides coords

    int size() const { return static_cast<int>(ids.size()); }
    int dim() const { return coords ? static_cast<int>(coords->cols()) : 0; }
    double distance(int i, int j) const;
    int index_of(const std::string& id) const;
    void validate() const;
};

/** Open metric ball: members are exactly the points with d(p, center) < radius. */
struct BallShape {
    int center = 0;
    double radius = 0;
};

/** Open interval on a 1-d sample: members are exactly the points with lo < x < hi. */
struct IntervalShape {
    double lo = 0;
    double hi = 0;
};

/** Pairwise intersection produced by common_refinement, remembering its factors. */
struct IntersectShape {
    int alpha = 0;
    int beta = 0;
};

using SetShape = std::variant<std::monostate, BallShape, IntervalShape, IntersectShape>;

struct CoverSet {
    int id = 0;
    Bitset members;
    SetShape shape;

    bool is_ball() const { return std::holds_alternative<BallShape>(shape); }
    bool is_interval() const { return std::holds_alternative<IntervalShape>(shape); }
};

/**
 * A finite family of (open) subsets of a sample space, indexed 0..k-1.
 * Empty sets are allowed (pullbacks keep them so indices stay aligned).
 */
struct Cover {
    std::shared_ptr<const SampleSpace> space;
    std::vector<CoverSet> sets;

    int set_count() const { return static_cast<int>(sets.size()); }
    int point_count() const { return space ? space->size() : 0; }
    bool contains(int set_index, int point) const { return sets[set_index].members.test(point); }
    /** True when every sample point lies in at least one set. */
    bool covers_space() const;
    void validate() const;
};

/** Construction helpers; members of ball/interval sets are derived from the shape. */
Cover make_explicit_cover(std::shared_ptr<const SampleSpace> space,
                          const std::vector<std::vector<int>>& members);
Cover make_ball_cover(std::shared_ptr<const SampleSpace> space,
                      const std::vector<std::pair<int, double>>& balls);
Cover make_interval_cover(std::shared_ptr<const SampleSpace> space,
                          const std::vector<std::pair<double, double>>& intervals);
Bitset ball_members(const SampleSpace& space, int center, double radius);
Bitset interval_members(const SampleSpace& space, double lo, double hi);

struct OrderResult {
    int order = -1;               // max multiplicity minus one; -1 when nothing is covered
    std::optional<int> witness;   // smallest point index attaining the max
};

/** Order of the cover: largest number of sets through a single point, minus one. */
OrderResult cover_order(const Cover& cover);

struct CoverReport {
    int order = -1;
    std::optional<int> witness;
    bool covers_space = false;
    std::vector<std::vector<int>> adjacency_classes;
};

CoverReport analyze_cover(const Cover& cover);

struct RefinementResult {
    bool refines = false;
    /** For each fine set, the smallest coarse index containing it. */
    std::vector<int> witness;
    /** A fine set contained in no coarse set, when refines is false. */
    std::optional<int> counterexample;
};

/** Does every set of `fine` sit inside some set of `coarse`? */
RefinementResult is_refinement(const Cover& fine, const Cover& coarse);

/**
 * All nonempty pairwise intersections U_a n V_b, ordered by (a, b); refines
 * both inputs, and covers every point that both inputs cover.
 */
Cover common_refinement(const Cover& u, const Cover& v);

/**
 * Partition of set indices into adjacency classes: two sets are adjacent
 * when they intersect, and classes are the transitive closure. Classes are
 * ordered by smallest member, members ascending. Empty sets are singletons.
 */
std::vector<std::vector<int>> adjacency_components(const Cover& cover);

struct ConnectivityResult {
    bool compatible = false;
    /** On incompatibility: indices of one adjacency class meeting the subset... */
    std::vector<int> part_a;
    /** ...and the remaining sets meeting the subset; the two unions are disjoint. */
    std::vector<int> part_b;
};

/**
 * Tests whether the subset meets only one adjacency class of the sets that
 * touch it. When it does not, the subset splits into two disjoint relatively
 * open pieces cut out by the returned index groups.
 */
ConnectivityResult connectivity_verdict(const Cover& cover, const Bitset& subset);
ConnectivityResult connectivity_verdict(const Cover& cover, const std::vector<int>& subset);

/** Total map between samples: f[p] is the index of the image point. */
using PointMap = std::vector<int>;

/**
 * Pullback f^{-1}(U_a) of each set of `target` along f. Set indices and ids
 * are preserved; empty preimages are kept so indices stay aligned.
 */
Cover pullback_cover(const PointMap& f, std::shared_ptr<const SampleSpace> domain,
                     const Cover& target);

/**
 * For an interval cover of a 1-d sample, produce a refining interval cover
 * of order <= 1. Covers that already have order <= 1 are returned unchanged.
 * Otherwise a greedy left-to-right sweep picks a minimal covering
 * subfamily (always choosing the interval reaching furthest right, smallest
 * index on ties) and then pulls each left endpoint up to the midpoint of
 * the overlap with its predecessor.
 */
Cover refine_intervals_order1(const Cover& cover);

/**
 * Cover of a uniform grid sample of the unit square by rows x cols bricks
 * inflated by eps. With `shifted` (the default), alternate rows are offset
 * by half a column pitch and the result has order <= 2; without it brick
 * corners meet four sets and the order reaches 3 at interior vertices.
 * Requires eps < 1/(4*cols) and eps < 1/(4*rows).
 */
Cover brick_cover(int rows, int cols, double eps, bool shifted = true);

} // namespace cech

#endif // CECH_COVER_HPP

#include "cech/cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cech {

double SampleSpace::distance(int i, int j) const
{
    if (metric)
        return (*metric)(i, j);
    if (coords)
        return (coords->row(i) - coords->row(j)).norm();
    throw InputError("sample space has neither coordinates nor an explicit metric");
}

int SampleSpace::index_of(const std::string& id) const
{
    for (int i = 0; i < size(); ++i)
        if (ids[i] == id)
            return i;
    throw InputError("unknown point id: " + id);
}

void SampleSpace::validate() const
{
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (ids[i] == ids[j])
                throw InputError("duplicate point id: " + ids[i]);
    if (coords && coords->rows() != size())
        throw InputError("coordinate row count does not match point count");
    if (metric) {
        if (metric->rows() != size() || metric->cols() != size())
            throw InputError("metric matrix shape does not match point count");
        for (int i = 0; i < size(); ++i) {
            if ((*metric)(i, i) != 0.0)
                throw InputError("metric has nonzero diagonal at point " + ids[i]);
            for (int j = 0; j < size(); ++j) {
                if ((*metric)(i, j) < 0.0)
                    throw InputError("metric has a negative entry");
                if ((*metric)(i, j) != (*metric)(j, i))
                    throw InputError("metric matrix is not symmetric");
            }
        }
    }
}

bool Cover::covers_space() const
{
    Bitset covered(point_count());
    for (const CoverSet& s : sets)
        covered |= s.members;
    return covered.count() == covered.size();
}

void Cover::validate() const
{
    if (!space)
        throw InputError("cover has no sample space");
    space->validate();
    const int n = point_count();
    for (int k = 0; k < set_count(); ++k) {
        const CoverSet& s = sets[k];
        if (static_cast<int>(s.members.size()) != n)
            throw InputError("cover set " + std::to_string(s.id)
                             + " has a member bitset of the wrong length");
        if (const auto* ball = std::get_if<BallShape>(&s.shape)) {
            if (ball->center < 0 || ball->center >= n)
                throw InputError("ball center references unknown point");
            if (s.members != ball_members(*space, ball->center, ball->radius))
                throw InputError("ball set " + std::to_string(s.id)
                                 + " members do not match its center/radius");
        } else if (const auto* iv = std::get_if<IntervalShape>(&s.shape)) {
            if (s.members != interval_members(*space, iv->lo, iv->hi))
                throw InputError("interval set " + std::to_string(s.id)
                                 + " members do not match its endpoints");
        }
    }
    for (int a = 0; a < set_count(); ++a)
        for (int b = a + 1; b < set_count(); ++b)
            if (sets[a].id == sets[b].id)
                throw InputError("duplicate cover set id " + std::to_string(sets[a].id));
}

Bitset ball_members(const SampleSpace& space, int center, double radius)
{
    Bitset m(space.size());
    for (int p = 0; p < space.size(); ++p)
        if (space.distance(center, p) < radius)
            m.set(p);
    return m;
}

Bitset interval_members(const SampleSpace& space, double lo, double hi)
{
    if (!space.coords || space.coords->cols() != 1)
        throw InputError("interval sets require a 1-d coordinate sample");
    Bitset m(space.size());
    for (int p = 0; p < space.size(); ++p) {
        double x = (*space.coords)(p, 0);
        if (lo < x && x < hi)
            m.set(p);
    }
    return m;
}

Cover make_explicit_cover(std::shared_ptr<const SampleSpace> space,
                          const std::vector<std::vector<int>>& members)
{
    Cover c;
    c.space = std::move(space);
    for (int k = 0; k < static_cast<int>(members.size()); ++k) {
        CoverSet s;
        s.id = k;
        s.members.resize(c.space->size());
        for (int p : members[k]) {
            if (p < 0 || p >= c.space->size())
                throw InputError("cover set member references unknown point index "
                                 + std::to_string(p));
            s.members.set(p);
        }
        c.sets.push_back(std::move(s));
    }
    return c;
}

Cover make_ball_cover(std::shared_ptr<const SampleSpace> space,
                      const std::vector<std::pair<int, double>>& balls)
{
    Cover c;
    c.space = std::move(space);
    for (int k = 0; k < static_cast<int>(balls.size()); ++k) {
        auto [center, radius] = balls[k];
        if (center < 0 || center >= c.space->size())
            throw InputError("ball center references unknown point index");
        CoverSet s;
        s.id = k;
        s.members = ball_members(*c.space, center, radius);
        s.shape = BallShape{center, radius};
        c.sets.push_back(std::move(s));
    }
    return c;
}

Cover make_interval_cover(std::shared_ptr<const SampleSpace> space,
                          const std::vector<std::pair<double, double>>& intervals)
{
    Cover c;
    c.space = std::move(space);
    for (int k = 0; k < static_cast<int>(intervals.size()); ++k) {
        auto [lo, hi] = intervals[k];
        CoverSet s;
        s.id = k;
        s.members = interval_members(*c.space, lo, hi);
        s.shape = IntervalShape{lo, hi};
        c.sets.push_back(std::move(s));
    }
    return c;
}

OrderResult cover_order(const Cover& cover)
{
    std::vector<int> counts(cover.point_count(), 0);
    for (const CoverSet& s : cover.sets)
        for (auto p = s.members.find_first(); p != Bitset::npos; p = s.members.find_next(p))
            ++counts[p];
    OrderResult r;
    for (int p = 0; p < cover.point_count(); ++p) {
        if (counts[p] > 0 && counts[p] - 1 > r.order) {
            r.order = counts[p] - 1;
            r.witness = p;
        }
    }
    return r;
}

CoverReport analyze_cover(const Cover& cover)
{
    CoverReport rep;
    OrderResult o = cover_order(cover);
    rep.order = o.order;
    rep.witness = o.witness;
    rep.covers_space = cover.covers_space();
    rep.adjacency_classes = adjacency_components(cover);
    return rep;
}

RefinementResult is_refinement(const Cover& fine, const Cover& coarse)
{
    if (fine.space != coarse.space && fine.point_count() != coarse.point_count())
        throw InputError("refinement test requires covers of the same sample");
    RefinementResult r;
    r.refines = true;
    for (int b = 0; b < fine.set_count(); ++b) {
        int found = -1;
        for (int a = 0; a < coarse.set_count(); ++a) {
            if (fine.sets[b].members.is_subset_of(coarse.sets[a].members)) {
                found = a;
                break;  // smallest containing index wins
            }
        }
        if (found < 0) {
            r.refines = false;
            r.counterexample = b;
            r.witness.clear();
            return r;
        }
        r.witness.push_back(found);
    }
    return r;
}

Cover common_refinement(const Cover& u, const Cover& v)
{
    if (u.space != v.space && u.point_count() != v.point_count())
        throw InputError("common refinement requires covers of the same sample");
    Cover out;
    out.space = u.space;
    int next = 0;
    for (int a = 0; a < u.set_count(); ++a) {
        for (int b = 0; b < v.set_count(); ++b) {
            Bitset inter = u.sets[a].members & v.sets[b].members;
            if (inter.any()) {
                CoverSet s;
                s.id = next++;
                s.members = std::move(inter);
                s.shape = IntersectShape{a, b};
                out.sets.push_back(std::move(s));
            }
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<int>> classes_from(UnionFind& uf, const std::vector<int>& indices)
{
    std::vector<std::vector<int>> classes;
    std::vector<int> root_to_class;
    for (int i : indices) {
        int r = uf.find(i);
        int cls = -1;
        for (int c = 0; c < static_cast<int>(classes.size()); ++c)
            if (uf.find(classes[c][0]) == r)
                cls = c;
        if (cls < 0) {
            classes.push_back({i});
        } else {
            classes[cls].push_back(i);
        }
    }
    return classes;  // indices scanned ascending, so classes are sorted by least member
}

} // namespace

std::vector<std::vector<int>> adjacency_components(const Cover& cover)
{
    UnionFind uf(cover.set_count());
    for (int a = 0; a < cover.set_count(); ++a)
        for (int b = a + 1; b < cover.set_count(); ++b)
            if (cover.sets[a].members.intersects(cover.sets[b].members))
                uf.unite(a, b);
    std::vector<int> all(cover.set_count());
    std::iota(all.begin(), all.end(), 0);
    return classes_from(uf, all);
}

ConnectivityResult connectivity_verdict(const Cover& cover, const Bitset& subset)
{
    if (static_cast<int>(subset.size()) != cover.point_count())
        throw InputError("subset bitset length does not match the sample");
    if (subset.none())
        throw InputError("connectivity verdict requires a nonempty subset");
    Bitset covered(cover.point_count());
    std::vector<int> meeting;
    for (int k = 0; k < cover.set_count(); ++k) {
        if (cover.sets[k].members.intersects(subset)) {
            meeting.push_back(k);
            covered |= cover.sets[k].members;
        }
    }
    for (auto p = subset.find_first(); p != Bitset::npos; p = subset.find_next(p))
        if (!covered.test(p))
            throw InputError("subset point " + cover.space->ids[p] + " is not covered");

    UnionFind uf(cover.set_count());
    for (size_t i = 0; i < meeting.size(); ++i)
        for (size_t j = i + 1; j < meeting.size(); ++j)
            if (cover.sets[meeting[i]].members.intersects(cover.sets[meeting[j]].members))
                uf.unite(meeting[i], meeting[j]);
    auto classes = classes_from(uf, meeting);

    ConnectivityResult r;
    if (classes.size() <= 1) {
        r.compatible = true;
        return r;
    }
    r.compatible = false;
    r.part_a = classes[0];
    for (size_t c = 1; c < classes.size(); ++c)
        r.part_b.insert(r.part_b.end(), classes[c].begin(), classes[c].end());
    return r;
}

ConnectivityResult connectivity_verdict(const Cover& cover, const std::vector<int>& subset)
{
    Bitset b(cover.point_count());
    for (int p : subset) {
        if (p < 0 || p >= cover.point_count())
            throw InputError("subset references unknown point index " + std::to_string(p));
        b.set(p);
    }
    return connectivity_verdict(cover, b);
}

Cover pullback_cover(const PointMap& f, std::shared_ptr<const SampleSpace> domain,
                     const Cover& target)
{
    if (static_cast<int>(f.size()) != domain->size())
        throw InputError("point map must be total on the domain sample");
    for (int v : f)
        if (v < 0 || v >= target.point_count())
            throw InputError("point map sends a point to unknown index " + std::to_string(v));
    Cover out;
    out.space = std::move(domain);
    for (const CoverSet& t : target.sets) {
        CoverSet s;
        s.id = t.id;
        s.members.resize(out.space->size());
        for (int p = 0; p < out.space->size(); ++p)
            if (t.members.test(f[p]))
                s.members.set(p);
        out.sets.push_back(std::move(s));
    }
    return out;
}

Cover refine_intervals_order1(const Cover& cover)
{
    if (!cover.space || !cover.space->coords || cover.space->coords->cols() != 1)
        throw InputError("interval refinement requires a 1-d coordinate sample");
    std::vector<IntervalShape> shapes;
    for (const CoverSet& s : cover.sets) {
        const auto* iv = std::get_if<IntervalShape>(&s.shape);
        if (!iv)
            throw InputError("interval refinement requires every set to be an interval");
        shapes.push_back(*iv);
    }
    if (!cover.covers_space())
        throw InputError("interval cover does not cover its sample");

    if (cover_order(cover).order <= 1)
        return cover;

    const Eigen::MatrixXd& X = *cover.space->coords;
    const int n = cover.point_count();

    // Greedy sweep: repeatedly take the leftmost uncovered point and the
    // interval through it that reaches furthest right.
    Bitset covered(n);
    std::vector<int> selected;
    while (covered.count() < static_cast<size_t>(n)) {
        int frontier = -1;
        for (int p = 0; p < n; ++p) {
            if (!covered.test(p) && (frontier < 0 || X(p, 0) < X(frontier, 0)))
                frontier = p;
        }
        int best = -1;
        for (int k = 0; k < cover.set_count(); ++k) {
            if (!cover.sets[k].members.test(frontier))
                continue;
            if (best < 0 || shapes[k].hi > shapes[best].hi)
                best = k;
        }
        if (best < 0)
            throw ConsistencyError("covered sample lost coverage during interval sweep");
        selected.push_back(best);
        covered |= cover.sets[best].members;
    }

    // Pull each left endpoint up to the midpoint of the overlap with the
    // previous pick, so that only consecutive intervals can meet.
    std::vector<std::pair<double, double>> refined;
    for (size_t k = 0; k < selected.size(); ++k) {
        double lo = shapes[selected[k]].lo;
        double hi = shapes[selected[k]].hi;
        if (k > 0) {
            double prev_hi = refined[k - 1].second;
            if (lo < prev_hi)
                lo = 0.5 * (lo + prev_hi);
        }
        refined.emplace_back(lo, hi);
    }

    Cover out = make_interval_cover(cover.space, refined);
    if (!out.covers_space())
        throw ConsistencyError("interval refinement lost coverage");
    return out;
}

Cover brick_cover(int rows, int cols, double eps, bool shifted)
{
    if (rows < 1 || cols < 1)
        throw InputError("brick cover requires rows >= 1 and cols >= 1");
    if (eps <= 0.0)
        throw InputError("brick cover requires eps > 0");
    if (eps >= 0.25 / cols || eps >= 0.25 / rows)
        throw InputError("brick cover requires eps < 1/(4*cols) and eps < 1/(4*rows)");

    const int nx = 10 * cols + 1;
    const int ny = 10 * rows + 1;
    auto space = std::make_shared<SampleSpace>();
    Eigen::MatrixXd coords(nx * ny, 2);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int p = j * nx + i;
            space->ids.push_back("p" + std::to_string(p));
            coords(p, 0) = static_cast<double>(i) / (nx - 1);
            coords(p, 1) = static_cast<double>(j) / (ny - 1);
        }
    }
    space->coords = std::move(coords);

    Cover c;
    c.space = space;
    const double row_pitch = 1.0 / rows;
    const double col_pitch = 1.0 / cols;
    int next = 0;
    for (int r = 0; r < rows; ++r) {
        double ylo = r * row_pitch - eps;
        double yhi = (r + 1) * row_pitch + eps;
        bool offset = shifted && (r % 2 == 1);
        int nbricks = offset ? cols + 1 : cols;
        for (int b = 0; b < nbricks; ++b) {
            double xlo = offset ? (2 * b - 1) * col_pitch / 2 - eps : b * col_pitch - eps;
            double xhi = offset ? (2 * b + 1) * col_pitch / 2 + eps : (b + 1) * col_pitch + eps;
            CoverSet s;
            s.members.resize(space->size());
            for (int p = 0; p < space->size(); ++p) {
                double x = (*space->coords)(p, 0);
                double y = (*space->coords)(p, 1);
                if (xlo < x && x < xhi && ylo < y && y < yhi)
                    s.members.set(p);
            }
            if (s.members.none())
                continue;
            s.id = next++;
            c.sets.push_back(std::move(s));
        }
    }
    return c;
}

} // namespace cech

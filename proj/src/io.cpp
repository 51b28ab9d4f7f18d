#include "cech/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <utility>

#include "cech/errors.hpp"

namespace cech::io {

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what)
{
    if (!j.is_array() || j.empty())
        throw InputError(what + " must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InputError(what + " rows must all have length " + std::to_string(cols));
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!row.at(c).is_number())
                throw InputError(what + " entries must be numbers");
            m(r, c) = row.at(c).get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> members_to_indices(const Bitset& members)
{
    std::vector<int> out;
    for (auto p = members.find_first(); p != Bitset::npos; p = members.find_next(p))
        out.push_back(static_cast<int>(p));
    return out;
}

Bitset indices_to_members(const json& j, int point_count, const std::string& what)
{
    if (!j.is_array())
        throw InputError(what + " must be an array of point indices");
    Bitset members(point_count);
    long long previous = -1;
    for (const json& entry : j) {
        if (!entry.is_number_integer())
            throw InputError(what + " entries must be integer point indices");
        const long long idx = entry.get<long long>();
        if (idx < 0 || idx >= point_count)
            throw InputError(what + " index " + std::to_string(idx) + " is out of range");
        if (idx <= previous)
            throw InputError(what + " must be sorted ascending without duplicates");
        previous = idx;
        members.set(static_cast<std::size_t>(idx));
    }
    return members;
}

bool continuous_group(GroupTag tag)
{
    return tag == GroupTag::R || tag == GroupTag::T || tag == GroupTag::UnitQuaternion
           || tag == GroupTag::QuaternionNonzero || tag == GroupTag::GL;
}

} // namespace

json read_json_file(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw InputError("cannot open file: " + path);
    try {
        return json::parse(file);
    } catch (const json::parse_error& err) {
        throw InputError("malformed JSON in " + path + ": " + err.what());
    }
}

void write_json_file(const std::string& path, const json& j)
{
    std::ofstream file(path);
    if (!file)
        throw InputError("cannot write file: " + path);
    file << j.dump(2) << '\n';
}

SampleSpace space_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("points"))
        throw InputError("space must be an object with a \"points\" array");
    SampleSpace space;
    for (const json& id : j.at("points")) {
        if (!id.is_string())
            throw InputError("point ids must be strings");
        space.ids.push_back(id.get<std::string>());
    }
    if (j.contains("coords") && !j.at("coords").is_null())
        space.coords = matrix_from_json(j.at("coords"), "coords");
    if (j.contains("metric") && !j.at("metric").is_null()) {
        const json& metric = j.at("metric");
        if (metric.is_string()) {
            if (metric.get<std::string>() != "euclidean")
                throw InputError("metric must be \"euclidean\" or {\"matrix\": ...}");
        } else if (metric.is_object() && metric.contains("matrix")) {
            space.metric = matrix_from_json(metric.at("matrix"), "metric matrix");
        } else {
            throw InputError("metric must be \"euclidean\" or {\"matrix\": ...}");
        }
    }
    space.validate();
    return space;
}

json space_to_json(const SampleSpace& space)
{
    json j;
    j["points"] = space.ids;
    j["coords"] = space.coords ? matrix_to_json(*space.coords) : json(nullptr);
    if (space.metric)
        j["metric"] = json{{"matrix", matrix_to_json(*space.metric)}};
    else
        j["metric"] = "euclidean";
    return j;
}

Cover cover_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("space") || !j.contains("sets"))
        throw InputError("cover must be an object with \"space\" and \"sets\"");
    auto space = std::make_shared<SampleSpace>(space_from_json(j.at("space")));
    Cover cover;
    cover.space = space;
    for (const json& entry : j.at("sets")) {
        CoverSet set;
        set.id = entry.at("id").get<int>();
        const std::string kind = entry.at("kind").get<std::string>();
        if (kind == "explicit") {
            set.members = indices_to_members(entry.at("members"), space->size(), "members");
        } else if (kind == "ball") {
            const int center = entry.at("center").get<int>();
            const double radius = entry.at("radius").get<double>();
            if (center < 0 || center >= space->size())
                throw InputError("ball center index " + std::to_string(center) + " is out of range");
            set.members = ball_members(*space, center, radius);
            set.shape = BallShape{center, radius};
        } else if (kind == "interval") {
            const double lo = entry.at("lo").get<double>();
            const double hi = entry.at("hi").get<double>();
            set.members = interval_members(*space, lo, hi);
            set.shape = IntervalShape{lo, hi};
        } else {
            throw InputError("unknown set kind: " + kind);
        }
        if (kind != "explicit" && entry.contains("members")) {
            const Bitset listed = indices_to_members(entry.at("members"), space->size(), "members");
            if (listed != set.members)
                throw InputError("listed members of set " + std::to_string(set.id)
                                 + " disagree with the ones derived from its shape");
        }
        cover.sets.push_back(std::move(set));
    }
    cover.validate();
    return cover;
}

json cover_to_json(const Cover& cover)
{
    json sets = json::array();
    for (const CoverSet& set : cover.sets) {
        json entry;
        entry["id"] = set.id;
        if (const auto* ball = std::get_if<BallShape>(&set.shape)) {
            entry["kind"] = "ball";
            entry["center"] = ball->center;
            entry["radius"] = ball->radius;
        } else if (const auto* interval = std::get_if<IntervalShape>(&set.shape)) {
            entry["kind"] = "interval";
            entry["lo"] = interval->lo;
            entry["hi"] = interval->hi;
        } else {
            entry["kind"] = "explicit";
            entry["members"] = members_to_indices(set.members);
        }
        sets.push_back(std::move(entry));
    }
    json j;
    j["space"] = space_to_json(*cover.space);
    j["sets"] = std::move(sets);
    return j;
}

GroupTag group_tag_from_name(const std::string& name)
{
    if (name == "Z") return GroupTag::Z;
    if (name == "Zmod") return GroupTag::Zmod;
    if (name == "R") return GroupTag::R;
    if (name == "T") return GroupTag::T;
    if (name == "Sign") return GroupTag::Sign;
    if (name == "UnitQuaternion") return GroupTag::UnitQuaternion;
    if (name == "QuaternionNonzero") return GroupTag::QuaternionNonzero;
    if (name == "GL") return GroupTag::GL;
    throw InputError("unknown group \"" + name
                     + "\"; expected one of Z, Zmod, R, T, Sign, UnitQuaternion, "
                       "QuaternionNonzero, GL");
}

GroupSpec group_spec_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("group"))
        throw InputError("group spec must be an object with a \"group\" name");
    GroupSpec spec;
    spec.tag = group_tag_from_name(j.at("group").get<std::string>());
    spec.n = j.value("n", 0);
    spec.eps = j.value("eps", 1e-9);
    spec.validate();
    return spec;
}

json group_spec_to_json(const GroupSpec& spec)
{
    json j;
    j["group"] = group_name(spec.tag);
    if (spec.tag == GroupTag::Zmod || spec.tag == GroupTag::GL)
        j["n"] = spec.n;
    if (continuous_group(spec.tag))
        j["eps"] = spec.eps;
    return j;
}

GroupElement value_from_json(const GroupSpec& spec, const json& j)
{
    switch (spec.tag) {
    case GroupTag::Z:
    case GroupTag::Zmod:
    case GroupTag::Sign:
        if (!j.is_number_integer())
            throw InputError("values in " + group_name(spec.tag) + " must be integers");
        return GroupElement::make(spec, j.get<long long>());
    case GroupTag::R:
    case GroupTag::T:
        if (!j.is_number())
            throw InputError("values in " + group_name(spec.tag) + " must be numbers");
        return GroupElement::make(spec, j.get<double>());
    case GroupTag::UnitQuaternion:
    case GroupTag::QuaternionNonzero: {
        if (!j.is_array() || j.size() != 4)
            throw InputError("quaternion values must be arrays [a, b, c, d]");
        Quaternion q{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
                     j.at(3).get<double>()};
        return GroupElement::make(spec, q);
    }
    case GroupTag::GL:
        return GroupElement::make(spec, matrix_from_json(j, "matrix value"));
    }
    throw InputError("unsupported group");
}

json value_to_json(const GroupElement& g)
{
    switch (g.spec().tag) {
    case GroupTag::Z:
    case GroupTag::Zmod:
    case GroupTag::Sign:
        return g.integer();
    case GroupTag::R:
    case GroupTag::T:
        return g.real();
    case GroupTag::UnitQuaternion:
    case GroupTag::QuaternionNonzero: {
        const Quaternion& q = g.quaternion();
        return json::array({q.a, q.b, q.c, q.d});
    }
    case GroupTag::GL:
        return matrix_to_json(g.matrix());
    }
    throw InputError("unsupported group");
}

Convention convention_from_string(const std::string& s)
{
    if (s == "abg") return Convention::ABG;
    if (s == "gba") return Convention::GBA;
    throw InputError("unknown convention \"" + s + "\"; expected abg or gba");
}

std::string convention_to_string(Convention conv)
{
    return conv == Convention::ABG ? "abg" : "gba";
}

namespace {

/** Shared scaffolding for the cochain readers: spec, degree, value list. */
struct CochainFile {
    GroupSpec spec;
    const json* values = nullptr;
};

CochainFile open_cochain(const json& j, int expected_degree)
{
    if (!j.is_object() || !j.contains("spec") || !j.contains("degree"))
        throw InputError("cochain must be an object with \"spec\", \"degree\" and \"values\"");
    const int degree = j.at("degree").get<int>();
    if (degree != expected_degree)
        throw InputError("expected a cochain of degree " + std::to_string(expected_degree)
                         + ", got degree " + std::to_string(degree));
    CochainFile file;
    file.spec = group_spec_from_json(j.at("spec"));
    static const json empty = json::array();
    file.values = j.contains("values") ? &j.at("values") : &empty;
    if (!file.values->is_array())
        throw InputError("cochain \"values\" must be an array");
    return file;
}

std::vector<int> simplex_from_json(const json& entry, std::size_t arity)
{
    if (!entry.is_object() || !entry.contains("simplex"))
        throw InputError("cochain entries must be objects with a \"simplex\" array");
    const json& simplex = entry.at("simplex");
    if (!simplex.is_array() || simplex.size() != arity)
        throw InputError("expected simplices with " + std::to_string(arity) + " vertices");
    std::vector<int> out;
    for (const json& v : simplex)
        out.push_back(v.get<int>());
    return out;
}

} // namespace

Cochain0 cochain0_from_json(const json& j, const Nerve& nerve)
{
    const CochainFile file = open_cochain(j, 0);
    Cochain0 t = identity_cochain0(nerve, file.spec);
    std::vector<bool> seen(nerve.vertex_count(), false);
    for (const json& entry : *file.values) {
        const std::vector<int> simplex = simplex_from_json(entry, 1);
        const int pos = nerve.vertex_position(simplex[0]);
        if (pos < 0)
            throw InputError("vertex " + std::to_string(simplex[0]) + " is not in the nerve");
        if (seen[pos])
            throw InputError("duplicate value for vertex " + std::to_string(simplex[0]));
        seen[pos] = true;
        if (!entry.contains("value"))
            throw InputError("cochain entries must carry a \"value\"");
        t.values[pos] = value_from_json(file.spec, entry.at("value"));
    }
    return t;
}

Cochain1 cochain1_from_json(const json& j, const Nerve& nerve)
{
    const CochainFile file = open_cochain(j, 1);
    Cochain1 r = identity_cochain1(nerve, file.spec);
    std::vector<bool> seen(nerve.edge_count(), false);
    for (const json& entry : *file.values) {
        const std::vector<int> simplex = simplex_from_json(entry, 2);
        const int a = simplex[0];
        const int b = simplex[1];
        if (a == b)
            throw InputError("degenerate edge (" + std::to_string(a) + ", " + std::to_string(b)
                             + ")");
        const int lo = std::min(a, b);
        const int hi = std::max(a, b);
        const int pos = nerve.edge_index(lo, hi);
        if (pos < 0)
            throw InputError("edge (" + std::to_string(lo) + ", " + std::to_string(hi)
                             + ") is not in the nerve");
        if (seen[pos])
            throw InputError("duplicate value for edge (" + std::to_string(lo) + ", "
                             + std::to_string(hi) + ")");
        seen[pos] = true;
        if (!entry.contains("value"))
            throw InputError("cochain entries must carry a \"value\"");
        GroupElement value = value_from_json(file.spec, entry.at("value"));
        r.values[pos] = (a < b) ? value : inverse(value);
    }
    return r;
}

namespace {

json cochain_to_json(const GroupSpec& spec, int degree, json values)
{
    json j;
    j["spec"] = group_spec_to_json(spec);
    j["degree"] = degree;
    j["values"] = std::move(values);
    return j;
}

} // namespace

json cochain0_to_json(const Nerve& nerve, const Cochain0& t)
{
    json values = json::array();
    for (int v = 0; v < nerve.vertex_count(); ++v) {
        json entry;
        entry["simplex"] = json::array({nerve.vertices[v].set_index});
        entry["value"] = value_to_json(t.values[v]);
        values.push_back(std::move(entry));
    }
    return cochain_to_json(t.spec, 0, std::move(values));
}

json cochain1_to_json(const Nerve& nerve, const Cochain1& r)
{
    json values = json::array();
    for (int e = 0; e < nerve.edge_count(); ++e) {
        json entry;
        entry["simplex"] = json::array({nerve.edges[e].a, nerve.edges[e].b});
        entry["value"] = value_to_json(r.values[e]);
        values.push_back(std::move(entry));
    }
    return cochain_to_json(r.spec, 1, std::move(values));
}

json cochain2_to_json(const Nerve& nerve, const Cochain2& v)
{
    json values = json::array();
    for (int t = 0; t < nerve.triangle_count(); ++t) {
        const NerveTriangle& tri = nerve.triangles[t];
        json entry;
        entry["simplex"] = json::array({tri.a, tri.b, tri.c});
        entry["value"] = value_to_json(v.values[t]);
        values.push_back(std::move(entry));
    }
    return cochain_to_json(v.spec, 2, std::move(values));
}

FunctionCochain1 function_cochain_from_json(const json& j, const Cover& cover, const Nerve& nerve)
{
    if (!j.is_object() || !j.contains("edges"))
        throw InputError("function cochain must be an object with an \"edges\" array");
    FunctionCochain1 r;
    r.eps = j.value("eps", 1e-9);
    r.edges.resize(nerve.edge_count());
    std::vector<bool> seen(nerve.edge_count(), false);
    for (const json& entry : j.at("edges")) {
        const std::vector<int> simplex = simplex_from_json(entry, 2);
        const int a = simplex[0];
        const int b = simplex[1];
        if (a == b)
            throw InputError("degenerate edge (" + std::to_string(a) + ", " + std::to_string(b)
                             + ")");
        const int lo = std::min(a, b);
        const int hi = std::max(a, b);
        const int pos = nerve.edge_index(lo, hi);
        if (pos < 0)
            throw InputError("edge (" + std::to_string(lo) + ", " + std::to_string(hi)
                             + ") is not in the nerve");
        if (seen[pos])
            throw InputError("duplicate table for edge (" + std::to_string(lo) + ", "
                             + std::to_string(hi) + ")");
        seen[pos] = true;
        const double sign = (a < b) ? 1.0 : -1.0;
        if (!entry.contains("table"))
            throw InputError("function cochain entries must carry a \"table\"");
        FunctionTable table;
        for (const json& cell : entry.at("table")) {
            if (!cell.is_object() || !cell.contains("point") || !cell.contains("value"))
                throw InputError("table cells must be objects with \"point\" and \"value\"");
            const int point = cover.space->index_of(cell.at("point").get<std::string>());
            table.entries.emplace_back(point, sign * cell.at("value").get<double>());
        }
        std::sort(table.entries.begin(), table.entries.end());
        for (std::size_t i = 1; i < table.entries.size(); ++i)
            if (table.entries[i].first == table.entries[i - 1].first)
                throw InputError("duplicate table point "
                                 + cover.space->ids[table.entries[i].first]);
        r.edges[pos] = std::move(table);
    }
    for (int e = 0; e < nerve.edge_count(); ++e)
        if (!seen[e])
            throw InputError("edge (" + std::to_string(nerve.edges[e].a) + ", "
                             + std::to_string(nerve.edges[e].b) + ") has no table");
    return r;
}

json nerve_to_json(const Nerve& nerve, const Cover& cover)
{
    const std::vector<std::string>& ids = cover.space->ids;
    json vertices = json::array();
    for (const NerveVertex& v : nerve.vertices) {
        json entry;
        entry["set"] = v.set_index;
        entry["witness"] = ids[v.witness];
        vertices.push_back(std::move(entry));
    }
    json edges = json::array();
    for (const NerveEdge& e : nerve.edges) {
        json entry;
        entry["simplex"] = json::array({e.a, e.b});
        entry["witness"] = ids[e.witness];
        edges.push_back(std::move(entry));
    }
    json triangles = json::array();
    for (const NerveTriangle& t : nerve.triangles) {
        json entry;
        entry["simplex"] = json::array({t.a, t.b, t.c});
        entry["witness"] = ids[t.witness];
        triangles.push_back(std::move(entry));
    }
    json j;
    j["set_count"] = nerve.set_count;
    j["vertices"] = std::move(vertices);
    j["edges"] = std::move(edges);
    j["triangles"] = std::move(triangles);
    return j;
}

Bundle bundle_from_file(const std::string& path)
{
    const json j = read_json_file(path);
    if (!j.is_object() || !j.contains("cover") || !j.contains("spec")
        || !j.contains("transitions"))
        throw InputError("bundle file must contain \"cover\", \"spec\", \"convention\" and "
                         "\"transitions\"");
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    const auto resolve = [&base](const std::string& p) {
        const std::filesystem::path q(p);
        return q.is_absolute() ? q.string() : (base / q).string();
    };
    const Cover cover = cover_from_json(read_json_file(resolve(j.at("cover").get<std::string>())));
    const GroupSpec spec = group_spec_from_json(j.at("spec"));
    const Convention conv = convention_from_string(j.value("convention", "gba"));
    const Nerve nerve = build_nerve(cover, 2);
    const Cochain1 transitions =
        cochain1_from_json(read_json_file(resolve(j.at("transitions").get<std::string>())), nerve);
    if (!transitions.spec.compatible(spec))
        throw InputError("transition values do not live in the bundle's fiber group");
    return build_bundle(cover, spec, conv, transitions);
}

json lift_result_to_json(const Nerve& nerve, const LiftResult& result)
{
    json j;
    switch (result.status) {
    case LiftStatus::Strict: j["status"] = "Strict"; break;
    case LiftStatus::CorrectedStrict: j["status"] = "CorrectedStrict"; break;
    case LiftStatus::Obstructed: j["status"] = "Obstructed"; break;
    }
    j["lift"] = cochain1_to_json(nerve, result.lift);
    if (result.obstruction)
        j["obstruction"] = cochain2_to_json(nerve, *result.obstruction);
    if (result.correction)
        j["correction"] = cochain1_to_json(nerve, *result.correction);
    if (result.certificate) {
        json cert;
        cert["functional"] = result.certificate->functional;
        cert["modulus"] = result.certificate->modulus;
        cert["pairing"] = result.certificate->pairing;
        j["certificate"] = std::move(cert);
    }
    return j;
}

json h1_to_json(const H1Description& desc)
{
    json j;
    j["free_rank"] = desc.free_rank;
    j["torsion"] = desc.torsion;
    return j;
}

} // namespace cech::io

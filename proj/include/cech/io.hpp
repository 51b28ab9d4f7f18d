#ifndef CECH_IO_HPP
#define CECH_IO_HPP

#include <string>

#include "json.hpp"

#include "cech/bundle.hpp"
#include "cech/cochain.hpp"
#include "cech/cover.hpp"
#include "cech/lift.hpp"
#include "cech/pou.hpp"

/**
 * JSON serialization for every on-disk artifact the tool reads or writes.
 * Loading validates aggressively and throws InputError with the offending
 * field; writing is deterministic (alphabetical keys, fixed layout) so that
 * identical data produces byte-identical files.
 */
namespace cech::io {

using nlohmann::json;

/** Parse a UTF-8 JSON file; parse failures become InputError naming the path. */
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

SampleSpace space_from_json(const json& j);
json space_to_json(const SampleSpace& space);

/**
 * Cover file layout: {"space": {"points", "coords", "metric"}, "sets":
 * [{"id", "kind", ...}]}. Sets of kind "ball"/"interval" derive their
 * members from the shape; an accompanying "members" list, when present,
 * must agree with the derived one.
 */
Cover cover_from_json(const json& j);
json cover_to_json(const Cover& cover);

GroupTag group_tag_from_name(const std::string& name);
GroupSpec group_spec_from_json(const json& j);
json group_spec_to_json(const GroupSpec& spec);

/** Element payloads: integers, reals, [a,b,c,d] quaternions, row-major matrices. */
GroupElement value_from_json(const GroupSpec& spec, const json& j);
json value_to_json(const GroupElement& g);

Convention convention_from_string(const std::string& s);
std::string convention_to_string(Convention conv);

/**
 * Cochain file layout: {"spec", "degree", "values": [{"simplex", "value"}]}.
 * Simplices use cover-set indices. Unlisted simplices default to the
 * identity; duplicates are rejected; a degree-1 simplex listed as (b, a)
 * with b > a is stored at (a, b) as the group inverse.
 */
Cochain0 cochain0_from_json(const json& j, const Nerve& nerve);
Cochain1 cochain1_from_json(const json& j, const Nerve& nerve);
json cochain0_to_json(const Nerve& nerve, const Cochain0& t);
json cochain1_to_json(const Nerve& nerve, const Cochain1& r);
json cochain2_to_json(const Nerve& nerve, const Cochain2& v);

/**
 * Function-valued cochain layout: {"edges": [{"simplex": [a,b], "table":
 * [{"point": point-id, "value": real}]}]}. Every nerve edge must appear,
 * tables refer to points by id, and reversed simplices negate the values.
 */
FunctionCochain1 function_cochain_from_json(const json& j, const Cover& cover, const Nerve& nerve);

json nerve_to_json(const Nerve& nerve, const Cover& cover);

/**
 * Bundle file layout: {"cover": path, "spec", "convention", "transitions":
 * path}; the two paths are resolved relative to the bundle file's directory.
 */
Bundle bundle_from_file(const std::string& path);

json lift_result_to_json(const Nerve& nerve, const LiftResult& result);
json h1_to_json(const H1Description& desc);

} // namespace cech::io

#endif // CECH_IO_HPP

#pragma once

#include "trajnyq/design.hpp"
#include "trajnyq/field.hpp"
#include "trajnyq/geometry.hpp"
#include "trajnyq/nyquist.hpp"
#include "trajnyq/trajectory.hpp"

#include "json.hpp"

namespace trajnyq::io {

using json = nlohmann::json;

Vec to_vec(const json& j, const char* what);
json from_vec(const Vec& v);

/// {"dim": d, "ball": {"center", "radius"} | "vertices": [[...]] | "halfspaces": [{"a", "b"}]
/// | "box": [half extents], "symmetric": bool}. "dim" is optional.
ConvexBody body_from_json(const json& j);
json body_to_json(const ConvexBody& body);

TrajectorySet set_from_json(const json& j);
json set_to_json(const TrajectorySet& set);

/// {"dim": d, "atoms": [{"omega": [...], "re": x, "im": y}]}
AtomField field_from_json(const json& j, std::optional<ConvexBody> omega_ref = std::nullopt);
json field_to_json(const AtomField& field);

json verdict_to_json(const NyquistVerdict& v);
json design_to_json(const DesignResult& d);

}  // namespace trajnyq::io

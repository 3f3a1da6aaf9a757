#include "trajnyq/io.hpp"

#include "trajnyq/error.hpp"

#include <cmath>

namespace trajnyq::io {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

const json& need(const json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key)) bad(std::string(ctx) + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(std::string(what) + " must be finite");
  return x;
}

bool flag(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  if (!j.at(key).is_boolean()) bad(std::string(key) + " must be a boolean");
  return j.at(key).get<bool>();
}

std::vector<Vec> vec_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<Vec> out;
  for (const auto& x : j) out.push_back(to_vec(x, what));
  return out;
}

UniformLines2D lines_from(const json& j) {
  return UniformLines2D(to_vec(need(j, "w", "uniform_lines_2d"), "w"), to_vec(need(j, "v", "uniform_lines_2d"), "v"),
                        number(need(j, "delta", "uniform_lines_2d"), "delta"));
}

HyperplaneSet planes_from(const json& j) {
  return HyperplaneSet(to_vec(need(j, "w", "hyperplanes"), "w"), to_vec(need(j, "h", "hyperplanes"), "h"),
                       number(need(j, "delta", "hyperplanes"), "delta"));
}

json lines_to(const UniformLines2D& s) {
  return {{"kind", "uniform_lines_2d"}, {"w", from_vec(s.w)}, {"v", from_vec(s.v)}, {"delta", s.delta}};
}

json planes_to(const HyperplaneSet& s) {
  return {{"kind", "hyperplanes"}, {"w", from_vec(s.w)}, {"h", from_vec(s.h)}, {"delta", s.delta}};
}

}  // namespace

Vec to_vec(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], what);
  return v;
}

json from_vec(const Vec& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

ConvexBody body_from_json(const json& j) {
  if (!j.is_object()) bad("omega must be an object");
  const bool sym = flag(j, "symmetric");
  auto body = [&]() -> ConvexBody {
    if (j.contains("ball")) {
      const json& b = j.at("ball");
      return ConvexBody::ball(to_vec(need(b, "center", "ball"), "center"), number(need(b, "radius", "ball"), "radius"), sym);
    }
    if (j.contains("box")) return ConvexBody::box(to_vec(j.at("box"), "box"));
    std::vector<Vec> verts;
    std::vector<Halfspace> hs;
    if (j.contains("vertices")) verts = vec_list(j.at("vertices"), "vertices");
    if (j.contains("halfspaces")) {
      if (!j.at("halfspaces").is_array()) bad("halfspaces must be an array");
      for (const auto& h : j.at("halfspaces")) {
        hs.push_back({to_vec(need(h, "a", "halfspace"), "a"), number(need(h, "b", "halfspace"), "b")});
      }
    }
    if (!verts.empty() && !hs.empty()) return ConvexBody::from_both(verts, hs, sym);
    if (!verts.empty()) return ConvexBody::from_vertices(verts, sym);
    if (!hs.empty()) return ConvexBody::from_halfspaces(hs, sym);
    bad("omega needs \"ball\", \"box\", \"vertices\" or \"halfspaces\"");
  }();
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() != body.dim()) bad("omega: dim does not match the data");
  }
  return body;
}

json body_to_json(const ConvexBody& body) {
  if (body.is_ball()) {
    return {{"dim", body.dim()},
            {"ball", {{"center", from_vec(body.center())}, {"radius", body.radius()}}},
            {"symmetric", body.symmetric()}};
  }
  json hs = json::array();
  for (const auto& h : body.halfspaces()) hs.push_back({{"a", from_vec(h.a)}, {"b", h.b}});
  json vs = json::array();
  for (const auto& v : body.vertices()) vs.push_back(from_vec(v));
  return {{"dim", body.dim()}, {"vertices", vs}, {"halfspaces", hs}, {"symmetric", body.symmetric()}};
}

TrajectorySet set_from_json(const json& j) {
  if (!j.is_object()) bad("set must be an object");
  const std::string kind = need(j, "kind", "set").get<std::string>();
  if (kind == "uniform_lines_2d") return lines_from(j);
  if (kind == "union_uniform_2d") {
    std::vector<UniformLines2D> parts;
    for (const auto& p : need(j, "parts", kind.c_str())) parts.push_back(lines_from(p));
    return UnionUniform2D(std::move(parts));
  }
  if (kind == "uniform_lines_d") {
    std::optional<Vec> w;
    if (j.contains("w")) w = to_vec(j.at("w"), "w");
    return UniformLinesD(vec_list(need(j, "basis", kind.c_str()), "basis"), w);
  }
  if (kind == "circles") return CircleSet(number(need(j, "delta", "circles"), "delta"));
  if (kind == "spirals") {
    const auto& n = need(j, "n", "spirals");
    if (!n.is_number_integer()) bad("spirals: n must be an integer");
    return SpiralSet(number(need(j, "c", "spirals"), "c"), n.get<int>());
  }
  if (kind == "hyperplanes") return planes_from(j);
  if (kind == "union_hyperplanes") {
    std::vector<HyperplaneSet> parts;
    for (const auto& p : need(j, "parts", kind.c_str())) parts.push_back(planes_from(p));
    return UnionHyperplanes(std::move(parts));
  }
  bad("unknown set kind \"" + kind + "\"");
}

json set_to_json(const TrajectorySet& set) {
  return std::visit(overloaded{
                        [](const UniformLines2D& s) { return lines_to(s); },
                        [](const UnionUniform2D& s) {
                          json parts = json::array();
                          for (const auto& p : s.parts) parts.push_back(lines_to(p));
                          return json{{"kind", "union_uniform_2d"}, {"parts", parts}};
                        },
                        [](const UniformLinesD& s) {
                          json basis = json::array();
                          for (const auto& v : s.basis) basis.push_back(from_vec(v));
                          return json{{"kind", "uniform_lines_d"}, {"basis", basis}, {"w", from_vec(s.w)}};
                        },
                        [](const CircleSet& s) { return json{{"kind", "circles"}, {"delta", s.delta}}; },
                        [](const SpiralSet& s) { return json{{"kind", "spirals"}, {"c", s.c}, {"n", s.n}}; },
                        [](const HyperplaneSet& s) { return planes_to(s); },
                        [](const UnionHyperplanes& s) {
                          json parts = json::array();
                          for (const auto& p : s.parts) parts.push_back(planes_to(p));
                          return json{{"kind", "union_hyperplanes"}, {"parts", parts}};
                        },
                    },
                    set);
}

AtomField field_from_json(const json& j, std::optional<ConvexBody> omega_ref) {
  const auto& d = need(j, "dim", "field");
  if (!d.is_number_integer()) bad("field: dim must be an integer");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) bad("field: atoms must be an array");
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({to_vec(need(a, "omega", "atom"), "omega"),
                       Complex(number(need(a, "re", "atom"), "re"), a.contains("im") ? number(a.at("im"), "im") : 0.0)});
    }
  }
  return make_atom_field(d.get<int>(), std::move(atoms), std::move(omega_ref));
}

json field_to_json(const AtomField& field) {
  json atoms = json::array();
  for (const auto& a : field.atoms) atoms.push_back({{"omega", from_vec(a.omega)}, {"re", a.c.real()}, {"im", a.c.imag()}});
  return {{"dim", field.dim}, {"atoms", atoms}};
}

json verdict_to_json(const NyquistVerdict& v) {
  json j{{"status", to_string(v.status)},
         {"basis", v.basis},
         {"margin", v.margin},
         {"c2_certified", v.c2_certified}};
  if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
  if (v.shift) j["shift"] = from_vec(*v.shift);
  if (v.index) j["index"] = *v.index;
  return j;
}

json design_to_json(const DesignResult& d) {
  json orient = json::array();
  for (Eigen::Index r = 0; r < d.orientation.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < d.orientation.cols(); ++c) row.push_back(d.orientation(r, c));
    orient.push_back(row);
  }
  return {{"set", set_to_json(d.set)},
          {"density", d.density},
          {"critical_density", d.critical_density},
          {"epsilon", d.epsilon},
          {"orientation", orient},
          {"verdict", verdict_to_json(d.verdict)}};
}

}  // namespace trajnyq::io

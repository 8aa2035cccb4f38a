#include "uav/massprops.hpp"

#include <cmath>

#include "uav/errors.hpp"
#include "yaml_util.hpp"

namespace uav {
namespace {

Eigen::Matrix3d point_mass_term(double mass, const Eigen::Vector3d& r) {
  return mass * (r.squaredNorm() * Eigen::Matrix3d::Identity() - r * r.transpose());
}

Shape read_shape(detail::MapReader& r) {
  const auto name = r.optional_string("shape").value_or("point");
  if (name == "point") return shape::Point{};
  if (name == "solid_box") {
    const auto size = r.vec3("size_m");
    return shape::SolidBox{size.x(), size.y(), size.z()};
  }
  if (name == "thin_plate") {
    const auto size_node = r.child("size_m");
    const auto size = r.numbers("size_m");
    if (size.size() != 2) r.fail(size_node, "thin_plate size_m needs [length, width]");
    return shape::ThinPlate{size[0], size[1]};
  }
  if (name == "cylinder") {
    const double radius = r.number("radius_m");
    const double length = r.number("length_m");
    const auto axis_node = r.child("axis");
    const auto axis = r.string("axis");
    int index = -1;
    if (axis == "x") index = 0;
    if (axis == "y") index = 1;
    if (axis == "z") index = 2;
    if (index < 0) r.fail(axis_node, "cylinder axis must be x, y or z");
    return shape::Cylinder{radius, length, index};
  }
  r.fail(r.node(), "unknown shape '" + name + "'");
}

}  // namespace

void validate(const Shape& s) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, shape::SolidBox>) {
          if (!positive(sh.length_m) || !positive(sh.width_m) || !positive(sh.height_m))
            throw ValidationError("solid_box dimensions must be positive");
        } else if constexpr (std::is_same_v<T, shape::Cylinder>) {
          if (!positive(sh.radius_m) || !positive(sh.length_m))
            throw ValidationError("cylinder dimensions must be positive");
          if (sh.axis < 0 || sh.axis > 2) throw ValidationError("cylinder axis must be 0, 1 or 2");
        } else if constexpr (std::is_same_v<T, shape::ThinPlate>) {
          if (!positive(sh.length_m) || !positive(sh.width_m))
            throw ValidationError("thin_plate dimensions must be positive");
        }
      },
      s);
}

Eigen::Matrix3d self_inertia(const Shape& s, double mass) {
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, shape::SolidBox>) {
          const double a2 = sh.length_m * sh.length_m;
          const double b2 = sh.width_m * sh.width_m;
          const double c2 = sh.height_m * sh.height_m;
          inertia.diagonal() << b2 + c2, a2 + c2, a2 + b2;
          inertia *= mass / 12.0;
        } else if constexpr (std::is_same_v<T, shape::Cylinder>) {
          const double axial = 0.5 * mass * sh.radius_m * sh.radius_m;
          const double transverse =
              mass * (3.0 * sh.radius_m * sh.radius_m + sh.length_m * sh.length_m) / 12.0;
          inertia.diagonal().setConstant(transverse);
          inertia(sh.axis, sh.axis) = axial;
        } else if constexpr (std::is_same_v<T, shape::ThinPlate>) {
          const double a2 = sh.length_m * sh.length_m;
          const double b2 = sh.width_m * sh.width_m;
          inertia.diagonal() << b2, a2, a2 + b2;
          inertia *= mass / 12.0;
        }
      },
      s);
  return inertia;
}

MassProperties aggregate(const std::vector<Placement>& placements, const Catalog& catalog) {
  if (placements.empty()) throw ValidationError("cannot aggregate an empty placement list");

  std::vector<double> masses;
  masses.reserve(placements.size());
  MassProperties out;
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  for (const auto& p : placements) {
    validate(p.shape);
    if (!p.position.allFinite())
      throw ValidationError("placement of '" + p.component_id + "' has a non-finite position");
    const double m = catalog.at(p.component_id).mass();
    masses.push_back(m);
    out.total_mass += m;
    moment += m * p.position;
  }
  out.cg = moment / out.total_mass;

  for (std::size_t i = 0; i < placements.size(); ++i) {
    const auto& p = placements[i];
    out.inertia += self_inertia(p.shape, masses[i]) + point_mass_term(masses[i], p.position - out.cg);
  }
  // Summation order can leave round-off asymmetry.
  out.inertia = 0.5 * (out.inertia + out.inertia.transpose()).eval();
  return out;
}

MassProperties combine(const MassProperties& a, const MassProperties& b) {
  MassProperties out;
  out.total_mass = a.total_mass + b.total_mass;
  if (!(out.total_mass > 0.0)) throw ValidationError("combined mass must be positive");
  out.cg = (a.total_mass * a.cg + b.total_mass * b.cg) / out.total_mass;
  out.inertia = a.inertia + point_mass_term(a.total_mass, a.cg - out.cg) + b.inertia +
                point_mass_term(b.total_mass, b.cg - out.cg);
  return out;
}

bool cg_envelope_check(const MassProperties& props, double max_offset_m) {
  return std::hypot(props.cg.x(), props.cg.y()) <= max_offset_m;
}

std::vector<Placement> parse_placements(std::string_view text, const std::string& source) {
  const YAML::Node root = detail::load_yaml_text(text, source);
  std::vector<Placement> out;
  if (root.IsNull()) return out;
  if (!root.IsSequence())
    throw ParseError(source, detail::line_of(root), "placement file must be a list");
  for (const auto& node : root) {
    detail::MapReader r(node, source, "placement");
    Placement p;
    p.component_id = r.string("component");
    p.position = r.vec3("position_m");
    p.shape = read_shape(r);
    r.optional_string("note");
    r.finish();
    try {
      validate(p.shape);
    } catch (const ValidationError& e) {
      throw ParseError(source, detail::line_of(node), e.what());
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Placement> load_placements(const std::filesystem::path& path) {
  return parse_placements(detail::read_text_file(path), path.string());
}

}  // namespace uav

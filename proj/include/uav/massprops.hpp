#pragma once

// Mass, centre of gravity and inertia tensor of a set of placed components.
// Body frame: x forward, y right, z down, origin at the hub centre.

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uav/catalog.hpp"

namespace uav {

namespace shape {
struct Point {
  bool operator==(const Point&) const = default;
};
// Edge lengths along body x, y, z.
struct SolidBox {
  double length_m, width_m, height_m;
  bool operator==(const SolidBox&) const = default;
};
struct Cylinder {
  double radius_m, length_m;
  int axis;  // 0 = x, 1 = y, 2 = z
  bool operator==(const Cylinder&) const = default;
};
// Lamina in the body x-y plane.
struct ThinPlate {
  double length_m, width_m;
  bool operator==(const ThinPlate&) const = default;
};
}  // namespace shape

using Shape = std::variant<shape::Point, shape::SolidBox, shape::Cylinder, shape::ThinPlate>;

struct Placement {
  std::string component_id;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Shape shape = shape::Point{};

  bool operator==(const Placement& o) const {
    return component_id == o.component_id && position == o.position && shape == o.shape;
  }
};

template <typename Scalar>
struct MassPropertiesT {
  Scalar total_mass{0};
  Eigen::Matrix<Scalar, 3, 1> cg = Eigen::Matrix<Scalar, 3, 1>::Zero();
  Eigen::Matrix<Scalar, 3, 3> inertia = Eigen::Matrix<Scalar, 3, 3>::Zero();  // about cg

  bool operator==(const MassPropertiesT& o) const {
    return total_mass == o.total_mass && cg == o.cg && inertia == o.inertia;
  }
};
using MassProperties = MassPropertiesT<double>;

// Inertia of a uniform body of `mass` about its own centroid.
Eigen::Matrix3d self_inertia(const Shape& shape, double mass);

// Throws ValidationError on non-positive dimensions or a bad cylinder axis.
void validate(const Shape& shape);

// Throws ValidationError on an empty list or an unknown component id.
MassProperties aggregate(const std::vector<Placement>& placements, const Catalog& catalog);

// Mass-weighted combination of already aggregated bodies.
MassProperties combine(const MassProperties& a, const MassProperties& b);

// True iff the horizontal CG offset |(cg_x, cg_y)| is within max_offset_m.
bool cg_envelope_check(const MassProperties& props, double max_offset_m);

std::vector<Placement> load_placements(const std::filesystem::path& path);
std::vector<Placement> parse_placements(std::string_view text,
                                        const std::string& source = "<memory>");

}  // namespace uav

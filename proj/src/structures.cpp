#include "uav/structures.hpp"

#include <cmath>
#include <numbers>

#include "uav/errors.hpp"

namespace uav {
namespace {

constexpr double kMinWallThickness = 1e-6;  // m
constexpr double kThicknessMatchTolerance = 1e-9;  // m

double required_property(const std::optional<double>& value, const ComponentSpec& material,
                         const char* field) {
  if (!value)
    throw ValidationError("material '" + material.id + "' has no " + field);
  return *value;
}

void finish(StructuralCheck& check) {
  check.safety_factor = check.max_stress_pa > 0.0
                            ? check.allowable_stress_pa / check.max_stress_pa
                            : kUnstressedSafetyFactor;
  check.pass = check.safety_factor >= check.required_safety_factor;
}

}  // namespace

void validate(const TubeSection& tube) {
  if (!(tube.inner_diameter_m >= 0.0 && tube.inner_diameter_m < tube.outer_diameter_m))
    throw ValidationError("tube inner diameter must lie in [0, outer diameter)");
  if (!(tube.length_m > 0.0)) throw ValidationError("tube length must be positive");
  if (tube.material.kind() != ComponentKind::material)
    throw ValidationError("tube material '" + tube.material.id + "' is not a material entry");
}

void validate(const SandwichLayup& layup) {
  if (layup.plies_per_face < 0) throw ValidationError("plies per face must be non-negative");
  if (!(layup.ply_thickness_m > 0.0)) throw ValidationError("ply thickness must be positive");
  if (!(layup.core_thickness_m >= 0.0)) throw ValidationError("core thickness must be non-negative");
  if (layup.ply_angles_deg.size() != static_cast<std::size_t>(2 * layup.plies_per_face))
    throw ValidationError("sandwich layup needs one ply angle per ply (2 x plies per face)");
  if (layup.face_material.kind() != ComponentKind::material ||
      layup.core_material.kind() != ComponentKind::material)
    throw ValidationError("sandwich face and core must be material entries");
}

double tube_second_moment(double outer, double inner) {
  return std::numbers::pi * (std::pow(outer, 4) - std::pow(inner, 4)) / 64.0;
}

StructuralCheck cantilever_tube_check(const TubeSection& tube, double tip_load_n,
                                      double min_safety_factor, std::string name) {
  validate(tube);
  if (tube.outer_diameter_m - tube.inner_diameter_m < kMinWallThickness)
    throw DomainError("degenerate tube section: wall thinner than 1e-6 m");
  if (!(tip_load_n >= 0.0)) throw DomainError("tip load must be non-negative");

  const auto& m = tube.material.material();
  const double modulus = required_property(m.elastic_modulus_pa, tube.material, "elastic_modulus_pa");
  const double strength =
      required_property(m.tensile_strength_pa, tube.material, "tensile_strength_pa");

  const double i = tube_second_moment(tube.outer_diameter_m, tube.inner_diameter_m);
  const double length = tube.length_m;

  StructuralCheck check;
  check.name = std::move(name);
  check.applied_load_n = tip_load_n;
  check.allowable_stress_pa = strength;
  check.required_safety_factor = min_safety_factor;
  check.max_deflection_m = tip_load_n * length * length * length / (3.0 * modulus * i);
  // Peak bending stress sits at the root, outer fibre.
  check.max_stress_pa = tip_load_n * length * (0.5 * tube.outer_diameter_m) / i;
  finish(check);
  return check;
}

StructuralCheck reported_check(std::string name, double applied_load_n, double max_stress_pa,
                               double allowable_stress_pa, double min_safety_factor) {
  if (!(max_stress_pa > 0.0) || !(allowable_stress_pa > 0.0))
    throw DomainError("reported stresses must be positive");
  StructuralCheck check;
  check.name = std::move(name);
  check.applied_load_n = applied_load_n;
  check.max_stress_pa = max_stress_pa;
  check.allowable_stress_pa = allowable_stress_pa;
  check.required_safety_factor = min_safety_factor;
  finish(check);
  return check;
}

SandwichComparison sandwich_vs_solid(const SandwichLayup& layup, double solid_thickness_m) {
  validate(layup);
  if (std::abs(solid_thickness_m - layup.total_thickness_m()) > kThicknessMatchTolerance)
    throw ValidationError("solid plate thickness must equal the sandwich thickness");

  const auto& face = layup.face_material.material();
  const auto& core = layup.core_material.material();
  const double face_thickness = 2.0 * layup.plies_per_face * layup.ply_thickness_m;

  SandwichComparison out;
  const double face_mass = face_thickness * face.density_kg_per_m3;
  const double core_mass = layup.core_thickness_m * core.density_kg_per_m3;
  out.sandwich_mass_per_area = face_mass + core_mass;
  out.solid_mass_per_area = solid_thickness_m * face.density_kg_per_m3;
  out.mass_reduction = 1.0 - out.sandwich_mass_per_area / out.solid_mass_per_area;

  const double face_cost = required_property(face.cost_per_kg, layup.face_material, "cost_per_kg");
  // A zero-thickness core needs no price.
  const double core_cost =
      layup.core_thickness_m > 0.0
          ? required_property(core.cost_per_kg, layup.core_material, "cost_per_kg")
          : 0.0;
  out.sandwich_cost_per_area = face_mass * face_cost + core_mass * core_cost;
  out.solid_cost_per_area = out.solid_mass_per_area * face_cost;
  out.cost_reduction = 1.0 - out.sandwich_cost_per_area / out.solid_cost_per_area;
  return out;
}

double thermal_mismatch(const ComponentSpec& a, const ComponentSpec& b, double delta_t_c) {
  const double cte_a = required_property(a.material().cte_per_c, a, "cte_per_c");
  const double cte_b = required_property(b.material().cte_per_c, b, "cte_per_c");
  return std::abs(cte_a - cte_b) * std::abs(delta_t_c);
}

}  // namespace uav

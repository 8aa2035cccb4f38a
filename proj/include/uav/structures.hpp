#pragma once

// Closed-form structural checks: cantilevered arm tubes, externally analysed
// parts (landing gear, payload latch), sandwich hub plate mass and cost, and
// thermal-expansion mismatch between joined parts.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uav/catalog.hpp"

namespace uav {

struct TubeSection {
  double outer_diameter_m = 0.0;
  double inner_diameter_m = 0.0;
  double length_m = 0.0;
  ComponentSpec material;
};

struct SandwichLayup {
  int plies_per_face = 0;
  double ply_thickness_m = 0.0;
  double core_thickness_m = 0.0;
  ComponentSpec face_material;
  ComponentSpec core_material;
  std::vector<double> ply_angles_deg;

  double total_thickness_m() const {
    return 2.0 * plies_per_face * ply_thickness_m + core_thickness_m;
  }
};

// Throws ValidationError on inconsistent geometry.
void validate(const TubeSection& tube);
void validate(const SandwichLayup& layup);

// Safety factor of an unstressed part.
inline constexpr double kUnstressedSafetyFactor = std::numeric_limits<double>::infinity();

struct StructuralCheck {
  std::string name;
  double applied_load_n = 0.0;
  double max_stress_pa = 0.0;
  double allowable_stress_pa = 0.0;
  double safety_factor = 0.0;
  double required_safety_factor = 0.0;
  std::optional<double> max_deflection_m;  // empty when not computed
  bool pass = false;

  bool operator==(const StructuralCheck&) const = default;
};

// Euler-Bernoulli cantilever with a tip point load; the material's
// tensile_strength_pa is the allowable stress.
StructuralCheck cantilever_tube_check(const TubeSection& tube, double tip_load_n,
                                      double min_safety_factor, std::string name = "arm tube");

double tube_second_moment(double outer_diameter_m, double inner_diameter_m);

// Wraps a stress obtained elsewhere (FEM) into a check.
StructuralCheck reported_check(std::string name, double applied_load_n, double max_stress_pa,
                               double allowable_stress_pa, double min_safety_factor);

struct SandwichComparison {
  double mass_reduction = 0.0;
  double cost_reduction = 0.0;
  double sandwich_mass_per_area = 0.0;  // kg/m^2
  double solid_mass_per_area = 0.0;
  double sandwich_cost_per_area = 0.0;
  double solid_cost_per_area = 0.0;
  bool operator==(const SandwichComparison&) const = default;
};

// Sandwich plate vs a solid face-material plate of the same thickness.
SandwichComparison sandwich_vs_solid(const SandwichLayup& layup, double solid_thickness_m);

// |cte_a - cte_b| * delta_T.
double thermal_mismatch(const ComponentSpec& material_a, const ComponentSpec& material_b,
                        double delta_t_c);

}  // namespace uav

#pragma once

// Weight estimation and propulsion selection.

#include <array>
#include <optional>
#include <string>

#include "uav/catalog.hpp"
#include "uav/errors.hpp"

namespace uav {

inline constexpr double kStandardGravity = 9.81;  // m/s^2
inline constexpr double kSeaLevelDensity = 1.225;  // kg/m^3

struct ConstraintSet {
  double max_takeoff_mass_kg = 2.0;
  double payload_mass_kg = 0.2;
  std::array<double, 3> payload_dims_m{0.10, 0.05, 0.05};
  double min_range_m = 1000.0;
  int rotor_count = 4;
  double min_thrust_to_weight = 2.0;

  bool operator==(const ConstraintSet&) const = default;
};

// Throws ValidationError on a violated invariant.
void validate(const ConstraintSet& constraints);

struct SizingOptions {
  double structure_fraction = 0.25;
  double figure_of_merit = 0.6;
  double air_density = kSeaLevelDensity;
  double gravity = kStandardGravity;
  double usable_battery_fraction = 0.8;
  double endurance_floor_s = 300.0;
  double tolerance_kg = 1e-6;
  int iteration_cap = 50;
  // Equipment carried regardless of scale (avionics outside the structure
  // fraction); counted with the components.
  double fixed_mass_kg = 0.0;
  // Starting takeoff-mass guess; defaults to the lightest possible vehicle,
  // payload / (1 - structure_fraction).
  std::optional<double> initial_mass_kg;
};

struct SizingResult {
  double takeoff_mass_kg = 0.0;
  double structure_mass_kg = 0.0;
  double payload_mass_kg = 0.0;
  double component_mass_kg = 0.0;  // rotor_count x (motor + prop + esc) + battery + fixed
  int rotor_count = 0;
  ComponentSpec battery;
  ComponentSpec motor;
  ComponentSpec propeller;
  std::optional<ComponentSpec> esc;
  double hover_thrust_per_rotor_n = 0.0;
  double hover_power_total_w = 0.0;
  double endurance_s = 0.0;
  double thrust_to_weight = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;

  bool operator==(const SizingResult&) const = default;
};

class SizingError : public Error {
 public:
  enum class Reason { no_feasible_motor, no_feasible_battery, non_convergence, invalid_input };
  SizingError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

// Fixed-point iteration on takeoff mass: pick the lightest motor/propeller
// pair with enough thrust margin, the lightest battery meeting the endurance
// floor, scale structure with takeoff mass, repeat until the mass settles.
SizingResult size_vehicle(const ConstraintSet& constraints, const Catalog& catalog,
                          const SizingOptions& options = {});

struct HoverPerformance {
  double thrust_per_rotor_n = 0.0;
  double induced_velocity_mps = 0.0;
  double power_total_w = 0.0;
};

// Actuator-disk hover estimate. Ideal per-rotor power T^1.5 / sqrt(2 rho A)
// divided by the figure of merit.
HoverPerformance hover_performance(double takeoff_mass_kg, int rotor_count,
                                   const ComponentSpec& propeller, double air_density,
                                   double figure_of_merit, double gravity = kStandardGravity);

// Seconds of flight from capacity x voltage x usable fraction.
double endurance(const ComponentSpec& battery, double usable_fraction, double power_total_w);

}  // namespace uav

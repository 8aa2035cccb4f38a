#include "uav/sizing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "uav/errors.hpp"

namespace uav {
namespace {

constexpr double kSecondsPerHour = 3600.0;

struct PropulsionPair {
  const ComponentSpec* motor = nullptr;
  const ComponentSpec* propeller = nullptr;
};

PropulsionPair lightest_pair(const std::vector<ComponentSpec>& motors,
                             const std::vector<ComponentSpec>& props, int rotor_count,
                             double required_thrust_n) {
  PropulsionPair best;
  double best_mass = 0.0;
  for (const auto& m : motors) {
    if (rotor_count * m.motor().max_thrust_n < required_thrust_n) continue;
    for (const auto& p : props) {
      const double mass = m.mass() + p.mass();
      // Inputs are sorted by id, so strict < keeps the lexicographic tie-break.
      if (!best.motor || mass < best_mass) {
        best = {&m, &p};
        best_mass = mass;
      }
    }
  }
  return best;
}

std::string format_kg(double kg) {
  std::ostringstream os;
  os.precision(6);
  os << kg << " kg";
  return os.str();
}

}  // namespace

void validate(const ConstraintSet& c) {
  if (!(c.max_takeoff_mass_kg > 0.0)) throw ValidationError("max_takeoff_mass must be positive");
  if (!(c.payload_mass_kg >= 0.0)) throw ValidationError("payload_mass must be non-negative");
  if (!(c.payload_mass_kg < c.max_takeoff_mass_kg))
    throw ValidationError("payload_mass (" + format_kg(c.payload_mass_kg) +
                          ") must be below max_takeoff_mass (" + format_kg(c.max_takeoff_mass_kg) +
                          ")");
  if (c.rotor_count != 3 && c.rotor_count != 4 && c.rotor_count != 6 && c.rotor_count != 8)
    throw ValidationError("rotor_count must be one of 3, 4, 6, 8");
  if (!(c.min_thrust_to_weight >= 1.0))
    throw ValidationError("min_thrust_to_weight must be at least 1");
  for (double d : c.payload_dims_m)
    if (!(d > 0.0)) throw ValidationError("payload dimensions must be positive");
  if (!(c.min_range_m >= 0.0)) throw ValidationError("min_range must be non-negative");
}

HoverPerformance hover_performance(double takeoff_mass_kg, int rotor_count,
                                   const ComponentSpec& propeller, double air_density,
                                   double figure_of_merit, double gravity) {
  const double diameter = propeller.propeller().diameter_m;
  if (!(takeoff_mass_kg >= 0.0)) throw DomainError("takeoff mass must be non-negative");
  if (rotor_count <= 0) throw DomainError("rotor count must be positive");
  if (!(air_density > 0.0)) throw DomainError("air density must be positive");
  if (!(figure_of_merit > 0.0 && figure_of_merit <= 1.0))
    throw DomainError("figure of merit must lie in (0, 1]");
  if (!(diameter > 0.0)) throw DomainError("propeller diameter must be positive");
  if (!(gravity > 0.0)) throw DomainError("gravity must be positive");

  const double thrust = takeoff_mass_kg * gravity / rotor_count;
  const double disk_area = std::numbers::pi * 0.25 * diameter * diameter;
  const double two_rho_a = 2.0 * air_density * disk_area;
  const double ideal_power = std::pow(thrust, 1.5) / std::sqrt(two_rho_a);

  HoverPerformance out;
  out.thrust_per_rotor_n = thrust;
  out.induced_velocity_mps = std::sqrt(thrust / two_rho_a);
  out.power_total_w = rotor_count * ideal_power / figure_of_merit;
  return out;
}

double endurance(const ComponentSpec& battery, double usable_fraction, double power_total_w) {
  const auto& b = battery.battery();
  if (!(usable_fraction > 0.0 && usable_fraction <= 1.0))
    throw DomainError("usable fraction must lie in (0, 1]");
  if (!(power_total_w > 0.0)) throw DomainError("power must be positive");
  const double energy_wh = b.capacity_ah * b.nominal_voltage_v * usable_fraction;
  return energy_wh * kSecondsPerHour / power_total_w;
}

SizingResult size_vehicle(const ConstraintSet& constraints, const Catalog& catalog,
                          const SizingOptions& options) {
  try {
    validate(constraints);
  } catch (const ValidationError& e) {
    throw SizingError(SizingError::Reason::invalid_input, e.what());
  }
  const double sf = options.structure_fraction;
  if (!(sf > 0.0 && sf < 1.0))
    throw SizingError(SizingError::Reason::invalid_input, "structure_fraction must lie in (0, 1)");
  if (!(options.fixed_mass_kg >= 0.0) || !std::isfinite(options.fixed_mass_kg))
    throw SizingError(SizingError::Reason::invalid_input, "fixed mass must be non-negative");
  if (options.iteration_cap <= 0)
    throw SizingError(SizingError::Reason::invalid_input, "iteration cap must be positive");
  for (auto kind : {ComponentKind::motor, ComponentKind::propeller, ComponentKind::battery}) {
    try {
      catalog.require(kind, "sizing");
    } catch (const ValidationError& e) {
      throw SizingError(kind == ComponentKind::battery ? SizingError::Reason::no_feasible_battery
                                                       : SizingError::Reason::no_feasible_motor,
                        e.what());
    }
  }

  const auto motors = query(catalog, ComponentKind::motor);
  const auto props = query(catalog, ComponentKind::propeller);
  const auto batteries = query(catalog, ComponentKind::battery);
  const auto escs = query(catalog, ComponentKind::esc);
  const ComponentSpec* esc = nullptr;
  for (const auto& e : escs)
    if (!esc || e.mass() < esc->mass()) esc = &e;

  const int n = constraints.rotor_count;
  const double g = options.gravity;
  const double payload = constraints.payload_mass_kg;
  double mass = options.initial_mass_kg.value_or(payload / (1.0 - sf));

  for (int it = 1; it <= options.iteration_cap; ++it) {
    const double required = constraints.min_thrust_to_weight * mass * g;
    const auto pair = lightest_pair(motors, props, n, required);
    if (!pair.motor) {
      std::ostringstream os;
      os << "no motor provides " << required << " N total thrust at takeoff mass "
         << format_kg(mass) << " (T/W " << constraints.min_thrust_to_weight << ", " << n
         << " rotors)";
      throw SizingError(SizingError::Reason::no_feasible_motor, os.str());
    }

    const auto hover = hover_performance(mass, n, *pair.propeller, options.air_density,
                                         options.figure_of_merit, g);
    const ComponentSpec* battery = nullptr;
    for (const auto& b : batteries) {
      if (hover.power_total_w > 0.0 &&
          endurance(b, options.usable_battery_fraction, hover.power_total_w) <
              options.endurance_floor_s)
        continue;
      if (!battery || b.mass() < battery->mass()) battery = &b;
    }
    if (!battery) {
      std::ostringstream os;
      os << "no battery reaches " << options.endurance_floor_s << " s endurance at "
         << hover.power_total_w << " W hover power";
      throw SizingError(SizingError::Reason::no_feasible_battery, os.str());
    }

    const double per_rotor = pair.motor->mass() + pair.propeller->mass() + (esc ? esc->mass() : 0.0);
    const double components = n * per_rotor + battery->mass() + options.fixed_mass_kg;
    const double structure = sf * mass;
    const double next = components + payload + structure;
    const bool margin_ok =
        n * pair.motor->motor().max_thrust_n >= constraints.min_thrust_to_weight * next * g;

    if (std::abs(next - mass) < options.tolerance_kg && margin_ok) {
      SizingResult r;
      r.takeoff_mass_kg = next;
      r.structure_mass_kg = structure;
      r.payload_mass_kg = payload;
      r.component_mass_kg = components;
      r.rotor_count = n;
      r.battery = *battery;
      r.motor = *pair.motor;
      r.propeller = *pair.propeller;
      if (esc) r.esc = *esc;
      const auto final_hover = hover_performance(next, n, *pair.propeller, options.air_density,
                                                 options.figure_of_merit, g);
      r.hover_thrust_per_rotor_n = final_hover.thrust_per_rotor_n;
      r.hover_power_total_w = final_hover.power_total_w;
      r.endurance_s = final_hover.power_total_w > 0.0
                          ? endurance(*battery, options.usable_battery_fraction,
                                      final_hover.power_total_w)
                          : std::numeric_limits<double>::infinity();
      r.thrust_to_weight = n * pair.motor->motor().max_thrust_n / (next * g);
      r.iterations = it;
      r.converged = next <= constraints.max_takeoff_mass_kg;
      if (!r.converged)
        r.diagnostic = "takeoff mass " + format_kg(next) + " exceeds the " +
                       format_kg(constraints.max_takeoff_mass_kg) + " cap";
      return r;
    }
    mass = next;
  }
  throw SizingError(SizingError::Reason::non_convergence,
                    "takeoff mass did not settle within " + std::to_string(options.iteration_cap) +
                        " iterations (last " + format_kg(mass) + ")");
}

}  // namespace uav

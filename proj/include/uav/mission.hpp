#pragma once

// Autonomous payload-drop mission: waypoint flight, statistical target
// detection, latch state machine, release-point solution, Monte Carlo
// campaigns.
//
// Mission frame: x north, y east, z altitude above ground (up), metres.
// The vehicle is a kinematic point mass with first-order velocity response;
// guidance commands ground velocity.

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uav/errors.hpp"
#include "uav/massprops.hpp"
#include "uav/sizing.hpp"

namespace uav {

struct NoDrag {
  bool operator==(const NoDrag&) const = default;
};
// Acceleration -k |v_rel| v_rel with k = rho Cd A / (2 m), in 1/m.
struct QuadraticDrag {
  double coefficient_per_m = 0.0;
  bool operator==(const QuadraticDrag&) const = default;
};
using DragModel = std::variant<NoDrag, QuadraticDrag>;

struct MissionPlan {
  std::vector<Eigen::Vector3d> waypoints;  // first waypoint is the launch point
  double cruise_speed_mps = 5.0;
  Eigen::Vector3d target_position = Eigen::Vector3d::Zero();  // on the ground
  double drop_altitude_m = 20.0;  // above the target
  int max_detection_passes = 3;

  double approach_distance_m = 100.0;  // straight run-in before the target
  double success_radius_m = 1.0;
  double velocity_time_constant_s = 0.5;
  double servo_rate_radps = 5.0;
  double servo_open_angle_rad = 1.0;
  double time_step_s = 0.05;
  double capture_radius_m = 1.0;
  double max_flight_time_s = 3600.0;
  DragModel payload_drag = NoDrag{};
  double gravity = kStandardGravity;
};

// Throws MissionError when the plan is infeasible.
void validate(const MissionPlan& plan);

MissionPlan load_mission_plan(const std::filesystem::path& path);
MissionPlan parse_mission_plan(std::string_view text, const std::string& source = "<memory>");

struct DetectorModel {
  double per_pass_accuracy = 0.99;
  double false_positive_rate = 0.0;
  double position_noise_sigma_m = 0.0;
  double field_of_view_half_angle_rad = 0.7;
  bool operator==(const DetectorModel&) const = default;
};

void validate(const DetectorModel& detector);

// ---- latch --------------------------------------------------------------

enum class LatchPhase { locked, servo_activated, latch_open, payload_released };
std::string_view to_string(LatchPhase phase);

struct LatchState {
  LatchPhase phase = LatchPhase::locked;
  double servo_angle_rad = 0.0;
  bool operator==(const LatchState&) const = default;
};

struct LatchActivate {};
struct LatchTick {
  double dt_s = 0.0;
};
using LatchCommand = std::variant<LatchActivate, LatchTick>;

struct LatchStep {
  LatchState state;
  bool warning = false;  // command not legal in the incoming phase; state unchanged
};

// locked -> servo_activated -> latch_open -> payload_released. Activation
// starts the servo; ticks sweep it at servo_rate until the open angle is
// reached, and the tick after that lets the doors drop the payload.
LatchStep step_latch(const LatchState& state, const LatchCommand& command, double servo_rate_radps,
                     double open_angle_rad = 1.0);

// Seconds from activation to payload release when ticked every dt_s.
double latch_release_delay(double servo_rate_radps, double open_angle_rad, double dt_s);

// ---- release solution ---------------------------------------------------

struct ReleaseSolution {
  double lead_distance_m = 0.0;
  double fall_time_s = 0.0;
  Eigen::Vector3d displacement = Eigen::Vector3d::Zero();  // release point to impact
};

inline constexpr double kReleaseIntegrationStep = 1e-3;

// Where the payload lands relative to the release point. vehicle_velocity is
// air-relative; the payload leaves with ground velocity vehicle_velocity +
// wind. Without drag the fall is closed form; with quadratic drag it is RK4
// at integration_step_s up to ground contact.
ReleaseSolution solve_release(const Eigen::Vector3d& vehicle_velocity, double altitude_above_target_m,
                              const Eigen::Vector3d& wind, const DragModel& drag,
                              double gravity = kStandardGravity,
                              double integration_step_s = kReleaseIntegrationStep);

// ---- simulation -----------------------------------------------------------

class MissionError : public Error {
 public:
  using Error::Error;
};

struct VehicleSummary {
  double takeoff_mass_kg = 0.0;
  double endurance_s = 0.0;
  MassProperties mass_properties;
};

VehicleSummary make_vehicle(const SizingResult& sizing, const MassProperties& props);

enum class FlightPhase { transit, approach, pass, release, return_to_launch, done };
std::string_view to_string(FlightPhase phase);

struct TrajectorySample {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  FlightPhase phase = FlightPhase::transit;
};

struct DetectionEvent {
  int pass = 0;
  double t = 0.0;
  Eigen::Vector3d estimate = Eigen::Vector3d::Zero();
  bool false_positive = false;
};

struct MissionOutcome {
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<int> detected_on_pass;  // true detections only
  std::vector<DetectionEvent> detections;
  bool released = false;
  std::optional<double> release_time_s;
  Eigen::Vector3d release_point = Eigen::Vector3d::Zero();
  Eigen::Vector3d impact_point = Eigen::Vector3d::Zero();
  double miss_distance_m = 0.0;  // horizontal; meaningful only when released
  double flight_time_s = 0.0;
  bool endurance_exceeded = false;
  Eigen::Vector3d wind = Eigen::Vector3d::Zero();
  std::vector<TrajectorySample> trajectory;
};

struct SimulationOptions {
  bool record_trajectory = true;
  // Record every Nth integration step (event steps are always recorded).
  int trajectory_stride = 1;
};

// Deterministic for identical inputs and seed.
MissionOutcome simulate_mission(const MissionPlan& plan, const DetectorModel& detector,
                                const VehicleSummary& vehicle, const Eigen::Vector3d& wind,
                                std::uint64_t seed, const SimulationOptions& options = {});

// Machine-readable dump of an outcome (JSON, 17 significant digits).
std::string outcome_json(const MissionOutcome& outcome);

// ---- campaigns ------------------------------------------------------------

// Per-run wind: mean plus independent N(0, sigma) on the horizontal axes.
struct WindDistribution {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  double horizontal_sigma_mps = 0.0;
};

struct CampaignStatistics {
  std::size_t runs = 0;
  std::size_t failed_runs = 0;  // runs that raised an error
  std::size_t successes = 0;
  std::size_t detections = 0;  // runs with a true detection
  std::size_t releases = 0;
  double success_rate = 0.0;
  double detection_rate = 0.0;
  double mean_miss_m = 0.0;  // over runs that released
  double p95_miss_m = 0.0;
  std::vector<std::size_t> pass_histogram;  // [0] = never detected, [k] = pass k
  std::vector<double> miss_distances;       // sorted ascending
  std::vector<std::string> errors;          // "seed: message"

  bool operator==(const CampaignStatistics&) const = default;
};

struct CampaignOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Runs seeds base_seed .. base_seed + n_runs - 1. Result does not depend on
// the thread count.
CampaignStatistics run_campaign(const MissionPlan& plan, const DetectorModel& detector,
                                const VehicleSummary& vehicle, const WindDistribution& wind,
                                std::size_t n_runs, std::uint64_t base_seed,
                                const CampaignOptions& options = {});

// Aggregate already simulated outcomes (order-independent).
CampaignStatistics aggregate_outcomes(const std::vector<MissionOutcome>& outcomes,
                                      int max_detection_passes,
                                      std::vector<std::string> errors = {});

std::string campaign_csv(const CampaignStatistics& stats);

}  // namespace uav

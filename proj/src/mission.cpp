#include "uav/mission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "uav/rng.hpp"
#include "yaml_util.hpp"

namespace uav {
namespace {

constexpr double kLineTrackingTimeConstant = 1.0;  // s, cross-track correction
constexpr double kLatchAngleTolerance = 1e-12;
constexpr int kRefinementSteps = 200;

// Independent substreams per run so that changing one model (say detector
// accuracy) does not shift the draws another model sees.
enum Stream : std::uint64_t { detection_stream = 1, false_positive_stream = 2, noise_stream = 3,
                              wind_stream = 4 };

Eigen::Vector3d horizontal(const Eigen::Vector3d& v) { return {v.x(), v.y(), 0.0}; }

struct Kinematics {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double t = 0.0;
};

// Exact solution of v' = (v_cmd - v) / tau over a step with constant command.
void advance(Kinematics& k, const Eigen::Vector3d& command, double h, double tau) {
  const double decay = std::exp(-h / tau);
  const Eigen::Vector3d dv = k.velocity - command;
  k.position += command * h + dv * (tau * (1.0 - decay));
  k.velocity = command + dv * decay;
  k.t += h;
}

struct FallState {
  Eigen::Vector3d position;
  Eigen::Vector3d velocity;
};

FallState rk4_step(const FallState& s, double h, double k, const Eigen::Vector3d& wind, double g) {
  const Eigen::Vector3d gravity(0.0, 0.0, -g);
  auto accel = [&](const Eigen::Vector3d& v) -> Eigen::Vector3d {
    const Eigen::Vector3d rel = v - wind;
    return gravity - k * rel.norm() * rel;
  };
  const Eigen::Vector3d k1v = accel(s.velocity);
  const Eigen::Vector3d k1x = s.velocity;
  const Eigen::Vector3d k2v = accel(s.velocity + 0.5 * h * k1v);
  const Eigen::Vector3d k2x = s.velocity + 0.5 * h * k1v;
  const Eigen::Vector3d k3v = accel(s.velocity + 0.5 * h * k2v);
  const Eigen::Vector3d k3x = s.velocity + 0.5 * h * k2v;
  const Eigen::Vector3d k4v = accel(s.velocity + h * k3v);
  const Eigen::Vector3d k4x = s.velocity + h * k3v;
  return {s.position + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
          s.velocity + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

}  // namespace

// ---- plan -----------------------------------------------------------------

void validate(const MissionPlan& plan) {
  if (plan.waypoints.empty()) throw MissionError("mission plan needs at least one waypoint");
  for (std::size_t i = 0; i < plan.waypoints.size(); ++i) {
    const auto& w = plan.waypoints[i];
    if (!w.allFinite()) throw MissionError("waypoint " + std::to_string(i) + " is not finite");
    if (w.z() < 0.0)
      throw MissionError("infeasible plan: waypoint " + std::to_string(i) + " is below ground");
  }
  if (!plan.target_position.allFinite()) throw MissionError("target position is not finite");
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(plan.cruise_speed_mps)) throw MissionError("cruise speed must be positive");
  if (!positive(plan.drop_altitude_m)) throw MissionError("drop altitude must be positive");
  if (plan.max_detection_passes < 1) throw MissionError("at least one detection pass is required");
  if (!positive(plan.approach_distance_m)) throw MissionError("approach distance must be positive");
  if (!positive(plan.success_radius_m)) throw MissionError("success radius must be positive");
  if (!positive(plan.velocity_time_constant_s))
    throw MissionError("velocity time constant must be positive");
  if (!positive(plan.servo_rate_radps)) throw MissionError("servo rate must be positive");
  if (!positive(plan.servo_open_angle_rad)) throw MissionError("servo open angle must be positive");
  if (!positive(plan.time_step_s)) throw MissionError("time step must be positive");
  if (!positive(plan.capture_radius_m)) throw MissionError("capture radius must be positive");
  if (!positive(plan.max_flight_time_s)) throw MissionError("max flight time must be positive");
  if (!positive(plan.gravity)) throw MissionError("gravity must be positive");
  if (const auto* q = std::get_if<QuadraticDrag>(&plan.payload_drag))
    if (!(q->coefficient_per_m >= 0.0)) throw MissionError("drag coefficient must be non-negative");
}

MissionPlan parse_mission_plan(std::string_view text, const std::string& source) {
  const YAML::Node root = detail::load_yaml_text(text, source);
  detail::MapReader r(root, source, "mission plan");
  MissionPlan plan;
  const auto wp_node = r.child("waypoints_m");
  if (!wp_node.IsSequence()) r.fail(wp_node, "waypoints_m must be a list of [x, y, z]");
  for (const auto& item : wp_node) {
    if (!item.IsSequence() || item.size() != 3) r.fail(item, "each waypoint needs [x, y, z]");
    try {
      plan.waypoints.emplace_back(item[0].as<double>(), item[1].as<double>(), item[2].as<double>());
    } catch (const YAML::Exception&) {
      r.fail(item, "waypoint coordinates must be numbers");
    }
  }
  plan.cruise_speed_mps = r.number("cruise_speed_mps");
  plan.target_position = r.vec3("target_position_m");
  plan.drop_altitude_m = r.number("drop_altitude_m");
  plan.max_detection_passes = static_cast<int>(r.integer("max_detection_passes"));
  plan.approach_distance_m = r.number_or("approach_distance_m", plan.approach_distance_m);
  plan.success_radius_m = r.number_or("success_radius_m", plan.success_radius_m);
  plan.velocity_time_constant_s =
      r.number_or("velocity_time_constant_s", plan.velocity_time_constant_s);
  plan.servo_rate_radps = r.number_or("servo_rate_radps", plan.servo_rate_radps);
  plan.servo_open_angle_rad = r.number_or("servo_open_angle_rad", plan.servo_open_angle_rad);
  plan.time_step_s = r.number_or("time_step_s", plan.time_step_s);
  plan.capture_radius_m = r.number_or("capture_radius_m", plan.capture_radius_m);
  plan.max_flight_time_s = r.number_or("max_flight_time_s", plan.max_flight_time_s);
  plan.gravity = r.number_or("gravity_mps2", plan.gravity);
  if (auto k = r.optional_number("payload_drag_per_m"); k && *k > 0.0)
    plan.payload_drag = QuadraticDrag{*k};
  r.finish();
  try {
    validate(plan);
  } catch (const MissionError& e) {
    throw ParseError(source, detail::line_of(root), e.what());
  }
  return plan;
}

MissionPlan load_mission_plan(const std::filesystem::path& path) {
  return parse_mission_plan(detail::read_text_file(path), path.string());
}

void validate(const DetectorModel& d) {
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(d.per_pass_accuracy) || !probability(d.false_positive_rate))
    throw MissionError("detector probabilities must lie in [0, 1]");
  if (!(d.position_noise_sigma_m >= 0.0) || !std::isfinite(d.position_noise_sigma_m))
    throw MissionError("detector noise sigma must be non-negative");
  if (!(d.field_of_view_half_angle_rad > 0.0 &&
        d.field_of_view_half_angle_rad < 0.5 * std::numbers::pi))
    throw MissionError("field of view half angle must lie in (0, pi/2)");
}

// ---- latch ----------------------------------------------------------------

std::string_view to_string(LatchPhase phase) {
  switch (phase) {
    case LatchPhase::locked: return "locked";
    case LatchPhase::servo_activated: return "servo_activated";
    case LatchPhase::latch_open: return "latch_open";
    case LatchPhase::payload_released: return "payload_released";
  }
  return "unknown";
}

LatchStep step_latch(const LatchState& state, const LatchCommand& command, double servo_rate,
                     double open_angle) {
  LatchStep out{state, false};
  if (std::holds_alternative<LatchActivate>(command)) {
    if (state.phase == LatchPhase::locked)
      out.state = {LatchPhase::servo_activated, 0.0};
    else
      out.warning = true;
    return out;
  }
  const double dt = std::get<LatchTick>(command).dt_s;
  if (!(dt >= 0.0)) {
    out.warning = true;
    return out;
  }
  switch (state.phase) {
    case LatchPhase::locked:
    case LatchPhase::payload_released:
      break;
    case LatchPhase::servo_activated: {
      const double angle = state.servo_angle_rad + servo_rate * dt;
      if (angle >= open_angle * (1.0 - kLatchAngleTolerance))
        out.state = {LatchPhase::latch_open, open_angle};
      else
        out.state.servo_angle_rad = angle;
      break;
    }
    case LatchPhase::latch_open:
      // Doors swing under gravity; no servo load.
      out.state.phase = LatchPhase::payload_released;
      break;
  }
  return out;
}

double latch_release_delay(double servo_rate, double open_angle, double dt) {
  if (!(servo_rate > 0.0) || !(dt > 0.0) || !(open_angle > 0.0))
    throw DomainError("latch delay needs positive servo rate, open angle and time step");
  LatchState s = step_latch({}, LatchActivate{}, servo_rate, open_angle).state;
  double elapsed = 0.0;
  while (s.phase != LatchPhase::payload_released) {
    s = step_latch(s, LatchTick{dt}, servo_rate, open_angle).state;
    elapsed += dt;
  }
  return elapsed;
}

// ---- release --------------------------------------------------------------

ReleaseSolution solve_release(const Eigen::Vector3d& vehicle_velocity, double altitude,
                              const Eigen::Vector3d& wind, const DragModel& drag, double g,
                              double step) {
  if (!(altitude > 0.0) || !std::isfinite(altitude))
    throw DomainError("release altitude must be positive");
  if (!(g > 0.0)) throw DomainError("gravity must be positive");
  const Eigen::Vector3d v0 = vehicle_velocity + wind;

  ReleaseSolution out;
  const double k = std::holds_alternative<QuadraticDrag>(drag)
                       ? std::get<QuadraticDrag>(drag).coefficient_per_m
                       : 0.0;
  if (std::holds_alternative<NoDrag>(drag)) {
    const double vz = v0.z();
    out.fall_time_s = (vz + std::sqrt(vz * vz + 2.0 * g * altitude)) / g;
    out.displacement = {v0.x() * out.fall_time_s, v0.y() * out.fall_time_s, -altitude};
  } else {
    if (!(step > 0.0)) throw DomainError("integration step must be positive");
    FallState s{Eigen::Vector3d::Zero(), v0};
    double t = 0.0;
    const double ground = -altitude;
    const double time_cap = 1e4;
    while (true) {
      FallState next = rk4_step(s, step, k, wind, g);
      if (next.position.z() <= ground) {
        // Bisect the contact time inside the final step.
        double lo = 0.0, hi = step;
        for (int i = 0; i < kRefinementSteps && hi - lo > 1e-15; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (rk4_step(s, mid, k, wind, g).position.z() <= ground)
            hi = mid;
          else
            lo = mid;
        }
        next = rk4_step(s, hi, k, wind, g);
        t += hi;
        out.fall_time_s = t;
        out.displacement = {next.position.x(), next.position.y(), -altitude};
        break;
      }
      s = next;
      t += step;
      if (t > time_cap || !s.position.allFinite())
        throw DomainError("payload fall did not reach the ground");
    }
  }
  out.lead_distance_m = std::hypot(out.displacement.x(), out.displacement.y());
  return out;
}

// ---- simulation -------------------------------------------------------------

VehicleSummary make_vehicle(const SizingResult& sizing, const MassProperties& props) {
  return {sizing.takeoff_mass_kg, sizing.endurance_s, props};
}

std::string_view to_string(FlightPhase phase) {
  switch (phase) {
    case FlightPhase::transit: return "transit";
    case FlightPhase::approach: return "approach";
    case FlightPhase::pass: return "pass";
    case FlightPhase::release: return "release";
    case FlightPhase::return_to_launch: return "return_to_launch";
    case FlightPhase::done: return "done";
  }
  return "unknown";
}

namespace {

class MissionRun {
 public:
  MissionRun(const MissionPlan& plan, const DetectorModel& detector, const VehicleSummary& vehicle,
             const Eigen::Vector3d& wind, std::uint64_t seed, const SimulationOptions& options)
      : plan_(plan),
        detector_(detector),
        vehicle_(vehicle),
        wind_(wind),
        options_(options),
        detection_rng_(seed, detection_stream),
        false_positive_rng_(seed, false_positive_stream),
        noise_rng_(seed, noise_stream),
        latch_delay_(latch_release_delay(plan.servo_rate_radps, plan.servo_open_angle_rad,
                                         plan.time_step_s)) {
    out_.seed = seed;
    out_.wind = wind;
    k_.position = plan.waypoints.front();

    const Eigen::Vector3d target = plan.target_position;
    const Eigen::Vector3d from = plan.waypoints.back();
    Eigen::Vector3d d = horizontal(target - from);
    direction_ = d.norm() > 1e-9 ? Eigen::Vector3d(d.normalized()) : Eigen::Vector3d::UnitX();
    const double pass_altitude = target.z() + plan.drop_altitude_m;
    pass_start_ = horizontal(target) - plan.approach_distance_m * direction_;
    pass_start_.z() = pass_altitude;
    pass_length_ = plan.approach_distance_m * 1.25;
  }

  MissionOutcome run() {
    record(FlightPhase::transit, true);
    for (std::size_t i = 1; i < plan_.waypoints.size() && !timed_out(); ++i)
      go_to(plan_.waypoints[i], FlightPhase::transit);

    for (int pass = 1; pass <= plan_.max_detection_passes && !out_.released && !timed_out(); ++pass) {
      go_to(pass_start_, FlightPhase::approach);
      if (timed_out()) break;
      fly_pass(pass);
    }

    if (!timed_out()) go_to(plan_.waypoints.front(), FlightPhase::return_to_launch);
    record(FlightPhase::done, true);

    out_.flight_time_s = k_.t;
    out_.endurance_exceeded = timed_out() || k_.t > vehicle_.endurance_s;
    out_.success = out_.released && out_.miss_distance_m <= plan_.success_radius_m &&
                   !out_.endurance_exceeded;
    return std::move(out_);
  }

 private:
  bool timed_out() const { return k_.t > plan_.max_flight_time_s; }

  void record(FlightPhase phase, bool force = false) {
    if (!options_.record_trajectory) return;
    if (!force && (step_count_ % std::max(1, options_.trajectory_stride)) != 0) return;
    out_.trajectory.push_back({k_.t, k_.position, k_.velocity, phase});
  }

  void step(const Eigen::Vector3d& command, double h, FlightPhase phase, bool force_record = false) {
    advance(k_, command, h, plan_.velocity_time_constant_s);
    ++step_count_;
    if (!k_.position.allFinite() || !k_.velocity.allFinite())
      throw MissionError("non-finite vehicle state at step " + std::to_string(step_count_) +
                         " (t = " + std::to_string(k_.t) + " s)");
    record(phase, force_record);
  }

  void go_to(const Eigen::Vector3d& point, FlightPhase phase) {
    const double tau = plan_.velocity_time_constant_s;
    while (!timed_out()) {
      const Eigen::Vector3d delta = point - k_.position;
      const double dist = delta.norm();
      if (dist < plan_.capture_radius_m) break;
      const double speed = std::min(plan_.cruise_speed_mps, dist / (2.0 * tau));
      step(delta / dist * speed, plan_.time_step_s, phase);
    }
  }

  double along_track() const { return (k_.position - pass_start_).dot(direction_); }

  Eigen::Vector3d line_command() const {
    const Eigen::Vector3d on_line = pass_start_ + along_track() * direction_;
    return plan_.cruise_speed_mps * direction_ + (on_line - k_.position) / kLineTrackingTimeConstant;
  }

  bool target_in_view() const {
    const double height = k_.position.z() - plan_.target_position.z();
    if (height <= 0.0) return false;
    const double radius = height * std::tan(detector_.field_of_view_half_angle_rad);
    return horizontal(k_.position - plan_.target_position).norm() <= radius;
  }

  void attempt_detection(int pass) {
    const double u = detection_rng_.uniform();
    DetectionEvent ev;
    ev.pass = pass;
    ev.t = k_.t;
    if (u < detector_.per_pass_accuracy) {
      const double nx = noise_rng_.normal();
      const double ny = noise_rng_.normal();
      ev.estimate = plan_.target_position +
                    detector_.position_noise_sigma_m * Eigen::Vector3d(nx, ny, 0.0);
      if (!out_.detected_on_pass) out_.detected_on_pass = pass;
    } else if (false_positive_rng_.uniform() < detector_.false_positive_rate) {
      const double height = k_.position.z() - plan_.target_position.z();
      const double radius = height * std::tan(detector_.field_of_view_half_angle_rad);
      const double r = radius * std::sqrt(false_positive_rng_.uniform());
      const double a = 2.0 * std::numbers::pi * false_positive_rng_.uniform();
      ev.estimate = horizontal(k_.position) + Eigen::Vector3d(r * std::cos(a), r * std::sin(a), 0.0);
      ev.estimate.z() = plan_.target_position.z();
      ev.false_positive = true;
    } else {
      return;
    }
    out_.detections.push_back(ev);
    estimate_ = ev.estimate;
  }

  // Along-track coordinate at which the latch must be activated.
  double trigger_coordinate() const {
    const double height = k_.position.z() - estimate_->z();
    const auto sol = solve_release(k_.velocity - wind_, height, wind_, plan_.payload_drag,
                                   plan_.gravity);
    const Eigen::Vector3d release = horizontal(*estimate_ - sol.displacement);
    const Eigen::Vector3d trigger = release - horizontal(k_.velocity) * latch_delay_;
    return (trigger - pass_start_).dot(direction_);
  }

  void fly_pass(int pass) {
    bool tried = false;
    std::optional<double> trigger;
    while (!timed_out()) {
      const double s = along_track();
      if (s >= pass_length_) return;
      if (!estimate_ && !tried && target_in_view()) {
        tried = true;
        attempt_detection(pass);
      }
      if (estimate_ && !trigger) {
        const double c = trigger_coordinate();
        if (c < s) return;  // already past the release point; retry next pass
        trigger = c;
      }

      double h = plan_.time_step_s;
      bool fire = false;
      if (trigger) {
        const double closing = k_.velocity.dot(direction_);
        if (closing > 0.0) {
          const double remaining = (*trigger - s) / closing;
          if (remaining <= h) {
            h = std::max(remaining, 0.0);
            fire = true;
          }
        }
      }
      step(line_command(), h, FlightPhase::pass, fire);
      if (fire) {
        release_payload();
        return;
      }
    }
  }

  void release_payload() {
    LatchState latch = step_latch({}, LatchActivate{}, plan_.servo_rate_radps,
                                  plan_.servo_open_angle_rad).state;
    while (latch.phase != LatchPhase::payload_released) {
      step(line_command(), plan_.time_step_s, FlightPhase::release);
      latch = step_latch(latch, LatchTick{plan_.time_step_s}, plan_.servo_rate_radps,
                         plan_.servo_open_angle_rad)
                  .state;
    }
    record(FlightPhase::release, true);

    const double height = k_.position.z() - plan_.target_position.z();
    const auto fall = solve_release(k_.velocity - wind_, height, wind_, plan_.payload_drag,
                                    plan_.gravity);
    out_.released = true;
    out_.release_time_s = k_.t;
    out_.release_point = k_.position;
    out_.impact_point = k_.position + fall.displacement;
    out_.miss_distance_m = horizontal(out_.impact_point - plan_.target_position).norm();
  }

  const MissionPlan& plan_;
  const DetectorModel& detector_;
  const VehicleSummary& vehicle_;
  Eigen::Vector3d wind_;
  SimulationOptions options_;
  RandomStream detection_rng_;
  RandomStream false_positive_rng_;
  RandomStream noise_rng_;
  double latch_delay_;

  Kinematics k_;
  long long step_count_ = 0;
  Eigen::Vector3d direction_;
  Eigen::Vector3d pass_start_;
  double pass_length_ = 0.0;
  std::optional<Eigen::Vector3d> estimate_;
  MissionOutcome out_;
};

}  // namespace

MissionOutcome simulate_mission(const MissionPlan& plan, const DetectorModel& detector,
                                const VehicleSummary& vehicle, const Eigen::Vector3d& wind,
                                std::uint64_t seed, const SimulationOptions& options) {
  validate(plan);
  validate(detector);
  if (!wind.allFinite()) throw MissionError("wind must be finite");
  return MissionRun(plan, detector, vehicle, wind, seed, options).run();
}

// ---- campaigns --------------------------------------------------------------

CampaignStatistics aggregate_outcomes(const std::vector<MissionOutcome>& outcomes,
                                      int max_detection_passes, std::vector<std::string> errors) {
  CampaignStatistics stats;
  stats.runs = outcomes.size() + errors.size();
  stats.failed_runs = errors.size();
  stats.errors = std::move(errors);
  std::sort(stats.errors.begin(), stats.errors.end());
  stats.pass_histogram.assign(static_cast<std::size_t>(std::max(max_detection_passes, 0)) + 1, 0);
  for (const auto& o : outcomes) {
    if (o.success) ++stats.successes;
    if (o.detected_on_pass) {
      ++stats.detections;
      const auto idx = static_cast<std::size_t>(*o.detected_on_pass);
      if (idx < stats.pass_histogram.size()) ++stats.pass_histogram[idx];
    } else {
      ++stats.pass_histogram[0];
    }
    if (o.released) {
      ++stats.releases;
      stats.miss_distances.push_back(o.miss_distance_m);
    }
  }
  std::sort(stats.miss_distances.begin(), stats.miss_distances.end());
  if (stats.runs > 0) {
    stats.success_rate = static_cast<double>(stats.successes) / static_cast<double>(stats.runs);
    stats.detection_rate = static_cast<double>(stats.detections) / static_cast<double>(stats.runs);
  }
  if (!stats.miss_distances.empty()) {
    // Summing the sorted values keeps the mean independent of input order.
    double sum = 0.0;
    for (double m : stats.miss_distances) sum += m;
    stats.mean_miss_m = sum / static_cast<double>(stats.miss_distances.size());
    const auto n = stats.miss_distances.size();
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    stats.p95_miss_m = stats.miss_distances[std::clamp<std::size_t>(rank, 1, n) - 1];
  }
  return stats;
}

CampaignStatistics run_campaign(const MissionPlan& plan, const DetectorModel& detector,
                                const VehicleSummary& vehicle, const WindDistribution& wind,
                                std::size_t n_runs, std::uint64_t base_seed,
                                const CampaignOptions& options) {
  if (n_runs < 1) throw MissionError("a campaign needs at least one run");
  validate(plan);
  validate(detector);

  std::vector<std::optional<MissionOutcome>> outcomes(n_runs);
  std::vector<std::string> messages(n_runs);
  const SimulationOptions sim{false, 1};

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t seed = base_seed + i;
      try {
        RandomStream wind_rng(seed, wind_stream);
        Eigen::Vector3d w = wind.mean;
        if (wind.horizontal_sigma_mps > 0.0) {
          w.x() += wind.horizontal_sigma_mps * wind_rng.normal();
          w.y() += wind.horizontal_sigma_mps * wind_rng.normal();
        }
        outcomes[i] = simulate_mission(plan, detector, vehicle, w, seed, sim);
      } catch (const std::exception& e) {
        messages[i] = std::to_string(seed) + ": " + e.what();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_runs)));
  if (threads == 1) {
    work(0, n_runs);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_runs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n_runs, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  std::vector<MissionOutcome> done;
  std::vector<std::string> errors;
  done.reserve(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i) {
    if (outcomes[i])
      done.push_back(std::move(*outcomes[i]));
    else
      errors.push_back(std::move(messages[i]));
  }
  return aggregate_outcomes(done, plan.max_detection_passes, std::move(errors));
}

std::string campaign_csv(const CampaignStatistics& s) {
  std::ostringstream os;
  os.precision(17);
  os << "metric,value\n";
  os << "runs," << s.runs << '\n';
  os << "failed_runs," << s.failed_runs << '\n';
  os << "successes," << s.successes << '\n';
  os << "detections," << s.detections << '\n';
  os << "releases," << s.releases << '\n';
  os << "success_rate," << s.success_rate << '\n';
  os << "detection_rate," << s.detection_rate << '\n';
  os << "mean_miss_m," << s.mean_miss_m << '\n';
  os << "p95_miss_m," << s.p95_miss_m << '\n';
  for (std::size_t i = 0; i < s.pass_histogram.size(); ++i)
    os << (i == 0 ? std::string("undetected") : "detected_on_pass_" + std::to_string(i)) << ','
       << s.pass_histogram[i] << '\n';
  return os.str();
}

}  // namespace uav

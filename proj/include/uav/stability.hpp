#pragma once

// Hover-linearised 12-state rigid-body model, PD state feedback, and pole
// classification on the s-plane.
//
// State order [x y z u v w phi theta psi p q r], inputs [dT tau_x tau_y tau_z].
// Body frame is x forward, y right, z down; dT is a thrust increment acting
// upward (along -z). Small-angle hover linearisation:
//
//   x' = u    y' = v    z' = w
//   u' = -g theta      v' = g phi      w' = -dT / m
//   phi' = p  theta' = q  psi' = r
//   p' = tau_x / Ixx   q' = tau_y / Iyy   r' = tau_z / Izz
//
// A holds six unit kinematic couplings and the two gravity terms; it is
// nilpotent, so every open-loop pole sits at the origin. See
// docs/hover_model.md for the derivation.

#include <Eigen/Core>

#include <complex>
#include <string>
#include <vector>

#include "uav/eigensolver.hpp"
#include "uav/massprops.hpp"
#include "uav/sizing.hpp"

namespace uav {

inline constexpr int kStateCount = 12;
inline constexpr int kInputCount = 4;

namespace state {
enum Index : int { x, y, z, u, v, w, phi, theta, psi, p, q, r };
}

using StateMatrix = Eigen::Matrix<double, kStateCount, kStateCount>;
using InputMatrix = Eigen::Matrix<double, kStateCount, kInputCount>;
using GainMatrix = Eigen::Matrix<double, kInputCount, kStateCount>;

struct LinearModel {
  StateMatrix a = StateMatrix::Zero();
  InputMatrix b = InputMatrix::Zero();
  double mass_kg = 0.0;
  Eigen::Vector3d inertia_diagonal = Eigen::Vector3d::Zero();  // Ixx, Iyy, Izz
  double gravity = kStandardGravity;
};

// Throws DomainError when mass or a principal inertia is not positive.
LinearModel build_hover_model(const MassProperties& props, double gravity = kStandardGravity);

struct AxisGains {
  double kp = 0.0;
  double kd = 0.0;
  bool operator==(const AxisGains&) const = default;
};

// PD feedback. Attitude gains in N m/rad and N m s/rad, altitude gains in
// N/m and N s/m. The horizontal-position gains close an outer loop through
// the attitude torques (N m/m, N m s/m) and default to zero.
struct FeedbackGains {
  AxisGains roll;
  AxisGains pitch;
  AxisGains yaw;
  AxisGains altitude;
  AxisGains position;

  bool operator==(const FeedbackGains&) const = default;
};

// Throws ValidationError when any gain is negative or non-finite.
void validate(const FeedbackGains& gains);

// K such that u = -K x.
GainMatrix feedback_matrix(const FeedbackGains& gains);

enum class StabilityClass { stable, marginal, unstable };
std::string_view to_string(StabilityClass c);

inline constexpr double kMarginalTolerance = 1e-9;

struct Pole {
  std::complex<double> value;
  double damping_ratio = 0.0;      // -Re / |lambda|, 0 at the origin
  double natural_frequency = 0.0;  // |lambda|, rad/s
  bool operator==(const Pole&) const = default;
};

struct PoleSet {
  std::vector<Pole> poles;
  StabilityClass classification = StabilityClass::marginal;
  bool operator==(const PoleSet&) const = default;
};

StabilityClass classify(const std::vector<std::complex<double>>& eigenvalues,
                        double tolerance = kMarginalTolerance);

// Poles sorted by real part then imaginary part.
PoleSet make_pole_set(const std::vector<std::complex<double>>& eigenvalues,
                      double tolerance = kMarginalTolerance);

PoleSet open_loop_poles(const LinearModel& model);
PoleSet closed_loop_poles(const LinearModel& model, const FeedbackGains& gains);

struct PolePlotOptions {
  double width_px = 480.0;
  double height_px = 480.0;
  std::string title = "Pole map";
  // Eigenvalues closer than this are drawn as one marker with a multiplicity label.
  double merge_tolerance = 1e-6;
};

// Standalone SVG scatter of the poles on the complex s-plane.
std::string pole_plot_svg(const PoleSet& poles, const PolePlotOptions& options = {});

// Re, Im, damping ratio, natural frequency per pole.
std::string pole_csv(const PoleSet& poles);

}  // namespace uav

#include "uav/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "uav/errors.hpp"
#include "uav/svg.hpp"

namespace uav {

using namespace state;

LinearModel build_hover_model(const MassProperties& props, double gravity) {
  if (!(props.total_mass > 0.0) || !std::isfinite(props.total_mass))
    throw DomainError("hover model needs a positive mass");
  const Eigen::Vector3d inertia = props.inertia.diagonal();
  if (!(inertia.minCoeff() > 0.0) || !inertia.allFinite())
    throw DomainError("hover model needs positive principal inertias (singular inertia)");
  if (!std::isfinite(gravity) || gravity < 0.0) throw DomainError("gravity must be non-negative");

  LinearModel model;
  model.mass_kg = props.total_mass;
  model.inertia_diagonal = inertia;
  model.gravity = gravity;

  auto& a = model.a;
  a(x, u) = 1.0;
  a(y, v) = 1.0;
  a(z, w) = 1.0;
  a(phi, p) = 1.0;
  a(theta, q) = 1.0;
  a(psi, r) = 1.0;
  a(u, theta) = -gravity;
  a(v, phi) = gravity;

  auto& b = model.b;
  b(w, 0) = -1.0 / props.total_mass;
  b(p, 1) = 1.0 / inertia.x();
  b(q, 2) = 1.0 / inertia.y();
  b(r, 3) = 1.0 / inertia.z();
  return model;
}

void validate(const FeedbackGains& g) {
  for (const auto* axis : {&g.roll, &g.pitch, &g.yaw, &g.altitude, &g.position}) {
    if (!(axis->kp >= 0.0) || !(axis->kd >= 0.0) || !std::isfinite(axis->kp) ||
        !std::isfinite(axis->kd))
      throw ValidationError("feedback gains must be finite and non-negative");
  }
}

GainMatrix feedback_matrix(const FeedbackGains& g) {
  GainMatrix k = GainMatrix::Zero();
  // Thrust is positive up, z is positive down.
  k(0, z) = -g.altitude.kp;
  k(0, w) = -g.altitude.kd;
  k(1, phi) = g.roll.kp;
  k(1, p) = g.roll.kd;
  k(2, theta) = g.pitch.kp;
  k(2, q) = g.pitch.kd;
  k(3, psi) = g.yaw.kp;
  k(3, r) = g.yaw.kd;
  // Forward offset needs nose-up pitch (u' = -g theta); rightward offset
  // needs left roll (v' = g phi).
  k(2, x) = -g.position.kp;
  k(2, u) = -g.position.kd;
  k(1, y) = g.position.kp;
  k(1, v) = g.position.kd;
  return k;
}

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::marginal: return "marginal";
    case StabilityClass::unstable: return "unstable";
  }
  return "unknown";
}

StabilityClass classify(const std::vector<std::complex<double>>& eigenvalues, double tolerance) {
  if (eigenvalues.empty()) return StabilityClass::marginal;
  double max_re = -std::numeric_limits<double>::infinity();
  for (const auto& l : eigenvalues) max_re = std::max(max_re, l.real());
  if (max_re > tolerance) return StabilityClass::unstable;
  if (max_re >= -tolerance) return StabilityClass::marginal;
  return StabilityClass::stable;
}

PoleSet make_pole_set(const std::vector<std::complex<double>>& eigenvalues, double tolerance) {
  PoleSet set;
  set.classification = classify(eigenvalues, tolerance);
  for (const auto& l : eigenvalues) {
    Pole pole;
    pole.value = l;
    pole.natural_frequency = std::abs(l);
    pole.damping_ratio = pole.natural_frequency > 0.0 ? -l.real() / pole.natural_frequency : 0.0;
    set.poles.push_back(pole);
  }
  std::sort(set.poles.begin(), set.poles.end(), [](const Pole& a, const Pole& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return set;
}

PoleSet open_loop_poles(const LinearModel& model) {
  return make_pole_set(eigenvalues(model.a));
}

PoleSet closed_loop_poles(const LinearModel& model, const FeedbackGains& gains) {
  validate(gains);
  const StateMatrix closed = model.a - model.b * feedback_matrix(gains);
  return make_pole_set(eigenvalues(closed));
}

std::string pole_csv(const PoleSet& poles) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,damping_ratio,natural_frequency\n";
  for (const auto& p : poles.poles)
    os << p.value.real() << ',' << p.value.imag() << ',' << p.damping_ratio << ','
       << p.natural_frequency << '\n';
  return os.str();
}

std::string pole_plot_svg(const PoleSet& poles, const PolePlotOptions& options) {
  struct Marker {
    std::complex<double> at;
    int count = 0;
  };
  std::vector<Marker> markers;
  for (const auto& p : poles.poles) {
    auto it = std::find_if(markers.begin(), markers.end(), [&](const Marker& m) {
      return std::abs(m.at - p.value) <= options.merge_tolerance;
    });
    if (it == markers.end())
      markers.push_back({p.value, 1});
    else
      ++it->count;
  }

  double re_lo = 0.0, re_hi = 0.0, im_hi = 0.0;
  for (const auto& m : markers) {
    re_lo = std::min(re_lo, m.at.real());
    re_hi = std::max(re_hi, m.at.real());
    im_hi = std::max(im_hi, std::abs(m.at.imag()));
  }
  const double span = std::max({re_hi - re_lo, 2.0 * im_hi, 1.0});
  svg::Frame f;
  f.width = options.width_px;
  f.height = options.height_px;
  f.x_min = re_lo - 0.1 * span;
  f.x_max = re_hi + 0.1 * span;
  f.y_max = std::max(im_hi, 0.5) * 1.2;
  f.y_min = -f.y_max;

  svg::Document doc(f.width, f.height);
  doc.comment("s-plane pole map; " + std::to_string(poles.poles.size()) + " poles, " +
              std::string(to_string(poles.classification)));
  svg::draw_axes(doc, f, "Re (1/s)", "Im (rad/s)", options.title);
  constexpr std::string_view kAxis = "stroke:#999;stroke-width:1;stroke-dasharray:4,3";
  doc.line(f.px(0.0), f.py(f.y_min), f.px(0.0), f.py(f.y_max), kAxis);
  doc.line(f.px(f.x_min), f.py(0.0), f.px(f.x_max), f.py(0.0), kAxis);
  for (const auto& m : markers) {
    const double cx = f.px(m.at.real()), cy = f.py(m.at.imag());
    doc.cross(cx, cy, 5.0, "stroke:#c0392b;stroke-width:2");
    if (m.count > 1)
      doc.text(cx + 7, cy - 7, std::to_string(m.count),
               "font-family:sans-serif;font-size:11px;fill:#c0392b");
  }
  return doc.str();
}

}  // namespace uav

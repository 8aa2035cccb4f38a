#include "uav/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uav/svg.hpp"

namespace uav {
namespace {

std::string g(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string pct(double fraction) { return g(100.0 * fraction, 4) + " %"; }

void heading(std::ostringstream& os, const std::string& title) {
  os << '\n' << title << '\n' << std::string(title.size(), '-') << '\n';
}

void stage_note(std::ostringstream& os, const DesignReport& r, std::string_view name) {
  const auto* s = r.stage(name);
  if (!s) return;
  os << "status: " << to_string(s->status) << '\n';
  for (const auto& m : s->messages) os << "  ! " << m << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

std::string report_text(const DesignReport& r, std::optional<double> wall_time_s) {
  std::ostringstream os;
  os << "UAV design report\n=================\n";
  os << "verdict:      " << to_string(r.verdict) << '\n';
  os << "tool version: " << r.provenance.tool_version << '\n';
  os << "config hash:  " << r.provenance.config_hash << '\n';
  os << "seed:         " << r.provenance.seed << '\n';
  if (r.provenance.timestamp) os << "timestamp:    " << *r.provenance.timestamp << '\n';
  if (wall_time_s) os << "wall time:    " << g(*wall_time_s, 4) << " s\n";
  if (r.outer_iterations > 1) os << "outer iterations: " << r.outer_iterations << '\n';
  for (const auto& v : r.violations) os << "  violation: " << v << '\n';

  heading(os, "Requirements");
  const auto& c = r.constraints;
  os << "max takeoff mass     " << g(c.max_takeoff_mass_kg) << " kg\n";
  os << "payload              " << g(c.payload_mass_kg) << " kg, " << g(c.payload_dims_m[0]) << " x "
     << g(c.payload_dims_m[1]) << " x " << g(c.payload_dims_m[2]) << " m\n";
  os << "range                " << g(c.min_range_m) << " m\n";
  os << "rotors               " << c.rotor_count << '\n';
  os << "min thrust/weight    " << g(c.min_thrust_to_weight) << '\n';

  heading(os, "Configuration and frame selection");
  stage_note(os, r, "trade");
  for (const auto& t : r.trades) {
    os << (t.title.empty() ? t.source : t.title) << ": winner " << t.result.winner
       << (t.result.tie ? " (tie, name order)" : "") << '\n';
    for (std::size_t i = 0; i < t.result.ranking.size(); ++i)
      os << "  " << i + 1 << ". " << t.result.ranking[i] << "  " << g(t.result.ranked_scores[i], 4)
         << '\n';
    for (const auto& w : t.sensitivity)
      os << "  weight '" << w.criterion << "' " << g(w.nominal, 4) << ", winner holds on ["
         << g(w.lower, 4) << ", " << g(w.upper, 4) << "]\n";
    for (const auto& w : t.result.warnings) os << "  warning: " << w << '\n';
  }

  heading(os, "Sizing and propulsion");
  stage_note(os, r, "sizing");
  if (r.sizing) {
    const auto& z = *r.sizing;
    os << "takeoff mass         " << g(z.takeoff_mass_kg) << " kg (" << z.iterations
       << " iterations" << (z.converged ? "" : ", not converged") << ")\n";
    os << "  structure          " << g(z.structure_mass_kg) << " kg\n";
    os << "  components         " << g(z.component_mass_kg) << " kg\n";
    os << "  payload            " << g(z.payload_mass_kg) << " kg\n";
    os << "motor                " << z.motor.id << " x" << z.rotor_count << '\n';
    os << "propeller            " << z.propeller.id << '\n';
    if (z.esc) os << "esc                  " << z.esc->id << '\n';
    os << "battery              " << z.battery.id << '\n';
    os << "hover thrust/rotor   " << g(z.hover_thrust_per_rotor_n) << " N\n";
    os << "hover power          " << g(z.hover_power_total_w) << " W\n";
    os << "endurance            " << g(z.endurance_s) << " s\n";
    os << "thrust/weight        " << g(z.thrust_to_weight) << '\n';
  }

  heading(os, "Structures");
  stage_note(os, r, "structures");
  if (r.structures) {
    for (const auto& chk : r.structures->checks) {
      os << chk.name << ": stress " << g(chk.max_stress_pa) << " Pa, allowable "
         << g(chk.allowable_stress_pa) << " Pa, safety factor " << g(chk.safety_factor, 4)
         << " (min " << g(chk.required_safety_factor) << ") " << (chk.pass ? "pass" : "FAIL");
      if (chk.max_deflection_m) os << ", tip deflection " << g(*chk.max_deflection_m) << " m";
      os << '\n';
    }
    if (const auto& s = r.structures->sandwich)
      os << "sandwich hub plate: mass " << pct(s->mass_reduction) << " lower, cost "
         << pct(s->cost_reduction) << " lower than solid\n";
    if (const auto& t = r.structures->thermal_mismatch_strain)
      os << "thermal mismatch strain: " << g(*t) << '\n';
  }

  heading(os, "Mass properties");
  stage_note(os, r, "massprops");
  if (r.massprops) {
    const auto& m = r.massprops->properties;
    os << "assembled mass       " << g(m.total_mass) << " kg\n";
    os << "cg                   [" << g(m.cg.x()) << ", " << g(m.cg.y()) << ", " << g(m.cg.z())
       << "] m, offset " << g(r.massprops->cg_offset_m) << " m (max " << g(r.massprops->max_cg_offset_m)
       << ")\n";
    os << "inertia diagonal     [" << g(m.inertia(0, 0)) << ", " << g(m.inertia(1, 1)) << ", "
       << g(m.inertia(2, 2)) << "] kg m^2\n";
  }

  heading(os, "Hover stability");
  stage_note(os, r, "stability");
  if (r.stability) {
    auto poles = [&](const char* label, const PoleSet& p) {
      os << label << ": " << to_string(p.classification) << '\n';
      for (const auto& pole : p.poles)
        os << "  " << g(pole.value.real()) << (pole.value.imag() < 0 ? " - " : " + ")
           << g(std::abs(pole.value.imag())) << "j   zeta " << g(pole.damping_ratio, 4) << "  wn "
           << g(pole.natural_frequency, 4) << '\n';
    };
    poles("open loop", r.stability->open_loop);
    poles("closed loop", r.stability->closed_loop);
  }

  heading(os, "Mission campaign");
  stage_note(os, r, "mission");
  if (r.mission) {
    const auto& s = r.mission->statistics;
    os << "runs                 " << s.runs << " (seeds " << r.mission->base_seed << ".."
       << r.mission->base_seed + s.runs - 1 << ", " << s.failed_runs << " errored)\n";
    os << "detector accuracy    " << g(r.mission->detector.per_pass_accuracy) << " per pass\n";
    os << "detection rate       " << pct(s.detection_rate) << '\n';
    os << "success rate         " << pct(s.success_rate) << " (min " << pct(r.mission->min_success_rate)
       << ")\n";
    os << "miss distance        mean " << g(s.mean_miss_m) << " m, p95 " << g(s.p95_miss_m) << " m\n";
    os << "detected on pass    ";
    for (std::size_t i = 0; i < s.pass_histogram.size(); ++i)
      os << ' ' << (i == 0 ? std::string("never") : std::to_string(i)) << ':' << s.pass_histogram[i];
    os << '\n';
  }

  heading(os, "Reference values (external analyses, not recomputed)");
  for (const auto& ref : r.references)
    os << ref.name << " = " << g(ref.value, 8) << (ref.unit == "1" ? "" : " " + ref.unit) << '\n';
  return os.str();
}

PlotSet report_plots(const DesignReport& r) {
  PlotSet out;
  if (r.stability) {
    PolePlotOptions o;
    o.title = "Open-loop hover poles";
    out.files.push_back({"open_loop_poles.svg", pole_plot_svg(r.stability->open_loop, o)});
    o.title = "Closed-loop hover poles";
    out.files.push_back({"closed_loop_poles.svg", pole_plot_svg(r.stability->closed_loop, o)});
  } else {
    out.notes.push_back("pole maps omitted: stability stage " +
                        std::string(r.stage("stability") ? to_string(r.stage("stability")->status)
                                                         : "absent"));
  }
  if (r.mission && !r.mission->statistics.miss_distances.empty()) {
    const auto bins = svg::histogram(r.mission->statistics.miss_distances, 20);
    out.files.push_back({"miss_histogram.svg",
                         svg::histogram_svg(bins, "Miss distance", "miss distance (m)")});
  } else if (r.mission) {
    out.notes.push_back("miss histogram omitted: no run released a payload");
  } else {
    out.notes.push_back("miss histogram omitted: mission stage " +
                        std::string(r.stage("mission") ? to_string(r.stage("mission")->status)
                                                       : "absent"));
  }
  return out;
}

RenderedReport render_report(const DesignReport& report, ReportFormat format,
                             const std::filesystem::path& dir, std::optional<double> wall_time_s) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  RenderedReport out;
  switch (format) {
    case ReportFormat::text:
      out.files.push_back(dir / "report.txt");
      write_file(out.files.back(), report_text(report, wall_time_s));
      break;
    case ReportFormat::machine:
      out.files.push_back(dir / "report.json");
      write_file(out.files.back(), report_json(report));
      break;
    case ReportFormat::plots: {
      auto plots = report_plots(report);
      for (const auto& p : plots.files) {
        out.files.push_back(dir / p.name);
        write_file(out.files.back(), p.svg);
      }
      out.notes = std::move(plots.notes);
      break;
    }
  }
  return out;
}

}  // namespace uav

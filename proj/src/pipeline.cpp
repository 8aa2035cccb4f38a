#include "uav/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "uav/reference.hpp"
#include "yaml_util.hpp"

namespace uav {

std::uint64_t fnv1a(std::string_view data, std::uint64_t state) {
  for (unsigned char c : data) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::passed: return "passed";
    case StageStatus::failed: return "failed";
    case StageStatus::skipped: return "skipped";
    case StageStatus::disabled: return "disabled";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::all_constraints_met ? "all-constraints-met" : "violations";
}

const StageRecord* DesignReport::stage(std::string_view name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<ReferenceValue> reference_values() {
  using namespace reference;
  std::vector<ReferenceValue> out;
  for (const auto& f : kFrameFem) {
    out.push_back({"fem." + std::string(f.frame) + ".tip_deflection", f.tip_deflection_m, "m"});
    out.push_back({"fem." + std::string(f.frame) + ".joint_von_mises", f.joint_von_mises_pa, "Pa"});
  }
  out.push_back({"fem.frame_tip_load", kFrameTipLoad_n, "N"});
  out.push_back({"fem.hub_plate_optimised_mass_reduction", kHubPlateOptimisedReduction, "1"});
  out.push_back({"fem.landing_gear_load", kLandingGearLoad_n, "N"});
  out.push_back({"fem.landing_gear_stress", kLandingGearStress_pa, "Pa"});
  out.push_back({"fem.latch_stress", kLatchStress_pa, "Pa"});
  out.push_back({"fem.latch_safety_factor", kLatchSafetyFactor, "1"});
  out.push_back({"material.abs_tensile_strength", kAbsTensileStrength_pa, "Pa"});
  out.push_back({"sandwich.mass_reduction", kSandwichMassReduction, "1"});
  out.push_back({"sandwich.cost_reduction", kSandwichCostReduction, "1"});
  out.push_back({"cfd.inlet_velocity", kCfdInletVelocity_mps, "m/s"});
  out.push_back({"cfd.propeller_speed", kCfdPropellerSpeed_radps, "rad/s"});
  out.push_back({"cfd.max_mesh_size", kCfdMaxMeshSize_m, "m"});
  out.push_back({"cfd.iterations", static_cast<double>(kCfdIterations), "1"});
  out.push_back({"cfd.lift", kCfdLift_n, "N"});
  out.push_back({"cfd.drag", kCfdDrag_n, "N"});
  out.push_back({"detector.ssd_mobilenet.accuracy", kSsdMobileNetAccuracy, "1"});
  out.push_back({"detector.ssd_mobilenet.training_examples",
                 static_cast<double>(kSsdMobileNetTrainingExamples), "1"});
  out.push_back({"detector.yolov5.accuracy", kYoloV5Accuracy, "1"});
  out.push_back({"detector.yolov5.training_examples", static_cast<double>(kYoloV5TrainingExamples),
                 "1"});
  return out;
}

// ---- config -----------------------------------------------------------------

namespace {

AxisGains read_axis(detail::MapReader& parent, const std::string& key) {
  AxisGains g;
  auto node = parent.optional_child(key);
  if (!node) return g;
  detail::MapReader r(*node, parent.source(), "gains." + key);
  g.kp = r.number_or("kp", 0.0);
  g.kd = r.number_or("kd", 0.0);
  r.finish();
  return g;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

DesignConfig parse_design_config(std::string_view text, const std::string& source,
                                 const std::filesystem::path& base) {
  const YAML::Node root = detail::load_yaml_text(text, source);
  detail::MapReader r(root, source, "design config");
  DesignConfig c;
  c.source_text = std::string(text);
  c.source_path = source;

  c.seed = static_cast<std::uint64_t>(r.optional_integer("seed").value_or(1));
  if (auto out = r.optional_string("output_directory")) c.output_directory = resolve(base, *out);
  c.max_outer_iterations = static_cast<int>(r.optional_integer("max_outer_iterations").value_or(1));
  if (c.max_outer_iterations < 1) r.fail(root, "max_outer_iterations must be at least 1");
  c.catalog = resolve(base, r.string("catalog"));
  c.placements = resolve(base, r.string("placements"));
  c.mission_plan = resolve(base, r.string("mission_plan"));

  {
    detail::MapReader k(r.child("constraints"), source, "constraints");
    c.constraints.max_takeoff_mass_kg = k.number("max_takeoff_mass_kg");
    c.constraints.payload_mass_kg = k.number("payload_mass_kg");
    if (auto dims = k.optional_child("payload_dims_m")) {
      auto v = k.numbers("payload_dims_m");
      if (v.size() != 3) k.fail(*dims, "payload_dims_m needs 3 values");
      c.constraints.payload_dims_m = {v[0], v[1], v[2]};
    }
    c.constraints.min_range_m = k.number_or("min_range_m", c.constraints.min_range_m);
    c.constraints.rotor_count =
        static_cast<int>(k.optional_integer("rotor_count").value_or(c.constraints.rotor_count));
    c.constraints.min_thrust_to_weight =
        k.number_or("min_thrust_to_weight", c.constraints.min_thrust_to_weight);
    k.finish();
  }

  if (auto node = r.optional_child("sizing")) {
    detail::MapReader s(*node, source, "sizing");
    auto& o = c.sizing;
    o.structure_fraction = s.number_or("structure_fraction", o.structure_fraction);
    o.figure_of_merit = s.number_or("figure_of_merit", o.figure_of_merit);
    o.air_density = s.number_or("air_density_kg_per_m3", o.air_density);
    o.gravity = s.number_or("gravity_mps2", o.gravity);
    o.usable_battery_fraction = s.number_or("usable_battery_fraction", o.usable_battery_fraction);
    o.endurance_floor_s = s.number_or("endurance_floor_s", o.endurance_floor_s);
    o.tolerance_kg = s.number_or("tolerance_kg", o.tolerance_kg);
    o.iteration_cap = static_cast<int>(s.optional_integer("iteration_cap").value_or(o.iteration_cap));
    o.fixed_mass_kg = s.number_or("fixed_mass_kg", o.fixed_mass_kg);
    s.finish();
  }

  if (auto node = r.optional_child("trades")) {
    if (!node->IsSequence()) r.fail(*node, "trades must be a list");
    for (const auto& item : *node) {
      detail::MapReader t(item, source, "trade");
      TradeInput in;
      in.path = resolve(base, t.string("matrix"));
      in.expected_winner = t.optional_string("expected_winner");
      t.finish();
      c.trades.push_back(in);
    }
  }

  if (auto node = r.optional_child("structures")) {
    detail::MapReader s(*node, source, "structures");
    auto& st = c.structures;
    st.tip_load_n = s.number_or("tip_load_n", st.tip_load_n);
    st.min_safety_factor = s.number_or("min_safety_factor", st.min_safety_factor);
    st.arm_tube = s.optional_string("arm_tube").value_or("");
    st.arm_length_m = s.optional_number("arm_length_m");
    if (auto rep = s.optional_child("reported")) {
      if (!rep->IsSequence()) s.fail(*rep, "reported must be a list");
      for (const auto& item : *rep) {
        detail::MapReader x(item, source, "reported stress");
        ReportedStress rs;
        rs.name = x.string("name");
        rs.load_n = x.number("load_n");
        rs.stress_pa = x.number("stress_pa");
        rs.material = x.string("material");
        x.finish();
        st.reported.push_back(rs);
      }
    }
    if (auto sw = s.optional_child("sandwich")) {
      detail::MapReader x(*sw, source, "sandwich");
      SandwichInput in;
      in.face_material = x.string("face_material");
      in.core_material = x.string("core_material");
      in.plies_per_face = static_cast<int>(x.integer("plies_per_face"));
      in.ply_thickness_m = x.number("ply_thickness_m");
      in.core_thickness_m = x.number("core_thickness_m");
      in.solid_thickness_m = x.number("solid_thickness_m");
      if (x.has("ply_angles_deg")) in.ply_angles_deg = x.numbers("ply_angles_deg");
      x.finish();
      st.sandwich = in;
    }
    if (auto th = s.optional_child("thermal")) {
      detail::MapReader x(*th, source, "thermal");
      st.thermal = ThermalInput{x.string("material_a"), x.string("material_b"), x.number("delta_t_c")};
      x.finish();
    }
    s.finish();
  }

  if (auto node = r.optional_child("massprops")) {
    detail::MapReader m(*node, source, "massprops");
    c.max_cg_offset_m = m.number_or("max_cg_offset_m", c.max_cg_offset_m);
    m.finish();
  }

  if (auto node = r.optional_child("stability")) {
    detail::MapReader s(*node, source, "stability");
    c.require_stable = s.boolean_or("require_stable", c.require_stable);
    if (auto g = s.optional_child("gains")) {
      detail::MapReader gr(*g, source, "gains");
      c.gains.roll = read_axis(gr, "roll");
      c.gains.pitch = read_axis(gr, "pitch");
      c.gains.yaw = read_axis(gr, "yaw");
      c.gains.altitude = read_axis(gr, "altitude");
      c.gains.position = read_axis(gr, "position");
      gr.finish();
    }
    s.finish();
  }

  if (auto node = r.optional_child("mission")) {
    detail::MapReader m(*node, source, "mission");
    auto& mi = c.mission;
    const auto runs = m.optional_integer("runs").value_or(static_cast<long long>(mi.runs));
    if (runs < 1) m.fail(*node, "runs must be at least 1");
    mi.runs = static_cast<std::size_t>(runs);
    mi.min_success_rate = m.number_or("min_success_rate", mi.min_success_rate);
    mi.threads = static_cast<unsigned>(m.optional_integer("threads").value_or(0));
    if (auto d = m.optional_child("detector")) {
      detail::MapReader x(*d, source, "detector");
      auto& det = mi.detector;
      det.per_pass_accuracy = x.number_or("per_pass_accuracy", det.per_pass_accuracy);
      det.false_positive_rate = x.number_or("false_positive_rate", det.false_positive_rate);
      det.position_noise_sigma_m = x.number_or("position_noise_sigma_m", det.position_noise_sigma_m);
      det.field_of_view_half_angle_rad =
          x.number_or("field_of_view_half_angle_rad", det.field_of_view_half_angle_rad);
      x.finish();
    }
    if (auto w = m.optional_child("wind")) {
      detail::MapReader x(*w, source, "wind");
      mi.wind.mean = x.optional_vec3("mean_mps").value_or(Eigen::Vector3d::Zero());
      mi.wind.horizontal_sigma_mps = x.number_or("horizontal_sigma_mps", 0.0);
      x.finish();
    }
    m.finish();
  }

  if (auto node = r.optional_child("stages")) {
    detail::MapReader s(*node, source, "stages");
    auto& t = c.stages;
    t.trade = s.boolean_or("trade", t.trade);
    t.sizing = s.boolean_or("sizing", t.sizing);
    t.structures = s.boolean_or("structures", t.structures);
    t.massprops = s.boolean_or("massprops", t.massprops);
    t.stability = s.boolean_or("stability", t.stability);
    t.mission = s.boolean_or("mission", t.mission);
    s.finish();
  }
  r.finish();
  return c;
}

DesignConfig load_design_config(const std::filesystem::path& path) {
  return parse_design_config(detail::read_text_file(path), path.string(), path.parent_path());
}

// ---- run --------------------------------------------------------------------

namespace {

constexpr std::string_view kStageNames[] = {"trade", "sizing", "structures",
                                            "massprops", "stability", "mission"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::optional<std::string> build_timestamp() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (!epoch || !*epoch) return std::nullopt;
  char* end = nullptr;
  const long long secs = std::strtoll(epoch, &end, 10);
  if (*end != '\0') return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

// Role placeholders in the placement file resolve to the sized vehicle.
Catalog vehicle_catalog(const Catalog& base, const SizingResult& sizing) {
  auto entries = base.entries();
  auto alias = [&](const ComponentSpec& spec, const std::string& id) {
    ComponentSpec copy = spec;
    copy.id = id;
    entries.push_back(std::move(copy));
  };
  auto part = [&](const std::string& id, double mass, const std::string& what) {
    ComponentSpec p;
    p.id = id;
    p.description = what;
    p.mass_kg = mass;
    p.params = PartParams{};
    entries.push_back(std::move(p));
  };
  alias(sizing.motor, "$motor");
  alias(sizing.propeller, "$propeller");
  alias(sizing.battery, "$battery");
  if (sizing.esc) alias(*sizing.esc, "$esc");
  if (sizing.structure_mass_kg > 0.0) part("$structure", sizing.structure_mass_kg, "sized structure");
  if (sizing.payload_mass_kg > 0.0) part("$payload", sizing.payload_mass_kg, "payload");
  return Catalog(std::move(entries), base.source_path());
}

const ComponentSpec& material_of(const Catalog& catalog, const std::string& id) {
  const auto& spec = catalog.at(id);
  if (spec.kind() != ComponentKind::material)
    throw ValidationError("catalog entry '" + id + "' is not a material");
  return spec;
}

StructuresOutcome run_structures(const DesignConfig& c, const Catalog& catalog) {
  const auto& in = c.structures;
  StructuresOutcome out;
  if (!in.arm_tube.empty()) {
    const auto& spec = catalog.at(in.arm_tube);
    if (spec.kind() != ComponentKind::tube)
      throw ValidationError("catalog entry '" + in.arm_tube + "' is not a tube");
    const auto& t = spec.tube();
    if (!t.material) throw ValidationError("tube '" + in.arm_tube + "' names no material");
    TubeSection tube{t.outer_diameter_m, t.inner_diameter_m,
                     in.arm_length_m.value_or(t.length_m.value_or(0.0)),
                     material_of(catalog, *t.material)};
    out.checks.push_back(cantilever_tube_check(tube, in.tip_load_n, in.min_safety_factor,
                                               "arm tube (" + in.arm_tube + ")"));
  }
  for (const auto& rs : in.reported) {
    const auto& mat = material_of(catalog, rs.material).material();
    if (!mat.tensile_strength_pa)
      throw ValidationError("material '" + rs.material + "' has no tensile strength");
    out.checks.push_back(reported_check(rs.name, rs.load_n, rs.stress_pa, *mat.tensile_strength_pa,
                                        in.min_safety_factor));
  }
  if (in.sandwich) {
    const auto& s = *in.sandwich;
    SandwichLayup layup{s.plies_per_face, s.ply_thickness_m, s.core_thickness_m,
                        material_of(catalog, s.face_material), material_of(catalog, s.core_material),
                        s.ply_angles_deg};
    out.sandwich = sandwich_vs_solid(layup, s.solid_thickness_m);
  }
  if (in.thermal) {
    out.thermal_mismatch_strain =
        thermal_mismatch(material_of(catalog, in.thermal->material_a),
                         material_of(catalog, in.thermal->material_b), in.thermal->delta_t_c);
  }
  return out;
}

}  // namespace

DesignReport run_pipeline(const DesignConfig& config) {
  // Inputs are read up front: a missing file is a config error, not a stage failure.
  const Catalog catalog = load_catalog(config.catalog);
  const auto placements = load_placements(config.placements);
  const MissionPlan plan = load_mission_plan(config.mission_plan);
  std::vector<DecisionMatrix> matrices;
  for (const auto& t : config.trades) matrices.push_back(load_decision_matrix(t.path));

  std::uint64_t hash = fnv1a(config.source_text);
  for (const auto& p : {config.catalog, config.placements, config.mission_plan})
    hash = fnv1a(detail::read_text_file(p), hash);
  for (const auto& t : config.trades) hash = fnv1a(detail::read_text_file(t.path), hash);

  DesignReport report;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  report.provenance = {std::string(kToolVersion), hex, config.seed, build_timestamp()};
  report.constraints = config.constraints;
  report.references = reference_values();

  const auto& on = config.stages;
  const bool enabled[] = {on.trade, on.sizing, on.structures, on.massprops, on.stability, on.mission};
  for (std::size_t i = 0; i < std::size(kStageNames); ++i)
    report.stages.push_back({std::string(kStageNames[i]),
                             enabled[i] ? StageStatus::failed : StageStatus::disabled,
                             {}});
  auto stage = [&](std::string_view name) -> StageRecord& {
    for (auto& s : report.stages)
      if (s.name == name) return s;
    throw std::logic_error("unknown stage");
  };
  auto ready = [&](std::string_view name, std::initializer_list<std::string_view> deps) {
    auto& s = stage(name);
    if (s.status == StageStatus::disabled) return false;
    for (auto d : deps) {
      const auto& dep = stage(d);
      if (dep.status != StageStatus::passed) {
        s.status = StageStatus::skipped;
        s.messages.push_back("skipped: " + std::string(d) + " stage " +
                             std::string(to_string(dep.status)));
        return false;
      }
    }
    return true;
  };
  auto settle = [](StageRecord& s) {
    s.status = s.messages.empty() ? StageStatus::passed : StageStatus::failed;
  };

  // trade
  if (ready("trade", {})) {
    auto& s = stage("trade");
    try {
      for (std::size_t i = 0; i < matrices.size(); ++i) {
        TradeOutcome t;
        t.title = matrices[i].title;
        t.source = config.trades[i].path.filename().string();
        t.expected_winner = config.trades[i].expected_winner;
        t.result = evaluate(matrices[i]);
        t.sensitivity = sensitivity(matrices[i], t.result.winner);
        if (t.expected_winner && *t.expected_winner != t.result.winner)
          s.messages.push_back(t.source + ": winner '" + t.result.winner + "', expected '" +
                               *t.expected_winner + "'");
        report.trades.push_back(std::move(t));
      }
    } catch (const Error& e) {
      s.messages.push_back(e.what());
    }
    settle(s);
  }

  // sizing and mass properties, optionally iterated on unaccounted equipment mass
  SizingOptions sizing_options = config.sizing;
  for (int outer = 1; outer <= config.max_outer_iterations; ++outer) {
    report.outer_iterations = outer;
    report.sizing.reset();
    report.massprops.reset();
    for (auto name : {"sizing", "massprops"}) {
      auto& s = stage(name);
      if (s.status != StageStatus::disabled) s = {name, StageStatus::failed, {}};
    }

    if (ready("sizing", {})) {
      auto& s = stage("sizing");
      try {
        report.sizing = size_vehicle(config.constraints, catalog, sizing_options);
        const auto& z = *report.sizing;
        if (!z.converged) s.messages.push_back(z.diagnostic);
        if (z.takeoff_mass_kg > config.constraints.max_takeoff_mass_kg)
          s.messages.push_back("takeoff mass " + fmt(z.takeoff_mass_kg) + " kg exceeds " +
                               fmt(config.constraints.max_takeoff_mass_kg) + " kg");
        if (z.thrust_to_weight < config.constraints.min_thrust_to_weight)
          s.messages.push_back("thrust-to-weight " + fmt(z.thrust_to_weight) + " below " +
                               fmt(config.constraints.min_thrust_to_weight));
      } catch (const Error& e) {
        s.messages.push_back(e.what());
      }
      settle(s);
    }

    if (ready("massprops", {"sizing"})) {
      auto& s = stage("massprops");
      try {
        const auto vehicle = vehicle_catalog(catalog, *report.sizing);
        MassPropsOutcome m;
        m.properties = aggregate(placements, vehicle);
        m.cg_offset_m = std::hypot(m.properties.cg.x(), m.properties.cg.y());
        m.max_cg_offset_m = config.max_cg_offset_m;
        m.cg_within_envelope = cg_envelope_check(m.properties, config.max_cg_offset_m);
        if (!m.cg_within_envelope)
          s.messages.push_back("cg offset " + fmt(m.cg_offset_m) + " m outside " +
                               fmt(config.max_cg_offset_m) + " m envelope");
        if (m.properties.total_mass > config.constraints.max_takeoff_mass_kg)
          s.messages.push_back("assembled mass " + fmt(m.properties.total_mass) + " kg exceeds " +
                               fmt(config.constraints.max_takeoff_mass_kg) + " kg");
        report.massprops = m;
      } catch (const Error& e) {
        s.messages.push_back(e.what());
      }
      settle(s);
    }

    if (outer == config.max_outer_iterations || !report.sizing || !report.massprops) break;
    const double unaccounted = report.massprops->properties.total_mass - report.sizing->takeoff_mass_kg;
    if (std::abs(unaccounted) < sizing_options.tolerance_kg) break;
    sizing_options.fixed_mass_kg = std::max(0.0, sizing_options.fixed_mass_kg + unaccounted);
  }

  if (ready("structures", {"sizing"})) {
    auto& s = stage("structures");
    try {
      report.structures = run_structures(config, catalog);
      for (const auto& chk : report.structures->checks)
        if (!chk.pass)
          s.messages.push_back(chk.name + ": safety factor " + fmt(chk.safety_factor) +
                               " below " + fmt(chk.required_safety_factor));
    } catch (const Error& e) {
      s.messages.push_back(e.what());
    }
    settle(s);
  }

  if (ready("stability", {"massprops"})) {
    auto& s = stage("stability");
    try {
      const auto model = build_hover_model(report.massprops->properties, config.sizing.gravity);
      StabilityOutcome st;
      st.open_loop = open_loop_poles(model);
      st.closed_loop = closed_loop_poles(model, config.gains);
      st.gains = config.gains;
      st.require_stable = config.require_stable;
      if (st.closed_loop.classification == StabilityClass::unstable)
        s.messages.push_back("closed loop is unstable");
      else if (config.require_stable && st.closed_loop.classification != StabilityClass::stable)
        s.messages.push_back("closed loop is " + std::string(to_string(st.closed_loop.classification)) +
                             ", stable required");
      report.stability = st;
    } catch (const Error& e) {
      s.messages.push_back(e.what());
    }
    settle(s);
  }

  if (ready("mission", {"sizing", "massprops"})) {
    auto& s = stage("mission");
    try {
      const auto vehicle = make_vehicle(*report.sizing, report.massprops->properties);
      MissionStageOutcome m;
      m.runs = config.mission.runs;
      m.base_seed = config.seed;
      m.min_success_rate = config.mission.min_success_rate;
      m.detector = config.mission.detector;
      m.statistics = run_campaign(plan, config.mission.detector, vehicle, config.mission.wind,
                                  config.mission.runs, config.seed, {config.mission.threads});
      if (m.statistics.failed_runs > 0)
        s.messages.push_back(std::to_string(m.statistics.failed_runs) + " runs raised errors");
      if (m.statistics.success_rate < config.mission.min_success_rate)
        s.messages.push_back("success rate " + fmt(m.statistics.success_rate) + " below " +
                             fmt(config.mission.min_success_rate));
      report.mission = std::move(m);
    } catch (const Error& e) {
      s.messages.push_back(e.what());
    }
    settle(s);
  }

  for (const auto& s : report.stages) {
    if (s.status == StageStatus::failed || s.status == StageStatus::skipped)
      for (const auto& m : s.messages) report.violations.push_back(s.name + ": " + m);
  }
  if (report.sizing && report.sizing->takeoff_mass_kg > config.constraints.max_takeoff_mass_kg &&
      report.violations.empty())
    report.violations.push_back("takeoff mass exceeds the cap");
  report.verdict = report.violations.empty() ? Verdict::all_constraints_met : Verdict::violations;
  return report;
}

}  // namespace uav

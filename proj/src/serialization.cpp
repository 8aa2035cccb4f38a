#include <cmath>
#include <limits>

#include "json.hpp"
#include "uav/report.hpp"

namespace uav {

using Json = nlohmann::ordered_json;

namespace {

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

Json opt_num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }
std::optional<double> get_opt_num(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return get_num(j);
}
Json opt_str(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }
std::optional<std::string> get_opt_str(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

Json vec(const Eigen::Vector3d& v) { return Json::array({num(v.x()), num(v.y()), num(v.z())}); }
Eigen::Vector3d get_vec(const Json& j) {
  return {get_num(j.at(0)), get_num(j.at(1)), get_num(j.at(2))};
}

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}
std::vector<double> get_nums(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(get_num(x));
  return out;
}

template <typename E>
E enum_from(const Json& j, std::initializer_list<E> values) {
  const auto s = j.get<std::string>();
  for (E e : values)
    if (to_string(e) == s) return e;
  throw std::invalid_argument("unknown enumerator \"" + s + "\"");
}

}  // namespace

// ---- catalog and sizing -----------------------------------------------------

void to_json(Json& j, const ConstraintSet& c) {
  j = Json{{"max_takeoff_mass_kg", num(c.max_takeoff_mass_kg)},
           {"payload_mass_kg", num(c.payload_mass_kg)},
           {"payload_dims_m",
            Json::array({num(c.payload_dims_m[0]), num(c.payload_dims_m[1]), num(c.payload_dims_m[2])})},
           {"min_range_m", num(c.min_range_m)},
           {"rotor_count", c.rotor_count},
           {"min_thrust_to_weight", num(c.min_thrust_to_weight)}};
}
void from_json(const Json& j, ConstraintSet& c) {
  c.max_takeoff_mass_kg = get_num(j.at("max_takeoff_mass_kg"));
  c.payload_mass_kg = get_num(j.at("payload_mass_kg"));
  const auto d = get_nums(j.at("payload_dims_m"));
  c.payload_dims_m = {d.at(0), d.at(1), d.at(2)};
  c.min_range_m = get_num(j.at("min_range_m"));
  c.rotor_count = j.at("rotor_count").get<int>();
  c.min_thrust_to_weight = get_num(j.at("min_thrust_to_weight"));
}

void to_json(Json& j, const ComponentSpec& s) {
  j = Json{{"id", s.id}, {"kind", std::string(to_string(s.kind()))},
           {"description", opt_str(s.description)}, {"mass_kg", opt_num(s.mass_kg)}};
  Json p = Json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MotorParams>) {
          p = {{"kv_rpm_per_v", num(v.kv_rpm_per_v)}, {"max_thrust_n", num(v.max_thrust_n)},
               {"max_power_w", opt_num(v.max_power_w)}};
        } else if constexpr (std::is_same_v<T, PropellerParams>) {
          p = {{"diameter_m", num(v.diameter_m)}, {"pitch_m", num(v.pitch_m)}};
        } else if constexpr (std::is_same_v<T, BatteryParams>) {
          p = {{"capacity_ah", num(v.capacity_ah)}, {"nominal_voltage_v", num(v.nominal_voltage_v)},
               {"cell_count", v.cell_count}};
        } else if constexpr (std::is_same_v<T, EscParams>) {
          p = {{"max_current_a", opt_num(v.max_current_a)}};
        } else if constexpr (std::is_same_v<T, MaterialParams>) {
          p = {{"density_kg_per_m3", num(v.density_kg_per_m3)},
               {"tensile_strength_pa", opt_num(v.tensile_strength_pa)},
               {"elastic_modulus_pa", opt_num(v.elastic_modulus_pa)},
               {"cte_per_c", opt_num(v.cte_per_c)},
               {"cost_per_kg", opt_num(v.cost_per_kg)}};
        } else if constexpr (std::is_same_v<T, TubeParams>) {
          p = {{"outer_diameter_m", num(v.outer_diameter_m)},
               {"inner_diameter_m", num(v.inner_diameter_m)},
               {"length_m", opt_num(v.length_m)},
               {"material", opt_str(v.material)}};
        } else if constexpr (std::is_same_v<T, PlateParams>) {
          p = {{"ply_thickness_m", num(v.ply_thickness_m)}, {"material", opt_str(v.material)}};
        }
      },
      s.params);
  j["params"] = p;
  j["defaulted"] = s.defaulted;
}
void from_json(const Json& j, ComponentSpec& s) {
  s.id = j.at("id").get<std::string>();
  s.description = get_opt_str(j.at("description"));
  s.mass_kg = get_opt_num(j.at("mass_kg"));
  s.defaulted = j.at("defaulted").get<std::vector<std::string>>();
  const auto kind = parse_component_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown component kind");
  const Json& p = j.at("params");
  switch (*kind) {
    case ComponentKind::motor:
      s.params = MotorParams{get_num(p.at("kv_rpm_per_v")), get_num(p.at("max_thrust_n")),
                             get_opt_num(p.at("max_power_w"))};
      break;
    case ComponentKind::propeller:
      s.params = PropellerParams{get_num(p.at("diameter_m")), get_num(p.at("pitch_m"))};
      break;
    case ComponentKind::battery:
      s.params = BatteryParams{get_num(p.at("capacity_ah")), get_num(p.at("nominal_voltage_v")),
                               p.at("cell_count").get<int>()};
      break;
    case ComponentKind::esc: s.params = EscParams{get_opt_num(p.at("max_current_a"))}; break;
    case ComponentKind::material:
      s.params = MaterialParams{get_num(p.at("density_kg_per_m3")),
                                get_opt_num(p.at("tensile_strength_pa")),
                                get_opt_num(p.at("elastic_modulus_pa")),
                                get_opt_num(p.at("cte_per_c")), get_opt_num(p.at("cost_per_kg"))};
      break;
    case ComponentKind::tube:
      s.params = TubeParams{get_num(p.at("outer_diameter_m")), get_num(p.at("inner_diameter_m")),
                            get_opt_num(p.at("length_m")), get_opt_str(p.at("material"))};
      break;
    case ComponentKind::plate:
      s.params = PlateParams{get_num(p.at("ply_thickness_m")), get_opt_str(p.at("material"))};
      break;
    case ComponentKind::part: s.params = PartParams{}; break;
  }
}

void to_json(Json& j, const SizingResult& r) {
  j = Json{{"takeoff_mass_kg", num(r.takeoff_mass_kg)},
           {"structure_mass_kg", num(r.structure_mass_kg)},
           {"payload_mass_kg", num(r.payload_mass_kg)},
           {"component_mass_kg", num(r.component_mass_kg)},
           {"rotor_count", r.rotor_count},
           {"motor", r.motor},
           {"propeller", r.propeller},
           {"esc", r.esc ? Json(*r.esc) : Json(nullptr)},
           {"battery", r.battery},
           {"hover_thrust_per_rotor_n", num(r.hover_thrust_per_rotor_n)},
           {"hover_power_total_w", num(r.hover_power_total_w)},
           {"endurance_s", num(r.endurance_s)},
           {"thrust_to_weight", num(r.thrust_to_weight)},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"diagnostic", r.diagnostic}};
}
void from_json(const Json& j, SizingResult& r) {
  r.takeoff_mass_kg = get_num(j.at("takeoff_mass_kg"));
  r.structure_mass_kg = get_num(j.at("structure_mass_kg"));
  r.payload_mass_kg = get_num(j.at("payload_mass_kg"));
  r.component_mass_kg = get_num(j.at("component_mass_kg"));
  r.rotor_count = j.at("rotor_count").get<int>();
  r.motor = j.at("motor").get<ComponentSpec>();
  r.propeller = j.at("propeller").get<ComponentSpec>();
  if (!j.at("esc").is_null()) r.esc = j.at("esc").get<ComponentSpec>();
  r.battery = j.at("battery").get<ComponentSpec>();
  r.hover_thrust_per_rotor_n = get_num(j.at("hover_thrust_per_rotor_n"));
  r.hover_power_total_w = get_num(j.at("hover_power_total_w"));
  r.endurance_s = get_num(j.at("endurance_s"));
  r.thrust_to_weight = get_num(j.at("thrust_to_weight"));
  r.iterations = j.at("iterations").get<int>();
  r.converged = j.at("converged").get<bool>();
  r.diagnostic = j.at("diagnostic").get<std::string>();
}

// ---- structures -------------------------------------------------------------

void to_json(Json& j, const StructuralCheck& c) {
  j = Json{{"name", c.name},
           {"applied_load_n", num(c.applied_load_n)},
           {"max_stress_pa", num(c.max_stress_pa)},
           {"allowable_stress_pa", num(c.allowable_stress_pa)},
           {"safety_factor", num(c.safety_factor)},
           {"required_safety_factor", num(c.required_safety_factor)},
           {"max_deflection_m", opt_num(c.max_deflection_m)},
           {"pass", c.pass}};
}
void from_json(const Json& j, StructuralCheck& c) {
  c.name = j.at("name").get<std::string>();
  c.applied_load_n = get_num(j.at("applied_load_n"));
  c.max_stress_pa = get_num(j.at("max_stress_pa"));
  c.allowable_stress_pa = get_num(j.at("allowable_stress_pa"));
  c.safety_factor = get_num(j.at("safety_factor"));
  c.required_safety_factor = get_num(j.at("required_safety_factor"));
  c.max_deflection_m = get_opt_num(j.at("max_deflection_m"));
  c.pass = j.at("pass").get<bool>();
}

void to_json(Json& j, const SandwichComparison& s) {
  j = Json{{"mass_reduction", num(s.mass_reduction)},
           {"cost_reduction", num(s.cost_reduction)},
           {"sandwich_mass_per_area_kg_per_m2", num(s.sandwich_mass_per_area)},
           {"solid_mass_per_area_kg_per_m2", num(s.solid_mass_per_area)},
           {"sandwich_cost_per_area", num(s.sandwich_cost_per_area)},
           {"solid_cost_per_area", num(s.solid_cost_per_area)}};
}
void from_json(const Json& j, SandwichComparison& s) {
  s.mass_reduction = get_num(j.at("mass_reduction"));
  s.cost_reduction = get_num(j.at("cost_reduction"));
  s.sandwich_mass_per_area = get_num(j.at("sandwich_mass_per_area_kg_per_m2"));
  s.solid_mass_per_area = get_num(j.at("solid_mass_per_area_kg_per_m2"));
  s.sandwich_cost_per_area = get_num(j.at("sandwich_cost_per_area"));
  s.solid_cost_per_area = get_num(j.at("solid_cost_per_area"));
}

void to_json(Json& j, const StructuresOutcome& s) {
  j = Json{{"checks", s.checks},
           {"sandwich", s.sandwich ? Json(*s.sandwich) : Json(nullptr)},
           {"thermal_mismatch_strain", opt_num(s.thermal_mismatch_strain)}};
}
void from_json(const Json& j, StructuresOutcome& s) {
  s.checks = j.at("checks").get<std::vector<StructuralCheck>>();
  if (!j.at("sandwich").is_null()) s.sandwich = j.at("sandwich").get<SandwichComparison>();
  s.thermal_mismatch_strain = get_opt_num(j.at("thermal_mismatch_strain"));
}

// ---- mass properties --------------------------------------------------------

void to_json(Json& j, const MassProperties& m) {
  Json inertia = Json::array();
  for (int r = 0; r < 3; ++r)
    inertia.push_back(Json::array({num(m.inertia(r, 0)), num(m.inertia(r, 1)), num(m.inertia(r, 2))}));
  j = Json{{"total_mass_kg", num(m.total_mass)}, {"cg_m", vec(m.cg)}, {"inertia_kg_m2", inertia}};
}
void from_json(const Json& j, MassProperties& m) {
  m.total_mass = get_num(j.at("total_mass_kg"));
  m.cg = get_vec(j.at("cg_m"));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.inertia(r, c) = get_num(j.at("inertia_kg_m2").at(r).at(c));
}

void to_json(Json& j, const MassPropsOutcome& m) {
  j = Json{{"properties", m.properties},
           {"cg_offset_m", num(m.cg_offset_m)},
           {"max_cg_offset_m", num(m.max_cg_offset_m)},
           {"cg_within_envelope", m.cg_within_envelope}};
}
void from_json(const Json& j, MassPropsOutcome& m) {
  m.properties = j.at("properties").get<MassProperties>();
  m.cg_offset_m = get_num(j.at("cg_offset_m"));
  m.max_cg_offset_m = get_num(j.at("max_cg_offset_m"));
  m.cg_within_envelope = j.at("cg_within_envelope").get<bool>();
}

// ---- stability --------------------------------------------------------------

void to_json(Json& j, const PoleSet& p) {
  Json poles = Json::array();
  for (const auto& pole : p.poles)
    poles.push_back(Json{{"re", num(pole.value.real())},
                         {"im", num(pole.value.imag())},
                         {"damping_ratio", num(pole.damping_ratio)},
                         {"natural_frequency_radps", num(pole.natural_frequency)}});
  j = Json{{"classification", std::string(to_string(p.classification))}, {"poles", poles}};
}
void from_json(const Json& j, PoleSet& p) {
  p.classification = enum_from(j.at("classification"), {StabilityClass::stable,
                                                        StabilityClass::marginal,
                                                        StabilityClass::unstable});
  p.poles.clear();
  for (const auto& x : j.at("poles"))
    p.poles.push_back({{get_num(x.at("re")), get_num(x.at("im"))},
                       get_num(x.at("damping_ratio")),
                       get_num(x.at("natural_frequency_radps"))});
}

void to_json(Json& j, const AxisGains& g) { j = Json{{"kp", num(g.kp)}, {"kd", num(g.kd)}}; }
void from_json(const Json& j, AxisGains& g) {
  g.kp = get_num(j.at("kp"));
  g.kd = get_num(j.at("kd"));
}

void to_json(Json& j, const StabilityOutcome& s) {
  j = Json{{"open_loop", s.open_loop},
           {"closed_loop", s.closed_loop},
           {"gains",
            Json{{"roll", s.gains.roll},
                 {"pitch", s.gains.pitch},
                 {"yaw", s.gains.yaw},
                 {"altitude", s.gains.altitude},
                 {"position", s.gains.position}}},
           {"require_stable", s.require_stable}};
}
void from_json(const Json& j, StabilityOutcome& s) {
  s.open_loop = j.at("open_loop").get<PoleSet>();
  s.closed_loop = j.at("closed_loop").get<PoleSet>();
  const Json& g = j.at("gains");
  s.gains.roll = g.at("roll").get<AxisGains>();
  s.gains.pitch = g.at("pitch").get<AxisGains>();
  s.gains.yaw = g.at("yaw").get<AxisGains>();
  s.gains.altitude = g.at("altitude").get<AxisGains>();
  s.gains.position = g.at("position").get<AxisGains>();
  s.require_stable = j.at("require_stable").get<bool>();
}

// ---- mission ----------------------------------------------------------------

void to_json(Json& j, const DetectorModel& d) {
  j = Json{{"per_pass_accuracy", num(d.per_pass_accuracy)},
           {"false_positive_rate", num(d.false_positive_rate)},
           {"position_noise_sigma_m", num(d.position_noise_sigma_m)},
           {"field_of_view_half_angle_rad", num(d.field_of_view_half_angle_rad)}};
}
void from_json(const Json& j, DetectorModel& d) {
  d.per_pass_accuracy = get_num(j.at("per_pass_accuracy"));
  d.false_positive_rate = get_num(j.at("false_positive_rate"));
  d.position_noise_sigma_m = get_num(j.at("position_noise_sigma_m"));
  d.field_of_view_half_angle_rad = get_num(j.at("field_of_view_half_angle_rad"));
}

void to_json(Json& j, const CampaignStatistics& s) {
  j = Json{{"runs", s.runs},
           {"failed_runs", s.failed_runs},
           {"successes", s.successes},
           {"detections", s.detections},
           {"releases", s.releases},
           {"success_rate", num(s.success_rate)},
           {"detection_rate", num(s.detection_rate)},
           {"mean_miss_m", num(s.mean_miss_m)},
           {"p95_miss_m", num(s.p95_miss_m)},
           {"pass_histogram", s.pass_histogram},
           {"miss_distances_m", nums(s.miss_distances)},
           {"errors", s.errors}};
}
void from_json(const Json& j, CampaignStatistics& s) {
  s.runs = j.at("runs").get<std::size_t>();
  s.failed_runs = j.at("failed_runs").get<std::size_t>();
  s.successes = j.at("successes").get<std::size_t>();
  s.detections = j.at("detections").get<std::size_t>();
  s.releases = j.at("releases").get<std::size_t>();
  s.success_rate = get_num(j.at("success_rate"));
  s.detection_rate = get_num(j.at("detection_rate"));
  s.mean_miss_m = get_num(j.at("mean_miss_m"));
  s.p95_miss_m = get_num(j.at("p95_miss_m"));
  s.pass_histogram = j.at("pass_histogram").get<std::vector<std::size_t>>();
  s.miss_distances = get_nums(j.at("miss_distances_m"));
  s.errors = j.at("errors").get<std::vector<std::string>>();
}

void to_json(Json& j, const MissionStageOutcome& m) {
  j = Json{{"runs", m.runs},
           {"base_seed", m.base_seed},
           {"min_success_rate", num(m.min_success_rate)},
           {"detector", m.detector},
           {"statistics", m.statistics}};
}
void from_json(const Json& j, MissionStageOutcome& m) {
  m.runs = j.at("runs").get<std::size_t>();
  m.base_seed = j.at("base_seed").get<std::uint64_t>();
  m.min_success_rate = get_num(j.at("min_success_rate"));
  m.detector = j.at("detector").get<DetectorModel>();
  m.statistics = j.at("statistics").get<CampaignStatistics>();
}

std::string outcome_json(const MissionOutcome& o) {
  Json detections = Json::array();
  for (const auto& d : o.detections)
    detections.push_back(Json{{"pass", d.pass},
                              {"t_s", num(d.t)},
                              {"estimate_m", vec(d.estimate)},
                              {"false_positive", d.false_positive}});
  Json trajectory = Json::array();
  for (const auto& s : o.trajectory)
    trajectory.push_back(Json{{"t_s", num(s.t)},
                              {"position_m", vec(s.position)},
                              {"velocity_mps", vec(s.velocity)},
                              {"phase", std::string(to_string(s.phase))}});
  Json j{{"seed", o.seed},
         {"success", o.success},
         {"detected_on_pass", o.detected_on_pass ? Json(*o.detected_on_pass) : Json(nullptr)},
         {"detections", detections},
         {"released", o.released},
         {"release_time_s", opt_num(o.release_time_s)},
         {"release_point_m", vec(o.release_point)},
         {"impact_point_m", vec(o.impact_point)},
         {"miss_distance_m", num(o.miss_distance_m)},
         {"flight_time_s", num(o.flight_time_s)},
         {"endurance_exceeded", o.endurance_exceeded},
         {"wind_mps", vec(o.wind)},
         {"trajectory", trajectory}};
  return j.dump(2) + "\n";
}

// ---- trade ------------------------------------------------------------------

void to_json(Json& j, const TradeResult& r) {
  j = Json{{"winner", r.winner},
           {"tie", r.tie},
           {"ranking", r.ranking},
           {"ranked_scores", nums(r.ranked_scores)},
           {"alternatives", r.alternatives},
           {"normalized_scores", nums(r.normalized_scores)},
           {"warnings", r.warnings}};
}
void from_json(const Json& j, TradeResult& r) {
  r.winner = j.at("winner").get<std::string>();
  r.tie = j.at("tie").get<bool>();
  r.ranking = j.at("ranking").get<std::vector<std::string>>();
  r.ranked_scores = get_nums(j.at("ranked_scores"));
  r.alternatives = j.at("alternatives").get<std::vector<std::string>>();
  r.normalized_scores = get_nums(j.at("normalized_scores"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(Json& j, const WeightInterval& w) {
  j = Json{{"criterion", w.criterion}, {"nominal", num(w.nominal)}, {"lower", num(w.lower)},
           {"upper", num(w.upper)}};
}
void from_json(const Json& j, WeightInterval& w) {
  w.criterion = j.at("criterion").get<std::string>();
  w.nominal = get_num(j.at("nominal"));
  w.lower = get_num(j.at("lower"));
  w.upper = get_num(j.at("upper"));
}

void to_json(Json& j, const TradeOutcome& t) {
  j = Json{{"title", t.title},
           {"source", t.source},
           {"expected_winner", opt_str(t.expected_winner)},
           {"result", t.result},
           {"sensitivity", t.sensitivity}};
}
void from_json(const Json& j, TradeOutcome& t) {
  t.title = j.at("title").get<std::string>();
  t.source = j.at("source").get<std::string>();
  t.expected_winner = get_opt_str(j.at("expected_winner"));
  t.result = j.at("result").get<TradeResult>();
  t.sensitivity = j.at("sensitivity").get<std::vector<WeightInterval>>();
}

// ---- report -----------------------------------------------------------------

void to_json(Json& j, const StageRecord& s) {
  j = Json{{"name", s.name}, {"status", std::string(to_string(s.status))}, {"messages", s.messages}};
}
void from_json(const Json& j, StageRecord& s) {
  s.name = j.at("name").get<std::string>();
  s.status = enum_from(j.at("status"), {StageStatus::passed, StageStatus::failed,
                                        StageStatus::skipped, StageStatus::disabled});
  s.messages = j.at("messages").get<std::vector<std::string>>();
}

void to_json(Json& j, const ReferenceValue& r) {
  j = Json{{"name", r.name}, {"value", num(r.value)}, {"unit", r.unit}};
}
void from_json(const Json& j, ReferenceValue& r) {
  r.name = j.at("name").get<std::string>();
  r.value = get_num(j.at("value"));
  r.unit = j.at("unit").get<std::string>();
}

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}
template <typename T>
std::optional<T> get_opt(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string report_json(const DesignReport& r) {
  Json j{{"schema_version", r.schema_version},
         {"provenance",
          Json{{"tool_version", r.provenance.tool_version},
               {"config_hash", r.provenance.config_hash},
               {"seed", r.provenance.seed},
               {"timestamp", opt_str(r.provenance.timestamp)}}},
         {"verdict", std::string(to_string(r.verdict))},
         {"violations", r.violations},
         {"constraints", r.constraints},
         {"outer_iterations", r.outer_iterations},
         {"stages", r.stages},
         {"trades", r.trades},
         {"sizing", opt(r.sizing)},
         {"structures", opt(r.structures)},
         {"massprops", opt(r.massprops)},
         {"stability", opt(r.stability)},
         {"mission", opt(r.mission)},
         {"references", r.references}};
  return j.dump(2) + "\n";
}

DesignReport parse_report_json(std::string_view text, const std::string& source) {
  try {
    const Json j = Json::parse(text);
    DesignReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
      throw ParseError(source, 0, "unsupported report schema version " +
                                      std::to_string(r.schema_version));
    const Json& p = j.at("provenance");
    r.provenance.tool_version = p.at("tool_version").get<std::string>();
    r.provenance.config_hash = p.at("config_hash").get<std::string>();
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.timestamp = get_opt_str(p.at("timestamp"));
    r.verdict = enum_from(j.at("verdict"), {Verdict::all_constraints_met, Verdict::violations});
    r.violations = j.at("violations").get<std::vector<std::string>>();
    r.constraints = j.at("constraints").get<ConstraintSet>();
    r.outer_iterations = j.at("outer_iterations").get<int>();
    r.stages = j.at("stages").get<std::vector<StageRecord>>();
    r.trades = j.at("trades").get<std::vector<TradeOutcome>>();
    r.sizing = get_opt<SizingResult>(j.at("sizing"));
    r.structures = get_opt<StructuresOutcome>(j.at("structures"));
    r.massprops = get_opt<MassPropsOutcome>(j.at("massprops"));
    r.stability = get_opt<StabilityOutcome>(j.at("stability"));
    r.mission = get_opt<MissionStageOutcome>(j.at("mission"));
    r.references = j.at("references").get<std::vector<ReferenceValue>>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(source, 0, std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, std::string("malformed report: ") + e.what());
  }
}

// ---- single-stage documents -------------------------------------------------

std::string sizing_json(const SizingResult& r) { return Json(r).dump(2) + "\n"; }

std::string checks_json(const std::vector<StructuralCheck>& checks,
                        const std::optional<SandwichComparison>& sandwich) {
  Json j{{"checks", checks}, {"sandwich", opt(sandwich)}};
  return j.dump(2) + "\n";
}

std::string massprops_json(const MassProperties& props, double max_cg_offset_m, bool within) {
  MassPropsOutcome m{props, std::hypot(props.cg.x(), props.cg.y()), max_cg_offset_m, within};
  return Json(m).dump(2) + "\n";
}

std::string stability_json(const PoleSet& open_loop, const PoleSet& closed_loop) {
  Json j{{"open_loop", open_loop}, {"closed_loop", closed_loop}};
  return j.dump(2) + "\n";
}

std::string trade_json(const TradeResult& result, const std::vector<WeightInterval>& sensitivity) {
  Json j{{"result", result}, {"sensitivity", sensitivity}};
  return j.dump(2) + "\n";
}

std::string campaign_json(const CampaignStatistics& stats) { return Json(stats).dump(2) + "\n"; }

}  // namespace uav

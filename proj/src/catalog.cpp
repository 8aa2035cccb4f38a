#include "uav/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "uav/errors.hpp"
#include "yaml_util.hpp"

namespace uav {
namespace {

constexpr std::array<std::string_view, 8> kKindNames = {
    "motor", "propeller", "battery", "esc", "material", "tube", "plate", "part"};

constexpr double kCellVoltage = 3.7;
constexpr double kCellVoltageTolerance = 0.10;

using Field = std::pair<std::string_view, std::optional<double>>;

// Numeric fields in file order. Drives query and serialization.
std::vector<Field> numeric_fields(const ComponentSpec& spec) {
  std::vector<Field> out;
  out.emplace_back("mass_kg", spec.mass_kg);
  std::visit(
      [&out](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MotorParams>) {
          out.emplace_back("kv_rpm_per_v", p.kv_rpm_per_v);
          out.emplace_back("max_thrust_n", p.max_thrust_n);
          out.emplace_back("max_power_w", p.max_power_w);
        } else if constexpr (std::is_same_v<T, PropellerParams>) {
          out.emplace_back("diameter_m", p.diameter_m);
          out.emplace_back("pitch_m", p.pitch_m);
        } else if constexpr (std::is_same_v<T, BatteryParams>) {
          out.emplace_back("capacity_ah", p.capacity_ah);
          out.emplace_back("nominal_voltage_v", p.nominal_voltage_v);
          out.emplace_back("cell_count", static_cast<double>(p.cell_count));
        } else if constexpr (std::is_same_v<T, EscParams>) {
          out.emplace_back("max_current_a", p.max_current_a);
        } else if constexpr (std::is_same_v<T, MaterialParams>) {
          out.emplace_back("density_kg_per_m3", p.density_kg_per_m3);
          out.emplace_back("tensile_strength_pa", p.tensile_strength_pa);
          out.emplace_back("elastic_modulus_pa", p.elastic_modulus_pa);
          out.emplace_back("cte_per_c", p.cte_per_c);
          out.emplace_back("cost_per_kg", p.cost_per_kg);
        } else if constexpr (std::is_same_v<T, TubeParams>) {
          out.emplace_back("outer_diameter_m", p.outer_diameter_m);
          out.emplace_back("inner_diameter_m", p.inner_diameter_m);
          out.emplace_back("length_m", p.length_m);
        } else if constexpr (std::is_same_v<T, PlateParams>) {
          out.emplace_back("ply_thickness_m", p.ply_thickness_m);
        }
      },
      spec.params);
  return out;
}

[[noreturn]] void invalid(const ComponentSpec& spec, const std::string& what) {
  throw ValidationError("component '" + spec.id + "' (" + std::string(to_string(spec.kind())) +
                        "): " + what);
}

ComponentParams read_params(ComponentKind kind, detail::MapReader& r) {
  switch (kind) {
    case ComponentKind::motor:
      return MotorParams{r.number("kv_rpm_per_v"), r.number("max_thrust_n"),
                         r.optional_number("max_power_w")};
    case ComponentKind::propeller:
      return PropellerParams{r.number("diameter_m"), r.number("pitch_m")};
    case ComponentKind::battery: {
      BatteryParams b;
      b.capacity_ah = r.number("capacity_ah");
      b.nominal_voltage_v = r.number("nominal_voltage_v");
      b.cell_count = static_cast<int>(r.integer("cell_count"));
      return b;
    }
    case ComponentKind::esc:
      return EscParams{r.optional_number("max_current_a")};
    case ComponentKind::material:
      return MaterialParams{r.number("density_kg_per_m3"), r.optional_number("tensile_strength_pa"),
                            r.optional_number("elastic_modulus_pa"), r.optional_number("cte_per_c"),
                            r.optional_number("cost_per_kg")};
    case ComponentKind::tube:
      return TubeParams{r.number("outer_diameter_m"), r.number("inner_diameter_m"),
                        r.optional_number("length_m"), r.optional_string("material")};
    case ComponentKind::plate:
      return PlateParams{r.number("ply_thickness_m"), r.optional_string("material")};
    case ComponentKind::part:
      return PartParams{};
  }
  return PartParams{};
}

ComponentSpec read_component(const YAML::Node& node, const std::string& source) {
  const std::string id = node.IsMap() && node["id"] && node["id"].IsScalar() ? node["id"].Scalar() : "";
  detail::MapReader r(node, source, id.empty() ? "component" : "component '" + id + "'");
  ComponentSpec spec;
  spec.id = r.string("id");
  const auto kind_text = r.string("kind");
  const auto kind = parse_component_kind(kind_text);
  if (!kind) r.fail(r.child("kind"), "unknown kind '" + kind_text + "'");
  spec.description = r.optional_string("description");
  spec.mass_kg = r.optional_number("mass_kg");
  spec.params = read_params(*kind, r);
  spec.defaulted = r.strings_or_empty("defaulted");
  r.finish();
  return spec;
}

}  // namespace

std::string_view to_string(ComponentKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<ComponentKind> parse_component_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == text) return static_cast<ComponentKind>(i);
  return std::nullopt;
}

template <typename T>
const T& ComponentSpec::get() const {
  if (const auto* p = std::get_if<T>(&params)) return *p;
  throw ValidationError("component '" + id + "' is a " + std::string(to_string(kind())) +
                        ", not the requested kind");
}

template const MotorParams& ComponentSpec::get<MotorParams>() const;
template const PropellerParams& ComponentSpec::get<PropellerParams>() const;
template const BatteryParams& ComponentSpec::get<BatteryParams>() const;
template const MaterialParams& ComponentSpec::get<MaterialParams>() const;
template const TubeParams& ComponentSpec::get<TubeParams>() const;
template const PlateParams& ComponentSpec::get<PlateParams>() const;

double ComponentSpec::mass() const {
  if (!mass_kg) throw ValidationError("component '" + id + "' has no mass_kg");
  return *mass_kg;
}

std::optional<double> ComponentSpec::numeric_field(std::string_view key) const {
  for (const auto& [name, value] : numeric_fields(*this))
    if (name == key) return value;
  return std::nullopt;
}

void validate(const ComponentSpec& spec) {
  if (spec.id.empty()) throw ValidationError("component with empty id");
  if (spec.kind() != ComponentKind::material && !spec.mass_kg)
    invalid(spec, "mass_kg is required");
  for (const auto& [name, value] : numeric_fields(spec)) {
    if (!value) continue;
    if (!std::isfinite(*value) || *value <= 0.0)
      invalid(spec, std::string(name) + " must be positive and finite");
  }
  if (spec.kind() == ComponentKind::tube) {
    const auto& t = spec.tube();
    if (!(t.inner_diameter_m < t.outer_diameter_m))
      invalid(spec, "inner_diameter_m must be less than outer_diameter_m");
  }
  if (spec.kind() == ComponentKind::battery) {
    const auto& b = spec.battery();
    const double expected = b.cell_count * kCellVoltage;
    if (std::abs(b.nominal_voltage_v - expected) > kCellVoltageTolerance * expected)
      invalid(spec, "nominal_voltage_v inconsistent with cell_count x 3.7 V");
  }
  for (const auto& name : spec.defaulted) {
    if (name == "description" || name == "defaulted" || name == "id" || name == "kind")
      invalid(spec, "'" + name + "' cannot be flagged as defaulted");
  }
}

Catalog::Catalog(std::vector<ComponentSpec> entries, std::string source_path)
    : entries_(std::move(entries)), source_path_(std::move(source_path)) {
  std::set<std::string_view> seen;
  for (const auto& e : entries_) {
    validate(e);
    if (!seen.insert(e.id).second) throw ValidationError("duplicate component id '" + e.id + "'");
  }
}

const ComponentSpec* Catalog::find(std::string_view id) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
  return it == entries_.end() ? nullptr : &*it;
}

const ComponentSpec& Catalog::at(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  throw ValidationError("unknown component id '" + std::string(id) + "'");
}

std::size_t Catalog::count(ComponentKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.kind() == kind; }));
}

void Catalog::require(ComponentKind kind, std::string_view stage) const {
  if (count(kind) == 0)
    throw ValidationError(std::string(stage) + " requires at least one " +
                          std::string(to_string(kind)) + " in the catalog");
}

Catalog parse_catalog(std::string_view text, const std::string& source) {
  const YAML::Node root = detail::load_yaml_text(text, source);
  std::vector<ComponentSpec> entries;
  if (root.IsNull()) return Catalog({}, source);
  if (!root.IsSequence())
    throw ParseError(source, detail::line_of(root), "catalog must be a list of components");
  std::set<std::string> seen;
  for (const auto& node : root) {
    auto spec = read_component(node, source);
    if (!seen.insert(spec.id).second)
      throw ParseError(source, detail::line_of(node), "duplicate component id '" + spec.id + "'");
    entries.push_back(std::move(spec));
  }
  return Catalog(std::move(entries), source);
}

Catalog load_catalog(const std::filesystem::path& path) {
  return parse_catalog(detail::read_text_file(path), path.string());
}

std::string serialize_catalog(const Catalog& catalog) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginSeq;
  for (const auto& e : catalog.entries()) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << e.id;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(e.kind()));
    if (e.description) out << YAML::Key << "description" << YAML::Value << *e.description;
    for (const auto& [name, value] : numeric_fields(e)) {
      if (!value) continue;
      out << YAML::Key << std::string(name) << YAML::Value;
      if (name == "cell_count")
        out << static_cast<int>(*value);
      else
        out << *value;
    }
    std::optional<std::string> material;
    if (const auto* t = std::get_if<TubeParams>(&e.params)) material = t->material;
    if (const auto* p = std::get_if<PlateParams>(&e.params)) material = p->material;
    if (material) out << YAML::Key << "material" << YAML::Value << *material;
    if (!e.defaulted.empty()) {
      out << YAML::Key << "defaulted" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (const auto& d : e.defaulted) out << d;
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  return std::string(out.c_str()) + "\n";
}

std::vector<ComponentSpec> query(const Catalog& catalog, ComponentKind kind,
                                 const std::vector<ParameterBound>& bounds) {
  std::vector<ComponentSpec> out;
  for (const auto& e : catalog.entries()) {
    if (e.kind() != kind) continue;
    const bool ok = std::all_of(bounds.begin(), bounds.end(), [&](const ParameterBound& b) {
      const auto v = e.numeric_field(b.field);
      if (!v) return false;
      if (b.min && *v < *b.min) return false;
      if (b.max && *v > *b.max) return false;
      return true;
    });
    if (ok) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace uav

#pragma once

// Component catalog: the parts database every downstream stage draws from.
//
// Files are YAML sequences, one mapping per component. Every numeric field
// carries its unit in the key (mass_kg, max_thrust_n, ...). Unknown keys are
// rejected so that a mistyped unit suffix never silently drops a value.
// See data/desk_catalog.yaml for a commented example.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uav {

enum class ComponentKind { motor, propeller, battery, esc, material, tube, plate, part };

std::string_view to_string(ComponentKind kind);
std::optional<ComponentKind> parse_component_kind(std::string_view text);

struct MotorParams {
  double kv_rpm_per_v = 0.0;
  double max_thrust_n = 0.0;  // single rated point, no thrust curve
  std::optional<double> max_power_w;
  bool operator==(const MotorParams&) const = default;
};

struct PropellerParams {
  double diameter_m = 0.0;
  double pitch_m = 0.0;
  bool operator==(const PropellerParams&) const = default;
};

struct BatteryParams {
  double capacity_ah = 0.0;
  double nominal_voltage_v = 0.0;
  int cell_count = 0;
  bool operator==(const BatteryParams&) const = default;
};

struct EscParams {
  std::optional<double> max_current_a;
  bool operator==(const EscParams&) const = default;
};

struct MaterialParams {
  double density_kg_per_m3 = 0.0;
  std::optional<double> tensile_strength_pa;
  std::optional<double> elastic_modulus_pa;
  std::optional<double> cte_per_c;
  std::optional<double> cost_per_kg;
  bool operator==(const MaterialParams&) const = default;
};

struct TubeParams {
  double outer_diameter_m = 0.0;
  double inner_diameter_m = 0.0;
  std::optional<double> length_m;
  std::optional<std::string> material;  // id of a material entry
  bool operator==(const TubeParams&) const = default;
};

struct PlateParams {
  double ply_thickness_m = 0.0;
  std::optional<std::string> material;
  bool operator==(const PlateParams&) const = default;
};

// Avionics, servos, payloads: anything that only contributes mass.
struct PartParams {
  bool operator==(const PartParams&) const = default;
};

using ComponentParams = std::variant<MotorParams, PropellerParams, BatteryParams, EscParams,
                                     MaterialParams, TubeParams, PlateParams, PartParams>;

struct ComponentSpec {
  std::string id;
  std::optional<std::string> description;
  std::optional<double> mass_kg;  // required for every kind except material
  ComponentParams params;
  std::vector<std::string> defaulted;  // field names carrying literature defaults

  ComponentKind kind() const { return static_cast<ComponentKind>(params.index()); }

  // Mass in kg; throws ValidationError when the entry has none.
  double mass() const;

  // Numeric field by its file key (e.g. "max_thrust_n", "mass_kg").
  // Empty when the field does not exist for this kind or is unset.
  std::optional<double> numeric_field(std::string_view key) const;

  const MotorParams& motor() const { return get<MotorParams>(); }
  const PropellerParams& propeller() const { return get<PropellerParams>(); }
  const BatteryParams& battery() const { return get<BatteryParams>(); }
  const MaterialParams& material() const { return get<MaterialParams>(); }
  const TubeParams& tube() const { return get<TubeParams>(); }
  const PlateParams& plate() const { return get<PlateParams>(); }

  bool operator==(const ComponentSpec&) const = default;

 private:
  template <typename T>
  const T& get() const;
};

// Throws ValidationError naming the entry and the violated invariant.
void validate(const ComponentSpec& spec);

struct ParameterBound {
  std::string field;
  std::optional<double> min;
  std::optional<double> max;
};

class Catalog {
 public:
  Catalog() = default;
  // Validates every entry and id uniqueness.
  explicit Catalog(std::vector<ComponentSpec> entries, std::string source_path = {});

  const std::vector<ComponentSpec>& entries() const { return entries_; }
  const std::string& source_path() const { return source_path_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const ComponentSpec* find(std::string_view id) const;
  // Throws ValidationError when the id is unknown.
  const ComponentSpec& at(std::string_view id) const;

  std::size_t count(ComponentKind kind) const;
  // Throws ValidationError unless at least one entry of `kind` exists.
  void require(ComponentKind kind, std::string_view stage) const;

  bool operator==(const Catalog& other) const { return entries_ == other.entries_; }

 private:
  std::vector<ComponentSpec> entries_;
  std::string source_path_;
};

Catalog load_catalog(const std::filesystem::path& path);
Catalog parse_catalog(std::string_view text, const std::string& source = "<memory>");
std::string serialize_catalog(const Catalog& catalog);

// Entries of `kind` satisfying every bound, sorted by id. A bound on a field
// the entry lacks excludes the entry.
std::vector<ComponentSpec> query(const Catalog& catalog, ComponentKind kind,
                                 const std::vector<ParameterBound>& bounds = {});

}  // namespace uav

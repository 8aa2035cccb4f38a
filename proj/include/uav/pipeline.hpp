#pragma once

// End-to-end design run: trade studies, sizing, structural checks, mass
// properties, hover stability and a mission campaign, in that order.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uav/catalog.hpp"
#include "uav/massprops.hpp"
#include "uav/mission.hpp"
#include "uav/sizing.hpp"
#include "uav/stability.hpp"
#include "uav/structures.hpp"
#include "uav/trade_study.hpp"

namespace uav {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

struct TradeInput {
  std::filesystem::path path;
  std::optional<std::string> expected_winner;
};

struct ReportedStress {
  std::string name;
  double load_n = 0.0;
  double stress_pa = 0.0;
  std::string material;  // catalog id supplying the allowable stress
};

struct SandwichInput {
  std::string face_material;
  std::string core_material;
  int plies_per_face = 0;
  double ply_thickness_m = 0.0;
  double core_thickness_m = 0.0;
  double solid_thickness_m = 0.0;
  std::vector<double> ply_angles_deg;
};

struct ThermalInput {
  std::string material_a;
  std::string material_b;
  double delta_t_c = 0.0;
};

struct StructuresInput {
  double tip_load_n = 13.0;
  double min_safety_factor = 2.0;
  std::string arm_tube;                 // catalog tube id
  std::optional<double> arm_length_m;  // overrides the tube's length
  std::vector<ReportedStress> reported;
  std::optional<SandwichInput> sandwich;
  std::optional<ThermalInput> thermal;
};

struct MissionInput {
  std::size_t runs = 100;
  double min_success_rate = 0.9;
  DetectorModel detector;
  WindDistribution wind;
  unsigned threads = 0;
};

struct StageToggles {
  bool trade = true;
  bool sizing = true;
  bool structures = true;
  bool massprops = true;
  bool stability = true;
  bool mission = true;
};

struct DesignConfig {
  std::string source_text;  // hashed into the report provenance
  std::filesystem::path source_path;

  ConstraintSet constraints;
  SizingOptions sizing;
  std::filesystem::path catalog;
  std::filesystem::path placements;
  std::filesystem::path mission_plan;
  std::vector<TradeInput> trades;
  std::filesystem::path output_directory = "out";
  std::uint64_t seed = 1;
  int max_outer_iterations = 1;

  StructuresInput structures;
  double max_cg_offset_m = 0.01;
  FeedbackGains gains;
  bool require_stable = true;
  MissionInput mission;
  StageToggles stages;
};

// Relative paths in the file resolve against the config file's directory.
// Throws ParseError / ValidationError on a malformed config.
DesignConfig load_design_config(const std::filesystem::path& path);
DesignConfig parse_design_config(std::string_view text, const std::string& source,
                                 const std::filesystem::path& base_directory);

enum class StageStatus { passed, failed, skipped, disabled };
std::string_view to_string(StageStatus s);

struct StageRecord {
  std::string name;
  StageStatus status = StageStatus::disabled;
  std::vector<std::string> messages;  // violations, errors or the skip reason
  bool operator==(const StageRecord&) const = default;
};

struct TradeOutcome {
  std::string title;
  std::string source;  // file name
  std::optional<std::string> expected_winner;
  TradeResult result;
  std::vector<WeightInterval> sensitivity;
  bool operator==(const TradeOutcome&) const = default;
};

struct StructuresOutcome {
  std::vector<StructuralCheck> checks;
  std::optional<SandwichComparison> sandwich;
  std::optional<double> thermal_mismatch_strain;
  bool operator==(const StructuresOutcome&) const = default;
};

struct MassPropsOutcome {
  MassProperties properties;
  double cg_offset_m = 0.0;
  double max_cg_offset_m = 0.0;
  bool cg_within_envelope = false;
  bool operator==(const MassPropsOutcome&) const = default;
};

struct StabilityOutcome {
  PoleSet open_loop;
  PoleSet closed_loop;
  FeedbackGains gains;
  bool require_stable = true;
  bool operator==(const StabilityOutcome&) const = default;
};

struct MissionStageOutcome {
  std::size_t runs = 0;
  std::uint64_t base_seed = 0;
  double min_success_rate = 0.0;
  DetectorModel detector;
  CampaignStatistics statistics;
  bool operator==(const MissionStageOutcome&) const = default;
};

struct ReferenceValue {
  std::string name;
  double value = 0.0;
  std::string unit;
  bool operator==(const ReferenceValue&) const = default;
};

struct Provenance {
  std::string tool_version;
  std::string config_hash;  // FNV-1a 64 of the config and every file it references
  std::uint64_t seed = 0;
  std::optional<std::string> timestamp;  // only from SOURCE_DATE_EPOCH
  bool operator==(const Provenance&) const = default;
};

enum class Verdict { all_constraints_met, violations };
std::string_view to_string(Verdict v);

struct DesignReport {
  int schema_version = kReportSchemaVersion;
  Provenance provenance;
  ConstraintSet constraints;
  std::vector<StageRecord> stages;
  int outer_iterations = 1;

  std::vector<TradeOutcome> trades;
  std::optional<SizingResult> sizing;
  std::optional<StructuresOutcome> structures;
  std::optional<MassPropsOutcome> massprops;
  std::optional<StabilityOutcome> stability;
  std::optional<MissionStageOutcome> mission;
  std::vector<ReferenceValue> references;

  Verdict verdict = Verdict::violations;
  std::vector<std::string> violations;

  const StageRecord* stage(std::string_view name) const;
  bool operator==(const DesignReport&) const = default;
};

// Stage failures are recorded in the report; only unreadable inputs throw.
DesignReport run_pipeline(const DesignConfig& config);

// Reference values carried verbatim into every report.
std::vector<ReferenceValue> reference_values();

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
std::uint64_t fnv1a(std::string_view data, std::uint64_t state = kFnvOffsetBasis);

}  // namespace uav

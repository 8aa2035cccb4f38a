#pragma once

// Report rendering and the JSON forms of result types.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uav/pipeline.hpp"

namespace uav {

// Machine report: one JSON document, keys in fixed order, numbers in
// shortest round-trip form, non-finite values as the strings "inf", "-inf",
// "nan".
std::string report_json(const DesignReport& report);
// Throws ParseError on malformed input or an unsupported schema version.
DesignReport parse_report_json(std::string_view text, const std::string& source = "<memory>");

// Sectioned human-readable summary. Wall time, when given, appears only here.
std::string report_text(const DesignReport& report, std::optional<double> wall_time_s = {});

struct PlotFile {
  std::string name;
  std::string svg;
};

struct PlotSet {
  std::vector<PlotFile> files;
  std::vector<std::string> notes;  // plots not produced and why
};

// Open- and closed-loop pole maps plus the campaign miss-distance histogram,
// each only when its stage produced data.
PlotSet report_plots(const DesignReport& report);

enum class ReportFormat { text, machine, plots };

struct RenderedReport {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;
};

// Writes into `directory` (created if needed): report.txt, report.json or
// the SVG plots.
RenderedReport render_report(const DesignReport& report, ReportFormat format,
                             const std::filesystem::path& directory,
                             std::optional<double> wall_time_s = {});

// Stand-alone JSON documents for the single-stage CLI commands.
std::string sizing_json(const SizingResult& result);
std::string checks_json(const std::vector<StructuralCheck>& checks,
                        const std::optional<SandwichComparison>& sandwich = {});
std::string massprops_json(const MassProperties& props, double max_cg_offset_m, bool within_envelope);
std::string stability_json(const PoleSet& open_loop, const PoleSet& closed_loop);
std::string trade_json(const TradeResult& result, const std::vector<WeightInterval>& sensitivity);
std::string campaign_json(const CampaignStatistics& stats);

}  // namespace uav

#pragma once

// Weighted decision-matrix trade studies with min-max normalisation and
// one-at-a-time weight sensitivity.

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uav {

enum class Direction { maximize, minimize };
std::string_view to_string(Direction d);

struct Criterion {
  std::string name;
  double weight = 0.0;
  Direction direction = Direction::maximize;
  bool operator==(const Criterion&) const = default;
};

struct DecisionMatrix {
  std::string title;
  std::vector<std::string> alternatives;
  std::vector<Criterion> criteria;
  Eigen::MatrixXd scores;  // alternatives x criteria, raw units
  std::string note;

  bool operator==(const DecisionMatrix& o) const {
    return title == o.title && alternatives == o.alternatives && criteria == o.criteria &&
           scores.rows() == o.scores.rows() && scores.cols() == o.scores.cols() &&
           scores == o.scores && note == o.note;
  }
};

// Throws ValidationError: empty or mismatched shape, non-finite score,
// non-positive weight, duplicate names.
void validate(const DecisionMatrix& matrix);

inline constexpr double kTradeTieTolerance = 1e-12;

struct TradeResult {
  std::vector<std::string> ranking;       // best first
  std::vector<double> ranked_scores;      // aligned with ranking
  std::vector<std::string> alternatives;  // input order
  std::vector<double> normalized_scores;  // aligned with alternatives
  std::string winner;
  bool tie = false;  // winner decided by name
  std::vector<std::string> warnings;

  bool operator==(const TradeResult&) const = default;
};

// Each criterion is min-max normalised to [0, 1] (1 = best), weights are
// normalised to sum 1, alternatives rank by weighted sum. Scores within
// kTradeTieTolerance rank by name. A criterion on which all alternatives
// agree contributes 0.5 to everyone and raises a warning.
TradeResult evaluate(const DecisionMatrix& matrix);

struct WeightInterval {
  std::string criterion;
  double nominal = 0.0;  // normalised weight
  double lower = 0.0;
  double upper = 1.0;
  bool operator==(const WeightInterval&) const = default;
};

inline constexpr double kSensitivityResolution = 1e-4;

// For each criterion, the range of its weight (the others rescaled to keep
// their proportions) over which `winner` stays first. Bounds are bisected to
// kSensitivityResolution. Throws ValidationError if `winner` does not win
// the nominal matrix.
std::vector<WeightInterval> sensitivity(const DecisionMatrix& matrix, const std::string& winner);

// Winner of the matrix with one criterion's weight forced to w and the rest
// rescaled proportionally.
std::string winner_at_weight(const DecisionMatrix& matrix, std::size_t criterion, double weight);

DecisionMatrix parse_decision_matrix(std::string_view text, const std::string& source = "<memory>");
DecisionMatrix load_decision_matrix(const std::filesystem::path& path);

}  // namespace uav

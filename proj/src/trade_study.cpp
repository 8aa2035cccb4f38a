#include "uav/trade_study.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "uav/errors.hpp"
#include "yaml_util.hpp"

namespace uav {

std::string_view to_string(Direction d) {
  return d == Direction::maximize ? "maximize" : "minimize";
}

void validate(const DecisionMatrix& m) {
  if (m.alternatives.empty()) throw ValidationError("decision matrix has no alternatives");
  if (m.criteria.empty()) throw ValidationError("decision matrix has no criteria");
  if (m.scores.rows() != static_cast<Eigen::Index>(m.alternatives.size()) ||
      m.scores.cols() != static_cast<Eigen::Index>(m.criteria.size()))
    throw ValidationError("score matrix must be alternatives x criteria");
  if (!m.scores.allFinite()) throw ValidationError("score matrix contains non-finite values");
  std::set<std::string> names(m.alternatives.begin(), m.alternatives.end());
  if (names.size() != m.alternatives.size())
    throw ValidationError("duplicate alternative names");
  std::set<std::string> crit;
  for (const auto& c : m.criteria) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw ValidationError("criterion '" + c.name + "' needs a positive weight");
    if (!crit.insert(c.name).second) throw ValidationError("duplicate criterion '" + c.name + "'");
  }
}

namespace {

struct Normalized {
  Eigen::MatrixXd values;
  std::vector<std::string> warnings;
};

Normalized normalize(const DecisionMatrix& m) {
  Normalized out;
  out.values.resize(m.scores.rows(), m.scores.cols());
  for (Eigen::Index j = 0; j < m.scores.cols(); ++j) {
    const double lo = m.scores.col(j).minCoeff();
    const double hi = m.scores.col(j).maxCoeff();
    if (hi == lo) {
      out.values.col(j).setConstant(0.5);
      out.warnings.push_back("criterion '" + m.criteria[j].name +
                             "' does not discriminate between alternatives; scored 0.5");
      continue;
    }
    for (Eigen::Index i = 0; i < m.scores.rows(); ++i) {
      const double t = (m.scores(i, j) - lo) / (hi - lo);
      out.values(i, j) = m.criteria[j].direction == Direction::maximize ? t : 1.0 - t;
    }
  }
  return out;
}

struct Ranked {
  std::vector<std::size_t> order;
  std::vector<double> totals;
  bool tie = false;
};

Ranked rank(const DecisionMatrix& m, const Eigen::MatrixXd& normalized,
            const Eigen::VectorXd& weights) {
  Ranked r;
  const auto n = m.alternatives.size();
  r.totals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < normalized.cols(); ++j)
      s += weights[j] * normalized(static_cast<Eigen::Index>(i), j);
    r.totals[i] = s;
  }
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    if (r.totals[a] != r.totals[b]) return r.totals[a] > r.totals[b];
    return m.alternatives[a] < m.alternatives[b];
  });
  // Near-equal neighbours fall back to name order.
  auto close = [&](std::size_t a, std::size_t b) {
    return std::abs(r.totals[a] - r.totals[b]) <= kTradeTieTolerance;
  };
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i; j > 0 && close(r.order[j - 1], r.order[j]) &&
                            m.alternatives[r.order[j]] < m.alternatives[r.order[j - 1]];
         --j)
      std::swap(r.order[j - 1], r.order[j]);
  r.tie = n > 1 && close(r.order[0], r.order[1]);
  return r;
}

Eigen::VectorXd nominal_weights(const DecisionMatrix& m) {
  Eigen::VectorXd w(m.criteria.size());
  for (std::size_t j = 0; j < m.criteria.size(); ++j) w[j] = m.criteria[j].weight;
  return w / w.sum();
}

Eigen::VectorXd shifted_weights(const Eigen::VectorXd& nominal, std::size_t c, double weight) {
  Eigen::VectorXd w = nominal;
  const double rest = 1.0 - nominal[c];
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (static_cast<std::size_t>(j) == c)
      w[j] = weight;
    else
      w[j] = rest > 0.0 ? nominal[j] * (1.0 - weight) / rest : 0.0;
  }
  return w;
}

}  // namespace

TradeResult evaluate(const DecisionMatrix& m) {
  validate(m);
  const auto norm = normalize(m);
  const auto ranked = rank(m, norm.values, nominal_weights(m));
  TradeResult out;
  out.alternatives = m.alternatives;
  out.normalized_scores = ranked.totals;
  for (auto i : ranked.order) {
    out.ranking.push_back(m.alternatives[i]);
    out.ranked_scores.push_back(ranked.totals[i]);
  }
  out.winner = out.ranking.front();
  out.tie = ranked.tie;
  out.warnings = norm.warnings;
  if (out.tie) out.warnings.push_back("tie at the top; '" + out.winner + "' wins on name order");
  return out;
}

std::string winner_at_weight(const DecisionMatrix& m, std::size_t c, double weight) {
  validate(m);
  if (c >= m.criteria.size()) throw ValidationError("criterion index out of range");
  const auto norm = normalize(m);
  const auto ranked = rank(m, norm.values, shifted_weights(nominal_weights(m), c, weight));
  return m.alternatives[ranked.order.front()];
}

std::vector<WeightInterval> sensitivity(const DecisionMatrix& m, const std::string& winner) {
  const auto nominal = evaluate(m);
  if (nominal.winner != winner)
    throw ValidationError("'" + winner + "' is not the winner of this matrix");
  const auto norm = normalize(m);
  const Eigen::VectorXd base = nominal_weights(m);

  auto wins = [&](std::size_t c, double w) {
    const auto r = rank(m, norm.values, shifted_weights(base, c, w));
    return m.alternatives[r.order.front()] == winner;
  };

  std::vector<WeightInterval> out;
  for (std::size_t c = 0; c < m.criteria.size(); ++c) {
    WeightInterval iv{m.criteria[c].name, base[c], 0.0, 1.0};
    if (m.criteria.size() > 1) {
      // Totals are affine in w, so each alternative wins on one interval.
      if (!wins(c, 0.0)) {
        double bad = 0.0, good = base[c];
        while (good - bad > kSensitivityResolution) {
          const double mid = 0.5 * (bad + good);
          (wins(c, mid) ? good : bad) = mid;
        }
        iv.lower = good;
      }
      if (!wins(c, 1.0)) {
        double good = base[c], bad = 1.0;
        while (bad - good > kSensitivityResolution) {
          const double mid = 0.5 * (bad + good);
          (wins(c, mid) ? good : bad) = mid;
        }
        iv.upper = good;
      }
    }
    out.push_back(iv);
  }
  return out;
}

DecisionMatrix parse_decision_matrix(std::string_view text, const std::string& source) {
  const YAML::Node root = detail::load_yaml_text(text, source);
  detail::MapReader r(root, source, "decision matrix");
  DecisionMatrix m;
  m.title = r.optional_string("title").value_or("");
  m.note = r.optional_string("note").value_or("");

  const YAML::Node crit = r.child("criteria");
  if (!crit.IsSequence()) r.fail(crit, "criteria must be a list");
  for (const auto& node : crit) {
    detail::MapReader c(node, source, "criterion");
    Criterion k;
    k.name = c.string("name");
    k.weight = c.number("weight");
    const auto dir = c.string("direction");
    if (dir == "maximize")
      k.direction = Direction::maximize;
    else if (dir == "minimize")
      k.direction = Direction::minimize;
    else
      c.fail(node, "direction must be maximize or minimize, got '" + dir + "'");
    c.finish();
    m.criteria.push_back(k);
  }

  const YAML::Node alts = r.child("alternatives");
  if (!alts.IsSequence()) r.fail(alts, "alternatives must be a list");
  std::vector<std::vector<double>> rows;
  for (const auto& node : alts) {
    detail::MapReader a(node, source, "alternative");
    m.alternatives.push_back(a.string("name"));
    rows.push_back(a.numbers("scores"));
    if (rows.back().size() != m.criteria.size())
      a.fail(node, "alternative '" + m.alternatives.back() + "' needs " +
                       std::to_string(m.criteria.size()) + " scores");
    a.finish();
  }
  r.finish();

  m.scores.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(m.criteria.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.scores(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  try {
    validate(m);
  } catch (const ValidationError& e) {
    throw ParseError(source, detail::line_of(root), e.what());
  }
  return m;
}

DecisionMatrix load_decision_matrix(const std::filesystem::path& path) {
  return parse_decision_matrix(detail::read_text_file(path), path.string());
}

}  // namespace uav

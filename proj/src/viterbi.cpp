#include "ts/viterbi.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>
#include <limits>

#include "json.hpp"
#include "ts/errors.hpp"
#include "ts/similarity.hpp"

namespace ts {

namespace {

using nlohmann::json;

Matrixd transition_from(const EventGrid& grid, int origin_day, int day) {
  const int k = grid.clusters;
  Matrixd q(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      q(a, b) = cosine(grid.cell(origin_day, a).centroid, grid.cell(day, b).centroid);
    }
  }
  return q;
}

std::vector<ParagraphVector> vectors_of_day(const EventGrid& grid, int day,
                                            std::span<const ParagraphVector> vectors) {
  std::vector<ParagraphVector> out;
  for (int j = 0; j < grid.clusters; ++j) {
    for (int m : grid.cell(day, j).members) {
      out.push_back(vectors[static_cast<std::size_t>(m)]);
    }
  }
  return out;
}

}  // namespace

ScoreMatrices build_matrices(const EventGrid& grid, const ParagraphVector& topic_vec) {
  ScoreMatrices m;
  m.r.resize(grid.days, grid.clusters);
  for (int i = 0; i < grid.days; ++i) {
    for (int j = 0; j < grid.clusters; ++j) {
      m.r(i, j) = cosine(topic_vec.values, grid.cell(i, j).centroid);
    }
  }
  m.q.resize(static_cast<std::size_t>(grid.days));
  for (int t = 1; t < grid.days; ++t) {
    m.q[static_cast<std::size_t>(t)] = transition_from(grid, t - 1, t);
  }
  return m;
}

GateDecision day_gate(Index day, const Matrixd& q_into_day, const Matrixd& r,
                      std::span<const ParagraphVector> day_vectors,
                      const ParagraphVector& topic_vec, const GateParams& params) {
  GateDecision g;
  g.alpha = (q_into_day.array().rowwise() * r.row(day).array()).maxCoeff();

  const std::size_t n = day_vectors.size();
  if (n == 0) {
    g.cv = std::numeric_limits<double>::infinity();
    g.gated = true;  // a day without paragraphs carries no event
    return g;
  }
  std::vector<double> dots;
  dots.reserve(n);
  for (const auto& v : day_vectors) {
    dots.push_back(v.values.dot(topic_vec.values));
  }
  double mean = 0.0;
  for (const double d : dots) mean += d;
  mean /= static_cast<double>(n);
  double variance = 0.0;
  // Identical samples have exactly zero dispersion; do not let mean roundoff
  // manufacture a tiny variance.
  if (std::any_of(dots.begin(), dots.end(),
                  [&](double d) { return d != dots.front(); })) {
    for (const double d : dots) {
      variance += (d - mean) * (d - mean);
    }
    variance /= static_cast<double>(n);
  }

  if (std::abs(mean) < params.epsilon_mu) {
    g.cv = std::numeric_limits<double>::infinity();
  } else {
    g.cv = std::sqrt(variance) / mean;
  }
  g.gated = g.alpha < params.beta_alpha || g.cv > params.beta_cv;
  return g;
}

ViterbiState run_viterbi(const EventGrid& grid, const ScoreMatrices& matrices,
                         const ParagraphVector& topic_vec, const GateParams& params,
                         std::span<const ParagraphVector> vectors, bool clamp_negative) {
  const int days = grid.days;
  const int clusters = grid.clusters;

  ViterbiState state;
  state.w1.resize(days, clusters);
  state.w2.resize(days, clusters);
  state.gate_log.resize(static_cast<std::size_t>(days));

  Matrixd r = matrices.r;
  if (clamp_negative) r = r.cwiseMax(0.0);

  state.w1.row(0) = r.row(0);
  state.w2.row(0).setZero();
  state.gate_log[0] = {std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), false};

  int last_retained = 0;
  for (int i = 1; i < days; ++i) {
    // Transitions originate from the last retained day, so gated days are
    // bridged rather than compared against.
    Matrixd q = last_retained == i - 1 ? matrices.q[static_cast<std::size_t>(i)]
                                       : transition_from(grid, last_retained, i);
    if (clamp_negative) q = q.cwiseMax(0.0);

    const auto day_vectors = vectors_of_day(grid, i, vectors);
    const GateDecision gate = day_gate(i, q, r, day_vectors, topic_vec, params);
    state.gate_log[static_cast<std::size_t>(i)] = gate;

    if (gate.gated) {
      state.w1.row(i) = state.w1.row(i - 1);
      state.w2.row(i).setConstant(kSkip);
      continue;
    }

    for (int j = 0; j < clusters; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      int best_k = 0;
      for (int k = 0; k < clusters; ++k) {
        const double candidate = state.w1(i - 1, k) * q(k, j) * r(i, j);
        if (candidate > best) {
          best = candidate;
          best_k = k;
        }
      }
      state.w1(i, j) = best;
      state.w2(i, j) = best_k;
    }
    last_retained = i;
  }

  state.no_topical_path = state.w1.row(days - 1).maxCoeff() <= 0.0;
  return state;
}

TimelinePath backtrack(const ViterbiState& state) {
  const int days = static_cast<int>(state.w1.rows());
  const int clusters = static_cast<int>(state.w1.cols());

  int z = 0;
  for (int k = 1; k < clusters; ++k) {
    if (state.w1(days - 1, k) > state.w1(days - 1, z)) z = k;
  }

  TimelinePath path;
  path.origin.assign(static_cast<std::size_t>(days), kSkip);
  for (int i = days - 1; i >= 1; --i) {
    if (state.w2(i, z) == kSkip) continue;  // stay on z, one day earlier
    path.origin[static_cast<std::size_t>(i)] = z;
    z = state.w2(i, z);
  }
  path.origin[0] = z;  // day 0 is the initialization row, never gated

  for (int i = 0; i < days; ++i) {
    if (path.origin[static_cast<std::size_t>(i)] != kSkip) {
      path.filtered.push_back({i, path.origin[static_cast<std::size_t>(i)]});
    }
  }
  return path;
}

Timeline extract_summaries(const TimelinePath& path, const EventGrid& grid,
                           const ParagraphVector& topic_vec,
                           const std::vector<DatedParagraph>& paragraphs,
                           std::span<const ParagraphVector> vectors) {
  Timeline timeline;
  timeline.entries.reserve(path.filtered.size());
  for (const auto& step : path.filtered) {
    const EventCell& cell = grid.cell(step.day, step.cluster);
    if (cell.members.empty()) {
      throw std::logic_error("viterbi: path step (" + std::to_string(step.day) + ", " +
                             std::to_string(step.cluster) +
                             ") points at an empty event cell");
    }
    int best = -1;
    double best_score = 0.0;
    for (int m : cell.members) {
      const double score = cosine(topic_vec, vectors[static_cast<std::size_t>(m)]);
      const bool wins =
          best < 0 || score > best_score ||
          (score == best_score &&
           paragraphs[static_cast<std::size_t>(m)].id < paragraphs[static_cast<std::size_t>(best)].id);
      if (wins) {
        best = m;
        best_score = score;
      }
    }
    const auto& p = paragraphs[static_cast<std::size_t>(best)];
    timeline.entries.push_back(
        {p.calendar_date, p.text, p.id, step.cluster, best_score});
  }
  return timeline;
}

void write_timeline_jsonl(const Timeline& timeline, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw PipelineError("cannot write timeline to " + path);
  }
  for (const auto& e : timeline.entries) {
    json record{{"date", e.calendar_date},
                {"summary", e.summary_text},
                {"paragraph_id", e.paragraph_id},
                {"cluster", e.cluster},
                {"emission_score", e.emission_score}};
    out << record.dump() << "\n";
  }
}

Timeline read_timeline_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("timeline file not found: " + path);
  }
  Timeline timeline;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object() || !record.contains("date") ||
        !record.contains("summary")) {
      throw PipelineError("timeline: malformed entry at " + path + ":" +
                          std::to_string(line_no));
    }
    TimelineEntry e;
    e.calendar_date = record["date"].get<std::string>();
    e.summary_text = record["summary"].get<std::string>();
    e.paragraph_id = record.value("paragraph_id", std::string{});
    e.cluster = record.value("cluster", 0);
    e.emission_score = record.value("emission_score", 0.0);
    timeline.entries.push_back(std::move(e));
  }
  return timeline;
}

}  // namespace ts

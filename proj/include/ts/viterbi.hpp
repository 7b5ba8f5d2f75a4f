#pragma once

#include <span>
#include <string>
#include <vector>

#include "ts/clustering.hpp"
#include "ts/embeddings.hpp"
#include "ts/types.hpp"

namespace ts {

/// Transition and emission weights over the event grid.
///   q[t](k, j) = cosine(centroid(t-1, k), centroid(t, j)), defined for t >= 1
///   r(i, j)    = cosine(topic, centroid(i, j))
/// Days are 0-based here; q[0] stays empty because day 0 has no predecessor.
/// Zero-vector centroids (empty cells) score 0 everywhere.
struct ScoreMatrices {
  std::vector<Matrixd> q;
  Matrixd r;
};

ScoreMatrices build_matrices(const EventGrid& grid, const ParagraphVector& topic_vec);

struct GateParams {
  double beta_alpha = 0.1;
  double beta_cv = 1.0;
  double epsilon_mu = 1e-9;  // |mean| below this makes the dispersion undefined
};

struct GateDecision {
  double alpha = 0.0;
  double cv = 0.0;
  bool gated = false;
};

/// Decide whether day `day` (0-based, >= 1) is worth keeping.
///   alpha = max_{k,j} q_into_day(k, j) * r(day, j)   -- best combined relevance
///   cv    = population stddev / mean of the per-paragraph topic dot products
/// cv is +inf when |mean| < epsilon_mu; a single paragraph gives cv = 0.
/// The day is gated when alpha < beta_alpha or cv > beta_cv.
GateDecision day_gate(Index day, const Matrixd& q_into_day, const Matrixd& r,
                      std::span<const ParagraphVector> day_vectors,
                      const ParagraphVector& topic_vec, const GateParams& params);

/// DP tables plus the per-day gate decisions.
/// w2(i, j) holds the predecessor cluster, -1 on a gated day, 0 on day 0.
struct ViterbiState {
  Matrixd w1;
  Matrixi w2;
  std::vector<GateDecision> gate_log;  // entry 0 is never gated; alpha/cv are NaN
  bool no_topical_path = false;        // all final weights <= 0
};

/// Run the gated dynamic program over the grid.
///   w1(0, j) = r(0, j); for ungated days
///   w1(i, j) = max_k w1(i-1, k) * q_eff(k, j) * r(i, j), ties to the lowest k.
/// A gated day copies the previous w1 row verbatim and keeps the last
/// retained day's centroids as the transition origin, so the next day's
/// transitions bridge across the gap. With clamp_negative (default) q and r
/// enter the DP as max(value, 0), keeping path weights monotone.
/// `vectors` is the corpus-aligned vector list used for the dispersion gate.
ViterbiState run_viterbi(const EventGrid& grid, const ScoreMatrices& matrices,
                         const ParagraphVector& topic_vec, const GateParams& params,
                         std::span<const ParagraphVector> vectors,
                         bool clamp_negative = true);

constexpr int kSkip = -1;

/// Origin path (cluster per day, kSkip on gated days) and the filtered path.
struct PathStep {
  int day = 0;  // 0-based
  int cluster = 0;
};

struct TimelinePath {
  std::vector<int> origin;         // length T
  std::vector<PathStep> filtered;  // strictly increasing days
};

/// Walk w2 backwards from argmax_k w1(T-1, k). Gated rows are emitted as
/// kSkip: the cluster index carries through them unchanged, which is exactly
/// the row-copy semantics of the gate.
TimelinePath backtrack(const ViterbiState& state);

struct TimelineEntry {
  std::string calendar_date;
  std::string summary_text;
  std::string paragraph_id;
  int cluster = 0;
  double emission_score = 0.0;
};

struct Timeline {
  std::vector<TimelineEntry> entries;
};

/// One summary per path step: the member paragraph of the chosen cell with
/// the highest cosine against the topic, ties to the lexicographically
/// smallest id. A path step into an empty cell means the DP is broken and
/// throws.
Timeline extract_summaries(const TimelinePath& path, const EventGrid& grid,
                           const ParagraphVector& topic_vec,
                           const std::vector<DatedParagraph>& paragraphs,
                           std::span<const ParagraphVector> vectors);

void write_timeline_jsonl(const Timeline& timeline, const std::string& path);
Timeline read_timeline_jsonl(const std::string& path);

}  // namespace ts

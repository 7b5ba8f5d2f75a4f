#pragma once

#include <span>
#include <string>
#include <vector>

#include "ts/affinity_propagation.hpp"
#include "ts/corpus.hpp"
#include "ts/embeddings.hpp"
#include "ts/types.hpp"

namespace ts {

/// Pairwise similarity used by clustering. Cosine is the module's ambient
/// geometry; negative squared Euclidean exists for comparison runs.
enum class ApSimilarity { kCosine, kNegSqEuclidean };

ApSimilarity parse_ap_similarity(const std::string& name);

/// How a global cluster is split across the day axis. kEq1 places each member
/// on its own day; kMajority moves the whole cluster to its modal day.
enum class DaySplitMode { kEq1, kMajority };

DaySplitMode parse_day_split_mode(const std::string& name);

Matrixd similarity_matrix(std::span<const ParagraphVector> vectors, ApSimilarity kind);

/// Cluster paragraph vectors with affinity propagation.
ClusteringResult affinity_propagation(std::span<const ParagraphVector> vectors,
                                      const ApOptions& opts,
                                      ApSimilarity kind = ApSimilarity::kCosine);

struct EventCell {
  std::vector<int> members;  // indices into the corpus paragraph array
  Vectord centroid;          // mean of member vectors; zero vector when empty
};

/// T x K grid of event clusters: cell (day, cluster) holds the paragraphs of
/// that global cluster published on that day.
struct EventGrid {
  int days = 0;      // T
  int clusters = 0;  // K
  std::vector<std::string> dates;  // per day, ISO calendar dates in order
  std::vector<EventCell> cells;    // row-major, days * clusters

  EventCell& cell(int day, int cluster) {
    return cells[static_cast<std::size_t>(day) * static_cast<std::size_t>(clusters) +
                 static_cast<std::size_t>(cluster)];
  }
  const EventCell& cell(int day, int cluster) const {
    return cells[static_cast<std::size_t>(day) * static_cast<std::size_t>(clusters) +
                 static_cast<std::size_t>(cluster)];
  }
};

/// Split a global clustering by day into the event grid and compute the
/// per-cell centroids. `vectors` is aligned with `paragraphs`.
EventGrid build_event_grid(const std::vector<DatedParagraph>& paragraphs,
                           std::span<const ParagraphVector> vectors,
                           const ClusteringResult& clustering,
                           DaySplitMode mode = DaySplitMode::kEq1);

}  // namespace ts

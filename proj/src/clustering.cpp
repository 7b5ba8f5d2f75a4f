#include "ts/clustering.hpp"

#include <cassert>
#include <map>

#include "ts/errors.hpp"
#include "ts/similarity.hpp"

namespace ts {

ApSimilarity parse_ap_similarity(const std::string& name) {
  if (name == "cosine") return ApSimilarity::kCosine;
  if (name == "neg_sq_euclidean") return ApSimilarity::kNegSqEuclidean;
  throw ValidationError("unknown ap similarity: " + name);
}

DaySplitMode parse_day_split_mode(const std::string& name) {
  if (name == "eq1") return DaySplitMode::kEq1;
  if (name == "majority") return DaySplitMode::kMajority;
  throw ValidationError("unknown day split mode: " + name);
}

Matrixd similarity_matrix(std::span<const ParagraphVector> vectors, ApSimilarity kind) {
  const Index n = static_cast<Index>(vectors.size());
  Matrixd s = Matrixd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = i + 1; k < n; ++k) {
      double value = 0.0;
      if (kind == ApSimilarity::kCosine) {
        value = cosine(vectors[static_cast<std::size_t>(i)],
                       vectors[static_cast<std::size_t>(k)]);
      } else {
        value = -(vectors[static_cast<std::size_t>(i)].values -
                  vectors[static_cast<std::size_t>(k)].values)
                     .squaredNorm();
      }
      s(i, k) = value;
      s(k, i) = value;
    }
  }
  return s;
}

ClusteringResult affinity_propagation(std::span<const ParagraphVector> vectors,
                                      const ApOptions& opts, ApSimilarity kind) {
  if (vectors.empty()) {
    throw PipelineError("clustering: no vectors to cluster");
  }
  return affinity_propagation_on_similarity<double>(similarity_matrix(vectors, kind),
                                                    opts);
}

EventGrid build_event_grid(const std::vector<DatedParagraph>& paragraphs,
                           std::span<const ParagraphVector> vectors,
                           const ClusteringResult& clustering, DaySplitMode mode) {
  assert(paragraphs.size() == vectors.size());
  assert(clustering.assignments.size() == paragraphs.size());

  EventGrid grid;
  grid.clusters = clustering.k;
  for (const auto& p : paragraphs) grid.days = std::max(grid.days, p.day_index);
  grid.dates.resize(static_cast<std::size_t>(grid.days));
  for (const auto& p : paragraphs) {
    grid.dates[static_cast<std::size_t>(p.day_index - 1)] = p.calendar_date;
  }

  const Index dim = vectors.empty() ? 0 : vectors.front().values.size();
  grid.cells.assign(
      static_cast<std::size_t>(grid.days) * static_cast<std::size_t>(grid.clusters),
      EventCell{{}, Vectord::Zero(dim)});

  if (mode == DaySplitMode::kEq1) {
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      grid.cell(paragraphs[i].day_index - 1, clustering.assignments[i])
          .members.push_back(static_cast<int>(i));
    }
  } else {
    // Majority vote: the whole cluster lands on its modal day (ties to the
    // earliest day).
    std::vector<std::map<int, int>> day_votes(static_cast<std::size_t>(clustering.k));
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      ++day_votes[static_cast<std::size_t>(clustering.assignments[i])]
                 [paragraphs[i].day_index];
    }
    std::vector<int> modal_day(static_cast<std::size_t>(clustering.k), 1);
    for (int j = 0; j < clustering.k; ++j) {
      int best_count = 0;
      for (const auto& [day, count] : day_votes[static_cast<std::size_t>(j)]) {
        if (count > best_count) {
          best_count = count;
          modal_day[static_cast<std::size_t>(j)] = day;
        }
      }
    }
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      const int j = clustering.assignments[i];
      grid.cell(modal_day[static_cast<std::size_t>(j)] - 1, j)
          .members.push_back(static_cast<int>(i));
    }
  }

  for (auto& cell : grid.cells) {
    if (cell.members.empty()) continue;  // zero centroid already in place
    Vectord sum = Vectord::Zero(dim);
    for (int m : cell.members) {
      sum += vectors[static_cast<std::size_t>(m)].values;
    }
    cell.centroid = sum / static_cast<double>(cell.members.size());
  }
  return grid;
}

}  // namespace ts

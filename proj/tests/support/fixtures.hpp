#pragma once

// Hand-assembled pipeline inputs for DP and grid tests: a grid built directly
// from chosen centroids, with one synthetic paragraph per cell so extraction
// and the dispersion gate have real members to look at.

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ts/clustering.hpp"
#include "ts/corpus.hpp"
#include "ts/dates.hpp"
#include "ts/embeddings.hpp"
#include "ts/viterbi.hpp"

namespace ts_test {

struct GridFixture {
  ts::EventGrid grid;
  std::vector<ts::DatedParagraph> paragraphs;
  std::vector<ts::ParagraphVector> vectors;  // aligned with paragraphs
};

/// Build a T x K grid whose cell (i, j) holds exactly one paragraph with the
/// given vector; the cell centroid equals that vector. An empty optional-like
/// zero-size vector is not supported here: pass every centroid.
inline GridFixture make_grid(const std::vector<std::vector<ts::Vectord>>& centroids,
                             const std::string& start_date = "2020-01-01") {
  GridFixture fx;
  const int days = static_cast<int>(centroids.size());
  const int clusters = static_cast<int>(centroids.front().size());
  fx.grid.days = days;
  fx.grid.clusters = clusters;
  const auto dim = centroids.front().front().size();
  fx.grid.cells.assign(static_cast<std::size_t>(days * clusters),
                       ts::EventCell{{}, ts::Vectord::Zero(dim)});
  for (int i = 0; i < days; ++i) {
    fx.grid.dates.push_back(ts::add_days(start_date, i));
    for (int j = 0; j < clusters; ++j) {
      ts::DatedParagraph p;
      p.id = "d" + std::to_string(i) + "c" + std::to_string(j);
      p.day_index = i + 1;
      p.calendar_date = fx.grid.dates.back();
      p.text = p.id;
      p.tokens = {p.id};
      const int index = static_cast<int>(fx.paragraphs.size());
      fx.paragraphs.push_back(p);
      fx.vectors.push_back(ts::make_paragraph_vector(centroids[static_cast<std::size_t>(i)]
                                                              [static_cast<std::size_t>(j)]));
      auto& cell = fx.grid.cell(i, j);
      cell.members.push_back(index);
      cell.centroid = fx.vectors.back().values;
    }
  }
  return fx;
}

inline std::vector<std::vector<ts::Vectord>> random_centroids(int days, int clusters,
                                                              int dim,
                                                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<std::vector<ts::Vectord>> centroids(
      static_cast<std::size_t>(days),
      std::vector<ts::Vectord>(static_cast<std::size_t>(clusters)));
  for (auto& day : centroids) {
    for (auto& c : day) {
      c.resize(dim);
      for (int x = 0; x < dim; ++x) c[x] = coord(rng);
    }
  }
  return centroids;
}

inline ts::ParagraphVector random_topic(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  ts::Vectord v(dim);
  for (int x = 0; x < dim; ++x) v[x] = coord(rng);
  if (v.norm() == 0.0) v[0] = 1.0;
  return ts::make_paragraph_vector(v);
}

/// Gate parameters that never fire: alpha cannot go below -1 and cv cannot
/// exceed +inf.
inline ts::GateParams gate_disabled() {
  return {-1.0, std::numeric_limits<double>::infinity(), 1e-12};
}

}  // namespace ts_test

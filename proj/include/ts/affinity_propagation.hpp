#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ts/types.hpp"

namespace ts {

struct ApOptions {
  std::optional<double> preference;  // empty: median of off-diagonal similarities
  double damping = 0.9;              // in [0.5, 1)
  int max_iter = 500;
  int convergence_window = 30;       // iterations the exemplar set must hold still
};

struct ClusteringResult {
  std::vector<int> assignments;  // per input point, cluster index in 0..k-1
  std::vector<int> exemplars;    // ascending input indices, one per cluster
  int k = 0;
  int iterations_run = 0;
  bool converged = false;
};

/// Affinity propagation over an n x n similarity matrix. The diagonal is
/// overwritten with the preference. Message updates are damped:
///   new = damping * old + (1 - damping) * computed.
/// Exemplars are the points with positive self-evidence r(k,k) + a(k,k);
/// every other point joins the exemplar maximizing r(i,k) + a(i,k), ties to
/// the lowest cluster index. Non-convergence returns the best-so-far state
/// with converged = false.
template <typename Scalar>
ClusteringResult affinity_propagation_on_similarity(Matrix<Scalar> s,
                                                    const ApOptions& opts) {
  const Index n = s.rows();
  if (n == 0 || s.cols() != n) {
    throw std::invalid_argument("affinity propagation needs a non-empty square matrix");
  }
  if (!(opts.damping >= 0.5 && opts.damping < 1.0)) {
    throw std::invalid_argument("affinity propagation damping must lie in [0.5, 1)");
  }

  ClusteringResult result;
  if (n == 1) {
    result.assignments = {0};
    result.exemplars = {0};
    result.k = 1;
    result.converged = true;
    return result;
  }

  Scalar preference;
  if (opts.preference) {
    preference = static_cast<Scalar>(*opts.preference);
  } else {
    std::vector<Scalar> off;
    off.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < n; ++k) {
        if (i != k) off.push_back(s(i, k));
      }
    }
    std::sort(off.begin(), off.end());
    const std::size_t m = off.size();
    preference = (m % 2 == 1) ? off[m / 2] : (off[m / 2 - 1] + off[m / 2]) / Scalar(2);
  }
  s.diagonal().setConstant(preference);

  const Scalar lam = static_cast<Scalar>(opts.damping);
  Matrix<Scalar> r = Matrix<Scalar>::Zero(n, n);
  Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
  Vector<Scalar> evidence(n), update(n);

  std::vector<int> exemplars, previous;
  int unchanged = 0;
  int iterations = 0;
  bool converged = false;

  while (iterations < opts.max_iter && !converged) {
    ++iterations;

    // r(i,k) = s(i,k) - max_{k' != k} (a(i,k') + s(i,k'))
    for (Index i = 0; i < n; ++i) {
      evidence = (a.row(i) + s.row(i)).transpose();
      Scalar max1 = -std::numeric_limits<Scalar>::infinity();
      Scalar max2 = max1;
      Index arg1 = 0;
      for (Index k = 0; k < n; ++k) {
        if (evidence(k) > max1) {
          max2 = max1;
          max1 = evidence(k);
          arg1 = k;
        } else if (evidence(k) > max2) {
          max2 = evidence(k);
        }
      }
      for (Index k = 0; k < n; ++k) {
        update(k) = s(i, k) - (k == arg1 ? max2 : max1);
      }
      r.row(i) = lam * r.row(i) + (Scalar(1) - lam) * update.transpose();
    }

    // a(i,k) = min(0, r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k)))
    // a(k,k) = sum_{i' != k} max(0, r(i',k))
    for (Index k = 0; k < n; ++k) {
      Scalar positive_sum = 0;
      for (Index i = 0; i < n; ++i) {
        if (i != k) positive_sum += std::max<Scalar>(0, r(i, k));
      }
      for (Index i = 0; i < n; ++i) {
        if (i == k) {
          update(i) = positive_sum;
        } else {
          const Scalar without_i = positive_sum - std::max<Scalar>(0, r(i, k));
          update(i) = std::min<Scalar>(0, r(k, k) + without_i);
        }
      }
      a.col(k) = lam * a.col(k) + (Scalar(1) - lam) * update;
    }

    exemplars.clear();
    for (Index k = 0; k < n; ++k) {
      if (r(k, k) + a(k, k) > 0) exemplars.push_back(static_cast<int>(k));
    }
    if (!exemplars.empty() && exemplars == previous) {
      if (++unchanged >= opts.convergence_window) converged = true;
    } else {
      unchanged = 0;
      previous = exemplars;
    }
  }

  if (exemplars.empty()) {
    // Degenerate run: promote the point with the strongest self-evidence.
    Index best = 0;
    for (Index k = 1; k < n; ++k) {
      if (r(k, k) + a(k, k) > r(best, best) + a(best, best)) best = k;
    }
    exemplars.push_back(static_cast<int>(best));
  }

  result.exemplars = exemplars;
  result.k = static_cast<int>(exemplars.size());
  result.iterations_run = iterations;
  result.converged = converged;
  result.assignments.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    int cluster = -1;
    Scalar best = -std::numeric_limits<Scalar>::infinity();
    for (int c = 0; c < result.k; ++c) {
      const Index e = exemplars[static_cast<std::size_t>(c)];
      if (e == i) {
        cluster = c;  // exemplars always own their cluster
        break;
      }
      if (r(i, e) + a(i, e) > best) {
        best = r(i, e) + a(i, e);
        cluster = c;
      }
    }
    result.assignments[static_cast<std::size_t>(i)] = cluster;
  }
  return result;
}

}  // namespace ts

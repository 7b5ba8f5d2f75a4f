#pragma once

#include <Eigen/Dense>
#include <algorithm>

namespace ts {

/// Cosine similarity between two dense vectors, clamped to [-1, 1].
/// Zero-vector convention: if either argument has zero norm the result is 0,
/// so degenerate (empty) states never look attractive.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) {
    return Scalar(0);
  }
  return std::clamp<Scalar>(a.dot(b) / (na * nb), Scalar(-1), Scalar(1));
}

}  // namespace ts

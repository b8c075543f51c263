#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "jetlie/jet.hpp"

namespace jetlie::testing {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline ::testing::AssertionResult jets_near(const JetVector& a, const JetVector& b, double tol) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (unsigned m = 0; m < a[i].size(); ++m) {
      if (rel_diff(a[i][m], b[i][m]) > tol) {
        return ::testing::AssertionFailure()
               << "component " << i << " mask " << m << ": " << a[i][m] << " vs " << b[i][m];
      }
    }
  }
  return ::testing::AssertionSuccess();
}

inline ::testing::AssertionResult vectors_near(std::span<const double> a, std::span<const double> b,
                                               double tol) {
  if (a.size() != b.size()) return ::testing::AssertionFailure() << "length mismatch";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::abs(a[i] - b[i]) <= tol)) {
      return ::testing::AssertionFailure() << "entry " << i << ": " << a[i] << " vs " << b[i];
    }
  }
  return ::testing::AssertionSuccess();
}

inline JetVector jet_from(int order, std::initializer_list<std::vector<double>> blocks) {
  std::vector<double> flat;
  std::size_t dim = blocks.begin()->size();
  for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
  return JetVector::from_blocks(order, dim, flat);
}

}  // namespace jetlie::testing

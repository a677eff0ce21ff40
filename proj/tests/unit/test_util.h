// Copyright 2026 The sbmk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SBMK_TESTS_UNIT_TEST_UTIL_H_
#define SBMK_TESTS_UNIT_TEST_UTIL_H_

#include <vector>

#include "doctest.h"
#include "sbmk/error.h"
#include "sbmk/generators.h"
#include "sbmk/graph.h"
#include "sbmk/random.h"

namespace sbmk::testing {

// Asserts that `expr` throws sbmk::Error with the given code.
#define CHECK_THROWS_CODE(expr, expected_code)                       \
  do {                                                               \
    bool sbmk_thrown = false;                                        \
    try {                                                            \
      (void)(expr);                                                  \
    } catch (const ::sbmk::Error& sbmk_e) {                          \
      sbmk_thrown = true;                                            \
      CHECK_MESSAGE(sbmk_e.code() == (expected_code), sbmk_e.what()); \
    }                                                                \
    CHECK_MESSAGE(sbmk_thrown, "no sbmk::Error thrown");             \
  } while (0)

inline AdjacencyMatrix ErGraph(int n, double p, uint64_t seed) {
  SbmParams params;
  params.n = n;
  params.probs = BlockProbabilityMatrix::Planted(1, p, 0.0);
  return SampleSbm(params, seed);
}

inline SbmParams PlantedSbm(int n, int k, double within, double between) {
  SbmParams params;
  params.n = n;
  params.probs = BlockProbabilityMatrix::Planted(k, within, between);
  return params;
}

// `count` disjoint cliques of `size` nodes, clique c holding nodes
// c*size .. c*size + size - 1.
inline AdjacencyMatrix DisjointCliques(int count, int size) {
  std::vector<Edge> edges;
  for (int c = 0; c < count; ++c) {
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        edges.push_back({c * size + i, c * size + j});
      }
    }
  }
  return AdjacencyMatrix::FromEdges(count * size, edges);
}

inline AdjacencyMatrix CompleteGraph(int n) { return DisjointCliques(1, n); }

inline LabelVector CliqueLabels(int count, int size) {
  std::vector<int> labels;
  for (int c = 0; c < count; ++c) labels.insert(labels.end(), size, c);
  return LabelVector(labels, count);
}

// Random graph and labeling for exhaustive small-instance checks.
inline AdjacencyMatrix RandomGraph(int n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Uniform() < p) edges.push_back({i, j});
    }
  }
  return AdjacencyMatrix::FromEdges(n, edges);
}

inline LabelVector RandomLabels(int n, int k, Rng& rng) {
  std::vector<int> labels(n);
  for (int& l : labels) l = static_cast<int>(rng.Below(k));
  return LabelVector(labels, k);
}

// Same graph with node i renamed perm[i].
inline AdjacencyMatrix Permute(const AdjacencyMatrix& a, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : a.Edges()) edges.push_back({perm[u], perm[v]});
  return AdjacencyMatrix::FromEdges(a.size(), edges);
}

inline LabelVector Permute(const LabelVector& g, const std::vector<int>& perm) {
  std::vector<int> out(g.size());
  for (int i = 0; i < g.size(); ++i) out[perm[i]] = g[i];
  return LabelVector(out, g.num_blocks());
}

inline std::vector<int> RandomPermutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.Below(i + 1)]);
  return perm;
}

}  // namespace sbmk::testing

#endif  // SBMK_TESTS_UNIT_TEST_UTIL_H_

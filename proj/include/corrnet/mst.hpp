#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corrnet/correlation.hpp"
#include "corrnet/series.hpp"

namespace corrnet {

struct TreeEdge {
  std::string a;  // endpoints kept with a < b
  std::string b;
  double distance = 0.0;
};

// n - 1 edges over n symbols, connected and acyclic, total weight minimal
// for the source matrix. Edges are stored in construction order, which is
// ascending (distance, a, b); total_weight is accumulated in that order so
// it is reproducible bit for bit.
struct SpanningTree {
  std::vector<std::string> symbols;  // sorted
  std::vector<TreeEdge> edges;
  double total_weight = 0.0;
};

// Kruskal over all unordered pairs. Ties are broken by the lexicographic
// endpoint order, so equal-weight inputs still build one canonical tree.
SpanningTree build_mst(const DistanceMatrix& d);

struct StabilityReport {
  std::string label_a;
  std::string label_b;
  std::size_t shared_edges = 0;
  std::size_t tree_edges = 0;        // n - 1
  double overlap_fraction = 0.0;     // shared_edges / tree_edges
};

// Counts unordered edge pairs present in both trees. The trees must cover
// the same symbol set.
StabilityReport edge_overlap(const SpanningTree& a, const SpanningTree& b,
                             std::string_view label_a = "", std::string_view label_b = "");

struct ClassClusterStats {
  AssetClass asset_class;
  std::size_t node_count = 0;
  std::size_t intra_edges = 0;  // both endpoints in this class
  std::size_t cross_edges = 0;  // exactly one endpoint in this class
  double intra_fraction = 0.0;  // intra / (intra + cross); 0 when isolated
};

// Partition of the n - 1 edges into same-class and cross-class links:
// sum of per-class intra counts plus cross_total equals the edge count.
struct ClusteringReport {
  std::vector<ClassClusterStats> per_class;  // ordered by AssetClass value
  std::size_t intra_total = 0;
  std::size_t cross_total = 0;
  double intra_fraction = 0.0;  // intra_total / (n - 1)
};

ClusteringReport class_clustering(const SpanningTree& t, const std::vector<AssetMeta>& meta);

// DOT: undirected graph with nodes filled by class color (stock indices
// blue, currency futures green, commodity futures red) and edges labeled
// with the distance to 4 decimals.
std::string export_tree_dot(const SpanningTree& t, const std::vector<AssetMeta>& meta);

// JSON: {"nodes": [{"symbol", "class"}], "edges": [{"a", "b", "distance"}]}.
// Distances survive a round-trip exactly.
std::string export_tree_json(const SpanningTree& t, const std::vector<AssetMeta>& meta);

// Inverse of export_tree_json; validates the tree invariants.
SpanningTree tree_from_json(std::string_view text);

}  // namespace corrnet

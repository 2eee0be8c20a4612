#include "corrnet/mst.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "json.hpp"

#include "corrnet/csv.hpp"
#include "corrnet/error.hpp"

namespace corrnet {

namespace {

// Union-find with path halving; union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view class_color(AssetClass c) {
  switch (c) {
    case AssetClass::stock_index: return "blue";
    case AssetClass::currency_future: return "green";
    case AssetClass::commodity_future: return "red";
  }
  return "gray";
}

std::map<std::string_view, AssetClass> class_map(const std::vector<AssetMeta>& meta) {
  std::map<std::string_view, AssetClass> by_symbol;
  for (const auto& m : meta) by_symbol.emplace(m.symbol, m.cls);
  return by_symbol;
}

AssetClass class_of(const std::map<std::string_view, AssetClass>& by_symbol,
                    const std::string& symbol) {
  const auto it = by_symbol.find(symbol);
  if (it == by_symbol.end()) raise(errc::unknown_symbol, "no metadata for symbol " + symbol);
  return it->second;
}

}  // namespace

SpanningTree build_mst(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) raise(errc::matrix_too_small, "mst: need at least 2 assets, got " + std::to_string(n));

  struct Candidate {
    double weight;
    std::string_view a;
    std::string_view b;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(n * (n - 1) / 2);
  const auto& symbols = d.symbols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::string_view a = symbols[i];
      std::string_view b = symbols[j];
      if (b < a) std::swap(a, b);
      candidates.push_back({d.at(i, j), a, b, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
    return std::tie(l.weight, l.a, l.b) < std::tie(r.weight, r.a, r.b);
  });

  SpanningTree tree;
  tree.symbols.assign(symbols.begin(), symbols.end());
  std::sort(tree.symbols.begin(), tree.symbols.end());
  tree.edges.reserve(n - 1);
  DisjointSets components(n);
  for (const auto& c : candidates) {
    if (!components.unite(c.i, c.j)) continue;
    tree.edges.push_back({std::string(c.a), std::string(c.b), c.weight});
    tree.total_weight += c.weight;
    if (tree.edges.size() == n - 1) break;
  }
  return tree;
}

StabilityReport edge_overlap(const SpanningTree& a, const SpanningTree& b,
                             std::string_view label_a, std::string_view label_b) {
  if (a.symbols != b.symbols)
    raise(errc::symbol_set_mismatch, "edge overlap: trees cover different symbol sets");
  std::set<std::pair<std::string_view, std::string_view>> edges_a;
  for (const auto& e : a.edges) edges_a.emplace(e.a, e.b);
  StabilityReport report;
  report.label_a = label_a;
  report.label_b = label_b;
  report.tree_edges = a.edges.size();
  for (const auto& e : b.edges) {
    if (edges_a.count({e.a, e.b})) ++report.shared_edges;
  }
  report.overlap_fraction =
      report.tree_edges == 0
          ? 0.0
          : static_cast<double>(report.shared_edges) / static_cast<double>(report.tree_edges);
  return report;
}

ClusteringReport class_clustering(const SpanningTree& t, const std::vector<AssetMeta>& meta) {
  const auto by_symbol = class_map(meta);
  constexpr AssetClass kClasses[] = {AssetClass::stock_index, AssetClass::currency_future,
                                     AssetClass::commodity_future};
  std::map<AssetClass, ClassClusterStats> stats;
  for (const auto& symbol : t.symbols) {
    auto& s = stats[class_of(by_symbol, symbol)];
    ++s.node_count;
  }
  ClusteringReport report;
  for (const auto& e : t.edges) {
    const AssetClass ca = class_of(by_symbol, e.a);
    const AssetClass cb = class_of(by_symbol, e.b);
    if (ca == cb) {
      ++stats[ca].intra_edges;
      ++report.intra_total;
    } else {
      ++stats[ca].cross_edges;
      ++stats[cb].cross_edges;
      ++report.cross_total;
    }
  }
  for (AssetClass c : kClasses) {
    const auto it = stats.find(c);
    if (it == stats.end() || it->second.node_count == 0) continue;
    ClassClusterStats s = it->second;
    s.asset_class = c;
    const std::size_t touching = s.intra_edges + s.cross_edges;
    s.intra_fraction =
        touching == 0 ? 0.0 : static_cast<double>(s.intra_edges) / static_cast<double>(touching);
    report.per_class.push_back(s);
  }
  const std::size_t edges = t.edges.size();
  report.intra_fraction =
      edges == 0 ? 0.0 : static_cast<double>(report.intra_total) / static_cast<double>(edges);
  return report;
}

std::string export_tree_dot(const SpanningTree& t, const std::vector<AssetMeta>& meta) {
  const auto by_symbol = class_map(meta);
  std::ostringstream out;
  out << "graph correlation_mst {\n";
  out << "  node [style=filled, fontcolor=white];\n";
  for (const auto& symbol : t.symbols) {
    out << "  \"" << dot_escape(symbol) << "\" [fillcolor="
        << class_color(class_of(by_symbol, symbol)) << "];\n";
  }
  for (const auto& e : t.edges) {
    out << "  \"" << dot_escape(e.a) << "\" -- \"" << dot_escape(e.b) << "\" [label=\""
        << fmt_fixed(e.distance, 4) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_tree_json(const SpanningTree& t, const std::vector<AssetMeta>& meta) {
  const auto by_symbol = class_map(meta);
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& symbol : t.symbols) {
    doc["nodes"].push_back({{"symbol", symbol},
                            {"class", std::string(to_string(class_of(by_symbol, symbol)))}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : t.edges) {
    doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"distance", e.distance}});
  }
  return doc.dump(2) + "\n";
}

SpanningTree tree_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(errc::malformed_input, std::string("tree json: ") + e.what());
  }

  SpanningTree tree;
  try {
    for (const auto& node : doc.at("nodes")) {
      tree.symbols.push_back(node.at("symbol").get<std::string>());
      asset_class_from_string(node.at("class").get<std::string>());  // vocabulary check
    }
    for (const auto& edge : doc.at("edges")) {
      TreeEdge e{edge.at("a").get<std::string>(), edge.at("b").get<std::string>(),
                 edge.at("distance").get<double>()};
      if (e.b < e.a) std::swap(e.a, e.b);
      tree.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(errc::malformed_input, std::string("tree json: ") + e.what());
  }

  std::sort(tree.symbols.begin(), tree.symbols.end());
  if (std::adjacent_find(tree.symbols.begin(), tree.symbols.end()) != tree.symbols.end())
    raise(errc::duplicate_symbol, "tree json: repeated node symbol");
  const std::size_t n = tree.symbols.size();
  if (n < 2) raise(errc::matrix_too_small, "tree json: need at least 2 nodes");
  if (tree.edges.size() != n - 1)
    raise(errc::malformed_input, "tree json: expected " + std::to_string(n - 1) + " edges, got " +
                                     std::to_string(tree.edges.size()));

  const double max_distance = std::sqrt(2.0);
  DisjointSets components(n);
  const auto index_of = [&](const std::string& symbol) {
    const auto it = std::lower_bound(tree.symbols.begin(), tree.symbols.end(), symbol);
    if (it == tree.symbols.end() || *it != symbol)
      raise(errc::unknown_symbol, "tree json: edge endpoint " + symbol + " is not a node");
    return static_cast<std::size_t>(it - tree.symbols.begin());
  };
  for (const auto& e : tree.edges) {
    if (!(e.distance >= 0.0) || !(e.distance <= max_distance))
      raise(errc::out_of_range, "tree json: edge distance " + fmt_g17(e.distance) +
                                    " outside [0, sqrt(2)]");
    if (!components.unite(index_of(e.a), index_of(e.b)))
      raise(errc::malformed_input, "tree json: edges contain a cycle");
    tree.total_weight += e.distance;
  }
  return tree;
}

}  // namespace corrnet

#ifndef WDCS_GRAPH_ANALYTICS_HPP_
#define WDCS_GRAPH_ANALYTICS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wdcs/edge_io.hpp"

namespace wdcs {

// Directed multigraph over string node ids; parallel edges and self loops
// count like any other edge.
class DirectedGraph {
public:
    uint32_t intern(const std::string& node);
    void add_edge(const std::string& from, const std::string& to);

    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::pair<uint32_t, uint32_t>>& edges() const { return edges_; }

private:
    std::unordered_map<std::string, uint32_t> index_;
    std::vector<std::string> nodes_;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
};

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-9;    // L1 change between iterations
    int max_iterations = 200;
};

struct PageRankResult {
    std::vector<double> scores;  // aligned with DirectedGraph::nodes()
    bool converged = true;
    int iterations = 0;
};

// Power iteration with uniform redistribution of dangling mass; scores sum
// to 1 at every iteration.
PageRankResult pagerank(const DirectedGraph& graph, PageRankOptions options = {});

std::unordered_map<std::string, double> pagerank(const std::vector<EdgeRecord>& edges,
                                                 PageRankOptions options = {},
                                                 bool* converged = nullptr);

struct PageRankEntry {
    std::string node;
    std::string label;
    double score = 0;
};

struct GraphStats {
    size_t node_count = 0;
    size_t edge_count = 0;
    std::map<std::string, long long> relation_histogram;
    bool mean_degree_defined = false;
    double mean_degree = 0;  // 2E/V, each incident edge counted once per endpoint
    std::vector<PageRankEntry> top_pagerank;
    bool pagerank_converged = true;
    std::string produced_at;
    std::string input_digest;
};

GraphStats compute_stats(const std::vector<EdgeRecord>& edges, int top_k,
                         PageRankOptions options = {});
// Streaming variant; also fills produced_at and input_digest.
GraphStats compute_stats_file(const std::string& edge_path, int top_k, PageRankOptions options = {},
                              ReadOptions read_options = {});

std::string stats_to_json(const GraphStats& stats);
GraphStats stats_from_json(const std::string& json_text);
GraphStats load_stats(const std::string& path);
std::string render_stats_tsv(const GraphStats& stats);

using RelationCount = std::pair<std::string, long long>;

// Descending by count, ties by relation id ascending; excluded relations are
// removed before ranking. top_k <= 0 means no truncation.
std::vector<RelationCount> relation_frequency_distribution(
    const std::map<std::string, long long>& histogram, int top_k = 50,
    const std::vector<std::string>& exclude = {});
std::vector<RelationCount> relation_frequency_distribution(const std::vector<EdgeRecord>& edges,
                                                           int top_k = 50,
                                                           const std::vector<std::string>& exclude = {});
std::string render_freqdist_tsv(const std::vector<RelationCount>& distribution);

struct OverlapReport {
    long long both = 0;
    long long left_only = 0;
    long long right_only = 0;
    double left_only_pct = 0;   // left_only / (left_only + both), % rounded to 0.1
    double right_only_pct = 0;
    std::string counting_basis = "expanded-label-triples";
};

// Label-level comparison: every edge expands into (node1 label, relation,
// node2 label) triples over all `|`-separated labels of each endpoint; labels
// compare lowercased and trimmed; counts are over distinct triples.
OverlapReport compute_overlap(const std::string& left_path, const std::string& right_path,
                              ReadOptions read_options = {});
OverlapReport compute_overlap(const std::vector<EdgeRecord>& left,
                              const std::vector<EdgeRecord>& right);

std::string overlap_to_json(const OverlapReport& report);
std::string render_overlap_tsv(const OverlapReport& report);

struct DiffEntry {
    std::string relation;
    long long old_count = 0;
    long long new_count = 0;
    bool growth_defined = false;  // false when old_count == 0
    long long growth_pct = 0;     // round(100 * new / old)
};

struct DiffReport {
    std::vector<DiffEntry> relations;  // descending by new_count, ties by relation
    DiffEntry edges_total;
    DiffEntry nodes_total;
};

DiffReport temporal_diff(const GraphStats& old_stats, const GraphStats& new_stats);

std::string diff_to_json(const DiffReport& report);
// growth column rendered like "1,232%"; undefined growth renders as "new".
std::string render_diff_tsv(const DiffReport& report);

// round-half-away-from-zero percent, e.g. (413, 4131) -> 1000.
long long growth_percent(long long old_count, long long new_count);

std::string current_timestamp_utc();

}  // namespace wdcs

#endif  // WDCS_GRAPH_ANALYTICS_HPP_

#include "wdcs/graph_analytics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "wdcs/errors.hpp"
#include "wdcs/text.hpp"

namespace wdcs {

using nlohmann::json;

uint32_t DirectedGraph::intern(const std::string& node) {
    const auto [it, inserted] = index_.emplace(node, static_cast<uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back(node);
    return it->second;
}

void DirectedGraph::add_edge(const std::string& from, const std::string& to) {
    const uint32_t u = intern(from);
    const uint32_t v = intern(to);
    edges_.emplace_back(u, v);
}

PageRankResult pagerank(const DirectedGraph& graph, PageRankOptions options) {
    PageRankResult result;
    const size_t n = graph.node_count();
    if (n == 0) return result;

    std::vector<uint32_t> out_degree(n, 0);
    for (const auto& [u, v] : graph.edges()) ++out_degree[u];

    // CSR over incoming edges.
    std::vector<uint32_t> in_offset(n + 1, 0);
    for (const auto& [u, v] : graph.edges()) ++in_offset[v + 1];
    for (size_t i = 1; i <= n; ++i) in_offset[i] += in_offset[i - 1];
    std::vector<uint32_t> in_source(graph.edge_count());
    {
        std::vector<uint32_t> cursor(in_offset.begin(), in_offset.end() - 1);
        for (const auto& [u, v] : graph.edges()) in_source[cursor[v]++] = u;
    }

    const double d = options.damping;
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    result.converged = false;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        double dangling = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (out_degree[i] == 0) dangling += x[i];
        const double base = (1.0 - d) / static_cast<double>(n) + d * dangling / static_cast<double>(n);

        double delta = 0.0;
        for (size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (uint32_t k = in_offset[v]; k < in_offset[v + 1]; ++k) {
                const uint32_t u = in_source[k];
                sum += x[u] / static_cast<double>(out_degree[u]);
            }
            next[v] = base + d * sum;
            delta += std::fabs(next[v] - x[v]);
        }
        x.swap(next);
        result.iterations = iter + 1;
        if (delta < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.scores = std::move(x);
    return result;
}

std::unordered_map<std::string, double> pagerank(const std::vector<EdgeRecord>& edges,
                                                 PageRankOptions options, bool* converged) {
    DirectedGraph graph;
    for (const EdgeRecord& rec : edges) graph.add_edge(rec.node1, rec.node2);
    const PageRankResult result = pagerank(graph, options);
    std::unordered_map<std::string, double> out;
    out.reserve(graph.node_count());
    for (size_t i = 0; i < graph.node_count(); ++i) out.emplace(graph.nodes()[i], result.scores[i]);
    if (converged) *converged = result.converged;
    return out;
}

namespace {

struct StatsAccumulator {
    DirectedGraph graph;
    std::map<std::string, long long> histogram;
    std::unordered_map<uint32_t, std::string> labels;

    void accept(const EdgeRecord& rec) {
        const uint32_t u = graph.intern(rec.node1);
        const uint32_t v = graph.intern(rec.node2);
        graph.add_edge(rec.node1, rec.node2);
        ++histogram[rec.relation];
        if (!rec.node1_label.empty()) labels.emplace(u, rec.node1_label);
        if (!rec.node2_label.empty()) labels.emplace(v, rec.node2_label);
    }

    GraphStats finish(int top_k, const PageRankOptions& options) {
        GraphStats stats;
        stats.node_count = graph.node_count();
        stats.edge_count = graph.edge_count();
        stats.relation_histogram = std::move(histogram);
        if (stats.node_count > 0) {
            stats.mean_degree_defined = true;
            stats.mean_degree =
                2.0 * static_cast<double>(stats.edge_count) / static_cast<double>(stats.node_count);
        }
        if (stats.node_count > 0 && top_k > 0) {
            const PageRankResult pr = pagerank(graph, options);
            stats.pagerank_converged = pr.converged;
            std::vector<uint32_t> order(graph.node_count());
            for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (pr.scores[a] != pr.scores[b]) return pr.scores[a] > pr.scores[b];
                return graph.nodes()[a] < graph.nodes()[b];
            });
            const size_t k = std::min<size_t>(static_cast<size_t>(top_k), order.size());
            for (size_t i = 0; i < k; ++i) {
                const uint32_t idx = order[i];
                PageRankEntry entry;
                entry.node = graph.nodes()[idx];
                const auto it = labels.find(idx);
                if (it != labels.end()) entry.label = it->second;
                entry.score = pr.scores[idx];
                stats.top_pagerank.push_back(std::move(entry));
            }
        }
        return stats;
    }
};

}  // namespace

GraphStats compute_stats(const std::vector<EdgeRecord>& edges, int top_k, PageRankOptions options) {
    StatsAccumulator acc;
    for (const EdgeRecord& rec : edges) acc.accept(rec);
    return acc.finish(top_k, options);
}

GraphStats compute_stats_file(const std::string& edge_path, int top_k, PageRankOptions options,
                              ReadOptions read_options) {
    StatsAccumulator acc;
    EdgeReader reader(edge_path, read_options);
    EdgeRecord rec;
    while (reader.next(rec)) acc.accept(rec);
    GraphStats stats = acc.finish(top_k, options);
    stats.produced_at = current_timestamp_utc();
    stats.input_digest = file_digest(edge_path);
    return stats;
}

std::string stats_to_json(const GraphStats& stats) {
    json j;
    j["node_count"] = stats.node_count;
    j["edge_count"] = stats.edge_count;
    j["relation_histogram"] = json::object();
    for (const auto& [relation, count] : stats.relation_histogram)
        j["relation_histogram"][relation] = count;
    if (stats.mean_degree_defined)
        j["mean_degree"] = stats.mean_degree;
    else
        j["mean_degree"] = nullptr;
    j["top_pagerank"] = json::array();
    for (const PageRankEntry& entry : stats.top_pagerank)
        j["top_pagerank"].push_back({{"node", entry.node}, {"label", entry.label}, {"score", entry.score}});
    j["pagerank_converged"] = stats.pagerank_converged;
    j["produced_at"] = stats.produced_at;
    j["input_digest"] = stats.input_digest;
    return j.dump(2) + "\n";
}

GraphStats stats_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("stats JSON parse error: ") + e.what());
    }
    GraphStats stats;
    stats.node_count = j.value("node_count", 0ULL);
    stats.edge_count = j.value("edge_count", 0ULL);
    if (j.contains("relation_histogram"))
        for (const auto& [relation, count] : j["relation_histogram"].items())
            stats.relation_histogram[relation] = count.get<long long>();
    if (j.contains("mean_degree") && !j["mean_degree"].is_null()) {
        stats.mean_degree_defined = true;
        stats.mean_degree = j["mean_degree"].get<double>();
    }
    if (j.contains("top_pagerank"))
        for (const auto& item : j["top_pagerank"]) {
            PageRankEntry entry;
            entry.node = item.value("node", "");
            entry.label = item.value("label", "");
            entry.score = item.value("score", 0.0);
            stats.top_pagerank.push_back(std::move(entry));
        }
    stats.pagerank_converged = j.value("pagerank_converged", true);
    stats.produced_at = j.value("produced_at", "");
    stats.input_digest = j.value("input_digest", "");
    return stats;
}

GraphStats load_stats(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open stats file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return stats_from_json(text);
}

std::string render_stats_tsv(const GraphStats& stats) {
    std::string out;
    out += "nodes\t" + std::to_string(stats.node_count) + "\n";
    out += "edges\t" + std::to_string(stats.edge_count) + "\n";
    out += "mean_degree\t";
    if (stats.mean_degree_defined) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", stats.mean_degree);
        out += buf;
    } else {
        out += "undefined";
    }
    out += "\n";
    for (const auto& [relation, count] : relation_frequency_distribution(stats.relation_histogram, 0))
        out += "relation\t" + relation + "\t" + std::to_string(count) + "\n";
    for (const PageRankEntry& entry : stats.top_pagerank) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", entry.score);
        out += "pagerank\t" + entry.node + "\t" + entry.label + "\t" + buf + "\n";
    }
    return out;
}

std::vector<RelationCount> relation_frequency_distribution(
    const std::map<std::string, long long>& histogram, int top_k,
    const std::vector<std::string>& exclude) {
    const std::unordered_set<std::string> excluded(exclude.begin(), exclude.end());
    std::vector<RelationCount> out;
    for (const auto& [relation, count] : histogram)
        if (!excluded.count(relation)) out.emplace_back(relation, count);
    std::sort(out.begin(), out.end(), [](const RelationCount& a, const RelationCount& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_k > 0 && out.size() > static_cast<size_t>(top_k)) out.resize(static_cast<size_t>(top_k));
    return out;
}

std::vector<RelationCount> relation_frequency_distribution(const std::vector<EdgeRecord>& edges,
                                                           int top_k,
                                                           const std::vector<std::string>& exclude) {
    std::map<std::string, long long> histogram;
    for (const EdgeRecord& rec : edges) ++histogram[rec.relation];
    return relation_frequency_distribution(histogram, top_k, exclude);
}

std::string render_freqdist_tsv(const std::vector<RelationCount>& distribution) {
    std::string out = "rank\trelation\tcount\n";
    for (size_t i = 0; i < distribution.size(); ++i)
        out += std::to_string(i + 1) + "\t" + distribution[i].first + "\t" +
               std::to_string(distribution[i].second) + "\n";
    return out;
}

namespace {

void expand_triples(const EdgeRecord& rec, std::unordered_set<std::string>& triples) {
    const auto left_labels = split_char(rec.node1_label, '|');
    const auto right_labels = split_char(rec.node2_label, '|');
    for (const auto l : left_labels) {
        const std::string l_norm = ascii_lower(trim(l));
        if (l_norm.empty()) continue;
        for (const auto r : right_labels) {
            const std::string r_norm = ascii_lower(trim(r));
            if (r_norm.empty()) continue;
            std::string key;
            key += std::to_string(l_norm.size());
            key += ':';
            key += l_norm;
            key += std::to_string(rec.relation.size());
            key += ':';
            key += rec.relation;
            key += r_norm;
            triples.insert(std::move(key));
        }
    }
}

double only_percent(long long only, long long both) {
    const long long denom = only + both;
    if (denom == 0) return 0.0;
    const double pct = 100.0 * static_cast<double>(only) / static_cast<double>(denom);
    return std::round(pct * 10.0) / 10.0;
}

}  // namespace

OverlapReport compute_overlap(const std::vector<EdgeRecord>& left,
                              const std::vector<EdgeRecord>& right) {
    std::unordered_set<std::string> left_triples, right_triples;
    for (const EdgeRecord& rec : left) expand_triples(rec, left_triples);
    for (const EdgeRecord& rec : right) expand_triples(rec, right_triples);

    OverlapReport report;
    for (const std::string& t : left_triples)
        if (right_triples.count(t))
            ++report.both;
        else
            ++report.left_only;
    report.right_only = static_cast<long long>(right_triples.size()) - report.both;
    report.left_only_pct = only_percent(report.left_only, report.both);
    report.right_only_pct = only_percent(report.right_only, report.both);
    return report;
}

OverlapReport compute_overlap(const std::string& left_path, const std::string& right_path,
                              ReadOptions read_options) {
    auto load = [&](const std::string& path) {
        std::vector<EdgeRecord> edges;
        EdgeReader reader(path, read_options);
        if (!reader.has_label_columns())
            throw ConfigError("edge file " + path +
                              " is missing label columns (node1;label, node2;label) required for overlap");
        EdgeRecord rec;
        while (reader.next(rec)) edges.push_back(rec);
        return edges;
    };
    const auto left = load(left_path);
    const auto right = load(right_path);
    return compute_overlap(left, right);
}

std::string overlap_to_json(const OverlapReport& report) {
    json j;
    j["both"] = report.both;
    j["left_only"] = report.left_only;
    j["right_only"] = report.right_only;
    j["left_only_pct"] = report.left_only_pct;
    j["right_only_pct"] = report.right_only_pct;
    j["counting_basis"] = report.counting_basis;
    return j.dump(2) + "\n";
}

std::string render_overlap_tsv(const OverlapReport& report) {
    char buf[64];
    std::string out = "both\t" + std::to_string(report.both) + "\n";
    std::snprintf(buf, sizeof(buf), "%.1f", report.left_only_pct);
    out += "left_only\t" + std::to_string(report.left_only) + "\t" + buf + "%\n";
    std::snprintf(buf, sizeof(buf), "%.1f", report.right_only_pct);
    out += "right_only\t" + std::to_string(report.right_only) + "\t" + buf + "%\n";
    out += "counting_basis\t" + report.counting_basis + "\n";
    return out;
}

long long growth_percent(long long old_count, long long new_count) {
    const double pct = 100.0 * static_cast<double>(new_count) / static_cast<double>(old_count);
    return static_cast<long long>(pct >= 0 ? std::floor(pct + 0.5) : std::ceil(pct - 0.5));
}

DiffReport temporal_diff(const GraphStats& old_stats, const GraphStats& new_stats) {
    DiffReport report;
    std::map<std::string, DiffEntry> entries;
    for (const auto& [relation, count] : old_stats.relation_histogram) {
        entries[relation].relation = relation;
        entries[relation].old_count = count;
    }
    for (const auto& [relation, count] : new_stats.relation_histogram) {
        entries[relation].relation = relation;
        entries[relation].new_count = count;
    }
    for (auto& [relation, entry] : entries) {
        if (entry.old_count > 0) {
            entry.growth_defined = true;
            entry.growth_pct = growth_percent(entry.old_count, entry.new_count);
        }
        report.relations.push_back(entry);
    }
    std::sort(report.relations.begin(), report.relations.end(),
              [](const DiffEntry& a, const DiffEntry& b) {
                  if (a.new_count != b.new_count) return a.new_count > b.new_count;
                  return a.relation < b.relation;
              });

    auto totals = [](const char* name, long long old_count, long long new_count) {
        DiffEntry entry;
        entry.relation = name;
        entry.old_count = old_count;
        entry.new_count = new_count;
        if (old_count > 0) {
            entry.growth_defined = true;
            entry.growth_pct = growth_percent(old_count, new_count);
        }
        return entry;
    };
    report.edges_total = totals("edges", static_cast<long long>(old_stats.edge_count),
                                static_cast<long long>(new_stats.edge_count));
    report.nodes_total = totals("nodes", static_cast<long long>(old_stats.node_count),
                                static_cast<long long>(new_stats.node_count));
    return report;
}

namespace {

json diff_entry_to_json(const DiffEntry& entry) {
    json j;
    j["relation"] = entry.relation;
    j["old_count"] = entry.old_count;
    j["new_count"] = entry.new_count;
    if (entry.growth_defined)
        j["growth_pct"] = entry.growth_pct;
    else
        j["growth_pct"] = nullptr;
    return j;
}

std::string growth_text(const DiffEntry& entry) {
    if (!entry.growth_defined) return "new";
    return format_thousands(entry.growth_pct) + "%";
}

}  // namespace

std::string diff_to_json(const DiffReport& report) {
    json j;
    j["relations"] = json::array();
    for (const DiffEntry& entry : report.relations) j["relations"].push_back(diff_entry_to_json(entry));
    j["edges"] = diff_entry_to_json(report.edges_total);
    j["nodes"] = diff_entry_to_json(report.nodes_total);
    return j.dump(2) + "\n";
}

std::string render_diff_tsv(const DiffReport& report) {
    std::string out = "relation\told_count\tnew_count\tgrowth\n";
    auto line = [&](const DiffEntry& entry) {
        out += entry.relation + "\t" + std::to_string(entry.old_count) + "\t" +
               std::to_string(entry.new_count) + "\t" + growth_text(entry) + "\n";
    };
    for (const DiffEntry& entry : report.relations) line(entry);
    line(report.edges_total);
    line(report.nodes_total);
    return out;
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace wdcs

// wikidata-cs: extract a commonsense subgraph from tabular Wikidata dumps and
// run analytics (stats, overlap, diff, freqdist) over edge files.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wdcs/edge_io.hpp"
#include "wdcs/errors.hpp"
#include "wdcs/graph_analytics.hpp"
#include "wdcs/pipeline.hpp"
#include "wdcs/text.hpp"

namespace {

using namespace wdcs;

void write_or_print(const std::string& out_path, const std::string& json_text,
                    const std::string& console_text) {
    if (out_path.empty()) {
        std::cout << console_text;
        return;
    }
    AtomicOutput out(out_path);
    out.stream() << json_text;
    out.commit();
}

PhraseCombiner parse_combiner(const std::string& name) {
    if (name == "min") return PhraseCombiner::MinToken;
    if (name == "product") return PhraseCombiner::Product;
    if (name == "lookup") return PhraseCombiner::LookupOnly;
    throw ConfigError("unknown combiner '" + name + "' (expected min, product or lookup)");
}

std::vector<std::string> parse_exclude(const std::string& csv) {
    std::vector<std::string> out;
    for (const auto part : split_char(csv, ',')) {
        const auto t = trim(part);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

void print_extract_warnings(const ExtractWarnings& warnings) {
    if (warnings.malformed_edge_rows)
        std::cerr << "note: skipped " << warnings.malformed_edge_rows << " malformed edge rows\n";
    if (warnings.malformed_node_rows)
        std::cerr << "note: skipped " << warnings.malformed_node_rows << " malformed node rows\n";
    if (warnings.duplicate_node_ids)
        std::cerr << "note: " << warnings.duplicate_node_ids
                  << " duplicate node ids (last occurrence kept)\n";
    if (warnings.duplicate_freq_terms)
        std::cerr << "note: " << warnings.duplicate_freq_terms
                  << " duplicate frequency terms (maximum kept)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Commonsense subgraph extraction and analytics for tabular knowledge graphs"};
    app.require_subcommand(1);
    app.set_config("--config");

    // extract
    auto* extract = app.add_subcommand("extract", "Run the full extraction pipeline");
    ExtractOptions opt;
    std::string combiner = "min";
    extract->add_option("--edges", opt.edges_path, "Input edge file (TSV)")->required();
    extract->add_option("--nodes", opt.nodes_path, "Input node file (TSV)")->required();
    extract->add_option("--freq", opt.freq_path, "Word frequency table (TSV)")->required();
    extract->add_option("--out", opt.out_path, "Output CSKG edge file")->required();
    extract->add_option("--report", opt.report_path, "Extraction report JSON (stdout if omitted)");
    extract->add_option("--threshold", opt.threshold, "Commonness threshold")->capture_default_str();
    extract->add_option("--combiner", combiner, "Phrase frequency policy: min|product|lookup")
        ->capture_default_str();
    extract->add_option("--mapping", opt.mapping_path, "Relation mapping TSV (builtin if omitted)");
    extract->add_option("--language", opt.language, "Label language tag")->capture_default_str();
    extract->add_flag("--strict", opt.strict, "Abort on the first malformed row");
    extract->add_flag("--strict-above", opt.strict_above, "Commonness comparison uses > instead of >=");
    extract->add_flag("--allow-leading-digit", opt.allow_leading_digit,
                      "Accept concept labels starting with a digit");
    extract->add_flag("--symmetric-canonical", opt.symmetric_canonical,
                      "Canonicalize endpoint order of symmetric relations before dedup");
    extract->add_option("--top", opt.census_top, "Entries kept in report censuses")
        ->capture_default_str();
    extract->add_option("--jobs", opt.jobs, "Worker threads (0 = all processors)")
        ->capture_default_str();
    extract->add_option("--chunk-records", opt.sort.chunk_records,
                        "Records per in-memory sort chunk before spilling")
        ->capture_default_str();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Graph statistics over an edge file");
    std::string stats_edges, stats_out;
    int stats_top = 10;
    stats_cmd->add_option("edges", stats_edges, "Edge file")->required();
    stats_cmd->add_option("--top", stats_top, "PageRank entries to keep")->capture_default_str();
    stats_cmd->add_option("--out", stats_out, "Write report JSON here (TSV to stdout if omitted)");

    // overlap
    auto* overlap_cmd = app.add_subcommand("overlap", "Label-level overlap of two edge files");
    std::string overlap_left, overlap_right, overlap_out;
    overlap_cmd->add_option("left", overlap_left, "Left edge file")->required();
    overlap_cmd->add_option("right", overlap_right, "Right edge file")->required();
    overlap_cmd->add_option("--out", overlap_out, "Write report JSON here (TSV to stdout if omitted)");

    // diff
    auto* diff_cmd = app.add_subcommand("diff", "Growth between two stats reports");
    std::string diff_old, diff_new, diff_out;
    diff_cmd->add_option("--old", diff_old, "Older stats JSON")->required();
    diff_cmd->add_option("--new", diff_new, "Newer stats JSON")->required();
    diff_cmd->add_option("--out", diff_out, "Write report JSON here (TSV to stdout if omitted)");

    // freqdist
    auto* freq_cmd = app.add_subcommand("freqdist", "Relation frequency distribution");
    std::string freq_edges, freq_out, freq_exclude;
    int freq_top = 50;
    freq_cmd->add_option("edges", freq_edges, "Edge file")->required();
    freq_cmd->add_option("--top", freq_top, "Number of relations to keep")->capture_default_str();
    freq_cmd->add_option("--exclude", freq_exclude, "Comma-separated relations to omit");
    freq_cmd->add_option("--out", freq_out, "Write TSV here (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (extract->parsed()) {
            opt.combiner = parse_combiner(combiner);
            const ExtractionReport report = run_extract(opt);
            print_extract_warnings(report.warnings);
            if (opt.report_path.empty()) std::cout << extraction_report_to_json(report);
            return 0;
        }
        if (stats_cmd->parsed()) {
            const GraphStats stats = compute_stats_file(stats_edges, stats_top);
            write_or_print(stats_out, stats_to_json(stats), render_stats_tsv(stats));
            return 0;
        }
        if (overlap_cmd->parsed()) {
            const OverlapReport report = compute_overlap(overlap_left, overlap_right);
            write_or_print(overlap_out, overlap_to_json(report), render_overlap_tsv(report));
            return 0;
        }
        if (diff_cmd->parsed()) {
            const DiffReport report = temporal_diff(load_stats(diff_old), load_stats(diff_new));
            write_or_print(diff_out, diff_to_json(report), render_diff_tsv(report));
            return 0;
        }
        if (freq_cmd->parsed()) {
            std::map<std::string, long long> histogram;
            EdgeReader reader(freq_edges);
            EdgeRecord rec;
            while (reader.next(rec)) ++histogram[rec.relation];
            const auto distribution =
                relation_frequency_distribution(histogram, freq_top, parse_exclude(freq_exclude));
            const std::string tsv = render_freqdist_tsv(distribution);
            if (freq_out.empty()) {
                std::cout << tsv;
            } else {
                AtomicOutput out(freq_out);
                out.stream() << tsv;
                out.commit();
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

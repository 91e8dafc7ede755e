#ifndef WDCS_PIPELINE_HPP_
#define WDCS_PIPELINE_HPP_

#include <string>
#include <vector>

#include "wdcs/commonness.hpp"
#include "wdcs/concept_filter.hpp"
#include "wdcs/external_sort.hpp"
#include "wdcs/graph_analytics.hpp"

namespace wdcs {

struct ExtractOptions {
    std::string edges_path;
    std::string nodes_path;
    std::string freq_path;
    std::string out_path;
    std::string report_path;   // empty: report JSON is returned but not written
    std::string mapping_path;  // empty: builtin table

    std::string language = "en";
    double threshold = 1e-06;
    PhraseCombiner combiner = PhraseCombiner::MinToken;
    bool strict = false;
    bool strict_above = false;
    bool allow_leading_digit = false;
    bool symmetric_canonical = false;
    int census_top = 50;  // entries kept in the report's relation censuses
    int jobs = 0;         // 0 = all available processors
    SortOptions sort;
};

struct StageCounts {
    size_t input = 0;
    size_t after_concept_filter = 0;
    size_t after_commonness_filter = 0;
    size_t after_mapping = 0;    // Map*-actioned edges only
    size_t after_blacklist = 0;
    size_t after_dedup = 0;
};

// Skip/warning tallies for diagnostic output; not part of the report JSON.
struct ExtractWarnings {
    size_t malformed_edge_rows = 0;
    size_t malformed_node_rows = 0;
    size_t duplicate_node_ids = 0;
    size_t duplicate_freq_terms = 0;
};

struct ExtractionReport {
    StageCounts stages;
    std::vector<RelationCount> relation_census;  // before mapping, top census_top
    std::vector<RelationCount> dropped_census;   // properties dropped in mapping
    double mapped_fraction = 0;                  // after_mapping / after_commonness_filter
    size_t blacklist_size = 0;

    // configuration echo
    double threshold = 1e-06;
    std::string combiner;
    std::string language;
    std::string mapping_provenance;
    bool strict_above = false;
    bool allow_leading_digit = false;
    bool symmetric_canonical = false;
    int jobs = 1;

    std::string edges_digest;
    std::string nodes_digest;
    std::string freq_digest;
    std::string produced_at;

    ExtractWarnings warnings;
};

// Runs the whole extraction: lift labels, concept and commonness filters,
// blacklist pass, relation mapping, consolidation, CSKG + provenance +
// report output. All outputs are written atomically; a thrown error leaves
// no partial files. The provenance sidecar lands at `<out_path>.prov.tsv`.
ExtractionReport run_extract(const ExtractOptions& options);

std::string extraction_report_to_json(const ExtractionReport& report);

const char* combiner_name(PhraseCombiner combiner);

}  // namespace wdcs

#endif  // WDCS_PIPELINE_HPP_

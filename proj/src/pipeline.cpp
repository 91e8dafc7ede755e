#include "wdcs/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <json.hpp>

#include "wdcs/errors.hpp"
#include "wdcs/relation_mapping.hpp"
#include "wdcs/stream_ops.hpp"
#include "wdcs/text.hpp"

namespace wdcs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Spill file holding the P1- and P2-filtered edges between the two passes.
class TempRecordFile {
public:
    explicit TempRecordFile(const std::string& temp_dir) {
        std::random_device rd;
        path_ = (fs::path(resolve_temp_dir(temp_dir)) /
                 ("wdcs-filtered-" + std::to_string(rd()) + ".bin"))
                    .string();
        out_.open(path_, std::ios::binary);
        if (!out_) throw InputError("cannot create temp file: " + path_);
    }
    ~TempRecordFile() {
        out_.close();
        in_.close();
        std::remove(path_.c_str());
    }

    void write(const EdgeRecord& rec) {
        const std::string bytes = serialize_edge(rec);
        const uint32_t len = static_cast<uint32_t>(bytes.size());
        out_.write(reinterpret_cast<const char*>(&len), 4);
        out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out_) throw InputError("write failure on temp file " + path_ +
                                    "; set WDCS_TMPDIR to a volume with more space");
    }

    void rewind_for_read() {
        out_.flush();
        out_.close();
        in_.open(path_, std::ios::binary);
        if (!in_) throw InputError("cannot reopen temp file: " + path_);
    }

    bool read(EdgeRecord& rec) {
        uint32_t len = 0;
        if (!in_.read(reinterpret_cast<char*>(&len), 4)) return false;
        buffer_.resize(len);
        if (!in_.read(buffer_.data(), len)) return false;
        rec = deserialize_edge(buffer_);
        return true;
    }

private:
    std::string path_;
    std::ofstream out_;
    std::ifstream in_;
    std::string buffer_;
};

struct FilterFlags {
    bool concept_pass = false;
    bool common_pass = false;
};

// Lifts labels and evaluates both per-edge predicates for one record.
FilterFlags classify(EdgeRecord& rec, const LabelMap& labels, const ConceptRule& rule,
                     const FrequencyTable& table, CommonnessThreshold threshold, bool strict_above) {
    FilterFlags flags;
    lift_labels(rec, labels);
    flags.concept_pass = is_concept_edge(rec, rule);
    if (flags.concept_pass)
        flags.common_pass = is_common_edge(rec, table, threshold, strict_above);
    return flags;
}

}  // namespace

const char* combiner_name(PhraseCombiner combiner) {
    switch (combiner) {
        case PhraseCombiner::MinToken: return "min";
        case PhraseCombiner::Product: return "product";
        case PhraseCombiner::LookupOnly: return "lookup";
    }
    return "min";
}

ExtractionReport run_extract(const ExtractOptions& options) {
    if (options.threshold <= 0)
        throw ConfigError("threshold must be positive");
    if (options.out_path.empty())
        throw ConfigError("output path is required");

    const MappingTable mapping = load_mapping(options.mapping_path);

    ExtractionReport report;
    report.threshold = options.threshold;
    report.combiner = combiner_name(options.combiner);
    report.language = options.language;
    report.mapping_provenance = mapping.provenance();
    report.strict_above = options.strict_above;
    report.allow_leading_digit = options.allow_leading_digit;
    report.symmetric_canonical = options.symmetric_canonical;
    const unsigned hw = std::thread::hardware_concurrency();
    report.jobs = options.jobs > 0 ? options.jobs : (hw > 0 ? static_cast<int>(hw) : 1);

    report.edges_digest = file_digest(options.edges_path);
    report.nodes_digest = file_digest(options.nodes_path);
    report.freq_digest = file_digest(options.freq_path);

    const FrequencyTable frequencies = load_frequency_table(options.freq_path, options.combiner);
    report.warnings.duplicate_freq_terms = frequencies.duplicates();

    NodeLabelStats node_stats;
    const LabelMap labels = read_node_labels(options.nodes_path, options.language,
                                             ReadOptions{options.strict}, &node_stats);
    report.warnings.duplicate_node_ids = node_stats.duplicates;
    report.warnings.malformed_node_rows = node_stats.malformed_rows;

    ConceptRule rule;
    rule.allow_leading_digit = options.allow_leading_digit;
    const CommonnessThreshold threshold{options.threshold};

    // Pass 1: lift + filter; survivors go to a temp spill, the blacklist and
    // the relation census accumulate along the way.
    TempRecordFile filtered(options.sort.temp_dir);
    NodeSet blacklist;
    std::map<std::string, long long> census;
    {
        EdgeReader reader(options.edges_path, ReadOptions{options.strict});
        const int jobs = report.jobs;
        const size_t batch_size = jobs > 1 ? 8192 : 1;
        std::vector<EdgeRecord> batch;
        std::vector<FilterFlags> flags;
        batch.reserve(batch_size);

        auto flush_batch = [&]() {
            if (batch.empty()) return;
            flags.assign(batch.size(), FilterFlags{});
            if (jobs > 1 && batch.size() > 256) {
                std::vector<std::thread> workers;
                const size_t stride = (batch.size() + jobs - 1) / jobs;
                for (int w = 0; w < jobs; ++w) {
                    const size_t lo = w * stride;
                    const size_t hi = std::min(batch.size(), lo + stride);
                    if (lo >= hi) break;
                    workers.emplace_back([&, lo, hi]() {
                        for (size_t i = lo; i < hi; ++i)
                            flags[i] = classify(batch[i], labels, rule, frequencies, threshold,
                                                options.strict_above);
                    });
                }
                for (auto& t : workers) t.join();
            } else {
                for (size_t i = 0; i < batch.size(); ++i)
                    flags[i] = classify(batch[i], labels, rule, frequencies, threshold,
                                        options.strict_above);
            }
            for (size_t i = 0; i < batch.size(); ++i) {
                if (!flags[i].concept_pass) continue;
                ++report.stages.after_concept_filter;
                if (!flags[i].common_pass) continue;
                ++report.stages.after_commonness_filter;
                ++census[batch[i].relation];
                accumulate_blacklist(batch[i], mapping, blacklist);
                filtered.write(batch[i]);
            }
            batch.clear();
        };

        EdgeRecord rec;
        while (reader.next(rec)) {
            ++report.stages.input;
            batch.push_back(std::move(rec));
            if (batch.size() >= batch_size) flush_batch();
        }
        flush_batch();
        report.warnings.malformed_edge_rows = reader.malformed_rows();
    }
    report.blacklist_size = blacklist.size();
    report.relation_census = relation_frequency_distribution(census, options.census_top);

    // Pass 2: map relations, drop blacklisted nodes, consolidate.
    Consolidator consolidator(options.symmetric_canonical, options.sort);
    std::map<std::string, long long> dropped;
    {
        filtered.rewind_for_read();
        EdgeRecord rec;
        while (filtered.read(rec)) {
            MapResult result = map_edge(rec, mapping);
            if (!result.edge) {
                ++dropped[rec.relation];
                continue;
            }
            ++report.stages.after_mapping;
            if (touches_blacklist(*result.edge, blacklist)) continue;
            ++report.stages.after_blacklist;
            consolidator.add(std::move(*result.edge));
        }
    }
    report.dropped_census = relation_frequency_distribution(dropped, options.census_top);
    report.mapped_fraction =
        report.stages.after_commonness_filter == 0
            ? 0.0
            : static_cast<double>(report.stages.after_mapping) /
                  static_cast<double>(report.stages.after_commonness_filter);

    const std::string prov_path = options.out_path + ".prov.tsv";
    AtomicOutput edges_out(options.out_path);
    AtomicOutput prov_out(prov_path);
    {
        CskgWriter edge_writer(edges_out.stream());
        ProvenanceWriter prov_writer(prov_out.stream());
        consolidator.finish([&](const CskgEdge& edge) { edge_writer.write(edge); },
                            [&](const ProvenanceRow& row) { prov_writer.write(row); });
    }
    report.stages.after_dedup = consolidator.output_count();
    report.produced_at = current_timestamp_utc();

    if (!options.report_path.empty()) {
        AtomicOutput report_out(options.report_path);
        report_out.stream() << extraction_report_to_json(report);
        report_out.commit();
    }
    edges_out.commit();
    prov_out.commit();
    return report;
}

namespace {

json census_to_json(const std::vector<RelationCount>& census) {
    json arr = json::array();
    for (const auto& [relation, count] : census)
        arr.push_back({{"relation", relation}, {"count", count}});
    return arr;
}

}  // namespace

std::string extraction_report_to_json(const ExtractionReport& report) {
    json j;
    j["stages"] = {
        {"input", report.stages.input},
        {"after_concept_filter", report.stages.after_concept_filter},
        {"after_commonness_filter", report.stages.after_commonness_filter},
        {"after_mapping", report.stages.after_mapping},
        {"after_blacklist", report.stages.after_blacklist},
        {"after_dedup", report.stages.after_dedup},
    };
    j["relation_census"] = census_to_json(report.relation_census);
    j["dropped_census"] = census_to_json(report.dropped_census);
    j["mapped_fraction"] = report.mapped_fraction;
    j["blacklist_size"] = report.blacklist_size;
    j["config"] = {
        {"threshold", report.threshold},
        {"combiner", report.combiner},
        {"language", report.language},
        {"mapping", report.mapping_provenance},
        {"strict_above", report.strict_above},
        {"allow_leading_digit", report.allow_leading_digit},
        {"symmetric_canonical", report.symmetric_canonical},
        {"jobs", report.jobs},
    };
    j["input_digests"] = {
        {"edges", report.edges_digest},
        {"nodes", report.nodes_digest},
        {"freq", report.freq_digest},
    };
    j["produced_at"] = report.produced_at;
    return j.dump(2) + "\n";
}

}  // namespace wdcs

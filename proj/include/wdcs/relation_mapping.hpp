#ifndef WDCS_RELATION_MAPPING_HPP_
#define WDCS_RELATION_MAPPING_HPP_

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wdcs/edge_io.hpp"
#include "wdcs/external_sort.hpp"
#include "wdcs/stream_ops.hpp"

namespace wdcs {

enum class MappingAction {
    MapForward,     // replace the relation, keep direction
    MapInverse,     // replace the relation and swap the endpoints
    DropBlacklist,  // drop the edge and blacklist both endpoints
    DropSilent,     // drop the edge, no side effects
};

struct MappingRule {
    std::string property;      // Wikidata property, e.g. P461
    MappingAction action;
    std::string target;        // ConceptNet relation for Map* actions, else empty
    std::string target_label;  // readable label of the target relation
};

// One rule per Wikidata property. The builtin table carries the standard
// mapping of the 50 most frequent concept-level relations: 44 mapped onto 15
// ConceptNet relations, 6 domain-specific ones dropped with node blacklisting.
class MappingTable {
public:
    static MappingTable builtin();
    // TSV `property<TAB>action<TAB>target<TAB>target_label`,
    // action in {forward, inverse, drop_blacklist, drop}.
    static MappingTable load(const std::string& path);

    const MappingRule* find(std::string_view property) const;
    const std::vector<MappingRule>& rules() const { return rules_; }
    const std::string& provenance() const { return provenance_; }

private:
    MappingTable(std::vector<MappingRule> rules, std::string provenance);
    void validate() const;

    std::vector<MappingRule> rules_;
    std::unordered_map<std::string, size_t> index_;
    std::string provenance_;
};

// Resolves an optional --mapping path: empty -> builtin.
MappingTable load_mapping(const std::string& path = "");

// "/r/PartOf" -> "partof"; used for edge id construction.
std::string conceptnet_local_name(std::string_view relation);
// "/r/PartOf" -> "part of"; conventional readable label.
std::string conceptnet_relation_label(std::string_view relation);

// An edge after direction normalization and relation replacement, still
// carrying the statement it came from for provenance.
struct MappedEdge {
    std::string node1;
    std::string relation;  // ConceptNet relation
    std::string node2;
    std::string node1_label;
    std::string node2_label;
    std::string original_property;
    std::string original_node1;
    std::string original_node2;
};

enum class DropReason { UnmappedRelation, BlacklistRelation };

struct MapResult {
    std::optional<MappedEdge> edge;
    std::optional<DropReason> drop;  // set iff edge is not
};

MapResult map_edge(const EdgeRecord& rec, const MappingTable& table);

// Endpoints of every edge whose relation carries DropBlacklist.
NodeSet build_blacklist(const std::vector<EdgeRecord>& edges, const MappingTable& table);
void accumulate_blacklist(const EdgeRecord& rec, const MappingTable& table, NodeSet& blacklist);

bool touches_blacklist(const MappedEdge& edge, const NodeSet& blacklist);
std::vector<MappedEdge> apply_blacklist(const std::vector<MappedEdge>& edges, const NodeSet& blacklist,
                                        size_t* removed = nullptr);

// One row of the 10-column CSKG edge table.
struct CskgEdge {
    std::string id;
    std::string node1;
    std::string relation;
    std::string node2;
    std::string node1_label;
    std::string node2_label;
    std::string relation_label;
    std::string relation_dimension;  // always empty
    std::string source;              // constant "WD"
    std::string sentence;            // always empty
};

struct ProvenanceRow {
    std::string final_edge_id;
    std::string original_property;
    std::string original_node1;
    std::string original_node2;
};

// Deduplicates mapped edges on (node1, relation, node2), assigns ids, fills
// the constant columns and emits in id order. With symmetric canonicalization
// on, edges of the symmetric relations are reordered so node1 <= node2 before
// deduplication. The retained labels come from the first record of each group.
class Consolidator {
public:
    explicit Consolidator(bool symmetric_canonicalization = false, SortOptions options = {});

    void add(MappedEdge edge);

    // Sinks run in output (id) order; every source statement of an edge is
    // reported right after the edge itself.
    void finish(const std::function<void(const CskgEdge&)>& edge_sink,
                const std::function<void(const ProvenanceRow&)>& provenance_sink);

    size_t output_count() const { return output_count_; }

private:
    bool symmetric_canonicalization_;
    SortOptions options_;
    ExternalSorter by_key_;
    size_t output_count_ = 0;
};

std::vector<CskgEdge> consolidate(const std::vector<MappedEdge>& edges,
                                  bool symmetric_canonicalization = false, SortOptions options = {});

bool is_symmetric_relation(std::string_view relation);

// Writes the fixed 10-column CSKG header and escaped rows.
class CskgWriter {
public:
    explicit CskgWriter(std::ostream& out);
    void write(const CskgEdge& edge);

    static const char* header();

private:
    std::ostream& out_;
};

class ProvenanceWriter {
public:
    explicit ProvenanceWriter(std::ostream& out);
    void write(const ProvenanceRow& row);

    static const char* header();

private:
    std::ostream& out_;
};

}  // namespace wdcs

#endif  // WDCS_RELATION_MAPPING_HPP_

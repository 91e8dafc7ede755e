#ifndef WDCS_STREAM_OPS_HPP_
#define WDCS_STREAM_OPS_HPP_

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "wdcs/edge_io.hpp"
#include "wdcs/external_sort.hpp"

namespace wdcs {

using NodeSet = std::unordered_set<std::string>;

// Fills node1_label/node2_label from the map; endpoints absent from the map
// end up with the label absent, whatever the input carried. Idempotent.
void lift_labels(EdgeRecord& rec, const LabelMap& labels);
std::vector<EdgeRecord> lift_labels(std::vector<EdgeRecord> edges, const LabelMap& labels);

enum class KeepMode { BothEndpoints, EitherEndpoint };

bool passes_if_exists(const EdgeRecord& rec, const NodeSet& keep, KeepMode mode);
std::vector<EdgeRecord> filter_if_exists(const std::vector<EdgeRecord>& edges, const NodeSet& keep,
                                         KeepMode mode = KeepMode::BothEndpoints);

enum class EdgeColumn { Id, Node1, Relation, Node2, Node1Label, Node2Label, RelationLabel, Source, Sentence };

inline const std::vector<EdgeColumn>& default_compact_key() {
    static const std::vector<EdgeColumn> key{EdgeColumn::Node1, EdgeColumn::Relation, EdgeColumn::Node2};
    return key;
}

std::string serialize_edge(const EdgeRecord& rec);
EdgeRecord deserialize_edge(const std::string& bytes);

// Deduplication on a key column subset: one record per distinct key tuple,
// the first one encountered, emitted in key order. Spills through
// ExternalSorter when the input exceeds one chunk.
class EdgeCompactor {
public:
    explicit EdgeCompactor(std::vector<EdgeColumn> key = default_compact_key(), SortOptions options = {});

    void add(const EdgeRecord& rec);
    void for_each(const std::function<void(EdgeRecord&)>& sink);

    size_t input_count() const { return sorter_.record_count(); }

private:
    std::vector<EdgeColumn> key_;
    ExternalSorter sorter_;
};

std::vector<EdgeRecord> compact(const std::vector<EdgeRecord>& edges,
                                const std::vector<EdgeColumn>& key = default_compact_key(),
                                SortOptions options = {});

}  // namespace wdcs

#endif  // WDCS_STREAM_OPS_HPP_

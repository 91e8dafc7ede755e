#include "wdcs/stream_ops.hpp"

#include <cstring>

#include "wdcs/errors.hpp"

namespace wdcs {

void lift_labels(EdgeRecord& rec, const LabelMap& labels) {
    const std::string* l1 = labels.find(rec.node1);
    const std::string* l2 = labels.find(rec.node2);
    rec.node1_label = l1 ? *l1 : std::string();
    rec.node2_label = l2 ? *l2 : std::string();
}

std::vector<EdgeRecord> lift_labels(std::vector<EdgeRecord> edges, const LabelMap& labels) {
    for (EdgeRecord& rec : edges) lift_labels(rec, labels);
    return edges;
}

bool passes_if_exists(const EdgeRecord& rec, const NodeSet& keep, KeepMode mode) {
    const bool n1 = keep.count(rec.node1) > 0;
    const bool n2 = keep.count(rec.node2) > 0;
    return mode == KeepMode::BothEndpoints ? (n1 && n2) : (n1 || n2);
}

std::vector<EdgeRecord> filter_if_exists(const std::vector<EdgeRecord>& edges, const NodeSet& keep,
                                         KeepMode mode) {
    std::vector<EdgeRecord> out;
    for (const EdgeRecord& rec : edges)
        if (passes_if_exists(rec, keep, mode)) out.push_back(rec);
    return out;
}

namespace {

const std::string& field_of(const EdgeRecord& rec, EdgeColumn col) {
    switch (col) {
        case EdgeColumn::Id: return rec.id;
        case EdgeColumn::Node1: return rec.node1;
        case EdgeColumn::Relation: return rec.relation;
        case EdgeColumn::Node2: return rec.node2;
        case EdgeColumn::Node1Label: return rec.node1_label;
        case EdgeColumn::Node2Label: return rec.node2_label;
        case EdgeColumn::RelationLabel: return rec.relation_label;
        case EdgeColumn::Source: return rec.source;
        case EdgeColumn::Sentence: return rec.sentence;
    }
    throw ConfigError("unknown edge column");
}

}  // namespace

std::string serialize_edge(const EdgeRecord& rec) {
    return serialize_fields({rec.id, rec.node1, rec.relation, rec.node2, rec.node1_label,
                             rec.node2_label, rec.relation_label, rec.source, rec.sentence});
}

EdgeRecord deserialize_edge(const std::string& bytes) {
    auto f = deserialize_fields(bytes);
    f.resize(9);
    EdgeRecord rec;
    rec.id = std::move(f[0]);
    rec.node1 = std::move(f[1]);
    rec.relation = std::move(f[2]);
    rec.node2 = std::move(f[3]);
    rec.node1_label = std::move(f[4]);
    rec.node2_label = std::move(f[5]);
    rec.relation_label = std::move(f[6]);
    rec.source = std::move(f[7]);
    rec.sentence = std::move(f[8]);
    return rec;
}

EdgeCompactor::EdgeCompactor(std::vector<EdgeColumn> key, SortOptions options)
    : key_(std::move(key)), sorter_(std::move(options)) {
    if (key_.empty()) throw ConfigError("compact key must name at least one column");
}

void EdgeCompactor::add(const EdgeRecord& rec) {
    std::string key;
    for (EdgeColumn col : key_) ExternalSorter::append_key_field(key, field_of(rec, col));
    sorter_.add(std::move(key), serialize_edge(rec));
}

void EdgeCompactor::for_each(const std::function<void(EdgeRecord&)>& sink) {
    sorter_.for_each_group([&](const std::string&, std::vector<std::string>& payloads) {
        EdgeRecord rec = deserialize_edge(payloads.front());
        sink(rec);
    });
}

std::vector<EdgeRecord> compact(const std::vector<EdgeRecord>& edges,
                                const std::vector<EdgeColumn>& key, SortOptions options) {
    EdgeCompactor compactor(key, std::move(options));
    for (const EdgeRecord& rec : edges) compactor.add(rec);
    std::vector<EdgeRecord> out;
    compactor.for_each([&](EdgeRecord& rec) { out.push_back(std::move(rec)); });
    return out;
}

}  // namespace wdcs

#include "wdcs/relation_mapping.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "wdcs/errors.hpp"
#include "wdcs/text.hpp"
#include "wdcs/tsv.hpp"

namespace wdcs {

namespace {

constexpr auto kForward = MappingAction::MapForward;
constexpr auto kInverse = MappingAction::MapInverse;
constexpr auto kBlacklist = MappingAction::DropBlacklist;

// ConceptNet 5.7 relation vocabulary, used to sanity-check inverse targets in
// custom mapping files.
const std::unordered_set<std::string>& known_conceptnet_relations() {
    static const std::unordered_set<std::string> known{
        "/r/RelatedTo", "/r/FormOf", "/r/IsA", "/r/PartOf", "/r/HasA", "/r/UsedFor",
        "/r/CapableOf", "/r/AtLocation", "/r/Causes", "/r/HasSubevent", "/r/HasFirstSubevent",
        "/r/HasLastSubevent", "/r/HasPrerequisite", "/r/HasProperty", "/r/MotivatedByGoal",
        "/r/ObstructedBy", "/r/Desires", "/r/CreatedBy", "/r/Synonym", "/r/Antonym",
        "/r/DistinctFrom", "/r/DerivedFrom", "/r/SymbolOf", "/r/DefinedAs", "/r/MannerOf",
        "/r/LocatedNear", "/r/HasContext", "/r/SimilarTo", "/r/EtymologicallyRelatedTo",
        "/r/EtymologicallyDerivedFrom", "/r/CausesDesire", "/r/MadeOf", "/r/ReceivesAction",
        "/r/NotDesires", "/r/NotUsedFor", "/r/NotCapableOf", "/r/NotHasProperty",
    };
    return known;
}

MappingRule map_rule(const char* property, MappingAction action, const char* target) {
    return MappingRule{property, action, target, conceptnet_relation_label(target)};
}

MappingRule drop_rule(const char* property) {
    return MappingRule{property, kBlacklist, "", ""};
}

}  // namespace

std::string conceptnet_local_name(std::string_view relation) {
    const size_t slash = relation.rfind('/');
    std::string_view local = slash == std::string_view::npos ? relation : relation.substr(slash + 1);
    return ascii_lower(local);
}

std::string conceptnet_relation_label(std::string_view relation) {
    const size_t slash = relation.rfind('/');
    std::string_view local = slash == std::string_view::npos ? relation : relation.substr(slash + 1);
    std::string out;
    for (size_t i = 0; i < local.size(); ++i) {
        const char c = local[i];
        if (c >= 'A' && c <= 'Z') {
            if (i > 0) out.push_back(' ');
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            out.push_back(c);
        }
    }
    return out;
}

MappingTable MappingTable::builtin() {
    std::vector<MappingRule> rules = {
        map_rule("P1889", kForward, "/r/DistinctFrom"),      // different from
        map_rule("P461", kForward, "/r/Antonym"),            // opposite of
        map_rule("P460", kForward, "/r/Synonym"),            // said to be the same as
        map_rule("P1382", kForward, "/r/SimilarTo"),         // partially coincident with
        map_rule("P138", kForward, "/r/DerivedFrom"),        // named after
        map_rule("P1074", kForward, "/r/DerivedFrom"),       // fictional analog of
        map_rule("P31", kForward, "/r/IsA"),                 // instance of
        map_rule("P279", kForward, "/r/IsA"),                // subclass of
        map_rule("P1647", kForward, "/r/IsA"),               // subproperty of
        map_rule("P361", kForward, "/r/PartOf"),             // part of
        map_rule("P527", kInverse, "/r/PartOf"),             // has part
        map_rule("P2670", kInverse, "/r/PartOf"),            // has parts of the class
        map_rule("P186", kForward, "/r/MadeOf"),             // material used
        map_rule("P360", kForward, "/r/MadeOf"),             // is a list of
        map_rule("P2354", kInverse, "/r/MadeOf"),            // has list
        map_rule("P1056", kInverse, "/r/CreatedBy"),         // product or material produced
        map_rule("P366", kForward, "/r/UsedFor"),            // use
        map_rule("P2283", kInverse, "/r/UsedFor"),           // uses
        map_rule("P1535", kForward, "/r/UsedFor"),           // used by
        map_rule("P462", kForward, "/r/HasProperty"),        // color
        map_rule("P1552", kForward, "/r/HasProperty"),       // has quality
        map_rule("P1963", kForward, "/r/HasProperty"),       // properties for this type
        map_rule("P1687", kForward, "/r/HasProperty"),       // Wikidata property
        map_rule("P21", kForward, "/r/HasProperty"),         // sex or gender
        map_rule("P828", kInverse, "/r/Causes"),             // has cause
        map_rule("P1542", kForward, "/r/Causes"),            // has effect
        map_rule("P780", kForward, "/r/Causes"),             // symptoms
        map_rule("P156", kInverse, "/r/HasPrerequisite"),    // followed by
        map_rule("P155", kForward, "/r/HasPrerequisite"),    // follows
        map_rule("P1269", kForward, "/r/HasContext"),        // facet of
        map_rule("P425", kForward, "/r/HasContext"),         // field of this occupation
        map_rule("P1995", kForward, "/r/HasContext"),        // health specialty
        map_rule("P921", kForward, "/r/HasContext"),         // main subject
        map_rule("P2094", kForward, "/r/HasContext"),        // competition class
        map_rule("P136", kForward, "/r/HasContext"),         // genre
        map_rule("P2579", kForward, "/r/HasContext"),        // studied by
        map_rule("P101", kForward, "/r/HasContext"),         // field of work
        map_rule("P689", kForward, "/r/HasContext"),         // afflicts
        map_rule("P3095", kInverse, "/r/HasContext"),        // practiced by
        map_rule("P180", kForward, "/r/HasContext"),         // depicts
        map_rule("P641", kForward, "/r/HasContext"),         // sport
        map_rule("P1659", kForward, "/r/RelatedTo"),         // see also
        map_rule("P1629", kForward, "/r/RelatedTo"),         // subject item of this property
        map_rule("P1696", kForward, "/r/RelatedTo"),         // inverse property
        // Domain-specific relations whose nodes get blacklisted.
        drop_rule("P681"),   // cell component
        drop_rule("P2548"),  // strand orientation
        drop_rule("P680"),   // molecular function
        drop_rule("P682"),   // biological process
        drop_rule("P816"),   // decays to
        drop_rule("P2302"),  // property constraint
    };
    return MappingTable(std::move(rules), "builtin");
}

MappingTable::MappingTable(std::vector<MappingRule> rules, std::string provenance)
    : rules_(std::move(rules)), provenance_(std::move(provenance)) {
    for (size_t i = 0; i < rules_.size(); ++i) {
        const auto [it, inserted] = index_.emplace(rules_[i].property, i);
        if (!inserted)
            throw ConfigError("mapping table " + provenance_ + ": duplicate rule for property " +
                              rules_[i].property);
    }
    validate();
}

void MappingTable::validate() const {
    std::unordered_set<std::string> forward_targets;
    for (const MappingRule& rule : rules_)
        if (rule.action == MappingAction::MapForward) forward_targets.insert(rule.target);

    for (const MappingRule& rule : rules_) {
        const bool mapped =
            rule.action == MappingAction::MapForward || rule.action == MappingAction::MapInverse;
        if (mapped) {
            if (rule.target.rfind("/r/", 0) != 0)
                throw ConfigError("mapping table " + provenance_ + ": rule for " + rule.property +
                                  " has malformed relation '" + rule.target +
                                  "' (expected /r/... form)");
        } else if (!rule.target.empty()) {
            throw ConfigError("mapping table " + provenance_ + ": drop rule for " + rule.property +
                              " must not name a target relation");
        }
        if (rule.action == MappingAction::MapInverse && !forward_targets.count(rule.target) &&
            !known_conceptnet_relations().count(rule.target))
            throw ConfigError("mapping table " + provenance_ + ": inverse rule for " + rule.property +
                              " targets unknown relation " + rule.target);
    }
}

MappingTable MappingTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open mapping file: " + path);

    std::vector<MappingRule> rules;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line_number == 1 && line.rfind("property\t", 0) == 0) continue;

        const auto cells = tsv_split(line);
        if (cells.size() != 4)
            throw ConfigError("mapping file " + path + ":" + std::to_string(line_number) +
                              ": expected 4 columns (property, action, target, target_label)");
        MappingRule rule;
        rule.property = std::string(cells[0]);
        const std::string_view action = cells[1];
        if (action == "forward") rule.action = MappingAction::MapForward;
        else if (action == "inverse") rule.action = MappingAction::MapInverse;
        else if (action == "drop_blacklist") rule.action = MappingAction::DropBlacklist;
        else if (action == "drop") rule.action = MappingAction::DropSilent;
        else
            throw ConfigError("mapping file " + path + ":" + std::to_string(line_number) +
                              ": unknown action keyword '" + std::string(action) + "'");
        rule.target = std::string(cells[2]);
        rule.target_label = tsv_unescape(cells[3]);
        if (rule.target_label.empty() && !rule.target.empty())
            rule.target_label = conceptnet_relation_label(rule.target);
        if (rule.property.empty())
            throw ConfigError("mapping file " + path + ":" + std::to_string(line_number) +
                              ": empty property");
        rules.push_back(std::move(rule));
    }
    if (in.bad()) throw InputError("I/O failure while reading " + path);

    return MappingTable(std::move(rules), path);
}

MappingTable load_mapping(const std::string& path) {
    return path.empty() ? MappingTable::builtin() : MappingTable::load(path);
}

const MappingRule* MappingTable::find(std::string_view property) const {
    const auto it = index_.find(std::string(property));
    return it == index_.end() ? nullptr : &rules_[it->second];
}

MapResult map_edge(const EdgeRecord& rec, const MappingTable& table) {
    MapResult result;
    const MappingRule* rule = table.find(rec.relation);
    if (!rule || rule->action == MappingAction::DropSilent) {
        result.drop = DropReason::UnmappedRelation;
        return result;
    }
    if (rule->action == MappingAction::DropBlacklist) {
        result.drop = DropReason::BlacklistRelation;
        return result;
    }
    MappedEdge edge;
    edge.relation = rule->target;
    edge.original_property = rec.relation;
    edge.original_node1 = rec.node1;
    edge.original_node2 = rec.node2;
    if (rule->action == MappingAction::MapForward) {
        edge.node1 = rec.node1;
        edge.node2 = rec.node2;
        edge.node1_label = rec.node1_label;
        edge.node2_label = rec.node2_label;
    } else {
        edge.node1 = rec.node2;
        edge.node2 = rec.node1;
        edge.node1_label = rec.node2_label;
        edge.node2_label = rec.node1_label;
    }
    result.edge = std::move(edge);
    return result;
}

void accumulate_blacklist(const EdgeRecord& rec, const MappingTable& table, NodeSet& blacklist) {
    const MappingRule* rule = table.find(rec.relation);
    if (rule && rule->action == MappingAction::DropBlacklist) {
        blacklist.insert(rec.node1);
        blacklist.insert(rec.node2);
    }
}

NodeSet build_blacklist(const std::vector<EdgeRecord>& edges, const MappingTable& table) {
    NodeSet blacklist;
    for (const EdgeRecord& rec : edges) accumulate_blacklist(rec, table, blacklist);
    return blacklist;
}

bool touches_blacklist(const MappedEdge& edge, const NodeSet& blacklist) {
    return blacklist.count(edge.node1) > 0 || blacklist.count(edge.node2) > 0;
}

std::vector<MappedEdge> apply_blacklist(const std::vector<MappedEdge>& edges, const NodeSet& blacklist,
                                        size_t* removed) {
    std::vector<MappedEdge> out;
    size_t dropped = 0;
    for (const MappedEdge& edge : edges) {
        if (touches_blacklist(edge, blacklist))
            ++dropped;
        else
            out.push_back(edge);
    }
    if (removed) *removed = dropped;
    return out;
}

bool is_symmetric_relation(std::string_view relation) {
    return relation == "/r/Antonym" || relation == "/r/Synonym" || relation == "/r/DistinctFrom" ||
           relation == "/r/SimilarTo";
}

Consolidator::Consolidator(bool symmetric_canonicalization, SortOptions options)
    : symmetric_canonicalization_(symmetric_canonicalization),
      options_(options),
      by_key_(options) {}

void Consolidator::add(MappedEdge edge) {
    if (symmetric_canonicalization_ && is_symmetric_relation(edge.relation) && edge.node2 < edge.node1) {
        std::swap(edge.node1, edge.node2);
        std::swap(edge.node1_label, edge.node2_label);
    }
    std::string key;
    ExternalSorter::append_key_field(key, edge.node1);
    ExternalSorter::append_key_field(key, edge.relation);
    ExternalSorter::append_key_field(key, edge.node2);
    by_key_.add(std::move(key),
                serialize_fields({edge.node1, edge.relation, edge.node2, edge.node1_label,
                                  edge.node2_label, edge.original_property, edge.original_node1,
                                  edge.original_node2}));
}

void Consolidator::finish(const std::function<void(const CskgEdge&)>& edge_sink,
                          const std::function<void(const ProvenanceRow&)>& provenance_sink) {
    ExternalSorter by_id(options_);
    std::unordered_map<std::string, uint32_t> id_uses;

    by_key_.for_each_group([&](const std::string&, std::vector<std::string>& payloads) {
        const auto first = deserialize_fields(payloads.front());
        CskgEdge edge;
        edge.node1 = first[0];
        edge.relation = first[1];
        edge.node2 = first[2];
        edge.node1_label = first[3];
        edge.node2_label = first[4];
        edge.relation_label = conceptnet_relation_label(edge.relation);
        edge.source = "WD";

        const std::string base =
            edge.node1 + "-" + conceptnet_local_name(edge.relation) + "-" + edge.node2;
        const uint32_t n = id_uses[base]++;
        if (n == 0) {
            edge.id = base;
        } else if (n <= 9999) {
            char suffix[8];
            std::snprintf(suffix, sizeof(suffix), "-%04u", n);
            edge.id = base + suffix;
        } else {
            throw InputError("edge id collision space exhausted for " + base);
        }

        std::vector<std::string> fields{edge.id,          edge.node1,       edge.relation,
                                        edge.node2,       edge.node1_label, edge.node2_label,
                                        edge.relation_label};
        for (const std::string& payload : payloads) {
            auto f = deserialize_fields(payload);
            fields.push_back(std::move(f[5]));  // original_property
            fields.push_back(std::move(f[6]));  // original_node1
            fields.push_back(std::move(f[7]));  // original_node2
        }
        by_id.add(edge.id, serialize_fields(fields));
    });

    by_id.for_each_group([&](const std::string&, std::vector<std::string>& payloads) {
        for (const std::string& payload : payloads) {
            const auto fields = deserialize_fields(payload);
            CskgEdge edge;
            edge.id = fields[0];
            edge.node1 = fields[1];
            edge.relation = fields[2];
            edge.node2 = fields[3];
            edge.node1_label = fields[4];
            edge.node2_label = fields[5];
            edge.relation_label = fields[6];
            edge.source = "WD";
            edge_sink(edge);
            ++output_count_;
            for (size_t i = 7; i + 3 <= fields.size(); i += 3) {
                ProvenanceRow row;
                row.final_edge_id = edge.id;
                row.original_property = fields[i];
                row.original_node1 = fields[i + 1];
                row.original_node2 = fields[i + 2];
                provenance_sink(row);
            }
        }
    });
}

std::vector<CskgEdge> consolidate(const std::vector<MappedEdge>& edges,
                                  bool symmetric_canonicalization, SortOptions options) {
    Consolidator consolidator(symmetric_canonicalization, std::move(options));
    for (const MappedEdge& edge : edges) consolidator.add(edge);
    std::vector<CskgEdge> out;
    consolidator.finish([&](const CskgEdge& e) { out.push_back(e); }, [](const ProvenanceRow&) {});
    return out;
}

const char* CskgWriter::header() {
    return "id\tnode1\trelation\tnode2\tnode1;label\tnode2;label\trelation;label\trelation;"
           "dimension\tsource\tsentence";
}

CskgWriter::CskgWriter(std::ostream& out) : out_(out) {
    out_ << header() << '\n';
}

void CskgWriter::write(const CskgEdge& edge) {
    out_ << tsv_escape(edge.id) << '\t' << tsv_escape(edge.node1) << '\t'
         << tsv_escape(edge.relation) << '\t' << tsv_escape(edge.node2) << '\t'
         << tsv_escape(edge.node1_label) << '\t' << tsv_escape(edge.node2_label) << '\t'
         << tsv_escape(edge.relation_label) << '\t' << tsv_escape(edge.relation_dimension) << '\t'
         << tsv_escape(edge.source) << '\t' << tsv_escape(edge.sentence) << '\n';
}

const char* ProvenanceWriter::header() {
    return "final_edge_id\toriginal_property\toriginal_node1\toriginal_node2";
}

ProvenanceWriter::ProvenanceWriter(std::ostream& out) : out_(out) {
    out_ << header() << '\n';
}

void ProvenanceWriter::write(const ProvenanceRow& row) {
    out_ << tsv_escape(row.final_edge_id) << '\t' << tsv_escape(row.original_property) << '\t'
         << tsv_escape(row.original_node1) << '\t' << tsv_escape(row.original_node2) << '\n';
}

}  // namespace wdcs

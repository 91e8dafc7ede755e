#ifndef WDCS_EDGE_IO_HPP_
#define WDCS_EDGE_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wdcs {

// One directed labeled edge of a tabular KG. Optional fields use the empty
// string for "absent"; a valid row never has empty node1/relation/node2.
struct EdgeRecord {
    std::string id;
    std::string node1;
    std::string relation;
    std::string node2;
    std::string node1_label;
    std::string node2_label;
    std::string relation_label;
    std::string source;
    std::string sentence;

    bool operator==(const EdgeRecord&) const = default;
};

struct NodeRecord {
    std::string id;
    std::string label;  // empty when the node has no label in the requested language
};

// node id -> label, for one language. Absent ids yield nullptr from find(),
// never an empty string.
class LabelMap {
public:
    void insert_or_assign(const std::string& id, std::string label) {
        auto [it, inserted] = map_.insert_or_assign(id, std::move(label));
        if (!inserted) ++duplicates_;
    }
    const std::string* find(std::string_view id) const {
        auto it = map_.find(std::string(id));
        return it == map_.end() ? nullptr : &it->second;
    }
    size_t size() const { return map_.size(); }
    size_t duplicates() const { return duplicates_; }

private:
    std::unordered_map<std::string, std::string> map_;
    size_t duplicates_ = 0;
};

// Row error policy for readers: skip-and-count by default, abort in strict.
struct ReadOptions {
    bool strict = false;
};

// Streaming reader for tab-separated edge files. The first line is a header;
// required columns are node1, node2 and the relation column, which may be
// spelled either `label` (KGTK convention) or `relation`. When both appear,
// `relation` wins and `label` is ignored. Memory use is one row regardless of
// file size.
class EdgeReader {
public:
    EdgeReader(const std::string& path, ReadOptions options = {});

    // Fills `out` with the next valid record; returns false at end of file.
    bool next(EdgeRecord& out);

    size_t malformed_rows() const { return malformed_; }
    const std::string& path() const { return path_; }
    bool has_label_columns() const { return idx_node1_label_ >= 0 && idx_node2_label_ >= 0; }

private:
    std::string path_;
    ReadOptions options_;
    std::ifstream in_;
    std::string line_;
    size_t line_number_ = 0;
    size_t malformed_ = 0;
    size_t column_count_ = 0;
    // -1 = column not present in this file.
    int idx_id_ = -1, idx_node1_ = -1, idx_relation_ = -1, idx_node2_ = -1;
    int idx_node1_label_ = -1, idx_node2_label_ = -1, idx_relation_label_ = -1;
    int idx_source_ = -1, idx_sentence_ = -1;
};

// Writes edge files with the canonical 9-column header. Values are escaped on
// write; the file ends with a trailing newline.
class EdgeWriter {
public:
    explicit EdgeWriter(std::ostream& out);
    void write(const EdgeRecord& rec);

    static const char* header();

private:
    std::ostream& out_;
};

// Writes to `<path>.tmp` and renames into place on commit(); the destructor
// removes the temp file if commit() was never reached, so a failed run leaves
// no partial outputs.
class AtomicOutput {
public:
    explicit AtomicOutput(std::string path);
    ~AtomicOutput();
    AtomicOutput(const AtomicOutput&) = delete;
    AtomicOutput& operator=(const AtomicOutput&) = delete;

    std::ostream& stream() { return out_; }
    void commit();

private:
    std::string path_;
    std::string temp_path_;
    std::ofstream out_;
    bool committed_ = false;
};

struct NodeLabelStats {
    size_t duplicates = 0;       // retained-language ids seen more than once
    size_t malformed_rows = 0;
};

// Loads the node file (required columns: id, label) keeping only labels in
// the requested language. Cells of the exact form 'text'@lang carry a
// language tag; plain cells are treated as being in the requested language.
LabelMap read_node_labels(const std::string& path, const std::string& language_tag = "en",
                          ReadOptions options = {}, NodeLabelStats* stats = nullptr);

}  // namespace wdcs

#endif  // WDCS_EDGE_IO_HPP_

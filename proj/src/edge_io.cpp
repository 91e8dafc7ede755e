#include "wdcs/edge_io.hpp"

#include <cstdio>

#include "wdcs/errors.hpp"
#include "wdcs/tsv.hpp"

namespace wdcs {

namespace {

std::string row_context(const std::string& path, size_t line_number) {
    return path + ":" + std::to_string(line_number);
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

EdgeReader::EdgeReader(const std::string& path, ReadOptions options)
    : path_(path), options_(options), in_(path, std::ios::binary) {
    if (!in_) throw InputError("cannot open edge file: " + path);
    if (!std::getline(in_, line_)) throw InputError("edge file is empty (no header): " + path);
    strip_cr(line_);
    ++line_number_;

    const auto cells = tsv_split(line_);
    column_count_ = cells.size();
    int idx_kgtk_label = -1;
    for (size_t i = 0; i < cells.size(); ++i) {
        const std::string_view name = cells[i];
        const int idx = static_cast<int>(i);
        if (name == "id") idx_id_ = idx;
        else if (name == "node1") idx_node1_ = idx;
        else if (name == "relation") idx_relation_ = idx;
        else if (name == "label") idx_kgtk_label = idx;
        else if (name == "node2") idx_node2_ = idx;
        else if (name == "node1;label") idx_node1_label_ = idx;
        else if (name == "node2;label") idx_node2_label_ = idx;
        else if (name == "relation;label") idx_relation_label_ = idx;
        else if (name == "source") idx_source_ = idx;
        else if (name == "sentence") idx_sentence_ = idx;
        // anything else is carried by the file but not by us
    }
    if (idx_relation_ < 0) idx_relation_ = idx_kgtk_label;

    if (idx_node1_ < 0) throw ConfigError("edge file " + path + " is missing required column: node1");
    if (idx_relation_ < 0)
        throw ConfigError("edge file " + path + " is missing required column: label or relation");
    if (idx_node2_ < 0) throw ConfigError("edge file " + path + " is missing required column: node2");
}

bool EdgeReader::next(EdgeRecord& out) {
    while (std::getline(in_, line_)) {
        strip_cr(line_);
        ++line_number_;
        if (line_.empty()) continue;  // blank line, not a record

        const auto cells = tsv_split(line_);
        auto malformed = [&](const char* why) -> bool {
            if (options_.strict)
                throw InputError("malformed row at " + row_context(path_, line_number_) + ": " + why);
            ++malformed_;
            return false;
        };
        if (cells.size() != column_count_) {
            malformed("column count does not match header");
            continue;
        }
        auto cell = [&](int idx) -> std::string {
            return idx < 0 ? std::string() : tsv_unescape(cells[static_cast<size_t>(idx)]);
        };
        out.id = cell(idx_id_);
        out.node1 = cell(idx_node1_);
        out.relation = cell(idx_relation_);
        out.node2 = cell(idx_node2_);
        out.node1_label = cell(idx_node1_label_);
        out.node2_label = cell(idx_node2_label_);
        out.relation_label = cell(idx_relation_label_);
        out.source = cell(idx_source_);
        out.sentence = cell(idx_sentence_);
        if (out.node1.empty() || out.relation.empty() || out.node2.empty()) {
            malformed("empty node1, relation or node2");
            continue;
        }
        return true;
    }
    if (in_.bad()) throw InputError("I/O failure while reading " + path_);
    return false;
}

const char* EdgeWriter::header() {
    return "id\tnode1\trelation\tnode2\tnode1;label\tnode2;label\trelation;label\tsource\tsentence";
}

EdgeWriter::EdgeWriter(std::ostream& out) : out_(out) {
    out_ << header() << '\n';
}

void EdgeWriter::write(const EdgeRecord& rec) {
    out_ << tsv_escape(rec.id) << '\t' << tsv_escape(rec.node1) << '\t' << tsv_escape(rec.relation)
         << '\t' << tsv_escape(rec.node2) << '\t' << tsv_escape(rec.node1_label) << '\t'
         << tsv_escape(rec.node2_label) << '\t' << tsv_escape(rec.relation_label) << '\t'
         << tsv_escape(rec.source) << '\t' << tsv_escape(rec.sentence) << '\n';
}

AtomicOutput::AtomicOutput(std::string path)
    : path_(std::move(path)), temp_path_(path_ + ".tmp"), out_(temp_path_, std::ios::binary) {
    if (!out_) throw InputError("cannot open output file for writing: " + temp_path_);
}

AtomicOutput::~AtomicOutput() {
    if (!committed_) {
        out_.close();
        std::remove(temp_path_.c_str());
    }
}

void AtomicOutput::commit() {
    out_.flush();
    if (!out_) throw InputError("write failure on " + temp_path_);
    out_.close();
    if (std::rename(temp_path_.c_str(), path_.c_str()) != 0)
        throw InputError("cannot rename " + temp_path_ + " to " + path_);
    committed_ = true;
}

namespace {

// Parses a KGTK-style language-qualified string of the exact form 'text'@lang.
// Returns true and fills text/lang when the cell matches; plain cells return
// false and are handled by the caller.
bool parse_language_qualified(std::string_view cell, std::string& text, std::string& lang) {
    if (cell.size() < 4 || cell.front() != '\'') return false;
    const size_t at = cell.rfind('@');
    if (at == std::string_view::npos || at < 2 || cell[at - 1] != '\'') return false;
    const std::string_view tag = cell.substr(at + 1);
    if (tag.empty()) return false;
    for (char c : tag) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
        if (!ok) return false;
    }
    text.assign(cell.substr(1, at - 2));
    // KGTK escapes quotes inside the quoted text.
    size_t p;
    while ((p = text.find("\\'")) != std::string::npos) text.erase(p, 1);
    lang.assign(tag);
    return true;
}

}  // namespace

LabelMap read_node_labels(const std::string& path, const std::string& language_tag,
                          ReadOptions options, NodeLabelStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open node file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError("node file is empty (no header): " + path);
    strip_cr(line);

    const auto header = tsv_split(line);
    int idx_id = -1, idx_label = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "id") idx_id = static_cast<int>(i);
        else if (header[i] == "label") idx_label = static_cast<int>(i);
    }
    if (idx_id < 0) throw ConfigError("node file " + path + " is missing required column: id");
    if (idx_label < 0) throw ConfigError("node file " + path + " is missing required column: label");

    LabelMap map;
    NodeLabelStats local;
    size_t line_number = 1;
    while (std::getline(in, line)) {
        strip_cr(line);
        ++line_number;
        if (line.empty()) continue;
        const auto cells = tsv_split(line);
        if (cells.size() != header.size() || cells[static_cast<size_t>(idx_id)].empty()) {
            if (options.strict)
                throw InputError("malformed row at " + row_context(path, line_number));
            ++local.malformed_rows;
            continue;
        }
        const std::string id = tsv_unescape(cells[static_cast<size_t>(idx_id)]);
        const std::string raw = tsv_unescape(cells[static_cast<size_t>(idx_label)]);
        if (raw.empty()) continue;  // node without a label

        std::string text, lang;
        if (parse_language_qualified(raw, text, lang)) {
            if (lang != language_tag) continue;
        } else {
            text = raw;  // unqualified labels count as the requested language
        }
        map.insert_or_assign(id, std::move(text));
    }
    if (in.bad()) throw InputError("I/O failure while reading " + path);

    local.duplicates = map.duplicates();
    if (stats) *stats = local;
    return map;
}

}  // namespace wdcs

#include "wdcs/commonness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "wdcs/concept_filter.hpp"
#include "wdcs/errors.hpp"
#include "wdcs/text.hpp"
#include "wdcs/tsv.hpp"

namespace wdcs {

void FrequencyTable::insert(std::string_view term, double frequency) {
    std::string key = ascii_lower(trim(term));
    auto it = table_.find(key);
    if (it == table_.end()) {
        table_.emplace(std::move(key), frequency);
    } else {
        it->second = std::max(it->second, frequency);
        ++duplicates_;
    }
}

double FrequencyTable::lookup(std::string_view term) const {
    const auto it = table_.find(ascii_lower(trim(term)));
    return it == table_.end() ? 0.0 : it->second;
}

FrequencyTable load_frequency_table(const std::string& path, PhraseCombiner combiner) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open frequency table: " + path);

    FrequencyTable table(combiner);
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_number == 1 && line == "term\tfrequency") continue;

        const auto cells = tsv_split(line);
        if (cells.size() != 2 || cells[0].empty())
            throw InputError("frequency table " + path + ":" + std::to_string(line_number) +
                             ": expected term<TAB>frequency");
        const std::string value(trim(cells[1]));
        char* end = nullptr;
        const double freq = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(freq))
            throw InputError("frequency table " + path + ":" + std::to_string(line_number) +
                             ": not a number: " + value);
        if (freq <= 0.0 || freq > 1.0)
            throw InputError("frequency table " + path + ":" + std::to_string(line_number) +
                             ": frequency out of (0,1]: " + value);
        table.insert(cells[0], freq);
    }
    if (in.bad()) throw InputError("I/O failure while reading " + path);
    return table;
}

double phrase_frequency(const FrequencyTable& table, std::string_view label) {
    const double exact = table.lookup(label);
    if (exact > 0.0) return exact;

    const auto tokens = split_whitespace(trim(label));
    if (tokens.empty()) return 0.0;
    if (table.combiner() == PhraseCombiner::LookupOnly)
        return tokens.size() == 1 ? table.lookup(tokens[0]) : 0.0;

    double combined = 1.0;
    for (const auto token : tokens) {
        const double f = table.lookup(token);
        if (f == 0.0) return 0.0;
        if (table.combiner() == PhraseCombiner::MinToken)
            combined = std::min(combined, f);
        else
            combined *= f;
    }
    return combined;
}

bool is_common_edge(const EdgeRecord& rec, const FrequencyTable& table, CommonnessThreshold threshold,
                    bool strict_above) {
    if (rec.node1_label.empty() || rec.node2_label.empty()) return false;
    const double f1 = phrase_frequency(table, rec.node1_label);
    const double f2 = phrase_frequency(table, rec.node2_label);
    if (strict_above) return f1 > threshold.value && f2 > threshold.value;
    return f1 >= threshold.value && f2 >= threshold.value;
}

std::vector<EdgeRecord> filter_common_edges(const std::vector<EdgeRecord>& edges,
                                            const FrequencyTable& table, CommonnessThreshold threshold,
                                            bool strict_above, FilterTally* tally) {
    std::vector<EdgeRecord> out;
    FilterTally t;
    for (const EdgeRecord& rec : edges) {
        if (is_common_edge(rec, table, threshold, strict_above)) {
            out.push_back(rec);
            ++t.kept;
        } else {
            ++t.removed;
        }
    }
    if (tally) *tally = t;
    return out;
}

}  // namespace wdcs

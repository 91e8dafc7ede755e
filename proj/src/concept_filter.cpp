#include "wdcs/concept_filter.hpp"

#include "wdcs/text.hpp"

namespace wdcs {

bool is_concept_label(std::string_view label, const ConceptRule& rule) {
    if (label.empty()) return false;

    size_t pos = 0;
    bool first = true;
    while (pos < label.size()) {
        const int32_t cp = decode_utf8(label, pos);
        if (cp < 0) return false;
        if (first) {
            first = false;
            if (rule.require_lowercase_first) {
                const bool digit_ok = rule.allow_leading_digit && cp >= '0' && cp <= '9';
                if (!digit_ok && !is_unicode_lowercase_letter(cp)) return false;
            }
        }
        if (rule.forbid_any_uppercase && is_unicode_uppercase_letter(cp)) return false;
    }
    return true;
}

bool is_concept_edge(const EdgeRecord& rec, const ConceptRule& rule) {
    return is_concept_label(rec.node1_label, rule) && is_concept_label(rec.node2_label, rule);
}

std::vector<EdgeRecord> filter_concept_edges(const std::vector<EdgeRecord>& edges,
                                             const ConceptRule& rule, FilterTally* tally) {
    std::vector<EdgeRecord> out;
    FilterTally t;
    for (const EdgeRecord& rec : edges) {
        if (is_concept_edge(rec, rule)) {
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

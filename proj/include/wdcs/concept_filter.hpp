#ifndef WDCS_CONCEPT_FILTER_HPP_
#define WDCS_CONCEPT_FILTER_HPP_

#include <string_view>
#include <vector>

#include "wdcs/edge_io.hpp"

namespace wdcs {

// The label-capitalization heuristic separating concepts from named entities.
// Defaults reproduce the standard rule; the extra switches exist for
// sensitivity runs only.
struct ConceptRule {
    bool require_lowercase_first = true;
    bool forbid_any_uppercase = true;
    // Lets labels like "3d printing" through the first-character check.
    bool allow_leading_digit = false;
};

// True iff the label is present and non-empty, its first character is a
// Unicode lowercase letter (or an ASCII digit under allow_leading_digit), and
// no character anywhere in it is a Unicode uppercase or titlecase letter.
// Absent labels and invalid UTF-8 are rejected.
bool is_concept_label(std::string_view label, const ConceptRule& rule = {});

bool is_concept_edge(const EdgeRecord& rec, const ConceptRule& rule = {});

struct FilterTally {
    size_t kept = 0;
    size_t removed = 0;
};

std::vector<EdgeRecord> filter_concept_edges(const std::vector<EdgeRecord>& edges,
                                             const ConceptRule& rule = {},
                                             FilterTally* tally = nullptr);

}  // namespace wdcs

#endif  // WDCS_CONCEPT_FILTER_HPP_

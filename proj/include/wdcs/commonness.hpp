#ifndef WDCS_COMMONNESS_HPP_
#define WDCS_COMMONNESS_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wdcs/edge_io.hpp"

namespace wdcs {

// How a multi-word label gets a frequency when the exact phrase is not in the
// table. MinToken treats a phrase as only as common as its rarest word.
enum class PhraseCombiner { MinToken, Product, LookupOnly };

struct CommonnessThreshold {
    double value = 1e-06;
};

// Corpus usage frequencies, term -> frequency in (0, 1]. Keys are lowercased
// at load; duplicate terms keep the maximum. Immutable after load, safe to
// share across threads.
class FrequencyTable {
public:
    explicit FrequencyTable(PhraseCombiner combiner = PhraseCombiner::MinToken)
        : combiner_(combiner) {}

    void insert(std::string_view term, double frequency);
    // Exact lookup of a single (already whole) term; 0 when absent.
    double lookup(std::string_view term) const;

    PhraseCombiner combiner() const { return combiner_; }
    size_t size() const { return table_.size(); }
    size_t duplicates() const { return duplicates_; }

private:
    std::unordered_map<std::string, double> table_;
    PhraseCombiner combiner_;
    size_t duplicates_ = 0;
};

// Reads a `term<TAB>frequency` TSV; an optional `term\tfrequency` header line
// is detected and skipped. A frequency that does not parse, is <= 0 or is > 1
// is fatal, with the line number in the message.
FrequencyTable load_frequency_table(const std::string& path,
                                    PhraseCombiner combiner = PhraseCombiner::MinToken);

// Frequency of a whole label: exact-phrase entries win; otherwise the label
// is split on ASCII whitespace and combined per the table's policy, with any
// absent token forcing 0.
double phrase_frequency(const FrequencyTable& table, std::string_view label);

// Keeps edges where both endpoint labels reach the threshold. Comparison is
// inclusive (>=) unless strict_above is set.
bool is_common_edge(const EdgeRecord& rec, const FrequencyTable& table, CommonnessThreshold threshold,
                    bool strict_above = false);

struct FilterTally;
std::vector<EdgeRecord> filter_common_edges(const std::vector<EdgeRecord>& edges,
                                            const FrequencyTable& table,
                                            CommonnessThreshold threshold,
                                            bool strict_above = false, FilterTally* tally = nullptr);

}  // namespace wdcs

#endif  // WDCS_COMMONNESS_HPP_

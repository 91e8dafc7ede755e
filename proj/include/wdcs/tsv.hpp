#ifndef WDCS_TSV_HPP_
#define WDCS_TSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace wdcs {

// Escapes tab, newline and backslash so a value can live in one TSV cell.
std::string tsv_escape(std::string_view value);

// Inverse of tsv_escape. Unknown escape sequences are kept verbatim.
std::string tsv_unescape(std::string_view cell);

// Splits one line into raw (still escaped) cells.
std::vector<std::string_view> tsv_split(std::string_view line);

// Joins already-escaped cells with tabs.
std::string tsv_join(const std::vector<std::string>& cells);

}  // namespace wdcs

#endif  // WDCS_TSV_HPP_

#ifndef WDCS_TEXT_HPP_
#define WDCS_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wdcs {

// Decodes the UTF-8 sequence starting at s[pos]. On success advances pos past
// the sequence and returns the code point; on malformed input returns -1 and
// advances pos by one byte so callers can keep scanning.
int32_t decode_utf8(std::string_view s, size_t& pos);

// Unicode general category checks (letter case only).
bool is_unicode_lowercase_letter(int32_t cp);   // Ll
bool is_unicode_uppercase_letter(int32_t cp);   // Lu or Lt

// ASCII-only case folding. Label and term comparisons in this toolkit are
// declared as ASCII-lowercase + trim; anything beyond that would need a full
// Unicode case-mapping table.
std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string_view> split_whitespace(std::string_view s);

// Splits on a single-character delimiter; keeps empty fields.
std::vector<std::string_view> split_char(std::string_view s, char delim);

// 12,345-style rendering for report tables.
std::string format_thousands(long long value);

// FNV-1a 64-bit over a file's bytes, hex-encoded; used as an input digest in
// reports. Throws InputError if the file cannot be read.
std::string file_digest(const std::string& path);

}  // namespace wdcs

#endif  // WDCS_TEXT_HPP_

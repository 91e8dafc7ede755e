#include "wdcs/tsv.hpp"

namespace wdcs {

std::string tsv_escape(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string tsv_unescape(std::string_view cell) {
    std::string out;
    out.reserve(cell.size());
    for (size_t i = 0; i < cell.size(); ++i) {
        if (cell[i] == '\\' && i + 1 < cell.size()) {
            switch (cell[i + 1]) {
                case 't': out.push_back('\t'); ++i; continue;
                case 'n': out.push_back('\n'); ++i; continue;
                case '\\': out.push_back('\\'); ++i; continue;
                default: break;
            }
        }
        out.push_back(cell[i]);
    }
    return out;
}

std::vector<std::string_view> tsv_split(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        size_t p = line.find('\t', start);
        if (p == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, p - start));
        start = p + 1;
    }
    return cells;
}

std::string tsv_join(const std::vector<std::string>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back('\t');
        out += cells[i];
    }
    return out;
}

}  // namespace wdcs

#ifndef WDCS_EXTERNAL_SORT_HPP_
#define WDCS_EXTERNAL_SORT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wdcs {

struct SortOptions {
    // Records buffered in memory before a sorted run is spilled to disk.
    size_t chunk_records = 1'000'000;
    // Spill directory; empty means WDCS_TMPDIR or the system temp dir.
    std::string temp_dir;
};

std::string resolve_temp_dir(const std::string& configured);

// Length-prefixed field packing for spill payloads.
std::string serialize_fields(const std::vector<std::string>& fields);
std::vector<std::string> deserialize_fields(const std::string& bytes);

// Disk-backed stable grouping: records are (key, payload) byte strings; after
// feeding everything in, groups come back ordered by key, and payloads within
// a group keep their insertion order. Inputs smaller than one chunk never
// touch disk.
class ExternalSorter {
public:
    explicit ExternalSorter(SortOptions options = {});
    ~ExternalSorter();
    ExternalSorter(const ExternalSorter&) = delete;
    ExternalSorter& operator=(const ExternalSorter&) = delete;

    void add(std::string key, std::string payload);

    // Calls `group` once per distinct key, ascending; payloads are in
    // insertion order. The sorter is spent afterwards.
    void for_each_group(
        const std::function<void(const std::string& key, std::vector<std::string>& payloads)>& group);

    size_t record_count() const { return count_; }

    // Order-preserving encoding of a field tuple into a single comparable key:
    // every field is closed by 0x00 0x00 and embedded zero bytes become
    // 0x00 0xFF, so byte order of keys equals lexicographic order of tuples.
    static void append_key_field(std::string& key, const std::string& field);

private:
    struct Entry {
        std::string key;
        std::string payload;
        uint64_t seq;
    };

    void spill_chunk();
    void sort_chunk();

    SortOptions options_;
    std::vector<Entry> chunk_;
    std::vector<std::string> run_files_;
    std::string run_dir_;
    uint64_t next_seq_ = 0;
    size_t count_ = 0;
};

}  // namespace wdcs

#endif  // WDCS_EXTERNAL_SORT_HPP_

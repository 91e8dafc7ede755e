#include "wdcs/external_sort.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <queue>
#include <random>

#include "wdcs/errors.hpp"

namespace wdcs {

namespace fs = std::filesystem;

std::string resolve_temp_dir(const std::string& configured) {
    if (!configured.empty()) return configured;
    if (const char* env = std::getenv("WDCS_TMPDIR"); env && *env) return env;
    return fs::temp_directory_path().string();
}

std::string serialize_fields(const std::vector<std::string>& fields) {
    std::string out;
    for (const std::string& f : fields) {
        const uint32_t len = static_cast<uint32_t>(f.size());
        out.append(reinterpret_cast<const char*>(&len), 4);
        out.append(f);
    }
    return out;
}

std::vector<std::string> deserialize_fields(const std::string& bytes) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos + 4 <= bytes.size()) {
        uint32_t len = 0;
        std::memcpy(&len, bytes.data() + pos, 4);
        pos += 4;
        out.push_back(bytes.substr(pos, len));
        pos += len;
    }
    return out;
}

namespace {

void write_u32(std::ostream& out, uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
void write_u64(std::ostream& out, uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }

bool read_u32(std::istream& in, uint32_t& v) { return bool(in.read(reinterpret_cast<char*>(&v), 4)); }
bool read_u64(std::istream& in, uint64_t& v) { return bool(in.read(reinterpret_cast<char*>(&v), 8)); }

[[noreturn]] void temp_space_error(const std::string& dir) {
    std::string detail;
    std::error_code ec;
    const auto space = fs::space(dir, ec);
    if (!ec) detail = " (" + std::to_string(space.available / (1024 * 1024)) + " MiB available)";
    throw InputError("temp storage exhausted while spilling to " + dir + detail +
                     "; set WDCS_TMPDIR to a larger volume");
}

// One spilled run being merged back.
struct RunCursor {
    std::ifstream in;
    std::string key;
    std::string payload;
    uint64_t seq = 0;

    bool advance() {
        uint32_t klen = 0, plen = 0;
        if (!read_u32(in, klen)) return false;
        if (!read_u32(in, plen) || !read_u64(in, seq)) return false;
        key.resize(klen);
        payload.resize(plen);
        if (klen && !in.read(key.data(), klen)) return false;
        if (plen && !in.read(payload.data(), plen)) return false;
        return true;
    }
};

}  // namespace

ExternalSorter::ExternalSorter(SortOptions options) : options_(std::move(options)) {
    if (options_.chunk_records == 0) options_.chunk_records = 1;
}

ExternalSorter::~ExternalSorter() {
    if (!run_dir_.empty()) {
        std::error_code ec;
        fs::remove_all(run_dir_, ec);
    }
}

void ExternalSorter::append_key_field(std::string& key, const std::string& field) {
    for (char c : field) {
        if (c == '\0') {
            key.push_back('\0');
            key.push_back('\xFF');
        } else {
            key.push_back(c);
        }
    }
    // Terminator after every field keeps the encoding injective and the byte
    // order equal to tuple order even for empty fields.
    key.push_back('\0');
    key.push_back('\0');
}

void ExternalSorter::add(std::string key, std::string payload) {
    chunk_.push_back(Entry{std::move(key), std::move(payload), next_seq_++});
    ++count_;
    if (chunk_.size() >= options_.chunk_records) spill_chunk();
}

void ExternalSorter::sort_chunk() {
    std::sort(chunk_.begin(), chunk_.end(), [](const Entry& a, const Entry& b) {
        const int c = a.key.compare(b.key);
        if (c != 0) return c < 0;
        return a.seq < b.seq;
    });
}

void ExternalSorter::spill_chunk() {
    if (chunk_.empty()) return;
    sort_chunk();
    if (run_dir_.empty()) {
        const std::string base = resolve_temp_dir(options_.temp_dir);
        std::random_device rd;
        run_dir_ = (fs::path(base) / ("wdcs-sort-" + std::to_string(rd()))).string();
        std::error_code ec;
        fs::create_directories(run_dir_, ec);
        if (ec) throw InputError("cannot create spill directory " + run_dir_ + ": " + ec.message());
    }
    const std::string run_path =
        (fs::path(run_dir_) / ("run-" + std::to_string(run_files_.size()))).string();
    std::ofstream out(run_path, std::ios::binary);
    if (!out) temp_space_error(run_dir_);
    for (const Entry& e : chunk_) {
        write_u32(out, static_cast<uint32_t>(e.key.size()));
        write_u32(out, static_cast<uint32_t>(e.payload.size()));
        write_u64(out, e.seq);
        out.write(e.key.data(), static_cast<std::streamsize>(e.key.size()));
        out.write(e.payload.data(), static_cast<std::streamsize>(e.payload.size()));
        if (!out) temp_space_error(run_dir_);
    }
    out.flush();
    if (!out) temp_space_error(run_dir_);
    run_files_.push_back(run_path);
    chunk_.clear();
    chunk_.shrink_to_fit();
}

void ExternalSorter::for_each_group(
    const std::function<void(const std::string&, std::vector<std::string>&)>& group) {
    if (run_files_.empty()) {
        // Everything fit in one chunk.
        sort_chunk();
        size_t i = 0;
        std::vector<std::string> payloads;
        while (i < chunk_.size()) {
            size_t j = i;
            payloads.clear();
            while (j < chunk_.size() && chunk_[j].key == chunk_[i].key) {
                payloads.push_back(std::move(chunk_[j].payload));
                ++j;
            }
            group(chunk_[i].key, payloads);
            i = j;
        }
        chunk_.clear();
        return;
    }

    spill_chunk();

    std::vector<std::unique_ptr<RunCursor>> runs;
    runs.reserve(run_files_.size());
    for (const std::string& path : run_files_) {
        auto cur = std::make_unique<RunCursor>();
        cur->in.open(path, std::ios::binary);
        if (!cur->in) throw InputError("cannot reopen spill run: " + path);
        if (cur->advance()) runs.push_back(std::move(cur));
    }

    auto cmp = [&runs](size_t a, size_t b) {
        const int c = runs[a]->key.compare(runs[b]->key);
        if (c != 0) return c > 0;  // min-heap
        return runs[a]->seq > runs[b]->seq;
    };
    std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> heap(cmp);
    for (size_t i = 0; i < runs.size(); ++i) heap.push(i);

    std::string current_key;
    bool have_key = false;
    std::vector<std::string> payloads;
    while (!heap.empty()) {
        const size_t idx = heap.top();
        heap.pop();
        RunCursor& cur = *runs[idx];
        if (!have_key || cur.key != current_key) {
            if (have_key) group(current_key, payloads);
            current_key = cur.key;
            payloads.clear();
            have_key = true;
        }
        payloads.push_back(std::move(cur.payload));
        if (cur.advance()) heap.push(idx);
    }
    if (have_key) group(current_key, payloads);
}

}  // namespace wdcs

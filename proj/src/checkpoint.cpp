#include <cstring>

#include "drl/error.hpp"
#include "drl/sieve.hpp"
#include "file_util.hpp"

namespace drl {

namespace {

constexpr char kMagic[4] = {'D', 'R', 'L', '1'};

void put(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    std::uint64_t u64() {
        if (pos_ + 8 > bytes_.size()) fail(ErrorCode::checkpoint_mismatch, "checkpoint truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }

    // Guards element counts against absurd values from a corrupt file.
    std::uint64_t count(std::size_t record_size) {
        const std::uint64_t n = u64();
        if (n > (bytes_.size() - pos_) / record_size) fail(ErrorCode::checkpoint_mismatch, "checkpoint truncated");
        return n;
    }

    bool at_end() const { return pos_ == bytes_.size(); }

private:
    std::string_view bytes_;
    std::size_t pos_ = 4;
};

}  // namespace

std::string encode_checkpoint(const SieveCheckpoint& ck) {
    std::string out(kMagic, 4);
    put(out, ck.next_lo);
    put(out, ck.best_run.start);
    put(out, ck.best_run.length);
    put(out, ck.best_run.divisor_count);
    put(out, ck.carry_value);
    put(out, ck.carry_length);
    put(out, ck.config_hash);

    put(out, ck.scan_lo);
    put(out, ck.scan_n);
    put(out, ck.milestones.size());
    for (const auto& m : ck.milestones) {
        put(out, m.n);
        put(out, m.best.start);
        put(out, m.best.length);
        put(out, m.best.divisor_count);
    }
    put(out, ck.census.size());
    for (const auto& [len, e] : ck.census) {
        put(out, len);
        put(out, e.first_start);
        put(out, e.count);
    }
    return out;
}

SieveCheckpoint decode_checkpoint(std::string_view bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        fail(ErrorCode::checkpoint_mismatch, "not a DRL1 checkpoint");
    Reader r(bytes);
    SieveCheckpoint ck;
    ck.next_lo = r.u64();
    ck.best_run.start = r.u64();
    ck.best_run.length = r.u64();
    ck.best_run.divisor_count = r.u64();
    ck.carry_value = r.u64();
    ck.carry_length = r.u64();
    ck.config_hash = r.u64();

    ck.scan_lo = r.u64();
    ck.scan_n = r.u64();
    const auto milestones = r.count(32);
    ck.milestones.reserve(milestones);
    for (std::uint64_t i = 0; i < milestones; ++i) {
        Milestone m;
        m.n = r.u64();
        m.best.start = r.u64();
        m.best.length = r.u64();
        m.best.divisor_count = r.u64();
        ck.milestones.push_back(m);
    }
    const auto census = r.count(24);
    for (std::uint64_t i = 0; i < census; ++i) {
        const auto len = r.u64();
        CensusEntry e;
        e.first_start = r.u64();
        e.count = r.u64();
        ck.census[len] = e;
    }
    if (!r.at_end()) fail(ErrorCode::checkpoint_mismatch, "trailing bytes after checkpoint");
    return ck;
}

void write_checkpoint(const SieveCheckpoint& ck, const std::string& path) {
    detail::write_file_atomic(path, encode_checkpoint(ck));
}

SieveCheckpoint read_checkpoint(const std::string& path) { return decode_checkpoint(detail::read_file(path)); }

}  // namespace drl

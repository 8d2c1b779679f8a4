#include "swarm/codec.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace swarm::codec {

namespace {
// Shifts of each field within the 31-bit word (frame bit 0 = word bit 30).
constexpr int shift_pkg = 21;
constexpr int shift_sender = 15;
constexpr int shift_receiver = 9;
constexpr int shift_parity = 8;

std::uint32_t header_of(std::uint32_t word) { return word >> shift_parity >> 1; }

std::uint32_t even_parity(std::uint32_t header22) {
    return static_cast<std::uint32_t>(std::popcount(header22) & 1);
}
}  // namespace

bool Frame::bit(int pos) const {
    if (pos < 0 || pos >= bit_count) throw std::out_of_range("frame bit position");
    return (word_ >> (bit_count - 1 - pos)) & 1u;
}

Frame Frame::with_flipped_bit(int pos) const {
    if (pos < 0 || pos >= bit_count) throw std::out_of_range("frame bit position");
    Frame f = *this;
    f.word_ ^= std::uint32_t{1} << (bit_count - 1 - pos);
    return f;
}

std::string Frame::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 0; i < 8; ++i)
        out[i] = digits[(word_ >> (28 - 4 * i)) & 0xFu];
    return out;
}

Frame Frame::from_hex(const std::string& hex) {
    if (!std::all_of(hex.begin(), hex.end(), [](unsigned char c) {
            return std::isxdigit(c) != 0;
        }))
        throw FormatError("frame hex contains non-hex characters");
    if (hex.size() != 8)
        throw LengthError("frame hex must be exactly 8 digits");
    std::uint32_t w = 0;
    std::from_chars(hex.data(), hex.data() + hex.size(), w, 16);
    if (w >> bit_count)
        throw LengthError("pad bit set: not a 31-bit frame");
    Frame f;
    f.word_ = w;
    return f;
}

Frame Frame::from_word(std::uint32_t w) {
    if (w >> bit_count) throw LengthError("word exceeds 31 bits");
    Frame f;
    f.word_ = w;
    return f;
}

Frame encode(const Packet& p) {
    if (p.pkg_id > 1023) throw std::out_of_range("pkg_id exceeds 10 bits");
    if (p.sender > 63) throw std::out_of_range("sender exceeds 6 bits");
    if (p.receiver > 63) throw std::out_of_range("receiver exceeds 6 bits");
    const std::uint32_t header = (std::uint32_t{p.pkg_id} << 12) |
                                 (std::uint32_t{p.sender} << 6) |
                                 std::uint32_t{p.receiver};
    const std::uint32_t word = (std::uint32_t{p.pkg_id} << shift_pkg) |
                               (std::uint32_t{p.sender} << shift_sender) |
                               (std::uint32_t{p.receiver} << shift_receiver) |
                               (even_parity(header) << shift_parity) |
                               std::uint32_t{p.payload};
    return Frame::from_word(word);
}

Packet decode(const Frame& f) {
    const std::uint32_t w = f.word();
    const std::uint32_t stored = (w >> shift_parity) & 1u;
    if (stored != even_parity(header_of(w)))
        throw ParityError("header parity mismatch");
    Packet p;
    p.pkg_id = static_cast<std::uint16_t>((w >> shift_pkg) & 0x3FFu);
    p.sender = static_cast<std::uint8_t>((w >> shift_sender) & 0x3Fu);
    p.receiver = static_cast<std::uint8_t>((w >> shift_receiver) & 0x3Fu);
    p.payload = static_cast<std::uint8_t>(w & 0xFFu);
    return p;
}

RoutingLedger::RoutingLedger(std::size_t capacity, std::size_t record_bytes)
    : capacity_(capacity), record_bytes_(record_bytes) {}

bool RoutingLedger::insert(std::uint16_t pkg_id, std::uint8_t sender) {
    if (contains(pkg_id, sender)) return false;
    if (capacity_ == 0) return true;  // nothing can be recorded
    if (records_.size() == capacity_) records_.pop_front();
    records_.push_back(std::uint32_t{pkg_id} << 8 | sender);
    return true;
}

bool RoutingLedger::contains(std::uint16_t pkg_id, std::uint8_t sender) const {
    const std::uint32_t key = std::uint32_t{pkg_id} << 8 | sender;
    return std::find(records_.begin(), records_.end(), key) != records_.end();
}

std::int64_t routing_memory_bytes(std::int64_t packages,
                                  std::int64_t record_bytes) {
    return packages * record_bytes;
}

bool routing_feasible(const MemoryModel& model) {
    return routing_memory_bytes(model.packages, model.record_bytes) <=
           model.ram_budget;
}

}  // namespace swarm::codec

#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>

namespace swarm::codec {

/// 31-bit packet frame used on the robots' IR link.
///
/// Bit layout, first bit to last (MSB-first within each field):
///
///   [ 0.. 9] pkg_id    10 bits
///   [10..15] sender     6 bits
///   [16..21] receiver   6 bits
///   [22]     parity     even parity over the 22 header bits above
///   [23..30] payload    8 bits
///
/// A frame serializes to 8 hex digits: the 31 bits left-padded with one zero
/// bit at the most significant position.

struct Packet {
    std::uint16_t pkg_id = 0;   // [0, 1023]
    std::uint8_t sender = 0;    // [0, 63]
    std::uint8_t receiver = 0;  // [0, 63]
    std::uint8_t payload = 0;   // [0, 255]

    bool operator==(const Packet&) const = default;
};

struct CodecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Input is not a 31-bit frame (wrong digit count or the pad bit is set).
struct LengthError : CodecError {
    using CodecError::CodecError;
};
/// Stored parity does not match the recomputed header parity.
struct ParityError : CodecError {
    using CodecError::CodecError;
};
/// Input is not parseable at all (non-hex characters, bad field syntax).
struct FormatError : CodecError {
    using CodecError::CodecError;
};

class Frame {
public:
    Frame() = default;

    static constexpr int bit_count = 31;
    static constexpr int header_bits = 22;  // pkg_id + sender + receiver

    /// Bit at position `pos`, 0 = first (most significant) frame bit.
    bool bit(int pos) const;
    Frame with_flipped_bit(int pos) const;

    std::string to_hex() const;
    /// Parses 8 hex digits. Throws FormatError on non-hex input and
    /// LengthError when the digit count is wrong or the pad bit is set.
    static Frame from_hex(const std::string& hex);

    /// The raw 31 bits, first frame bit in bit 30 of the word.
    std::uint32_t word() const { return word_; }
    static Frame from_word(std::uint32_t w);

    bool operator==(const Frame&) const = default;

private:
    std::uint32_t word_ = 0;
};

/// Throws std::out_of_range if any field exceeds its bit range.
Frame encode(const Packet& p);

/// Throws ParityError when the recomputed header parity disagrees with the
/// stored parity bit. The payload is not covered by parity.
Packet decode(const Frame& f);

/// Per-robot history of forwarded packets, keyed by (pkg_id, sender).
/// Bounded FIFO: inserting a new pair at capacity evicts the oldest record.
class RoutingLedger {
public:
    explicit RoutingLedger(std::size_t capacity, std::size_t record_bytes = 3);

    /// Returns true if the pair was not present (and is now recorded).
    bool insert(std::uint16_t pkg_id, std::uint8_t sender);
    bool contains(std::uint16_t pkg_id, std::uint8_t sender) const;

    std::size_t size() const { return records_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t memory_bytes() const { return records_.size() * record_bytes_; }

private:
    std::size_t capacity_;
    std::size_t record_bytes_;
    std::deque<std::uint32_t> records_;  // pkg_id << 8 | sender, oldest first
};

/// RAM needed to remember `packages` forwarded packets at `record_bytes`
/// per record.
std::int64_t routing_memory_bytes(std::int64_t packages,
                                  std::int64_t record_bytes);

struct MemoryModel {
    std::int64_t ram_budget = 1024;  // bytes available on the robot
    std::int64_t record_bytes = 3;
    std::int64_t packages = 0;
};

/// Whether the package history for `model.packages` fits the RAM budget.
bool routing_feasible(const MemoryModel& model);

}  // namespace swarm::codec

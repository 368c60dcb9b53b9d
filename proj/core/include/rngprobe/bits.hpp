#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rngprobe/error.hpp"

namespace rngprobe {

using u128 = unsigned __int128;

/// Packed binary string. Bit 0 is the most significant bit of byte 0 of the
/// underlying byte stream; 64-bit indexed throughout. Immutable once built
/// and safe to share across threads.
class BitString {
public:
    BitString() = default;

    static BitString zeros(std::uint64_t count);
    static BitString from_bytes(std::span<const std::uint8_t> bytes);
    /// Parses a "01" text fixture; whitespace is ignored, anything else throws.
    static BitString from_ascii01(std::string_view text);

    std::uint64_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Single bit access, bounds-checked.
    bool bit(std::uint64_t i) const;

    /// Value of `count` (<= 64) consecutive bits starting at `pos`, read
    /// MSB-first. Requires pos + count <= size().
    std::uint64_t get_bits64(std::uint64_t pos, unsigned count) const;

    BitString complemented() const;

    /// Prefix of the first `count` bits. Requires count <= size().
    BitString truncated(std::uint64_t count) const;

    /// Copy of `count` bits starting at `pos`. Requires pos + count <= size().
    BitString substring(std::uint64_t pos, std::uint64_t count) const;

    /// Byte serialization; the final partial byte (if any) is zero-padded.
    std::vector<std::uint8_t> to_bytes() const;
    std::string to_ascii01() const;

    std::uint64_t count_ones() const noexcept;

    bool operator==(const BitString& other) const noexcept = default;

private:
    std::vector<std::uint64_t> words_;  // bit i lives at words_[i/64], bit 63 - i%64
    std::uint64_t size_ = 0;

    void clear_tail() noexcept;
};

/// A short string conceptually repeated out to `target_length` bits. Lazy:
/// no bits are materialized, reads are redirected modulo the base length.
class LoopedView {
public:
    LoopedView(BitString base, std::uint64_t target_length);

    std::uint64_t size() const noexcept { return length_; }
    std::uint64_t base_length() const noexcept { return base_->size(); }
    /// Number of complete copies of the base contained in the view.
    std::uint64_t repetitions() const noexcept { return length_ / base_->size(); }
    const BitString& base() const noexcept { return *base_; }

    bool bit(std::uint64_t i) const;

private:
    std::shared_ptr<const BitString> base_;
    std::uint64_t length_ = 0;
};

/// Non-owning read handle over either a BitString or a LoopedView. The
/// referenced storage must outlive the reader.
class BitReader {
public:
    BitReader(const BitString& s) noexcept
        : base_(&s), base_len_(s.size()), length_(s.size()) {}
    BitReader(const LoopedView& v) noexcept
        : base_(&v.base()), base_len_(v.base_length()), length_(v.size()) {}

    std::uint64_t size() const noexcept { return length_; }
    bool looped() const noexcept { return base_len_ != length_; }

    bool bit(std::uint64_t i) const;
    std::uint64_t get_bits64(std::uint64_t pos, unsigned count) const;

    /// Reads `count` bits starting at `pos` as one unsigned integer in
    /// little-endian 64-bit limbs (limbs[0] holds the least significant
    /// word). `limbs` must provide at least ceil(count/64) entries; higher
    /// entries are zeroed.
    void extract_value(std::uint64_t pos, std::uint64_t count,
                       std::span<std::uint64_t> limbs) const;

private:
    const BitString* base_;
    std::uint64_t base_len_;
    std::uint64_t length_;
};

/// Stateful sequential reader. Single-owner mutable state: one cursor per
/// thread.
class BitCursor {
public:
    explicit BitCursor(BitReader source, std::uint64_t start_offset = 0);

    /// Next `count` (<= 128) bits as an unsigned integer, MSB-first;
    /// advances the position. Throws ExhaustedError if fewer bits remain.
    u128 read(unsigned count);

    /// Advances without materializing a value.
    void skip(std::uint64_t count);

    std::uint64_t position() const noexcept { return pos_; }
    std::uint64_t start_offset() const noexcept { return start_; }
    std::uint64_t consumed() const noexcept { return pos_ - start_; }
    std::uint64_t remaining() const noexcept { return src_.size() - pos_; }
    const BitReader& source() const noexcept { return src_; }

private:
    BitReader src_;
    std::uint64_t pos_;
    std::uint64_t start_;
};

/// Raw-byte file load; the string has 8 * filesize bits. Throws IoError on
/// a missing or empty file.
BitString load_bits(const std::filesystem::path& path);
/// "01" text fixture load (whitespace ignored).
BitString load_ascii01(const std::filesystem::path& path);
void store_bits(const BitString& x, const std::filesystem::path& path);

/// Every bit flipped; length preserved. Involution.
BitString complement(const BitString& x);

/// View of `x` repeated out to `target_length` bits. Requires a nonempty
/// base and target_length >= x.size().
LoopedView loop_to(BitString x, std::uint64_t target_length);

}  // namespace rngprobe

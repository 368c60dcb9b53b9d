#include "rngprobe/bits.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>

namespace rngprobe {

namespace {

constexpr std::uint64_t kAllOnes = ~std::uint64_t{0};

std::uint64_t words_for(std::uint64_t bits) {
    return (bits + 63) / 64;
}

}  // namespace

void BitString::clear_tail() noexcept {
    const unsigned rem = static_cast<unsigned>(size_ & 63);
    if (rem != 0 && !words_.empty()) {
        words_.back() &= kAllOnes << (64 - rem);
    }
}

BitString BitString::zeros(std::uint64_t count) {
    BitString s;
    s.size_ = count;
    s.words_.assign(words_for(count), 0);
    return s;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
    BitString s;
    s.size_ = static_cast<std::uint64_t>(bytes.size()) * 8;
    s.words_.assign(words_for(s.size_), 0);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        s.words_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (56 - 8 * (i % 8));
    }
    return s;
}

BitString BitString::from_ascii01(std::string_view text) {
    BitString s;
    std::uint64_t n = 0;
    for (char c : text) {
        if (c == '0' || c == '1') ++n;
    }
    s.size_ = n;
    s.words_.assign(words_for(n), 0);
    std::uint64_t i = 0;
    for (char c : text) {
        if (c == '0' || c == '1') {
            if (c == '1') s.words_[i / 64] |= std::uint64_t{1} << (63 - (i & 63));
            ++i;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw ParseError("bit text contains a character other than 0, 1, or whitespace");
        }
    }
    return s;
}

bool BitString::bit(std::uint64_t i) const {
    if (i >= size_) throw DomainError("bit index past end of string");
    return (words_[i / 64] >> (63 - (i & 63))) & 1;
}

std::uint64_t BitString::get_bits64(std::uint64_t pos, unsigned count) const {
    if (count > 64) throw DomainError("get_bits64 count exceeds 64");
    if (pos + count > size_) throw ExhaustedError("bit read past end of string");
    if (count == 0) return 0;
    const std::uint64_t w = pos >> 6;
    const unsigned off = static_cast<unsigned>(pos & 63);
    std::uint64_t window = words_[w] << off;
    if (off != 0 && off + count > 64) window |= words_[w + 1] >> (64 - off);
    return count == 64 ? window : window >> (64u - count);
}

BitString BitString::complemented() const {
    BitString s;
    s.size_ = size_;
    s.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.clear_tail();
    return s;
}

BitString BitString::truncated(std::uint64_t count) const {
    if (count > size_) throw DomainError("truncation length exceeds string size");
    BitString s;
    s.size_ = count;
    s.words_.assign(words_.begin(),
                    words_.begin() + static_cast<std::ptrdiff_t>(words_for(count)));
    s.clear_tail();
    return s;
}

BitString BitString::substring(std::uint64_t pos, std::uint64_t count) const {
    if (pos + count > size_) throw DomainError("substring out of range");
    BitString s;
    s.size_ = count;
    s.words_.assign(words_for(count), 0);
    for (std::uint64_t j = 0; j < s.words_.size(); ++j) {
        const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, count - 64 * j));
        s.words_[j] = get_bits64(pos + 64 * j, take) << (64u - take);
    }
    return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
    }
    return out;
}

std::string BitString::to_ascii01() const {
    std::string out;
    out.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(bit(i) ? '1' : '0');
    return out;
}

std::uint64_t BitString::count_ones() const noexcept {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

LoopedView::LoopedView(BitString base, std::uint64_t target_length)
    : base_(std::make_shared<const BitString>(std::move(base))), length_(target_length) {
    if (base_->empty()) throw DomainError("cannot loop an empty string");
    if (target_length < base_->size()) {
        throw DomainError("loop target shorter than the base string");
    }
}

bool LoopedView::bit(std::uint64_t i) const {
    if (i >= length_) throw DomainError("bit index past end of looped view");
    return base_->bit(i % base_->size());
}

bool BitReader::bit(std::uint64_t i) const {
    if (i >= length_) throw DomainError("bit index past end of source");
    return base_->bit(i % base_len_);
}

std::uint64_t BitReader::get_bits64(std::uint64_t pos, unsigned count) const {
    if (count > 64) throw DomainError("get_bits64 count exceeds 64");
    if (pos + count > length_) throw ExhaustedError("bit read past end of source");
    if (count == 0) return 0;
    std::uint64_t p = pos % base_len_;
    if (p + count <= base_len_) return base_->get_bits64(p, count);
    // Stitch across the loop seam (possibly several times for tiny bases).
    std::uint64_t v = 0;
    unsigned got = 0;
    while (got < count) {
        const unsigned take =
            static_cast<unsigned>(std::min<std::uint64_t>(count - got, base_len_ - p));
        v = (v << take) | base_->get_bits64(p, take);
        got += take;
        p += take;
        if (p == base_len_) p = 0;
    }
    return v;
}

void BitReader::extract_value(std::uint64_t pos, std::uint64_t count,
                              std::span<std::uint64_t> limbs) const {
    if (pos + count > length_) throw ExhaustedError("bit read past end of source");
    const std::uint64_t nlimbs = (count + 63) / 64;
    if (limbs.size() < nlimbs) throw DomainError("limb buffer too small");
    for (std::uint64_t j = 0; j < nlimbs; ++j) {
        const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, count - 64 * j));
        // limb j holds integer bits [64j, 64j + take); the window is MSB-first.
        limbs[j] = get_bits64(pos + count - 64 * j - take, take);
    }
    for (std::size_t j = nlimbs; j < limbs.size(); ++j) limbs[j] = 0;
}

BitCursor::BitCursor(BitReader source, std::uint64_t start_offset)
    : src_(source), pos_(start_offset), start_(start_offset) {
    if (start_offset > src_.size()) throw DomainError("cursor start offset past end of source");
}

u128 BitCursor::read(unsigned count) {
    if (count > 128) throw DomainError("cursor read wider than 128 bits");
    if (pos_ + count > src_.size()) {
        throw ExhaustedError("bit source exhausted");
    }
    u128 v;
    if (count <= 64) {
        v = src_.get_bits64(pos_, count);
    } else {
        v = static_cast<u128>(src_.get_bits64(pos_, count - 64)) << 64 |
            src_.get_bits64(pos_ + (count - 64), 64);
    }
    pos_ += count;
    return v;
}

void BitCursor::skip(std::uint64_t count) {
    if (pos_ + count > src_.size()) throw ExhaustedError("bit source exhausted");
    pos_ += count;
}

BitString load_bits(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on " + path.string());
    if (bytes.empty()) throw IoError("empty bit file " + path.string());
    return BitString::from_bytes(bytes);
}

BitString load_ascii01(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    BitString s = BitString::from_ascii01(text);
    if (s.empty()) throw IoError("empty bit file " + path.string());
    return s;
}

void store_bits(const BitString& x, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const auto bytes = x.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on " + path.string());
}

BitString complement(const BitString& x) {
    return x.complemented();
}

LoopedView loop_to(BitString x, std::uint64_t target_length) {
    return LoopedView(std::move(x), target_length);
}

}  // namespace rngprobe

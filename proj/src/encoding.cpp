#include "qvica/encoding.hpp"

#include <stdexcept>

namespace qvica {

namespace {
int bits_for_values(int value_count) {
    int w = 0;
    while ((1 << w) < value_count) ++w;
    return w;
}
}  // namespace

GenomeLayout::GenomeLayout(std::vector<int> max_codes, bool class_bit)
    : max_code_(std::move(max_codes)), class_bit_(class_bit) {
    width_.reserve(max_code_.size());
    for (int mc : max_code_) {
        if (mc < 0) throw std::invalid_argument("GenomeLayout: max_code must be >= 0");
        width_.push_back(bits_for_values(mc + 1));
        feature_bits_ += static_cast<std::size_t>(width_.back());
    }
}

BitVector GenomeLayout::encode(const std::vector<int>& codes,
                               std::optional<int> class_bit) const {
    if (codes.size() != max_code_.size())
        throw std::invalid_argument("GenomeLayout::encode: wrong code count");
    if (class_bit.has_value() != class_bit_)
        throw std::invalid_argument("GenomeLayout::encode: class bit presence mismatch");

    BitVector bits;
    bits.reserve(genome_bits());
    for (std::size_t f = 0; f < codes.size(); ++f) {
        if (codes[f] < 0 || codes[f] > max_code_[f])
            throw std::out_of_range("GenomeLayout::encode: code out of range");
        for (int b = width_[f] - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((codes[f] >> b) & 1));
    }
    if (class_bit_) bits.push_back(static_cast<std::uint8_t>(*class_bit ? 1 : 0));
    return bits;
}

GenomeLayout::Decoded GenomeLayout::decode(const BitVector& bits) const {
    if (bits.size() != genome_bits())
        throw std::invalid_argument("GenomeLayout::decode: wrong genome length");

    Decoded out;
    out.codes.reserve(max_code_.size());
    std::size_t pos = 0;
    for (std::size_t f = 0; f < max_code_.size(); ++f) {
        int value = 0;
        for (int b = 0; b < width_[f]; ++b) value = (value << 1) | bits[pos++];
        out.codes.push_back(value % (max_code_[f] + 1));
    }
    if (class_bit_) out.class_bit = bits[pos];
    return out;
}

BitVector GenomeLayout::feature_slice(const BitVector& bits) const {
    if (bits.size() != genome_bits())
        throw std::invalid_argument("GenomeLayout::feature_slice: wrong genome length");
    return BitVector(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(feature_bits_));
}

std::uint64_t pack_bits(const BitVector& bits) {
    if (bits.size() > 64) throw std::invalid_argument("pack_bits: more than 64 bits");
    std::uint64_t key = 0;
    for (std::uint8_t b : bits) key = (key << 1) | (b & 1u);
    return key;
}

}  // namespace qvica

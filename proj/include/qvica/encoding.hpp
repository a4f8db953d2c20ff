#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qvica/qcore.hpp"

namespace qvica {

using qcore::BitVector;

// Fixed-width big-endian field layout of a genome: one field per feature,
// field f holding a code in [0, max_code[f]], optionally followed by a single
// class bit. Field width is the smallest that fits max_code + 1 values.
class GenomeLayout {
public:
    GenomeLayout() = default;
    GenomeLayout(std::vector<int> max_codes, bool class_bit);

    std::size_t num_features() const { return max_code_.size(); }
    int max_code(std::size_t f) const { return max_code_[f]; }
    int field_bits(std::size_t f) const { return width_[f]; }
    bool has_class_bit() const { return class_bit_; }
    std::size_t feature_bits() const { return feature_bits_; }
    std::size_t genome_bits() const { return feature_bits_ + (class_bit_ ? 1 : 0); }

    // Codes to bits. Throws std::out_of_range if any code leaves
    // [0, max_code]. class_bit must be supplied iff the layout has one.
    BitVector encode(const std::vector<int>& codes, std::optional<int> class_bit) const;

    // Bits to codes; field values above max_code wrap via modulo
    // (max_code + 1). Returns the class bit when the layout has one.
    struct Decoded {
        std::vector<int> codes;
        int class_bit = 0;
    };
    Decoded decode(const BitVector& bits) const;

    // The feature-field prefix of a genome (class bit stripped).
    BitVector feature_slice(const BitVector& bits) const;

private:
    std::vector<int> max_code_;
    std::vector<int> width_;
    std::size_t feature_bits_ = 0;
    bool class_bit_ = false;
};

// A concrete genome with its evaluated fitness.
struct ScoredGenome {
    BitVector bits;
    double fitness = 0.0;
};

// Packs up to 64 bits into an integer key (bit 0 of the vector = MSB-first
// order preserved). Used for hashing genomes; requires bits.size() <= 64.
std::uint64_t pack_bits(const BitVector& bits);

}  // namespace qvica

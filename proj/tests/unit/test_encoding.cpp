#include <doctest.h>

#include <stdexcept>

#include "qvica/encoding.hpp"
#include "qvica/rng.hpp"

using namespace qvica;

TEST_CASE("layout widths fit max_code + 1 values") {
    const GenomeLayout layout({10, 1, 0, 63}, true);
    CHECK(layout.field_bits(0) == 4);  // 11 values
    CHECK(layout.field_bits(1) == 1);
    CHECK(layout.field_bits(2) == 0);  // single value takes no bits
    CHECK(layout.field_bits(3) == 6);
    CHECK(layout.feature_bits() == 11);
    CHECK(layout.genome_bits() == 12);
}

TEST_CASE("encode/decode round trip") {
    const GenomeLayout layout({10, 10, 10, 10, 10, 10}, true);
    Rng rng = make_rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> codes(6);
        for (int& c : codes) c = static_cast<int>(uniform_index(rng, 0, 10));
        const int cls = static_cast<int>(uniform_index(rng, 0, 1));
        const BitVector bits = layout.encode(codes, cls);
        REQUIRE(bits.size() == layout.genome_bits());
        const auto decoded = layout.decode(bits);
        REQUIRE(decoded.codes == codes);
        REQUIRE(decoded.class_bit == cls);
    }
}

TEST_CASE("decode wraps out-of-range field values by modulo") {
    const GenomeLayout layout({10}, false);
    // 4-bit field set to 13; valid codes are 0..10, so 13 mod 11 = 2
    const BitVector bits = {1, 1, 0, 1};
    CHECK(layout.decode(bits).codes[0] == 2);
}

TEST_CASE("encode rejects out-of-range codes") {
    const GenomeLayout layout({10}, false);
    CHECK_THROWS_AS(layout.encode({11}, std::nullopt), std::out_of_range);
    CHECK_THROWS_AS(layout.encode({-1}, std::nullopt), std::out_of_range);
    CHECK_THROWS_AS(layout.encode({5}, 1), std::invalid_argument);
}

TEST_CASE("feature_slice strips the class bit") {
    const GenomeLayout layout({3, 3}, true);
    const BitVector genome = layout.encode({2, 1}, 1);
    const BitVector features = layout.feature_slice(genome);
    CHECK(features.size() == layout.feature_bits());
    CHECK(BitVector(genome.begin(), genome.end() - 1) == features);
}

TEST_CASE("pack_bits is injective on short genomes") {
    CHECK(pack_bits({1, 0, 1, 1}) == 0b1011u);
    CHECK(pack_bits({}) == 0u);
    CHECK_THROWS_AS(pack_bits(BitVector(65, 1)), std::invalid_argument);
}

#include <gtest/gtest.h>

#include "dnapack/base_codec.hpp"
#include "test_support.hpp"

using namespace dnapack;

TEST(BaseCodec, EncodesTheFixedCodes)
{
    EXPECT_EQ(encode_base('A'), 0b00);
    EXPECT_EQ(encode_base('T'), 0b01);
    EXPECT_EQ(encode_base('G'), 0b10);
    EXPECT_EQ(encode_base('C'), 0b11);
}

TEST(BaseCodec, RejectsNAndLowercase)
{
    EXPECT_THROW(encode_base('N'), InvalidSymbolError);
    EXPECT_THROW(encode_base('a'), InvalidSymbolError);
    try {
        encode_base('N', 17);
        FAIL() << "expected InvalidSymbolError";
    } catch (const InvalidSymbolError& e) {
        EXPECT_EQ(e.symbol(), 'N');
        EXPECT_EQ(e.position(), 17u);
        EXPECT_NE(std::string(e.what()).find("'N'"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
    }
}

TEST(BaseCodec, DecodeIsInverseOfEncode)
{
    EXPECT_EQ(decode_base(0b01), 'T');
    EXPECT_EQ(decode_base(0b10), 'G');
    for (char c : std::string_view("ATGC")) EXPECT_EQ(decode_base(encode_base(c)), c);
    for (std::uint8_t code = 0; code < 4; ++code) EXPECT_EQ(encode_base(decode_base(code)), code);
}

TEST(BaseCodec, EnumMatchesTable)
{
    EXPECT_EQ(to_symbol(Base::A), 'A');
    EXPECT_EQ(to_symbol(Base::C), 'C');
    EXPECT_EQ(to_code(Base::G), 0b10);
}

TEST(PackQuad, Examples)
{
    EXPECT_EQ(pack_quad("ATGC"), (PackedQuad{0x1B, 4}));
    EXPECT_EQ(pack_quad("A"), (PackedQuad{0x00, 1}));
    EXPECT_EQ(pack_quad("CC"), (PackedQuad{0xF0, 2}));
}

TEST(PackQuad, ContractViolations)
{
    EXPECT_THROW(pack_quad(""), ContractViolation);
    EXPECT_THROW(pack_quad("ACGTA"), ContractViolation);
    EXPECT_THROW(pack_quad("AN"), InvalidSymbolError);
    EXPECT_THROW(unpack_quad({0x00, 0}), ContractViolation);
    EXPECT_THROW(unpack_quad({0x00, 5}), ContractViolation);
}

TEST(UnpackQuad, Examples)
{
    EXPECT_EQ(unpack_quad({0x1B, 4}), "ATGC");
    EXPECT_EQ(unpack_quad({0xF0, 2}), "CC");
    EXPECT_EQ(unpack_quad({0xFF, 2}), "CC");
}

TEST(PackQuad, ExhaustiveRoundTripAndCanonicalPadding)
{
    std::size_t cases = 0;
    for (const auto& q : testgen::all_sequences_up_to(4, "ATGC")) {
        if (q.empty()) continue;
        const PackedQuad packed = pack_quad(q);
        EXPECT_EQ(packed.count, q.size());
        EXPECT_EQ(unpack_quad(packed), q);
        EXPECT_EQ(packed.byte & padding_mask(q.size()), 0) << q;
        ++cases;
    }
    EXPECT_EQ(cases, 340u);
}

TEST(UnpackQuad, DependsOnlyOnEffectiveBits)
{
    for (std::uint8_t n = 1; n <= 3; ++n) {
        const auto keep = static_cast<std::uint8_t>(~padding_mask(n));
        for (unsigned byte = 0; byte < 256; ++byte) {
            const auto b = static_cast<std::uint8_t>(byte);
            EXPECT_EQ(unpack_quad({b, n}), unpack_quad({static_cast<std::uint8_t>(b & keep), n}));
        }
    }
}

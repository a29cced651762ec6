#include <gtest/gtest.h>

#include <random>

#include "gaes/gf256.hpp"
#include "oracle/reference.hpp"

using gaes::GFByte;

namespace {

GFByte g(unsigned v) { return GFByte(static_cast<std::uint8_t>(v)); }

}  // namespace

TEST(GF256, AddIsXor) {
  EXPECT_EQ(gaes::gf_add(g(0x01), g(0x03)), g(0x02));
  for (unsigned a = 0; a < 256; ++a) {
    EXPECT_EQ(gaes::gf_add(g(a), g(0)), g(a));
    EXPECT_EQ(gaes::gf_add(g(a), g(a)), g(0));
  }
}

TEST(GF256, MulKnownValues) {
  // x^7 * x^5 = x^12 reduces to x^7 + x^5 + x^3 + x + 1
  EXPECT_EQ(gaes::gf_mul(g(0x80), g(0x20)), g(0xAB));
  EXPECT_EQ(gaes::gf_mul(g(0x53), g(0xCA)), g(0x01));
  for (unsigned a = 0; a < 256; ++a) {
    EXPECT_EQ(gaes::gf_mul(g(a), g(1)), g(a));
  }
}

TEST(GF256, MulMatchesLongDivisionOracleExhaustively) {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      ASSERT_EQ(gaes::gf_mul(g(a), g(b)).value, oracle::mul(a, b)) << a << " * " << b;
      ASSERT_EQ(gaes::gf_mul(g(a), g(b)), gaes::gf_mul(g(b), g(a)));
    }
  }
}

TEST(GF256, RingLawsOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned> d(0, 255);
  for (int i = 0; i < 20000; ++i) {
    const GFByte a = g(d(rng)), b = g(d(rng)), c = g(d(rng));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(GF256, Pow) {
  EXPECT_EQ(gaes::gf_pow(g(2), 0), g(1));
  EXPECT_EQ(gaes::gf_pow(g(2), 8), g(0x1B));
  EXPECT_EQ(gaes::gf_pow(g(2), 9), g(0x36));
  EXPECT_EQ(gaes::gf_pow(g(0), 3), g(0));
  EXPECT_THROW(gaes::gf_pow(g(0), 0), std::domain_error);

  const std::array<std::uint8_t, 10> expected = {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36};
  for (unsigned r = 1; r <= 10; ++r) {
    EXPECT_EQ(gaes::gf_pow(g(2), r - 1).value, expected[r - 1]);
  }
}

TEST(GF256, Inverse) {
  EXPECT_EQ(gaes::gf_inv(g(1)), g(1));
  EXPECT_EQ(gaes::gf_inv(g(0)), g(0));
  EXPECT_EQ(gaes::gf_inv(g(0x53)), g(0xCA));
  for (unsigned a = 1; a < 256; ++a) {
    ASSERT_EQ(gaes::gf_mul(g(a), gaes::gf_inv(g(a))), g(1)) << a;
    ASSERT_EQ(gaes::gf_inv(g(a)).value, oracle::inverse(static_cast<std::uint8_t>(a)));
  }
}

TEST(GF256, XtimeDecompositionMatchesMul) {
  // the batch MixColumns builds c*x as the XOR of xtime powers of x
  for (unsigned c = 0; c < 256; ++c) {
    for (unsigned x = 0; x < 256; ++x) {
      std::uint8_t acc = 0;
      std::uint8_t p = static_cast<std::uint8_t>(x);
      for (int bit = 0; bit < 8; ++bit) {
        if ((c >> bit) & 1u) acc ^= p;
        p = gaes::detail::xtime(p, 0x1B);
      }
      ASSERT_EQ(acc, gaes::gf_mul(g(c), g(x)).value);
    }
  }
}

TEST(GF256, BitConversions) {
  EXPECT_EQ(gaes::bits_of_byte(g(0x80)).bits, (std::array<bool, 8>{1, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(gaes::bits_of_byte(g(0x63)).bits, (std::array<bool, 8>{0, 1, 1, 0, 0, 0, 1, 1}));
  for (unsigned a = 0; a < 256; ++a) {
    EXPECT_EQ(gaes::byte_of_bits(gaes::bits_of_byte(g(a))), g(a));
  }
}

TEST(GF256, BitCirculantShiftsRight) {
  const auto m = gaes::BitMatrix8::circulant(gaes::bits_of_byte(g(0xF8)));
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      EXPECT_EQ(m.cells[r][c], m.cells[0][(c + 8 - r) % 8]);
    }
  }
  EXPECT_EQ(gaes::byte_of_bits(gaes::BitVec8{m.cells[1]}), g(0x7C));
}

TEST(GF256, Affine) {
  const auto id = gaes::BitMatrix8::identity();
  const auto zero = gaes::bits_of_byte(g(0));
  for (unsigned y = 0; y < 256; ++y) {
    EXPECT_EQ(gaes::gf2_affine(id, gaes::bits_of_byte(g(y)), zero), gaes::bits_of_byte(g(y)));
  }
  const auto a = gaes::BitMatrix8::circulant(gaes::bits_of_byte(g(0xF8)));
  for (unsigned b = 0; b < 256; b += 37) {
    EXPECT_EQ(gaes::gf2_affine(a, zero, gaes::bits_of_byte(g(b))), gaes::bits_of_byte(g(b)));
  }
  EXPECT_EQ(gaes::byte_of_bits(gaes::gf2_affine(a, zero, gaes::bits_of_byte(g(0x63)))), g(0x63));
}

TEST(GFMatrix, IdentityAndScalar) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<unsigned> d(0, 255);
  std::vector<GFByte> data(4 * 9);
  for (auto& v : data) v = g(d(rng));
  const gaes::GFMatrix b(4, 9, data);
  EXPECT_EQ(gaes::gf_matmul(gaes::GFMatrix::identity(4), b), b);

  const gaes::GFMatrix one_a(1, 1, {0x57});
  const gaes::GFMatrix one_b(1, 1, {0x83});
  EXPECT_EQ(gaes::gf_matmul(one_a, one_b)(0, 0), g(0x57) * g(0x83));
}

TEST(GFMatrix, MixMatricesAreMutualInverses) {
  const auto fwd = gaes::GFMatrix::circulant({2, 3, 1, 1});
  const auto inv = gaes::GFMatrix::circulant({14, 11, 13, 9});
  EXPECT_EQ(gaes::gf_matmul(fwd, inv), gaes::GFMatrix::identity(4));
  EXPECT_EQ(gaes::gf_matmul(inv, fwd), gaes::GFMatrix::identity(4));
  EXPECT_EQ(fwd(1, 0), g(1));
  EXPECT_EQ(fwd(1, 1), g(2));
}

TEST(GFMatrix, MatchesTripleLoopOracle) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<unsigned> d(0, 255);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = dim(rng), k = dim(rng), m = dim(rng);
    oracle::Matrix a(n, std::vector<std::uint8_t>(k)), b(k, std::vector<std::uint8_t>(m));
    std::vector<GFByte> fa, fb;
    for (auto& row : a)
      for (auto& v : row) fa.push_back(g(v = static_cast<std::uint8_t>(d(rng))));
    for (auto& row : b)
      for (auto& v : row) fb.push_back(g(v = static_cast<std::uint8_t>(d(rng))));
    const auto got = gaes::gf_matmul(gaes::GFMatrix(n, k, fa), gaes::GFMatrix(k, m, fb));
    const auto want = oracle::matmul(a, b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) ASSERT_EQ(got(i, j).value, want[i][j]);
  }
}

TEST(GFMatrix, DimensionErrors) {
  EXPECT_THROW(gaes::gf_matmul(gaes::GFMatrix(2, 3), gaes::GFMatrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(gaes::GFMatrix(2, 2, std::vector<GFByte>(3)), std::invalid_argument);
}

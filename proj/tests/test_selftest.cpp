#include <gtest/gtest.h>

#include "gaes/hex.hpp"
#include "gaes/selftest.hpp"

TEST(SelfTest, AllChecksPassOnStandardTables) {
  const auto results = gaes::run_selftest();
  EXPECT_GE(results.size(), 6u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name;
  EXPECT_TRUE(gaes::all_passed(results));
}

TEST(SelfTest, SabotagedPolynomialFailsSBoxCheckFirst) {
  const auto broken = gaes::CipherTables::build<0x11D>();
  const auto results = gaes::run_selftest(broken);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results.front().name, "sbox-fips197");
  EXPECT_FALSE(results.front().passed);
  EXPECT_FALSE(gaes::all_passed(results));
}

TEST(Hex, ParseAndFormat) {
  const auto b = gaes::parse_hex_block("000102030405060708090A0b0C0d0E0f");
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(b[i], i);
  EXPECT_EQ(gaes::to_hex(b), "000102030405060708090a0b0c0d0e0f");
  EXPECT_EQ(gaes::to_hex(std::span(b).first(3), " "), "00 01 02");
  EXPECT_THROW(gaes::parse_hex_block("00"), std::invalid_argument);
  EXPECT_THROW(gaes::parse_hex_block("000102030405060708090a0b0c0d0e0g"), std::invalid_argument);
  EXPECT_THROW(gaes::parse_hex_block("000102030405060708090a0b0c0d0e0f00"), std::invalid_argument);
}

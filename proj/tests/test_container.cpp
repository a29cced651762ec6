#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "gaes/container.hpp"
#include "gaes/kat.hpp"
#include "oracle/reference.hpp"

namespace {

std::vector<std::uint8_t> read_fixture(const std::string& name) {
  std::ifstream in(std::string(GAES_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

gaes::CipherContainer random_container(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(0, 40), blocks(1, 5);
  const std::size_t n = count(rng);
  const std::size_t m = 16 * blocks(rng);
  gaes::CipherContainer c;
  c.payload = gaes::ByteGrid(n, m, oracle::random_bytes(rng, n * m));
  std::uniform_int_distribution<std::uint32_t> len(0, static_cast<std::uint32_t>(m));
  for (std::size_t i = 0; i < n; ++i) c.lengths.push_back(len(rng));
  if (rng() % 2 == 0) {
    c.ivs = gaes::IVSet::shared(oracle::random_block(rng));
  } else {
    std::vector<gaes::Block> ivs(n);
    for (auto& iv : ivs) iv = oracle::random_block(rng);
    c.ivs = gaes::IVSet::per_message(ivs);
  }
  return c;
}

}  // namespace

TEST(Container, ReadWriteRoundTripProperty) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const auto c = random_container(rng);
    const auto bytes = gaes::write_container(c);
    ASSERT_EQ(bytes.size(), gaes::container_size(c.n_messages(), c.padded_len(), c.ivs.mode()));
    ASSERT_EQ(gaes::read_container(bytes), c);
  }
}

TEST(Container, SharedHeaderLayoutIsBigEndian) {
  gaes::CipherContainer c;
  c.ivs = gaes::IVSet::shared(gaes::kat::kCbcIv);
  c.payload = gaes::ByteGrid(2, 0x110);
  c.lengths = {0x0102u, 32u};
  const auto bytes = gaes::write_container(c);
  const std::vector<std::uint8_t> head = {'G', 'A', 'E', 'S', 0x01, 0x01, 0x00, 0x00,
                                          0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x01, 0x10};
  ASSERT_EQ(bytes.size(), 16u + 16u + 8u + 2u * 0x110);
  EXPECT_TRUE(std::equal(head.begin(), head.end(), bytes.begin()));
  EXPECT_TRUE(std::equal(gaes::kat::kCbcIv.begin(), gaes::kat::kCbcIv.end(), bytes.begin() + 16));
  const std::vector<std::uint8_t> lens = {0x00, 0x00, 0x01, 0x02, 0x00, 0x00, 0x00, 0x20};
  EXPECT_TRUE(std::equal(lens.begin(), lens.end(), bytes.begin() + 32));
}

TEST(Container, GoldenFixtureByteIdentical) {
  // tests/data/golden.gaes was produced by an independent AES implementation
  const auto golden = read_fixture("golden.gaes");
  ASSERT_FALSE(golden.empty());

  const std::vector<std::string> msgs = {"hello", "sixteen byte msg", "twenty bytes of text"};
  std::vector<gaes::Block> ivs(3);
  for (std::size_t i = 0; i < 16; ++i) {
    ivs[0][i] = static_cast<std::uint8_t>(i);
    ivs[1][i] = static_cast<std::uint8_t>(16 + i);
    ivs[2][i] = 0xA5;
  }
  const auto batch = gaes::pad_zero(msgs);
  gaes::CipherContainer c;
  c.ivs = gaes::IVSet::per_message(ivs);
  c.payload = gaes::encrypt_batch(gaes::kat::kCbcKey, c.ivs, batch);
  for (auto len : batch.original_lens) c.lengths.push_back(static_cast<std::uint32_t>(len));
  EXPECT_EQ(gaes::write_container(c), golden);

  const auto parsed = gaes::read_container(golden);
  EXPECT_EQ(parsed, c);
  EXPECT_EQ(parsed.lengths, (std::vector<std::uint32_t>{5, 16, 20}));
}

TEST(Container, RejectsMalformed) {
  std::mt19937_64 rng(1);
  auto c = random_container(rng);
  while (c.n_messages() == 0) c = random_container(rng);
  const auto good = gaes::write_container(c);

  auto expect_error = [](std::vector<std::uint8_t> bytes, const std::string& what) {
    try {
      gaes::read_container(bytes);
      ADD_FAILURE() << "expected " << what;
    } catch (const gaes::FormatError& e) {
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  };

  auto bad = good;
  bad[0] = 'X';
  expect_error(bad, "bad magic");
  bad = good;
  bad[4] = 0x02;
  expect_error(bad, "version");
  bad = good;
  bad[5] = 0x02;
  expect_error(bad, "mode");
  bad = good;
  bad[6] = 0x07;
  expect_error(bad, "iv mode");
  bad = good;
  bad[7] = 0x01;
  expect_error(bad, "reserved");
  expect_error({good.begin(), good.begin() + 10}, "truncated");
  expect_error({good.begin(), good.end() - 1}, "truncated");
  bad = good;
  bad.push_back(0);
  expect_error(bad, "size mismatch");
  bad = good;
  bad[15] = static_cast<std::uint8_t>(bad[15] + 1);
  expect_error(bad, "multiple of 16");
}

TEST(Container, WriterRejectsInconsistentFields) {
  gaes::CipherContainer c;
  c.payload = gaes::ByteGrid(2, 16);
  c.lengths = {1};
  EXPECT_THROW(gaes::write_container(c), std::invalid_argument);
  c.lengths = {1, 17};
  EXPECT_THROW(gaes::write_container(c), std::invalid_argument);
  c.lengths = {1, 2};
  c.ivs = gaes::IVSet::per_message({gaes::Block{}});
  EXPECT_THROW(gaes::write_container(c), std::invalid_argument);
}

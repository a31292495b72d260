#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "core/account.hpp"
#include "core/error.hpp"

using namespace gotcha;
using namespace gotcha::auth;

namespace {

puzzle::PuzzleParams small_params() {
  puzzle::PuzzleParams p;
  p.k = 3;
  p.alpha = 2;
  return p;
}

AccountRecord sample(const std::string& user = "alice") {
  return make_record(user, "correct horse", matching::Permutation::from_one_based(std::vector{2, 3, 1}),
                     {"owl", "two dancers", "lob,ster\ttab"},
                     seed::Seed::from_hex("000102030405060708090a0b0c0d0e0f"),
                     seed::Seed::from_hex("f0e0d0c0b0a090807060504030201000"), small_params(), {0});
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("gotcha-account-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path file() const { return dir_ / "accounts.db"; }
  void write(const std::string& text) const {
    std::ofstream(file(), std::ios::binary) << text;
  }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Record, HashBindsPasswordAndPermutation) {
  auto r = sample();
  auto pi = matching::Permutation::from_one_based(std::vector{2, 3, 1});
  EXPECT_TRUE(hash_matches(r, "correct horse", pi));
  EXPECT_FALSE(hash_matches(r, "correct horsf", pi));
  EXPECT_FALSE(hash_matches(r, "correct horse", matching::Permutation::from_one_based(std::vector{3, 2, 1})));
}

TEST(Record, SerializeRoundTrip) {
  auto r = sample();
  auto line = serialize_record(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(line.find("correct horse"), std::string::npos);
  EXPECT_EQ(parse_record(line), r);
}

TEST(Record, MakeRecordValidates) {
  auto pi = matching::Permutation::from_one_based(std::vector{2, 1});
  EXPECT_THROW(make_record("a", "pw", pi, {"x", "y"}, seed::Seed(Bytes{1}), seed::Seed(Bytes{2}),
                           small_params(), {0}),
               Error);
}

TEST(Record, ParseRejectsDamage) {
  auto line = serialize_record(sample());
  auto expect_corrupt = [](const std::string& l) {
    try {
      parse_record(l);
      FAIL() << "accepted: " << l;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::StoreCorrupt);
    }
  };
  expect_corrupt("");
  expect_corrupt("v2" + line.substr(2));
  expect_corrupt(line.substr(0, line.rfind('\t')));
  expect_corrupt(line + ",Zm9v");  // label count no longer k
  auto bad_int = line;
  bad_int.replace(bad_int.find("\t3\t"), 3, "\tx\t");
  expect_corrupt(bad_int);
}

TEST(Username, Validation) {
  EXPECT_NO_THROW(validate_username("alice smith"));
  EXPECT_THROW(validate_username(""), Error);
  EXPECT_THROW(validate_username(std::string(129, 'a')), Error);
  EXPECT_THROW(validate_username("a\nb"), Error);
}

TEST(Store, InMemoryDuplicate) {
  AccountStore store;
  store.insert(sample());
  EXPECT_TRUE(store.contains("alice"));
  EXPECT_EQ(store.size(), 1u);
  try {
    store.insert(sample());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateUser);
  }
  EXPECT_FALSE(store.find("bob").has_value());
}

TEST_F(TempDir, FileStoreRoundTrip) {
  {
    AccountStore store(file());
    store.insert(sample("alice"));
    store.insert(sample("bob"));
  }
  AccountStore reopened(file());
  EXPECT_EQ(reopened.size(), 2u);
  EXPECT_EQ(*reopened.find("bob"), sample("bob"));
}

TEST_F(TempDir, NewFileGetsHeader) {
  AccountStore store(file());
  std::ifstream in(file());
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, AccountStore::kHeader);
}

TEST_F(TempDir, CorruptLineRefusesToLoad) {
  write(std::string(AccountStore::kHeader) + "\n" + serialize_record(sample()) + "\nv1\tgarbage\n");
  try {
    AccountStore store(file());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StoreCorrupt);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST_F(TempDir, MissingHeaderOrTruncatedTail) {
  write(serialize_record(sample()) + "\n");
  EXPECT_THROW(AccountStore{file()}, Error);
  write(std::string(AccountStore::kHeader) + "\n" + serialize_record(sample()));
  EXPECT_THROW(AccountStore{file()}, Error);
}

TEST_F(TempDir, DuplicateLinesAreCorruption) {
  auto line = serialize_record(sample());
  write(std::string(AccountStore::kHeader) + "\n" + line + "\n" + line + "\n");
  EXPECT_THROW(AccountStore{file()}, Error);
}

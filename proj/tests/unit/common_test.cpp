#include <gtest/gtest.h>

#include "nfd/common/date.hpp"
#include "nfd/common/error.hpp"
#include "nfd/common/fs.hpp"
#include "nfd/common/hash.hpp"
#include "nfd/common/text.hpp"
#include "workspace_fixture.hpp"

namespace nfd {
namespace {

TEST(Date, ParsesAndFormatsIsoDates) {
  auto d = Date::parse("2025-01-07");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->year(), 2025);
  EXPECT_EQ(d->month(), 1u);
  EXPECT_EQ(d->day(), 7u);
  EXPECT_EQ(d->str(), "2025-01-07");
  EXPECT_EQ(d->compact(), "20250107");
  EXPECT_EQ(d->iso_weekday(), 2u);
}

TEST(Date, RejectsMalformedAndImpossibleDates) {
  for (const char* bad : {"2025-1-07", "2025-02-30", "2025-13-01", "20250107", "", "2025-01-07x"}) {
    EXPECT_FALSE(Date::parse(bad)) << bad;
  }
  EXPECT_TRUE(Date::parse("2024-02-29"));
  EXPECT_FALSE(Date::parse("2025-02-29"));
}

TEST(Date, DayArithmeticCrossesMonthAndYear) {
  Date d = Date::from_ymd(2024, 12, 31);
  EXPECT_EQ(d.plus_days(1).str(), "2025-01-01");
  EXPECT_EQ(days_between(Date::from_ymd(2025, 1, 1), Date::from_ymd(2025, 3, 1)), 59);
  EXPECT_EQ(Date::from_days(0).str(), "1970-01-01");
}

TEST(TimeOfDay, ParsesHourMinute) {
  EXPECT_EQ(TimeOfDay::parse("09:14")->minutes(), 9 * 60 + 14);
  EXPECT_EQ(TimeOfDay::from_minutes(65).str(), "01:05");
  EXPECT_FALSE(TimeOfDay::parse("24:00"));
  EXPECT_FALSE(TimeOfDay::parse("9:14"));
}

TEST(Timestamp, AcceptsThreeSpellings) {
  EXPECT_EQ(Timestamp::parse("2025-03-02T10:00:00Z")->str(), "2025-03-02T10:00:00Z");
  EXPECT_EQ(Timestamp::parse("2025-03-02T10:00:00")->str(), "2025-03-02T10:00:00Z");
  EXPECT_EQ(Timestamp::parse("2025-03-02")->str(), "2025-03-02T00:00:00Z");
  EXPECT_FALSE(Timestamp::parse("2025-03-02 10:00"));
  EXPECT_EQ(Timestamp::at(Date::from_ymd(2025, 3, 2), 23, 59, 59).date().str(), "2025-03-02");
}

TEST(Text, LinesDropsCarriageReturnsAndFinalEmptyLine) {
  auto l = text::lines("a\r\nb\n\nc\n");
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "a");
  EXPECT_EQ(l[2], "");
  EXPECT_EQ(l[3], "c");
  EXPECT_TRUE(text::lines("").empty());
}

TEST(Text, CanonicalFormIsAFixpoint) {
  EXPECT_EQ(text::canonical("\xEF\xBB\xBFx\r\ny\n\n\n"), "x\ny\n");
  EXPECT_EQ(text::canonical("x"), "x\n");
  EXPECT_EQ(text::canonical(""), "");
  std::string once = text::canonical("a\r\n\r\nb");
  EXPECT_EQ(text::canonical(once), once);
}

TEST(Text, Utf8PrefixNeverSplitsASequence) {
  std::string s = "ab\xC3\xA9";  // "abé"
  EXPECT_EQ(text::utf8_prefix(s, 3), "ab");
  EXPECT_EQ(text::utf8_prefix(s, 4), s);
  EXPECT_EQ(text::utf8_prefix(s, 10), s);
}

TEST(Text, KebabCase) {
  EXPECT_TRUE(text::is_kebab_case("error-patterns"));
  EXPECT_TRUE(text::is_kebab_case("a1"));
  EXPECT_FALSE(text::is_kebab_case("Error-patterns"));
  EXPECT_FALSE(text::is_kebab_case("-lead"));
  EXPECT_FALSE(text::is_kebab_case("double--dash"));
  EXPECT_FALSE(text::is_kebab_case(""));
}

TEST(Text, WhitespaceTokens) {
  EXPECT_EQ(text::count_whitespace_tokens("  one two\n three\t"), 3u);
  EXPECT_EQ(text::count_whitespace_tokens(""), 0u);
}

TEST(Hash, Fnv1aKnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(to_hex(0xabcULL), "0000000000000abc");
  EXPECT_EQ(from_hex("0000000000000abc"), 0xabcULL);
  EXPECT_FALSE(from_hex("xyz"));
}

TEST(Error, CarriesStableCodeNames) {
  Error e(ErrorCode::OverlappingPendingBatch, "busy");
  EXPECT_EQ(e.code(), ErrorCode::OverlappingPendingBatch);
  EXPECT_EQ(to_string(e.code()), "OverlappingPendingBatch");
  Error p = parse_error("nfd.json", 3, "bad");
  EXPECT_EQ(p.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(p.what()).find("nfd.json:3"), std::string::npos);
}

TEST(StagedWrite, CommitsAllFilesAndSkipsUnchanged) {
  testing::TempDir tmp;
  testing::spit(tmp / "same.txt", "same");
  StagedWrite w;
  w.put(tmp / "same.txt", "same");
  w.put(tmp / "dir/new.txt", "new");
  auto paths = w.paths();
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], tmp / "dir/new.txt");
  w.commit();
  EXPECT_EQ(testing::slurp(tmp / "dir/new.txt"), "new");
  for (const auto& e : fs::recursive_directory_iterator(tmp.path())) {
    EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos) << e.path();
  }
}

TEST(StagedWrite, LaterPutOfSamePathWins) {
  testing::TempDir tmp;
  StagedWrite w;
  w.put(tmp / "f.txt", "first");
  w.put(tmp / "f.txt", "second");
  w.commit();
  EXPECT_EQ(testing::slurp(tmp / "f.txt"), "second");
}

}  // namespace
}  // namespace nfd

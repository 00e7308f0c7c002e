#include <gtest/gtest.h>

#include "nfd/common/error.hpp"
#include "nfd/model/config.hpp"
#include "nfd/model/principles.hpp"
#include "nfd/model/skill.hpp"
#include "nfd/model/types.hpp"

namespace nfd {
namespace {

TEST(EntryId, RoundTripsAndOrdersByDateThenSequence) {
  auto id = EntryId::parse("2025-01-07#0002");
  ASSERT_TRUE(id);
  EXPECT_EQ(id->date.str(), "2025-01-07");
  EXPECT_EQ(id->sequence, 2);
  EXPECT_EQ(id->str(), "2025-01-07#0002");
  EXPECT_LT(*EntryId::parse("2025-01-07#0009"), *EntryId::parse("2025-01-08#0001"));
  EXPECT_LT(*EntryId::parse("2025-01-07#0002"), *EntryId::parse("2025-01-07#0010"));
  EXPECT_FALSE(EntryId::parse("2025-01-07#2"));
  EXPECT_FALSE(EntryId::parse("2025-01-07#0000"));
  EXPECT_FALSE(EntryId::parse("2025-01-07"));
}

TEST(Category, TagMapping) {
  EXPECT_EQ(category_of_tag("ERROR"), Category::ErrorRecord);
  EXPECT_EQ(category_of_tag("INSIGHT"), Category::InsightFragment);
  EXPECT_EQ(category_of_tag("DECISION"), Category::OperationalRecord);
  EXPECT_FALSE(category_of_tag("SECTOR-SPECIFIC"));
  for (Category c : kAllCategories) {
    EXPECT_EQ(parse_category(category_name(c)), c);
    EXPECT_EQ(category_of_tag(category_tag(c)), c);
  }
}

TEST(Principles, ParsesBlockAndSkipsText) {
  std::string memory =
      "# Memory\n\nSome notes.\n\n## Principles\n\n"
      "<!-- nfd:principles:begin -->\n"
      "- [P-0001|confirmed] Size by decay of uncertainty (origin: user; sources: 2025-01-08#0003, "
      "2025-01-10#0001)\n"
      "- [P-0002|proposed] Check dilution first\n"
      "garbage line\n"
      "<!-- nfd:principles:end -->\n"
      "- [P-0003|proposed] outside the block\n";
  auto block = parse_principles(memory);
  ASSERT_EQ(block.principles.size(), 2u);
  const Principle& p = block.principles[0];
  EXPECT_EQ(p.id, "P-0001");
  EXPECT_EQ(p.status, PrincipleStatus::Confirmed);
  EXPECT_EQ(p.text, "Size by decay of uncertainty");
  EXPECT_TRUE(p.user_origin);
  ASSERT_EQ(p.source_entries.size(), 2u);
  EXPECT_EQ(p.source_entries[1].str(), "2025-01-10#0001");
  EXPECT_FALSE(block.principles[1].user_origin);
  ASSERT_EQ(block.warnings.size(), 1u);
  EXPECT_EQ(block.warnings[0].first, 10);
}

TEST(Principles, RenderParsesBack) {
  Principle p{"P-0007", "Text with (parentheses) inside", PrincipleStatus::Contradicted,
              {*EntryId::parse("2025-02-01#0001")}, false};
  std::string memory = splice_principles("# Memory\n", {p});
  auto block = parse_principles(memory);
  ASSERT_EQ(block.principles.size(), 1u);
  EXPECT_EQ(block.principles[0], p);
}

TEST(Principles, SpliceReplacesOnlyTheBlock) {
  std::string memory = "# Memory\n\nbefore\n\n<!-- nfd:principles:begin -->\n- [P-0001|proposed] old\n"
                       "<!-- nfd:principles:end -->\n\nafter\n";
  Principle p{"P-0002", "new", PrincipleStatus::Proposed, {}, true};
  std::string out = splice_principles(memory, {p});
  EXPECT_EQ(out,
            "# Memory\n\nbefore\n\n<!-- nfd:principles:begin -->\n- [P-0002|proposed] new (origin: user)\n"
            "<!-- nfd:principles:end -->\n\nafter\n");
  EXPECT_EQ(splice_principles(out, {p}), out);
}

TEST(Principles, SpliceWithoutBlockAppendsSectionOnlyWhenNeeded) {
  EXPECT_EQ(splice_principles("# Memory\n", {}), "# Memory\n");
  std::string out = splice_principles("# Memory\n", {{"P-0001", "x", PrincipleStatus::Proposed, {}, false}});
  EXPECT_NE(out.find("## Principles"), std::string::npos);
  EXPECT_EQ(parse_principles(out).principles.size(), 1u);
}

TEST(Principles, NextIdFollowsMaximum) {
  EXPECT_EQ(next_principle_id({}), "P-0001");
  std::vector<Principle> ps(2);
  ps[0].id = "P-0003";
  ps[1].id = "P-0012";
  EXPECT_EQ(next_principle_id(ps), "P-0013");
}

TEST(Skill, SectionFlagsFollowMarkerAndSubsections) {
  std::string ref =
      "# Errors\n\nintro\n\n"
      "## Full section\n"
      "<!-- nfd:section batch=b-1 decontextualized=true kind=ErrorPattern validated=true -->\n\n"
      "Pattern text.\n\n### Conditions\n\nWhen capex heavy.\n\n### Examples\n\n- 2025-01-07#0002: example\n\n"
      "### Provenance\n\n- 2025-01-07#0002\n- 2025-01-09#0002\n\n"
      "## Stub section\n\n### Conditions\n\n" +
      std::string(kConditionsStub) + "\n\n## Empty\n";
  auto sections = parse_reference_sections("errors.md", ref);
  ASSERT_EQ(sections.size(), 3u);
  const auto& full = sections[0];
  EXPECT_EQ(full.heading, "Full section");
  EXPECT_EQ(full.flags, (SectionFlags{true, true, true, true}));
  EXPECT_EQ(full.kind, "ErrorPattern");
  EXPECT_EQ(full.batch_id, "b-1");
  ASSERT_EQ(full.provenance.size(), 2u);
  EXPECT_TRUE(full.populated);
  EXPECT_EQ(sections[1].flags, SectionFlags{});
  EXPECT_FALSE(sections[1].populated);
  EXPECT_FALSE(sections[2].populated);
  EXPECT_TRUE(is_populated_reference(ref));
  EXPECT_FALSE(is_populated_reference("# Title only\n\n## Empty\n"));
}

TEST(Skill, AssetFlagsAreConjunctionOverSections) {
  SkillAsset s;
  s.name = "x";
  EXPECT_EQ(s.flags(), SectionFlags{});
  s.references["a.md"] = "## A\n<!-- nfd:section validated=true decontextualized=true -->\nbody\n";
  s.references["b.md"] = "## B\n<!-- nfd:section validated=true -->\nbody\n";
  SectionFlags f = s.flags();
  EXPECT_TRUE(f.validated);
  EXPECT_FALSE(f.decontextualized);
}

TEST(Skill, MarkerRoundTrip) {
  SectionMarker m{{"validated", "true"}, {"kind", "ErrorPattern"}};
  std::string line = render_section_marker(m);
  EXPECT_EQ(line, "<!-- nfd:section kind=ErrorPattern validated=true -->");
  auto parsed = parse_reference_sections("f", "## H\n" + line + "\n");
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_TRUE(parsed[0].flags.validated);
}

TEST(Skill, ContentHashIgnoresVersionsButNotReferences) {
  SkillAsset s;
  s.instructions = "# s\n";
  s.references["r.md"] = "## R\n";
  auto h = skill_content_hash(s);
  s.versions.push_back({1, "b", Timestamp{}, "c", "h"});
  EXPECT_EQ(skill_content_hash(s), h);
  s.references["r.md"] = "## R2\n";
  EXPECT_NE(skill_content_hash(s), h);
}

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(validate_config(EngineConfig{})); }

TEST(Config, ValidationRejectsEachBadField) {
  auto bad = [](auto mutate) {
    EngineConfig c;
    mutate(c);
    try {
      validate_config(c);
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidConfig;
    }
    return false;
  };
  EXPECT_TRUE(bad([](EngineConfig& c) { c.alpha = 0.5; }));
  EXPECT_TRUE(bad([](EngineConfig& c) {
    c.alpha = -0.2;
    c.beta = 0.6;
    c.gamma = 0.6;
  }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.constitutional_budget_tokens = 0; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.min_support = 0; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.similarity_threshold = 1.5; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.decay_lambda = -1; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.n_sat = 0; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.s_sat = 0; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.threshold_trigger = -1; }));
  EXPECT_TRUE(bad([](EngineConfig& c) { c.schedule = "fortnightly"; }));
}

TEST(Config, OverridesParseTypedValues) {
  EngineConfig c;
  apply_config_override(c, "min_support=4");
  apply_config_override(c, " similarity_threshold = 0.5 ");
  apply_config_override(c, "schedule=weekly");
  EXPECT_EQ(c.min_support, 4);
  EXPECT_DOUBLE_EQ(c.similarity_threshold, 0.5);
  EXPECT_EQ(c.schedule, "weekly");
  EXPECT_THROW(apply_config_override(c, "min_support=four"), Error);
  EXPECT_THROW(apply_config_override(c, "nonsense=1"), Error);
  EXPECT_THROW(apply_config_override(c, "min_support"), Error);
}

TEST(Config, JsonRoundTripKeepsEveryField) {
  EngineConfig c;
  c.min_support = 5;
  c.schedule = "daily";
  c.decay_lambda = 0.02;
  auto j = workspace_config_to_json(c, LifecyclePhase::StructuredNurturing);
  EngineConfig back;
  LifecyclePhase phase = LifecyclePhase::Bootstrap;
  std::vector<std::string> warnings;
  workspace_config_from_json(j, back, phase, warnings);
  EXPECT_EQ(back, c);
  EXPECT_EQ(phase, LifecyclePhase::StructuredNurturing);
  EXPECT_TRUE(warnings.empty());

  j["extra"] = 1;
  workspace_config_from_json(j, back, phase, warnings);
  EXPECT_EQ(warnings.size(), 1u);
  j["min_support"] = "three";
  EXPECT_THROW(workspace_config_from_json(j, back, phase, warnings), Error);
}

TEST(Config, CanonicalDumpSortsKeys) {
  nlohmann::json j{{"b", 1}, {"a", 2}};
  EXPECT_EQ(dump_canonical(j), "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

}  // namespace
}  // namespace nfd

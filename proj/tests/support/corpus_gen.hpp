#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "nfd/crystal/review.hpp"
#include "nfd/ingest/append.hpp"
#include "nfd/ingest/transcript.hpp"

namespace nfd::testing {

/// Skill created by generate_workspace as the target for SkillReference
/// drafts.
inline constexpr const char* kGeneratedSkill = "domain-notes";

/// Random entry drawn from a handful of recurring themes, so that groups of
/// similar entries (and thus candidates) appear at realistic rates.
NewEntry random_entry(std::mt19937& rng, Date date);

/// Free-form body with awkward content: brackets, multi-byte UTF-8,
/// continuation lines, trailing spaces.
std::string random_awkward_body(std::mt19937& rng);

/// Transcript of `turns` turns; with `all_tagged` every turn carries
/// explicit leading tags.
InteractionTranscript random_transcript(std::mt19937& rng, Date date, int turns, bool all_tagged);

/// Scaffolds a workspace with `entries` random entries spread over
/// `days` days from `start`, plus a hand-made skill `domain-notes`.
void generate_workspace(const std::filesystem::path& root, std::mt19937& rng, int entries, Date start, int days);

/// Reviewer behaviour for property runs: approve, edit or reject each
/// candidate at random, sometimes with substitutions or principle text.
DecisionDocument random_decisions(const ReviewBatch& batch, std::mt19937& rng);

/// Decision document approving every candidate. SkillReference candidates
/// go to `skill`.
DecisionDocument approve_all(const ReviewBatch& batch, const std::string& skill);

}  // namespace nfd::testing

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nfd/model/types.hpp"

namespace nfd {

/// Placeholder body written under `### Conditions` by the structuring step.
/// A Conditions subsection holding only this line does not count as present.
inline constexpr std::string_view kConditionsStub = "_Conditions not yet specified._";

/// Key/value pairs of a `<!-- nfd:section ... -->` marker line.
using SectionMarker = std::map<std::string, std::string>;

std::string render_section_marker(const SectionMarker& marker);

/// Splits a reference file into its `## ` sections and derives each section's
/// flags from the marker line and the Conditions/Examples/Provenance
/// subsections.
std::vector<ReferenceSection> parse_reference_sections(std::string_view file, std::string_view text);

/// Hash over SKILL.md, references and scripts (not the version list).
std::uint64_t skill_content_hash(const SkillAsset& skill);

/// A reference file with at least one populated section.
bool is_populated_reference(std::string_view text);

}  // namespace nfd

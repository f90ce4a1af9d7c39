#pragma once

#include <map>
#include <string>

#include "hfsr/dictionary.hpp"
#include "hfsr/pipeline.hpp"

namespace hfsr {

/// Flat key=value configuration text. '#' starts a comment, blank lines are
/// ignored. Every SRConfig and GridSpec field is addressable; see
/// apply_config_entry for the key list.
std::map<std::string, std::string> parse_config_file(const std::string &path);
std::map<std::string, std::string> parse_config_text(const std::string &text);

/// Applies one key=value pair to the config pair. Throws
/// std::invalid_argument on unknown keys or unparsable values.
void apply_config_entry(SRConfig &sr, GridSpec &grid, const std::string &key,
                        const std::string &value);

void apply_config(SRConfig &sr, GridSpec &grid,
                  const std::map<std::string, std::string> &entries);

RefinementMode parse_refinement_mode(const std::string &s);
WeightingMode parse_weighting_mode(const std::string &s);
std::vector<ScaleStep> parse_scale_schedule(const std::string &s);

}  // namespace hfsr

// Flat key=value configuration for runs and benchmarks.
//
// Keys are grouped by prefix: descent.*, explore.*, postprocess.*, mole.*
// and mogsa.*. Unknown keys are rejected.

#ifndef MOLE_CONFIG_HPP
#define MOLE_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mole/mogsa.hpp"
#include "mole/mole.hpp"

namespace mole {

using KeyValues = std::map<std::string, std::string>;

/// Reads `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Later keys override earlier ones.
KeyValues parse_key_values(std::istream& in);

/// Parses a single "key=value" token.
std::pair<std::string, std::string> split_key_value(const std::string& token);

void apply_overrides(const KeyValues& values, MoleConfig& mole, MogsaConfig& mogsa);

/// All recognized keys, sorted.
std::vector<std::string> known_config_keys();

}  // namespace mole

#endif  // MOLE_CONFIG_HPP

#pragma once

#include <string>

#include "astower/isomorphism.hpp"
#include "astower/tower.hpp"

namespace astower {

// Tower file: {"p", "d", "k", "levels": [{"q": [...], "kind": "linear"|"power"}, ...],
// "tables": {...}} with coefficient arrays constant-term-first. The tables
// section (generator images and pseudotrace tables) is optional; derived data
// (trace series, inverses) is recomputed on load.
std::string tower_to_json(const TowerDescriptor& t, bool include_tables = true);
TowerDescriptor tower_from_json(const std::string& text);

void save_tower(const TowerDescriptor& t, const std::string& path, bool include_tables = true);
TowerDescriptor load_tower(const std::string& path);

// Element files: {"level": i, "coeffs": [...]}.
std::string element_to_json(const TowerElement& a);
TowerElement element_from_json(const std::string& text, const TowerDescriptor& t);
std::string general_element_to_json(const GeneralElement& a);
GeneralElement general_element_from_json(const std::string& text, const TowerDescriptor& t);

void save_text(const std::string& text, const std::string& path);
std::string load_text(const std::string& path);

// General tower file: {"p", "d", "k", "q0", "generators": [...], "images": [...]?}.
std::string general_tower_to_json(const GeneralTower& g);
GeneralTower general_tower_from_json(const std::string& text, const TowerDescriptor& t);

} // namespace astower

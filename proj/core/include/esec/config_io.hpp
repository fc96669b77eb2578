#pragma once

#include "esec/dynamic_relations.hpp"
#include "esec/static_relations.hpp"
#include "esec/table.hpp"

#include <map>
#include <string>

namespace esec {

/// Flat key = value file (TOML subset: comments with #, optional [section]
/// headers are ignored). Recognized keys: eps_touch, null_radius,
/// around_radius, window, xi, stable_eps, far_threshold, move_eps,
/// paper_literal_gc, debounce, literal_roles.
std::map<std::string, std::string> read_flat_config(const std::string& path);

/// Apply recognized keys onto build options; unknown keys throw.
void apply_config(BuildOptions& opt, const std::map<std::string, std::string>& kv);

} // namespace esec

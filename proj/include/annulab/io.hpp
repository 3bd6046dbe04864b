#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "annulab/grid.hpp"

namespace annulab {

/// Writes content to a temporary sibling and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Round-trip decimal representation (17 significant digits).
std::string format_real(double x);

/// CSV with header `s,theta,<name>...` and one row per node, s outer.
std::string fields_csv(const std::vector<std::pair<std::string, const ScalarField*>>& columns);

/// Wavefront OBJ of the first three components; quads wrap around the hole
/// unless a component is multivalued in theta.
std::string obj_mesh(const AmbientField& f);

}  // namespace annulab

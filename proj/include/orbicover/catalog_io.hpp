#pragma once

#include "orbicover/orbit_catalog.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace orbicover {

/// Parses and validates a catalog document. Syntax errors report line and column;
/// schema and validation errors name the offending orbit or form.
OrbitCatalog parse_catalog(std::string_view text);
OrbitCatalog load_catalog(const std::filesystem::path& path);

std::string serialize_catalog(const OrbitCatalog& catalog, int indent = 2);

}  // namespace orbicover

#pragma once

#include <string>

#include "magspec/geometry.hpp"

namespace magspec {

/// Domain files are JSON documents:
///   {"type": "polygon", "vertices": [[x, y], ...], "symmetry_order": 4}
///   {"type": "ellipse", "semi_axes": [a, b]}
/// `symmetry_order` is optional (default: 1 for polygons, automatic for
/// ellipses). Numbers round-trip through their shortest decimal form.
Domain load_domain(const std::string& path);
void save_domain(const Domain& d, const std::string& path);

Domain parse_domain(const std::string& json_text, const std::string& name = "domain");
std::string domain_to_json(const Domain& d);

/// Built-in seed domains: "triangle" (equilateral, side 1), "square"
/// (side 1), "hexagon" (regular, circumradius 1), "disk" (radius 1).
Domain builtin_domain(const std::string& name);

}  // namespace magspec

#include "magspec/domain_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "magspec/errors.hpp"

namespace magspec {

using nlohmann::json;

Domain parse_domain(const std::string& json_text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidDomainFile(std::string("InvalidDomainFile: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type")) {
    throw InvalidDomainFile("InvalidDomainFile: missing \"type\" field");
  }
  const std::string type = doc["type"].get<std::string>();
  try {
    if (type == "polygon") {
      if (!doc.contains("vertices")) {
        throw InvalidDomainFile("InvalidDomainFile: polygon needs \"vertices\"");
      }
      std::vector<Vec2> verts;
      for (const auto& pair : doc["vertices"]) {
        if (!pair.is_array() || pair.size() != 2) {
          throw InvalidDomainFile("InvalidDomainFile: vertex must be [x, y]");
        }
        verts.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      }
      const int order = doc.value("symmetry_order", 1);
      return polygon_domain(std::move(verts), order, name);
    }
    if (type == "ellipse") {
      if (!doc.contains("semi_axes") || doc["semi_axes"].size() != 2) {
        throw InvalidDomainFile("InvalidDomainFile: ellipse needs \"semi_axes\": [a, b]");
      }
      Domain d = ellipse_domain(doc["semi_axes"][0].get<double>(),
                                doc["semi_axes"][1].get<double>(), name);
      if (doc.contains("symmetry_order")) d.symmetry_order = doc["symmetry_order"].get<int>();
      return d;
    }
  } catch (const json::exception& e) {
    throw InvalidDomainFile(std::string("InvalidDomainFile: ") + e.what());
  }
  throw InvalidDomainFile("InvalidDomainFile: unknown type \"" + type + "\"");
}

std::string domain_to_json(const Domain& d) {
  json doc;
  if (d.shape == Domain::Shape::Polygon) {
    doc["type"] = "polygon";
    json verts = json::array();
    for (const Vec2& v : d.vertices) verts.push_back({v.x(), v.y()});
    doc["vertices"] = std::move(verts);
  } else {
    doc["type"] = "ellipse";
    doc["semi_axes"] = {d.semi_axes.x(), d.semi_axes.y()};
  }
  doc["symmetry_order"] = d.symmetry_order;
  return doc.dump(2) + "\n";
}

Domain load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidDomainFile("InvalidDomainFile: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (const auto dot = name.find_last_of('.'); dot != std::string::npos) {
    name = name.substr(0, dot);
  }
  return parse_domain(buffer.str(), name);
}

void save_domain(const Domain& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << domain_to_json(d);
}

Domain builtin_domain(const std::string& name) {
  if (name == "triangle") {
    Domain d = regular_polygon(3, 1.0 / std::sqrt(3.0));  // side length 1
    d.name = "triangle";
    return d;
  }
  if (name == "square") {
    Domain d = regular_polygon(4, std::numbers::sqrt2 / 2.0);  // side length 1
    d.name = "square";
    return d;
  }
  if (name == "hexagon") {
    Domain d = regular_polygon(6, 1.0);
    d.name = "hexagon";
    return d;
  }
  if (name == "disk") {
    return ellipse_domain(1.0, 1.0, "disk");
  }
  throw Error("unknown builtin domain \"" + name +
              "\" (expected triangle, square, hexagon or disk)");
}

}  // namespace magspec

#include "aonsim/topology_io.hpp"

#include "aonsim/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace aonsim {

using nlohmann::json;

TopologySpec parse_topology(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("topology document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("topology document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "nodes" && key != "edges" && key != "port_bound")
            throw ConfigError("topology document has unknown field: " + key);
    }
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw ConfigError("topology document needs a \"nodes\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ConfigError("topology document needs an \"edges\" array");

    TopologySpec spec;
    for (const auto& n : doc["nodes"]) {
        if (!n.is_string())
            throw ConfigError("\"nodes\" entries must be strings");
        spec.nodes.push_back(n.get<std::string>());
    }
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ConfigError("\"edges\" entries must be [label, label] pairs");
        spec.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    if (doc.contains("port_bound")) {
        if (!doc["port_bound"].is_number_unsigned() || doc["port_bound"].get<std::uint64_t>() == 0)
            throw ConfigError("\"port_bound\" must be a positive integer");
        spec.port_bound = doc["port_bound"].get<std::uint32_t>();
    }
    return spec;
}

TopologySpec load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open topology file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_topology(buf.str());
}

std::string topology_to_json(const NetworkGraph& g) {
    TopologySpec spec = g.to_spec();
    json doc;
    doc["nodes"] = spec.nodes;
    json edges = json::array();
    for (const auto& [a, b] : spec.edges)
        edges.push_back(json::array({a, b}));
    doc["edges"] = edges;
    if (spec.port_bound)
        doc["port_bound"] = *spec.port_bound;
    return doc.dump(2);
}

} // namespace aonsim

#include "rra/data_graph.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rra {

using nlohmann::json;

Alphabet DataGraph::alphabet() const {
    std::vector<std::string> names;
    for (const auto& e : edges) names.push_back(e.label);
    return Alphabet(names);
}

const DataValue& DataGraph::value_of(const NodeId& v) const {
    auto it = data.find(v);
    if (it == data.end()) raise(ErrorKind::BadInput, "unknown node '" + v + "'");
    return it->second;
}

bool DataGraph::has_step(const NodeId& from, const Label& l, const NodeId& to) const {
    if (!l.inverted) return edges.count(Edge{from, l.name, to}) > 0;
    return edges.count(Edge{to, l.name, from}) > 0;
}

Semipath::Semipath(std::vector<NodeId> ns, std::vector<Label> ls)
    : nodes(std::move(ns)), labels(std::move(ls)) {
    if (nodes.empty() || nodes.size() != labels.size() + 1) {
        raise(ErrorKind::BadInput, "semipath needs |nodes| = |labels| + 1 >= 1");
    }
}

std::string to_string(const Semipath& sp) {
    std::string out = sp.nodes[0];
    for (size_t i = 0; i < sp.labels.size(); ++i) {
        out += " " + to_string(sp.labels[i]) + " " + sp.nodes[i + 1];
    }
    return out;
}

bool semipath_valid(const DataGraph& graph, const Semipath& sp) {
    for (const auto& v : sp.nodes) {
        if (!graph.has_node(v)) return false;
    }
    for (size_t i = 0; i < sp.labels.size(); ++i) {
        if (!graph.has_step(sp.nodes[i], sp.labels[i], sp.nodes[i + 1])) return false;
    }
    return true;
}

DataPath semipath_data_path(const DataGraph& graph, const Semipath& sp) {
    if (!semipath_valid(graph, sp)) {
        raise(ErrorKind::InvalidSemipath, to_string(sp));
    }
    std::vector<DataValue> vals;
    vals.reserve(sp.nodes.size());
    for (const auto& v : sp.nodes) vals.push_back(graph.value_of(v));
    return DataPath(std::move(vals), sp.labels);
}

Semipath reverse_semipath(const Semipath& sp) {
    std::vector<NodeId> ns(sp.nodes.rbegin(), sp.nodes.rend());
    std::vector<Label> ls;
    for (auto it = sp.labels.rbegin(); it != sp.labels.rend(); ++it) ls.push_back(it->inverse());
    return Semipath(std::move(ns), std::move(ls));
}

namespace {

DataValue data_value_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    raise(ErrorKind::BadInput, "node data must be an integer or a string");
}

json data_value_to_json(const DataValue& v) {
    if (!v.empty() && (v.find_first_not_of("0123456789") == std::string::npos ||
                       (v[0] == '-' && v.size() > 1 &&
                        v.find_first_not_of("0123456789", 1) == std::string::npos))) {
        return json(std::stoll(v));
    }
    return json(v);
}

} // namespace

DataGraph graph_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(ErrorKind::BadInput, std::string("graph JSON: ") + e.what());
    }
    DataGraph g;
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges")) {
        raise(ErrorKind::BadInput, "graph JSON needs 'nodes' and 'edges'");
    }
    for (const auto& n : j["nodes"]) {
        NodeId id = n.at("id").get<std::string>();
        if (g.data.count(id)) raise(ErrorKind::BadInput, "duplicate node id '" + id + "'");
        g.nodes.push_back(id);
        g.data[id] = data_value_from_json(n.at("data"));
    }
    for (const auto& e : j["edges"]) {
        Edge edge{e.at("from").get<std::string>(), e.at("label").get<std::string>(),
                  e.at("to").get<std::string>()};
        if (!g.has_node(edge.from) || !g.has_node(edge.to)) {
            raise(ErrorKind::BadInput, "edge endpoint not declared: " + edge.from + " -> " + edge.to);
        }
        if (edge.label.rfind("__A", 0) == 0) {
            raise(ErrorKind::BadInput, "label '" + edge.label + "' is reserved");
        }
        g.edges.insert(edge); // duplicates are idempotent
    }
    return g;
}

std::string graph_to_json_text(const DataGraph& graph) {
    json nodes = json::array();
    for (const auto& v : graph.nodes) {
        nodes.push_back({{"id", v}, {"data", data_value_to_json(graph.data.at(v))}});
    }
    json edges = json::array();
    for (const auto& e : graph.edges) {
        edges.push_back({{"from", e.from}, {"label", e.label}, {"to", e.to}});
    }
    json out;
    out["nodes"] = nodes;
    out["edges"] = edges;
    return out.dump(2);
}

DataGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::BadInput, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_json_text(buf.str());
}

} // namespace rra

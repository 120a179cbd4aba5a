#ifndef RRA_DATA_GRAPH_HPP_
#define RRA_DATA_GRAPH_HPP_

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rra/data_path.hpp"

namespace rra {

using NodeId = std::string;

struct Edge {
    NodeId from;
    std::string label; // base label name
    NodeId to;
    auto operator<=>(const Edge&) const = default;
};

/// Edge-labeled graph whose nodes carry data values. Immutable by
/// convention after construction.
struct DataGraph {
    std::vector<NodeId> nodes;
    std::set<Edge> edges;
    std::map<NodeId, DataValue> data;

    Alphabet alphabet() const;
    bool has_node(const NodeId& v) const { return data.count(v) > 0; }
    const DataValue& value_of(const NodeId& v) const;
    /// True iff the signed label can be traversed from `from` to `to`.
    bool has_step(const NodeId& from, const Label& l, const NodeId& to) const;
};

/// Alternating node, signed label, node, ... sequence.
struct Semipath {
    std::vector<NodeId> nodes;
    std::vector<Label> labels;

    Semipath() = default;
    Semipath(std::vector<NodeId> ns, std::vector<Label> ls);
    size_t edge_count() const { return labels.size(); }
    bool operator==(const Semipath&) const = default;
};

std::string to_string(const Semipath& sp);

/// Checks validity in G and reads off the data path eta(pi).
DataPath semipath_data_path(const DataGraph& graph, const Semipath& sp);

bool semipath_valid(const DataGraph& graph, const Semipath& sp);

Semipath reverse_semipath(const Semipath& sp);

DataGraph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const DataGraph& graph);
DataGraph load_graph_file(const std::string& path);

} // namespace rra

#endif

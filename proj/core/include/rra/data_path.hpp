#ifndef RRA_DATA_PATH_HPP_
#define RRA_DATA_PATH_HPP_

#include <string>
#include <vector>

#include "rra/alphabet.hpp"

namespace rra {

/// Data values are opaque equality-only tokens.
using DataValue = std::string;

/// Alternating sequence d0 a1 d1 ... an dn. Positions follow the even/odd
/// convention: value i at position 2i, label i at position 2i-1.
struct DataPath {
    std::vector<DataValue> values;
    std::vector<Label> labels;

    DataPath() : values{DataValue("0")} {}
    DataPath(std::vector<DataValue> vals, std::vector<Label> labs);

    size_t label_count() const { return labels.size(); }
    size_t value_count() const { return values.size(); }
    /// Largest position, = 2n.
    int last_position() const { return 2 * static_cast<int>(labels.size()); }

    const DataValue& value_at(int position) const;
    const Label& label_at(int position) const;

    bool operator==(const DataPath&) const = default;
};

std::string to_string(const DataPath& path);

DataPath concat(const DataPath& a, const DataPath& b);
DataPath concat(const std::vector<DataPath>& parts);

DataPath project_path(const LetterProjection& prj, const DataPath& path);

DataPath reverse_path(const DataPath& path);

/// Parses the whitespace-separated literal form, e.g. "1 a 2 b^- 3".
DataPath parse_data_path(const std::string& text);

} // namespace rra

#endif

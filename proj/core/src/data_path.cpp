#include "rra/data_path.hpp"

#include <sstream>

namespace rra {

DataPath::DataPath(std::vector<DataValue> vals, std::vector<Label> labs)
    : values(std::move(vals)), labels(std::move(labs)) {
    if (values.empty() || values.size() != labels.size() + 1) {
        raise(ErrorKind::BadInput, "data path needs |values| = |labels| + 1 >= 1");
    }
}

const DataValue& DataPath::value_at(int position) const {
    if (position < 0 || position > last_position() || position % 2 != 0) {
        raise(ErrorKind::OddPosition, "position " + std::to_string(position) + " is not a data-value position");
    }
    return values[static_cast<size_t>(position / 2)];
}

const Label& DataPath::label_at(int position) const {
    if (position < 1 || position >= last_position() || position % 2 != 1) {
        raise(ErrorKind::BadInput, "position " + std::to_string(position) + " is not a label position");
    }
    return labels[static_cast<size_t>((position - 1) / 2)];
}

std::string to_string(const DataPath& path) {
    std::string out = path.values[0];
    for (size_t i = 0; i < path.labels.size(); ++i) {
        out += " " + to_string(path.labels[i]) + " " + path.values[i + 1];
    }
    return out;
}

DataPath concat(const DataPath& a, const DataPath& b) {
    if (a.values.back() != b.values.front()) {
        raise(ErrorKind::JunctionMismatch,
              "'" + a.values.back() + "' vs '" + b.values.front() + "'");
    }
    std::vector<DataValue> vals = a.values;
    vals.insert(vals.end(), b.values.begin() + 1, b.values.end());
    std::vector<Label> labs = a.labels;
    labs.insert(labs.end(), b.labels.begin(), b.labels.end());
    return DataPath(std::move(vals), std::move(labs));
}

DataPath concat(const std::vector<DataPath>& parts) {
    if (parts.empty()) raise(ErrorKind::BadInput, "concat of zero paths");
    DataPath out = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) out = concat(out, parts[i]);
    return out;
}

DataPath project_path(const LetterProjection& prj, const DataPath& path) {
    std::vector<Label> labs;
    labs.reserve(path.labels.size());
    for (const auto& l : path.labels) labs.push_back(prj(l));
    return DataPath(path.values, std::move(labs));
}

DataPath reverse_path(const DataPath& path) {
    std::vector<DataValue> vals(path.values.rbegin(), path.values.rend());
    std::vector<Label> labs;
    labs.reserve(path.labels.size());
    for (auto it = path.labels.rbegin(); it != path.labels.rend(); ++it) labs.push_back(it->inverse());
    return DataPath(std::move(vals), std::move(labs));
}

DataPath parse_data_path(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.size() % 2 == 0) {
        raise(ErrorKind::SyntaxError, "data path literal needs an odd number of tokens");
    }
    std::vector<DataValue> vals;
    std::vector<Label> labs;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i % 2 == 0) {
            vals.push_back(tokens[i]);
        } else {
            labs.push_back(label_from_string(tokens[i]));
        }
    }
    return DataPath(std::move(vals), std::move(labs));
}

} // namespace rra

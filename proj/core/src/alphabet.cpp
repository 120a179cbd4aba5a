#include "rra/alphabet.hpp"

#include <cctype>

namespace rra {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::JunctionMismatch: return "JunctionMismatch";
        case ErrorKind::InvalidSemipath: return "InvalidSemipath";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::OddPosition: return "OddPosition";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorKind::NotComplete: return "NotComplete";
        case ErrorKind::InconsistentInput: return "InconsistentInput";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::TermOutsideClosure: return "TermOutsideClosure";
        case ErrorKind::RegisterOutOfRange: return "RegisterOutOfRange";
        case ErrorKind::LabelClash: return "LabelClash";
        case ErrorKind::NotCanonical: return "NotCanonical";
        case ErrorKind::ShortSemipath: return "ShortSemipath";
        case ErrorKind::VariableDisciplineViolation: return "VariableDisciplineViolation";
        case ErrorKind::ResourceExceeded: return "ResourceExceeded";
        case ErrorKind::BadInput: return "BadInput";
    }
    return "Error";
}

std::string to_string(const Label& l) { return l.inverted ? l.name + "^-" : l.name; }

Label label_from_string(const std::string& text) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "^-") == 0) {
        return Label(text.substr(0, text.size() - 2), true);
    }
    return Label(text, false);
}

std::string to_string(const LabelSet& set) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : set) {
        if (!first) out += ",";
        out += to_string(l);
        first = false;
    }
    return out + "}";
}

namespace {

bool valid_base_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

} // namespace

Alphabet::Alphabet(const std::vector<std::string>& base_names) {
    for (const auto& name : base_names) {
        if (!valid_base_name(name)) raise(ErrorKind::BadInput, "bad label name '" + name + "'");
        if (!base_.insert(name).second) continue;
        signed_.insert(Label(name, false));
        signed_.insert(Label(name, true));
    }
}

LetterProjection::LetterProjection(std::map<Label, Label> mapping) : map_(std::move(mapping)) {
    for (const auto& [from, to] : map_) {
        source_.insert(from);
        target_.insert(to);
    }
}

LetterProjection LetterProjection::identity(const LabelSet& labels) {
    std::map<Label, Label> m;
    for (const auto& l : labels) m.emplace(l, l);
    return LetterProjection(std::move(m));
}

Label LetterProjection::operator()(const Label& l) const {
    auto it = map_.find(l);
    if (it == map_.end()) raise(ErrorKind::UnknownLabel, to_string(l) + " not in projection source");
    return it->second;
}

LabelSet LetterProjection::apply(const LabelSet& set) const {
    LabelSet out;
    for (const auto& l : set) out.insert((*this)(l));
    return out;
}

LabelSet LetterProjection::preimage(const LabelSet& target_subset) const {
    LabelSet out;
    for (const auto& [from, to] : map_) {
        if (target_subset.count(to)) out.insert(from);
    }
    return out;
}

bool LetterProjection::is_saturated(const LabelSet& set) const {
    return preimage(apply(set)) == set;
}

} // namespace rra

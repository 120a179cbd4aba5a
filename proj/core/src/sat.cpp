#include "rra/sat.hpp"

namespace rra {

SatResult sat_over(const RigidConstraint& c, const LabelSet& alphabet) {
    TermClosure closure = TermClosure::of_constraints({c});
    for (const auto& set : closure.label_sets()) {
        for (const auto& l : set) {
            if (!alphabet.count(l)) {
                raise(ErrorKind::UnknownLabel, to_string(l) + " outside the alphabet");
            }
        }
    }
    SatResult out;
    stream_consistent_profiles(closure, alphabet, [&](const Profile& p) {
        if (!satisfies(p, c, closure)) return true;
        auto [path, pos] = witness_path(p, closure);
        out.satisfiable = true;
        out.witness = std::move(path);
        out.witness_position = pos;
        return false;
    });
    return out;
}

SatResult sat(const RigidConstraint& c) {
    TermClosure closure = TermClosure::of_constraints({c});
    LabelSet alphabet;
    for (const auto& set : closure.label_sets()) alphabet.insert(set.begin(), set.end());
    std::string pad = "x";
    while (alphabet.count(Label(pad, false)) || alphabet.count(Label(pad, true))) pad += "x";
    alphabet.insert(Label(pad, false));
    return sat_over(c, alphabet);
}

bool satisfiable_over(const RigidConstraint& c, const LabelSet& alphabet) {
    return sat_over(c, alphabet).satisfiable;
}

} // namespace rra

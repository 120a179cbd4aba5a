#ifndef RRA_TWOWAY_HPP_
#define RRA_TWOWAY_HPP_

#include "rra/automata.hpp"

namespace rra {

/// A tape symbol of a two-way automaton: a signed label or an endmarker.
struct TapeSymbol {
    enum Kind { Letter, LeftEnd, RightEnd };
    Kind kind = Letter;
    Label label;

    static TapeSymbol letter(Label l) { return {Letter, std::move(l)}; }
    static TapeSymbol left_end() { return {LeftEnd, Label()}; }
    static TapeSymbol right_end() { return {RightEnd, Label()}; }
    auto operator<=>(const TapeSymbol&) const = default;
};

std::string to_string(const TapeSymbol& s);

/// Two-way NRRA over |- alpha -|. Word transitions carry a direction; the
/// left endmarker forces +1 and the right endmarker -1. Data transitions
/// fire on data values, with the constraint evaluated at the value's own
/// path position. A run starts on |- and accepts on -| in a final state.
struct TwoWayNrra {
    LabelSet alphabet;
    std::vector<std::string> states;
    struct WordMove {
        int from;
        TapeSymbol symbol;
        int to;
        int dir; // +1 or -1
    };
    struct DataMove {
        int from;
        RigidConstraint guard;
        int to;
        int dir;
    };
    std::vector<WordMove> word_moves;
    std::vector<DataMove> data_moves;
    std::set<int> initial;
    std::set<int> final;

    int add_state(const std::string& name);
    void refresh();

    const TermClosure& closure() const { return closure_; }
    const std::vector<RigidConstraint>& constraint_set() const { return constraints_; }

  private:
    TermClosure closure_;
    std::vector<RigidConstraint> constraints_;
};

bool two_way_membership(const TwoWayNrra& a, const DataPath& path);
/// Same search with the run length capped (used to check the trimming
/// property).
bool two_way_membership_capped(const TwoWayNrra& a, const DataPath& path, long max_steps);

/// One-way NRRA embedded as a two-way automaton (all moves +1).
TwoWayNrra embed_oneway(const Nrra& a);

/// Crossing-function construction: one-way data states are (C, f) with C a
/// satisfiable constraint set and f a partial crossing function, word
/// states are (symbol, f). `state_budget` bounds the constructed state
/// count (ResourceExceeded beyond it).
Nrra to_oneway(const TwoWayNrra& a, size_t state_budget = 2'000'000);

/// Same language, but crossing behaviors are kept as full relations, which
/// makes the construction deterministic in the crossing component and far
/// smaller. Used by the containment pipeline; cross-validated against
/// to_oneway.
Nrra to_oneway_relational(const TwoWayNrra& a, size_t state_budget = 2'000'000);

} // namespace rra

#endif

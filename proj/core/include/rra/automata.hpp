#ifndef RRA_AUTOMATA_HPP_
#define RRA_AUTOMATA_HPP_

#include <map>
#include <set>

#include "rra/data_path.hpp"
#include "rra/profiles.hpp"
#include "rra/sat.hpp"

namespace rra {

struct WordTransition {
    int from; // word state
    Label label;
    int to; // data state
    auto operator<=>(const WordTransition&) const = default;
};

struct DataTransition {
    int from; // data state
    RigidConstraint guard;
    int to; // word state
};

/// Nondeterministic rigid register automaton. Data states read data values
/// through rigid-constraint guards, word states read labels. Runs start in
/// a data state and accept in a word state. Treat as immutable once
/// refresh() has been called.
struct Nrra {
    LabelSet alphabet;
    std::vector<std::string> word_states;
    std::vector<std::string> data_states;
    std::vector<WordTransition> word_transitions;
    std::vector<DataTransition> data_transitions;
    std::set<int> initial; // data states
    std::set<int> final;   // word states

    int add_word_state(const std::string& name);
    int add_data_state(const std::string& name);

    /// Validates the structure and rebuilds the cached closure and
    /// constraint set. Every construction path ends with this.
    void refresh();

    const TermClosure& closure() const { return closure_; }
    const std::vector<RigidConstraint>& constraint_set() const { return constraints_; }

  private:
    TermClosure closure_;
    std::vector<RigidConstraint> constraints_;
};

/// A deterministic rigid register automaton: single initial state, at most
/// one word successor per label, pairwise-unsatisfiable guards towards
/// distinct data successors.
struct Drra {
    Nrra automaton;
};

bool is_deterministic(const Nrra& a);
/// Every word state has a move for every letter and the guards out of every
/// data state cover all cases.
bool is_complete(const Nrra& a);

bool membership(const Nrra& a, const DataPath& path);

struct AcceptingRun {
    /// q0 c0 q1 a1 q2 ... alternating data/word transition indices.
    std::vector<int> data_transition_indices;
    std::vector<int> word_transition_indices;
};
std::optional<AcceptingRun> membership_run(const Nrra& a, const DataPath& path);
/// Re-validates a run transition by transition.
bool run_is_valid(const Nrra& a, const DataPath& path, const AcceptingRun& run);

Drra determinize(const Nrra& a);
Drra complete(const Drra& d);
/// Requires a complete DRRA; accepts exactly the rejected data paths.
Drra complement(const Drra& d);

enum class CombineMode { Intersection, Union };
Nrra combine(const Nrra& a, const Nrra& b, CombineMode mode);
inline Nrra intersect(const Nrra& a, const Nrra& b) { return combine(a, b, CombineMode::Intersection); }
inline Nrra unite(const Nrra& a, const Nrra& b) { return combine(a, b, CombineMode::Union); }

bool is_position_invariant(const Nrra& a, const LetterProjection& prj);
Nrra letter_project(const Nrra& a, const LetterProjection& prj);

struct EmptinessResult {
    bool empty = true;
    DataPath witness; // accepted path when nonempty
};
EmptinessResult is_empty(const Nrra& a);

struct InclusionResult {
    bool included = true;
    DataPath witness; // in L(a) \ L(b) when not included
};
InclusionResult includes(const Nrra& a, const Nrra& b);

std::string automaton_to_json_text(const Nrra& a);
Nrra automaton_from_json_text(const std::string& text);

} // namespace rra

#endif

#ifndef RRA_NRAG_HPP_
#define RRA_NRAG_HPP_

#include <memory>

#include "rra/automata.hpp"

namespace rra {

/// k-register data constraint: (in)equalities between registers, r_0 being
/// the current data value. Guess constraints additionally mention the
/// shadow registers k+1..2k.
class RegConstraint {
  public:
    RegConstraint() : kind_(ConstraintKind::True) {}

    static RegConstraint truth() { return RegConstraint(); }
    static RegConstraint eq(int i, int j);
    static RegConstraint neq(int i, int j);
    static RegConstraint conj(RegConstraint a, RegConstraint b);
    static RegConstraint disj(RegConstraint a, RegConstraint b);
    static RegConstraint conj_all(const std::vector<RegConstraint>& cs);

    ConstraintKind kind() const { return kind_; }
    int lhs() const { return lhs_; }
    int rhs() const { return rhs_; }
    const RegConstraint& left() const { return *a_; }
    const RegConstraint& right() const { return *b_; }

    int max_register() const;
    /// Eq atoms of the shape r_{k+g} ~ r_other, keyed by the guessed side.
    void collect_guess_pins(int k, std::map<int, std::vector<int>>& pins) const;

  private:
    ConstraintKind kind_;
    int lhs_ = 0, rhs_ = 0;
    std::shared_ptr<const RegConstraint> a_, b_;
};

std::string to_string(const RegConstraint& c);

/// Values for r_1..r_k; absent = still unassigned.
using RegisterState = std::vector<std::optional<DataValue>>;

/// Eq needs both sides assigned and equal; Neq is the exact complement.
bool eval_reg_constraint(const RegConstraint& c,
                         const std::function<std::optional<DataValue>(int)>& value_of);

struct NraDataTransition {
    int from;
    RegConstraint guard;
    int to;
    std::vector<int> store; // X, register indices in [1, k]
};

/// Classical nondeterministic k-register data path automaton.
struct Nra {
    LabelSet alphabet;
    int registers = 0;
    std::vector<std::string> word_states;
    std::vector<std::string> data_states;
    std::vector<WordTransition> word_transitions;
    std::vector<NraDataTransition> data_transitions;
    std::set<int> initial;
    std::set<int> final;

    int add_word_state(const std::string& name);
    int add_data_state(const std::string& name);
};

struct NragDataTransition {
    int from;
    RegConstraint guard; // over r_0..r_k
    int to;
    std::vector<int> store;       // X
    std::vector<int> guess;       // Y, disjoint from X
    RegConstraint guess_guard;    // over r_0..r_2k, shadow only for Y
};

/// Register automaton with nondeterministic guessing.
struct Nrag {
    LabelSet alphabet;
    int registers = 0;
    std::vector<std::string> word_states;
    std::vector<std::string> data_states;
    std::vector<WordTransition> word_transitions;
    std::vector<NragDataTransition> data_transitions;
    std::set<int> initial;
    std::set<int> final;

    int add_word_state(const std::string& name);
    int add_data_state(const std::string& name);
    void validate() const;
};

Nrag nrag_from_nra(const Nra& a);

bool nra_membership(const Nra& a, const DataPath& path);
/// Guessed values range over the path's values plus `fresh_tokens` extra
/// representatives (one suffices; more lets tests check adequacy).
bool nrag_membership(const Nrag& b, const DataPath& path, int fresh_tokens = 1);

/// The profile-guessing simulation: an NRAG equivalent to the NRRA, with
/// 2|closure| registers holding the data values of the guessed profile's
/// blocks.
Nrag nrra_to_nrag(const Nrra& a);

struct NragEmptiness {
    bool empty = true;
    DataPath witness;
};
/// Reduces to NFA emptiness by abstracting register contents to their
/// equality type (a partition with an unassigned class).
NragEmptiness nrag_is_empty(const Nrag& b);

} // namespace rra

#endif

#ifndef RRA_RREM_HPP_
#define RRA_RREM_HPP_

#include <memory>

#include "rra/automata.hpp"
#include "rra/nrag.hpp"

namespace rra {

enum class RremKind { Eps, Empty, Label, Test, Concat, Union, Plus };

/// Rigid regular expression with memory:
///   e := eps | empty | a | [c] | e.e | e|e | e+
struct Rrem {
    RremKind kind = RremKind::Eps;
    Label label;                       // Label
    RigidConstraint constraint;        // Test
    std::shared_ptr<const Rrem> a, b;  // Concat/Union (a only for Plus)

    static Rrem eps();
    static Rrem empty();
    static Rrem letter(Label l);
    static Rrem test(RigidConstraint c);
    static Rrem concat(Rrem x, Rrem y);
    static Rrem alt(Rrem x, Rrem y);
    static Rrem plus(Rrem x);
};

std::string to_string(const Rrem& e);
Rrem parse_rrem(const std::string& text);

/// Direct semantics: the derivation relation over even positions, memoized
/// per subexpression.
bool rrem_accepts(const Rrem& e, const DataPath& path);

/// Thompson-style compilation; language-equivalent to rrem_accepts.
Nrra rrem_to_nrra(const Rrem& e, const LabelSet& alphabet);
/// Uses the labels occurring in the expression as the alphabet.
Nrra rrem_to_nrra(const Rrem& e);

LabelSet rrem_labels(const Rrem& e);

enum class RemKind { Eps, Empty, Label, Test, Concat, Union, Plus, Bind };

/// Classical regular expression with k-register memory:
///   e := eps | empty | a | e.e | e|e | e+ | down_X e | e[c]
struct Rem {
    RemKind kind = RemKind::Eps;
    Label label;
    RegConstraint constraint;         // Test
    std::vector<int> bind;            // Bind register set X
    std::shared_ptr<const Rem> a, b;

    static Rem eps();
    static Rem empty();
    static Rem letter(Label l);
    static Rem test(Rem inner, RegConstraint c);
    static Rem concat(Rem x, Rem y);
    static Rem alt(Rem x, Rem y);
    static Rem plus(Rem x);
    static Rem bind_first(std::vector<int> regs, Rem inner);

    int max_register() const;
};

std::string to_string(const Rem& e);
/// Grammar: the rrem grammar plus "down{1,2}(e)" for binding and
/// "e[r1 == r0]"-style register tests.
Rem parse_rem(const std::string& text);

bool rem_accepts(const Rem& e, const DataPath& path, int registers);

/// The register-elimination translation: binds become A_i A_i^- reading
/// chains over the data-to-node alphabet, register tests become
/// pred_{A_i^-} position terms.
Rrem rem_to_rrem(const Rem& e, int registers);

} // namespace rra

#endif

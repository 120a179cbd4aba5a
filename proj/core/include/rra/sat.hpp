#ifndef RRA_SAT_HPP_
#define RRA_SAT_HPP_

#include "rra/profiles.hpp"

namespace rra {

struct SatResult {
    bool satisfiable = false;
    DataPath witness;       // meaningful when satisfiable
    int witness_position = 0;
};

/// Satisfiability of a rigid data constraint over data paths whose labels
/// come from `alphabet`: searches consistent profiles over the constraint's
/// term closure and materializes a witness.
SatResult sat_over(const RigidConstraint& c, const LabelSet& alphabet);

/// Alphabet-independent satisfiability: the labels mentioned in the
/// constraint plus one extra neutral letter.
SatResult sat(const RigidConstraint& c);

bool satisfiable_over(const RigidConstraint& c, const LabelSet& alphabet);

} // namespace rra

#endif

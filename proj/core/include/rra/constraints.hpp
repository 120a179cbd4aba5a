#ifndef RRA_CONSTRAINTS_HPP_
#define RRA_CONSTRAINTS_HPP_

#include <memory>
#include <set>

#include "rra/terms.hpp"

namespace rra {

enum class ConstraintKind { True, Eq, Neq, And, Or };

/// Boolean combination of (in)equalities between position terms, plus the
/// constant True for unconstrained transitions. Immutable tree.
class RigidConstraint {
  public:
    RigidConstraint() : kind_(ConstraintKind::True) {}

    static RigidConstraint truth() { return RigidConstraint(); }
    static RigidConstraint eq(PositionTerm a, PositionTerm b);
    static RigidConstraint neq(PositionTerm a, PositionTerm b);
    static RigidConstraint conj(RigidConstraint a, RigidConstraint b);
    static RigidConstraint disj(RigidConstraint a, RigidConstraint b);
    static RigidConstraint conj_all(const std::vector<RigidConstraint>& cs);

    ConstraintKind kind() const { return kind_; }
    const PositionTerm& lhs() const { return lhs_; }
    const PositionTerm& rhs() const { return rhs_; }
    const RigidConstraint& left() const { return *a_; }
    const RigidConstraint& right() const { return *b_; }

    void collect_terms(std::set<PositionTerm>& out) const;
    /// Atomic Eq/Neq leaves in syntactic order.
    void collect_atoms(std::vector<RigidConstraint>& out) const;

    bool operator==(const RigidConstraint& other) const;
    bool operator<(const RigidConstraint& other) const;

  private:
    ConstraintKind kind_;
    PositionTerm lhs_, rhs_;
    std::shared_ptr<const RigidConstraint> a_, b_;
};

std::string to_string(const RigidConstraint& c);

/// Eq holds iff both terms are defined and the values are equal; Neq is its
/// exact complement. And/Or are standard, True always holds.
bool eval_constraint(const RigidConstraint& c, const DataPath& path, int pos);

/// Swaps Eq with Neq and And with Or. An involution on the True-free
/// grammar; negate(True) is the unsatisfiable cur != cur.
RigidConstraint negate(const RigidConstraint& c);

RigidConstraint project_constraint(const LetterProjection& prj, const RigidConstraint& c);

/// Finite set of terms closed under subterms and cur-replacement, with
/// stable ids. Always contains cur.
class TermClosure {
  public:
    TermClosure() { add(PositionTerm::cur()); }

    static TermClosure of_constraints(const std::vector<RigidConstraint>& cs);
    static TermClosure of_terms(const std::vector<PositionTerm>& ts);

    size_t size() const { return terms_.size(); }
    const PositionTerm& term(int id) const { return terms_[static_cast<size_t>(id)]; }
    const std::vector<PositionTerm>& terms() const { return terms_; }
    int id_of(const PositionTerm& t) const; // -1 when absent
    bool contains(const PositionTerm& t) const { return id_of(t) >= 0; }
    int cur_id() const { return id_of(PositionTerm::cur()); }

    /// Every label set used by SucA/PredA steps of closure terms.
    std::vector<LabelSet> label_sets() const;

    bool operator==(const TermClosure& other) const { return terms_ == other.terms_; }

  private:
    void add(const PositionTerm& t);
    void close_over(const PositionTerm& t);

    std::vector<PositionTerm> terms_; // sorted
    friend TermClosure closure_union(const TermClosure&, const TermClosure&);
};

TermClosure closure_union(const TermClosure& a, const TermClosure& b);

} // namespace rra

#endif

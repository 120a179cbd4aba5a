#include "rra/constraints.hpp"

#include <algorithm>

namespace rra {

RigidConstraint RigidConstraint::eq(PositionTerm a, PositionTerm b) {
    RigidConstraint c;
    c.kind_ = ConstraintKind::Eq;
    c.lhs_ = std::move(a);
    c.rhs_ = std::move(b);
    return c;
}

RigidConstraint RigidConstraint::neq(PositionTerm a, PositionTerm b) {
    RigidConstraint c;
    c.kind_ = ConstraintKind::Neq;
    c.lhs_ = std::move(a);
    c.rhs_ = std::move(b);
    return c;
}

RigidConstraint RigidConstraint::conj(RigidConstraint a, RigidConstraint b) {
    RigidConstraint c;
    c.kind_ = ConstraintKind::And;
    c.a_ = std::make_shared<RigidConstraint>(std::move(a));
    c.b_ = std::make_shared<RigidConstraint>(std::move(b));
    return c;
}

RigidConstraint RigidConstraint::disj(RigidConstraint a, RigidConstraint b) {
    RigidConstraint c;
    c.kind_ = ConstraintKind::Or;
    c.a_ = std::make_shared<RigidConstraint>(std::move(a));
    c.b_ = std::make_shared<RigidConstraint>(std::move(b));
    return c;
}

RigidConstraint RigidConstraint::conj_all(const std::vector<RigidConstraint>& cs) {
    if (cs.empty()) return truth();
    RigidConstraint out = cs[0];
    for (size_t i = 1; i < cs.size(); ++i) out = conj(out, cs[i]);
    return out;
}

void RigidConstraint::collect_terms(std::set<PositionTerm>& out) const {
    switch (kind_) {
        case ConstraintKind::True: return;
        case ConstraintKind::Eq:
        case ConstraintKind::Neq:
            out.insert(lhs_);
            out.insert(rhs_);
            return;
        case ConstraintKind::And:
        case ConstraintKind::Or:
            a_->collect_terms(out);
            b_->collect_terms(out);
            return;
    }
}

void RigidConstraint::collect_atoms(std::vector<RigidConstraint>& out) const {
    switch (kind_) {
        case ConstraintKind::True: return;
        case ConstraintKind::Eq:
        case ConstraintKind::Neq: out.push_back(*this); return;
        case ConstraintKind::And:
        case ConstraintKind::Or:
            a_->collect_atoms(out);
            b_->collect_atoms(out);
            return;
    }
}

bool RigidConstraint::operator==(const RigidConstraint& other) const {
    return to_string(*this) == to_string(other);
}

bool RigidConstraint::operator<(const RigidConstraint& other) const {
    return to_string(*this) < to_string(other);
}

std::string to_string(const RigidConstraint& c) {
    switch (c.kind()) {
        case ConstraintKind::True: return "true";
        case ConstraintKind::Eq: return to_string(c.lhs()) + " == " + to_string(c.rhs());
        case ConstraintKind::Neq: return to_string(c.lhs()) + " != " + to_string(c.rhs());
        case ConstraintKind::And:
            return "(" + to_string(c.left()) + " && " + to_string(c.right()) + ")";
        case ConstraintKind::Or:
            return "(" + to_string(c.left()) + " || " + to_string(c.right()) + ")";
    }
    return "true";
}

bool eval_constraint(const RigidConstraint& c, const DataPath& path, int pos) {
    if (pos % 2 != 0 || pos < 0 || pos > path.last_position()) {
        raise(ErrorKind::OddPosition, "position " + std::to_string(pos));
    }
    switch (c.kind()) {
        case ConstraintKind::True: return true;
        case ConstraintKind::Eq: {
            auto p = eval_term(c.lhs(), path, pos);
            auto q = eval_term(c.rhs(), path, pos);
            return p && q && path.value_at(*p) == path.value_at(*q);
        }
        case ConstraintKind::Neq: {
            auto p = eval_term(c.lhs(), path, pos);
            auto q = eval_term(c.rhs(), path, pos);
            return !(p && q && path.value_at(*p) == path.value_at(*q));
        }
        case ConstraintKind::And:
            return eval_constraint(c.left(), path, pos) && eval_constraint(c.right(), path, pos);
        case ConstraintKind::Or:
            return eval_constraint(c.left(), path, pos) || eval_constraint(c.right(), path, pos);
    }
    return true;
}

RigidConstraint negate(const RigidConstraint& c) {
    switch (c.kind()) {
        case ConstraintKind::True:
            return RigidConstraint::neq(PositionTerm::cur(), PositionTerm::cur());
        case ConstraintKind::Eq: return RigidConstraint::neq(c.lhs(), c.rhs());
        case ConstraintKind::Neq: return RigidConstraint::eq(c.lhs(), c.rhs());
        case ConstraintKind::And: return RigidConstraint::disj(negate(c.left()), negate(c.right()));
        case ConstraintKind::Or: return RigidConstraint::conj(negate(c.left()), negate(c.right()));
    }
    return c;
}

RigidConstraint project_constraint(const LetterProjection& prj, const RigidConstraint& c) {
    switch (c.kind()) {
        case ConstraintKind::True: return c;
        case ConstraintKind::Eq:
            return RigidConstraint::eq(project_term(prj, c.lhs()), project_term(prj, c.rhs()));
        case ConstraintKind::Neq:
            return RigidConstraint::neq(project_term(prj, c.lhs()), project_term(prj, c.rhs()));
        case ConstraintKind::And:
            return RigidConstraint::conj(project_constraint(prj, c.left()),
                                         project_constraint(prj, c.right()));
        case ConstraintKind::Or:
            return RigidConstraint::disj(project_constraint(prj, c.left()),
                                         project_constraint(prj, c.right()));
    }
    return c;
}

void TermClosure::add(const PositionTerm& t) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
    if (it != terms_.end() && *it == t) return;
    terms_.insert(it, t);
}

void TermClosure::close_over(const PositionTerm& t) {
    // Subterms are prefixes; replacing a subterm by cur keeps the suffix.
    for (size_t d = 0; d <= t.depth(); ++d) {
        add(t.prefix(d));
        add(t.strip_prefix(t.prefix(d)));
    }
    // Replacements of proper subterms inside prefixes are covered because
    // closing is applied to every added term until a fixpoint.
}

TermClosure TermClosure::of_terms(const std::vector<PositionTerm>& ts) {
    TermClosure c;
    std::set<PositionTerm> processed;
    std::vector<PositionTerm> work = ts;
    while (!work.empty()) {
        PositionTerm t = work.back();
        work.pop_back();
        if (!processed.insert(t).second) continue;
        c.close_over(t);
        for (const auto& added : c.terms_) {
            if (!processed.count(added)) work.push_back(added);
        }
    }
    return c;
}

TermClosure TermClosure::of_constraints(const std::vector<RigidConstraint>& cs) {
    std::set<PositionTerm> ts;
    for (const auto& c : cs) c.collect_terms(ts);
    return of_terms(std::vector<PositionTerm>(ts.begin(), ts.end()));
}

int TermClosure::id_of(const PositionTerm& t) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
    if (it == terms_.end() || !(*it == t)) return -1;
    return static_cast<int>(it - terms_.begin());
}

std::vector<LabelSet> TermClosure::label_sets() const {
    std::set<LabelSet> sets;
    for (const auto& t : terms_) {
        for (const auto& step : t.steps) {
            if (step.op == TermOp::SucA || step.op == TermOp::PredA) sets.insert(step.labels);
        }
    }
    return std::vector<LabelSet>(sets.begin(), sets.end());
}

TermClosure closure_union(const TermClosure& a, const TermClosure& b) {
    std::vector<PositionTerm> ts = a.terms_;
    ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
    return TermClosure::of_terms(ts);
}

} // namespace rra

#ifndef RRA_TERMS_HPP_
#define RRA_TERMS_HPP_

#include <optional>
#include <vector>

#include "rra/data_path.hpp"

namespace rra {

enum class TermOp { Suc, Pred, SucA, PredA };

/// A position term is a chain of unary operators applied to cur, kept
/// innermost-first, so subterms are exactly the prefixes of `steps`.
struct PositionTerm {
    struct Step {
        TermOp op;
        LabelSet labels; // nonempty iff op is SucA/PredA
        auto operator<=>(const Step&) const = default;
    };

    std::vector<Step> steps;

    static PositionTerm cur() { return PositionTerm{}; }
    static PositionTerm suc(PositionTerm t);
    static PositionTerm pred(PositionTerm t);
    static PositionTerm suc_in(LabelSet set, PositionTerm t);
    static PositionTerm pred_in(LabelSet set, PositionTerm t);

    bool is_cur() const { return steps.empty(); }
    size_t depth() const { return steps.size(); }
    /// The operator applied last (the root), or nullopt for cur.
    std::optional<Step> root() const;
    /// The operator applied first (directly to cur), or nullopt for cur.
    std::optional<Step> bottom() const;

    /// Drops the outermost operator.
    PositionTerm argument() const;
    /// The subterm of the given depth (a prefix of the chain).
    PositionTerm prefix(size_t depth) const;
    bool is_subterm_of(const PositionTerm& t) const;
    /// t[t' \ cur]: strips the subterm prefix t' (requires is_subterm_of).
    PositionTerm strip_prefix(const PositionTerm& sub) const;
    /// t[cur \ t']: plugs t' under the whole chain.
    PositionTerm substitute_cur(const PositionTerm& inner) const;

    auto operator<=>(const PositionTerm&) const = default;
};

std::string to_string(const PositionTerm& t);

/// Position denoted by t on `path` at data position `pos`; nullopt is the
/// undefined value.
std::optional<int> eval_term(const PositionTerm& t, const DataPath& path, int pos);

PositionTerm project_term(const LetterProjection& prj, const PositionTerm& t);

} // namespace rra

#endif

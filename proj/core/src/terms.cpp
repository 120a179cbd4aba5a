#include "rra/terms.hpp"

#include <algorithm>

namespace rra {

PositionTerm PositionTerm::suc(PositionTerm t) {
    t.steps.push_back({TermOp::Suc, {}});
    return t;
}

PositionTerm PositionTerm::pred(PositionTerm t) {
    t.steps.push_back({TermOp::Pred, {}});
    return t;
}

PositionTerm PositionTerm::suc_in(LabelSet set, PositionTerm t) {
    if (set.empty()) raise(ErrorKind::BadInput, "suc_A needs a nonempty label set");
    t.steps.push_back({TermOp::SucA, std::move(set)});
    return t;
}

PositionTerm PositionTerm::pred_in(LabelSet set, PositionTerm t) {
    if (set.empty()) raise(ErrorKind::BadInput, "pred_A needs a nonempty label set");
    t.steps.push_back({TermOp::PredA, std::move(set)});
    return t;
}

std::optional<PositionTerm::Step> PositionTerm::root() const {
    if (steps.empty()) return std::nullopt;
    return steps.back();
}

std::optional<PositionTerm::Step> PositionTerm::bottom() const {
    if (steps.empty()) return std::nullopt;
    return steps.front();
}

PositionTerm PositionTerm::argument() const {
    PositionTerm t = *this;
    if (!t.steps.empty()) t.steps.pop_back();
    return t;
}

PositionTerm PositionTerm::prefix(size_t depth) const {
    PositionTerm t;
    t.steps.assign(steps.begin(), steps.begin() + static_cast<long>(std::min(depth, steps.size())));
    return t;
}

bool PositionTerm::is_subterm_of(const PositionTerm& t) const {
    if (steps.size() > t.steps.size()) return false;
    return std::equal(steps.begin(), steps.end(), t.steps.begin());
}

PositionTerm PositionTerm::strip_prefix(const PositionTerm& sub) const {
    if (!sub.is_subterm_of(*this)) raise(ErrorKind::BadInput, "not a subterm");
    PositionTerm t;
    t.steps.assign(steps.begin() + static_cast<long>(sub.steps.size()), steps.end());
    return t;
}

PositionTerm PositionTerm::substitute_cur(const PositionTerm& inner) const {
    PositionTerm t = inner;
    t.steps.insert(t.steps.end(), steps.begin(), steps.end());
    return t;
}

std::string to_string(const PositionTerm& t) {
    std::string out = "cur";
    for (const auto& step : t.steps) {
        std::string head;
        switch (step.op) {
            case TermOp::Suc: head = "suc"; break;
            case TermOp::Pred: head = "pred"; break;
            case TermOp::SucA: head = "suc_" + to_string(step.labels); break;
            case TermOp::PredA: head = "pred_" + to_string(step.labels); break;
        }
        out = head + "(" + out + ")";
    }
    return out;
}

namespace {

std::optional<int> apply_step(const PositionTerm::Step& step, const DataPath& path, int pos) {
    const int n = static_cast<int>(path.label_count());
    const int i = pos / 2;
    switch (step.op) {
        case TermOp::Suc:
            if (i < n) return 2 * (i + 1);
            return std::nullopt;
        case TermOp::Pred:
            if (i > 0) return 2 * (i - 1);
            return std::nullopt;
        case TermOp::SucA:
            for (int j = i + 1; j <= n; ++j) {
                if (step.labels.count(path.labels[static_cast<size_t>(j - 1)])) return 2 * j;
            }
            return std::nullopt;
        case TermOp::PredA:
            for (int j = i; j >= 1; --j) {
                if (step.labels.count(path.labels[static_cast<size_t>(j - 1)])) return 2 * (j - 1);
            }
            return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

std::optional<int> eval_term(const PositionTerm& t, const DataPath& path, int pos) {
    if (pos % 2 != 0 || pos < 0 || pos > path.last_position()) {
        raise(ErrorKind::OddPosition, "position " + std::to_string(pos));
    }
    int at = pos;
    for (const auto& step : t.steps) {
        auto next = apply_step(step, path, at);
        if (!next) return std::nullopt;
        at = *next;
    }
    return at;
}

PositionTerm project_term(const LetterProjection& prj, const PositionTerm& t) {
    PositionTerm out;
    for (const auto& step : t.steps) {
        if (step.op == TermOp::SucA || step.op == TermOp::PredA) {
            out.steps.push_back({step.op, prj.apply(step.labels)});
        } else {
            out.steps.push_back(step);
        }
    }
    return out;
}

} // namespace rra

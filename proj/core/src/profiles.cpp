#include "rra/profiles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace rra {

namespace {

bool same_opt_label(const std::optional<Label>& a, const std::optional<Label>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a.has_value() || *a == *b;
}

bool in_set(const LabelSet& set, const std::optional<Label>& l) {
    return l.has_value() && set.count(*l) > 0;
}

} // namespace

int Profile::block_of_term(int term_id) const {
    for (int j = 0; j < block_count(); ++j) {
        const auto& ts = blocks[static_cast<size_t>(j)].terms;
        if (std::binary_search(ts.begin(), ts.end(), term_id)) return j;
    }
    return -1;
}

std::vector<int> Profile::s_terms() const {
    std::vector<int> out;
    for (const auto& b : blocks) out.insert(out.end(), b.terms.begin(), b.terms.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string Profile::key() const {
    std::string k = "z" + std::to_string(zero);
    for (const auto& b : blocks) {
        k += "|";
        k += b.before ? to_string(*b.before) : "~";
        k += "/";
        k += b.after ? to_string(*b.after) : "~";
        k += "/";
        k += b.adjacent_next ? "1" : "0";
        k += "/" + std::to_string(b.sim_class) + "/";
        for (int t : b.terms) k += std::to_string(t) + ",";
    }
    return k;
}

std::string to_string(const Profile& p, const TermClosure& closure) {
    std::string out;
    for (int j = 0; j < p.block_count(); ++j) {
        const auto& b = p.blocks[static_cast<size_t>(j)];
        out += (j == p.zero) ? "*(" : "(";
        out += b.before ? to_string(*b.before) : "_";
        out += ";";
        bool first = true;
        for (int t : b.terms) {
            if (!first) out += ",";
            out += to_string(closure.term(t));
            first = false;
        }
        out += ";";
        out += b.after ? to_string(*b.after) : "_";
        out += ";s=" + std::string(b.adjacent_next ? "1" : "0");
        out += ";~" + std::to_string(b.sim_class) + ")";
        if (j + 1 < p.block_count()) out += " ";
    }
    return out;
}

Profile profile_of(const DataPath& path, int pos, const TermClosure& closure) {
    if (pos % 2 != 0 || pos < 0 || pos > path.last_position()) {
        raise(ErrorKind::OddPosition, "position " + std::to_string(pos));
    }
    std::map<int, std::vector<int>> by_target; // target position -> term ids
    for (int id = 0; id < static_cast<int>(closure.size()); ++id) {
        auto target = eval_term(closure.term(id), path, pos);
        if (target) by_target[*target].push_back(id);
    }
    Profile p;
    std::vector<int> targets;
    for (auto& [target, ids] : by_target) {
        ProfileBlock b;
        if (target > 0) b.before = path.label_at(target - 1);
        if (target < path.last_position()) b.after = path.label_at(target + 1);
        std::sort(ids.begin(), ids.end());
        b.terms = ids;
        p.blocks.push_back(std::move(b));
        targets.push_back(target);
    }
    for (size_t j = 0; j + 1 < targets.size(); ++j) {
        p.blocks[j].adjacent_next = (targets[j + 1] == targets[j] + 2);
    }
    for (size_t j = 0; j < targets.size(); ++j) {
        if (targets[j] == pos) p.zero = static_cast<int>(j);
        const DataValue& v = path.value_at(targets[j]);
        size_t rep = j;
        for (size_t k = 0; k < j; ++k) {
            if (path.value_at(targets[k]) == v) {
                rep = k;
                break;
            }
        }
        p.blocks[j].sim_class = static_cast<int>(rep);
    }
    return p;
}

bool is_structural(const Profile& p, const TermClosure& closure) {
    const int B = p.block_count();
    if (B == 0) return false;
    if (p.zero < 0 || p.zero >= B) return false;
    std::set<int> seen;
    for (int j = 0; j < B; ++j) {
        const auto& b = p.blocks[static_cast<size_t>(j)];
        if (b.terms.empty()) return false;
        if (!std::is_sorted(b.terms.begin(), b.terms.end())) return false;
        for (int t : b.terms) {
            if (t < 0 || t >= static_cast<int>(closure.size())) return false;
            if (!seen.insert(t).second) return false;
        }
        if (j > 0 && !b.before) return false;
        if (j < B - 1 && !b.after) return false;
        if (j == B - 1 && b.adjacent_next) return false;
        if (b.sim_class < 0 || b.sim_class > j) return false;
        if (p.blocks[static_cast<size_t>(b.sim_class)].sim_class != b.sim_class) return false;
    }
    const auto& zt = p.blocks[static_cast<size_t>(p.zero)].terms;
    if (!std::binary_search(zt.begin(), zt.end(), closure.cur_id())) return false;
    return true;
}

namespace {

// Does any visible label strictly after block j's position belong to A?
bool occurs_after(const Profile& p, int j, const LabelSet& set) {
    for (int k = j + 1; k < p.block_count(); ++k) {
        if (in_set(set, p.blocks[static_cast<size_t>(k)].before)) return true;
    }
    for (int k = j; k < p.block_count(); ++k) {
        if (in_set(set, p.blocks[static_cast<size_t>(k)].after)) return true;
    }
    return false;
}

// Does any visible label strictly before block j's position belong to A?
bool occurs_before(const Profile& p, int j, const LabelSet& set) {
    for (int k = 0; k < j; ++k) {
        if (in_set(set, p.blocks[static_cast<size_t>(k)].after)) return true;
    }
    for (int k = 0; k <= j; ++k) {
        if (in_set(set, p.blocks[static_cast<size_t>(k)].before)) return true;
    }
    return false;
}

} // namespace

bool is_consistent(const Profile& p, const TermClosure& closure) {
    if (!is_structural(p, closure)) return false;
    const int B = p.block_count();
    auto adj = [&](int j) { return p.blocks[static_cast<size_t>(j)].adjacent_next; };
    auto before = [&](int j) -> const std::optional<Label>& {
        return p.blocks[static_cast<size_t>(j)].before;
    };
    auto after = [&](int j) -> const std::optional<Label>& {
        return p.blocks[static_cast<size_t>(j)].after;
    };

    for (int j = 0; j + 1 < B; ++j) {
        if (adj(j) && *after(j) != *before(j + 1)) return false;
    }

    for (int id = 0; id < static_cast<int>(closure.size()); ++id) {
        const PositionTerm& t = closure.term(id);
        auto root = t.root();
        if (!root) continue;
        const int arg = closure.id_of(t.argument());
        const int tb = p.block_of_term(id);
        const int ab = p.block_of_term(arg);
        switch (root->op) {
            case TermOp::Suc: {
                if (ab >= 0 && ab < B - 1 && tb != ab + 1) return false;
                if (tb == 0) return false;
                if (tb >= 1 && ab != tb - 1) return false;
                if (ab >= 0 && tb == ab + 1 && !adj(ab)) return false;
                if (ab == B - 1 && after(B - 1).has_value()) return false;
                break;
            }
            case TermOp::Pred: {
                if (ab >= 1 && tb != ab - 1) return false;
                if (tb == B - 1) return false;
                if (tb >= 0 && tb < B - 1 && ab != tb + 1) return false;
                if (tb >= 0 && ab == tb + 1 && !adj(tb)) return false;
                if (ab == 0 && before(0).has_value()) return false;
                break;
            }
            case TermOp::SucA: {
                const LabelSet& A = root->labels;
                if (tb >= 0) {
                    if (!in_set(A, before(tb))) return false;
                    if (ab < 0 || ab >= tb) return false;
                    for (int k = ab + 1; k < tb; ++k) {
                        if (in_set(A, before(k))) return false;
                    }
                    for (int k = ab; k < tb - 1; ++k) {
                        if (in_set(A, after(k))) return false;
                    }
                    if (in_set(A, after(tb - 1)) && !adj(tb - 1)) return false;
                } else if (ab >= 0) {
                    if (occurs_after(p, ab, A)) return false;
                }
                break;
            }
            case TermOp::PredA: {
                const LabelSet& A = root->labels;
                if (tb >= 0) {
                    if (!in_set(A, after(tb))) return false;
                    if (ab < 0 || ab <= tb) return false;
                    for (int k = tb + 1; k < ab; ++k) {
                        if (in_set(A, after(k))) return false;
                    }
                    for (int k = tb + 2; k <= ab; ++k) {
                        if (in_set(A, before(k))) return false;
                    }
                    if (in_set(A, before(tb + 1)) && !adj(tb)) return false;
                } else if (ab >= 0) {
                    if (occurs_before(p, ab, A)) return false;
                }
                break;
            }
        }
    }
    return true;
}

bool is_initial(const Profile& p) {
    return p.zero == 0 && !p.blocks.front().before.has_value();
}

bool is_final(const Profile& p) {
    return p.zero == p.block_count() - 1 && !p.blocks.back().after.has_value();
}

bool satisfies(const Profile& p, const RigidConstraint& c, const TermClosure& closure) {
    switch (c.kind()) {
        case ConstraintKind::True: return true;
        case ConstraintKind::Eq:
        case ConstraintKind::Neq: {
            int id1 = closure.id_of(c.lhs());
            int id2 = closure.id_of(c.rhs());
            if (id1 < 0 || id2 < 0) {
                raise(ErrorKind::TermOutsideClosure, to_string(c));
            }
            int b1 = p.block_of_term(id1);
            int b2 = p.block_of_term(id2);
            bool eq = b1 >= 0 && b2 >= 0 && p.sim_blocks(b1, b2);
            return c.kind() == ConstraintKind::Eq ? eq : !eq;
        }
        case ConstraintKind::And:
            return satisfies(p, c.left(), closure) && satisfies(p, c.right(), closure);
        case ConstraintKind::Or:
            return satisfies(p, c.left(), closure) || satisfies(p, c.right(), closure);
    }
    return true;
}

namespace {

const DataValue kFiller = "0";

DataValue block_value(const Profile& p, int j) {
    return std::to_string(p.blocks[static_cast<size_t>(j)].sim_class + 1);
}

} // namespace

std::pair<DataPath, int> witness_path(const Profile& p, const TermClosure& closure) {
    if (!is_consistent(p, closure)) {
        raise(ErrorKind::Inconsistent, "witness_path needs a consistent profile");
    }
    std::vector<DataValue> values;
    std::vector<Label> labels;
    std::vector<int> block_pos(static_cast<size_t>(p.block_count()), 0);
    for (int j = 0; j < p.block_count(); ++j) {
        const auto& b = p.blocks[static_cast<size_t>(j)];
        if (j == 0) {
            if (b.before) {
                values.push_back(kFiller);
                labels.push_back(*b.before);
            }
            values.push_back(block_value(p, j));
        } else if (p.blocks[static_cast<size_t>(j - 1)].adjacent_next) {
            labels.push_back(*b.before);
            values.push_back(block_value(p, j));
        } else {
            labels.push_back(*p.blocks[static_cast<size_t>(j - 1)].after);
            values.push_back(kFiller);
            labels.push_back(*b.before);
            values.push_back(block_value(p, j));
        }
        block_pos[static_cast<size_t>(j)] = 2 * (static_cast<int>(values.size()) - 1);
    }
    if (p.blocks.back().after) {
        labels.push_back(*p.blocks.back().after);
        values.push_back(kFiller);
    }
    return {DataPath(std::move(values), std::move(labels)), block_pos[static_cast<size_t>(p.zero)]};
}

// ---------------------------------------------------------------------------
// Successor relation
// ---------------------------------------------------------------------------

namespace {

// The rewrite rules: which terms keep denoting each old block's position
// after reading `letter`.
std::vector<std::set<int>> inherited_sets(const Profile& p1, const Label& letter,
                                          const TermClosure& closure) {
    std::vector<std::set<int>> sets(static_cast<size_t>(p1.block_count()));
    const auto label_sets = closure.label_sets();
    for (int j = 0; j < p1.block_count(); ++j) {
        auto& out = sets[static_cast<size_t>(j)];
        for (int id : p1.blocks[static_cast<size_t>(j)].terms) {
            const PositionTerm& t = closure.term(id);
            if (!t.steps.empty()) {
                const auto& bot = t.steps.front();
                if (bot.op == TermOp::Suc ||
                    (bot.op == TermOp::SucA && bot.labels.count(letter))) {
                    PositionTerm stripped;
                    stripped.steps.assign(t.steps.begin() + 1, t.steps.end());
                    int sid = closure.id_of(stripped);
                    if (sid >= 0) out.insert(sid);
                }
                if ((bot.op == TermOp::SucA || bot.op == TermOp::PredA) &&
                    !bot.labels.count(letter)) {
                    out.insert(id);
                }
            }
            PositionTerm wrapped;
            wrapped.steps.push_back({TermOp::Pred, {}});
            wrapped.steps.insert(wrapped.steps.end(), t.steps.begin(), t.steps.end());
            int wid = closure.id_of(wrapped);
            if (wid >= 0) out.insert(wid);
            for (const auto& set : label_sets) {
                if (!set.count(letter)) continue;
                PositionTerm wa;
                wa.steps.push_back({TermOp::PredA, set});
                wa.steps.insert(wa.steps.end(), t.steps.begin(), t.steps.end());
                int aid = closure.id_of(wa);
                if (aid >= 0) out.insert(aid);
            }
        }
    }
    if (p1.zero + 1 < p1.block_count() &&
        p1.blocks[static_cast<size_t>(p1.zero)].adjacent_next) {
        sets[static_cast<size_t>(p1.zero + 1)].insert(closure.cur_id());
    }
    return sets;
}

bool subset_of_block(const std::set<int>& sub, const ProfileBlock& block) {
    for (int id : sub) {
        if (!std::binary_search(block.terms.begin(), block.terms.end(), id)) return false;
    }
    return true;
}

// Offset-pinning analysis across the pair: detects forced collisions of a
// dropped old block with a new block and checks minimal-distance feasibility.
struct PairLayout {
    // node = old blocks (0..B1-1) then new blocks (B1..B1+B2-1)
    std::vector<int> component;
    std::vector<long> offset;
    bool ok = false;
};

PairLayout pair_layout(const Profile& p1, const Profile& p2, const std::vector<int>& g) {
    const int B1 = p1.block_count();
    const int B2 = p2.block_count();
    PairLayout layout;
    layout.component.assign(static_cast<size_t>(B1 + B2), -1);
    layout.offset.assign(static_cast<size_t>(B1 + B2), 0);
    std::vector<std::vector<std::pair<int, long>>> edges(static_cast<size_t>(B1 + B2));
    auto link = [&](int a, int b, long delta) {
        edges[static_cast<size_t>(a)].push_back({b, delta});
        edges[static_cast<size_t>(b)].push_back({a, -delta});
    };
    for (int j = 0; j + 1 < B1; ++j) {
        if (p1.blocks[static_cast<size_t>(j)].adjacent_next) link(j, j + 1, 2);
    }
    for (int r = 0; r + 1 < B2; ++r) {
        if (p2.blocks[static_cast<size_t>(r)].adjacent_next) link(B1 + r, B1 + r + 1, 2);
    }
    link(p1.zero, B1 + p2.zero, 2);
    for (int j = 0; j < B1; ++j) {
        if (g[static_cast<size_t>(j)] >= 0) link(j, B1 + g[static_cast<size_t>(j)], 0);
    }
    int comp = 0;
    for (int start = 0; start < B1 + B2; ++start) {
        if (layout.component[static_cast<size_t>(start)] >= 0) continue;
        layout.component[static_cast<size_t>(start)] = comp;
        layout.offset[static_cast<size_t>(start)] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, delta] : edges[static_cast<size_t>(v)]) {
                long off = layout.offset[static_cast<size_t>(v)] + delta;
                if (layout.component[static_cast<size_t>(w)] < 0) {
                    layout.component[static_cast<size_t>(w)] = comp;
                    layout.offset[static_cast<size_t>(w)] = off;
                    stack.push_back(w);
                } else if (layout.offset[static_cast<size_t>(w)] != off) {
                    return layout; // contradictory pinning
                }
            }
        }
        ++comp;
    }
    layout.ok = true;
    return layout;
}

long min_chain_distance(const Profile& p, int j, int k) {
    long d = 0;
    for (int m = j; m < k; ++m) d += p.blocks[static_cast<size_t>(m)].adjacent_next ? 2 : 4;
    return d;
}

bool successor_checked(const Profile& p1, const Label& letter, const Profile& p2,
                       const TermClosure& closure, std::vector<int>* embedding) {
    const int B1 = p1.block_count();
    const int B2 = p2.block_count();
    const int z1 = p1.zero;
    const int z2 = p2.zero;

    const auto& zb = p1.blocks[static_cast<size_t>(z1)];
    if (!zb.after || *zb.after != letter) return false;

    auto sets = inherited_sets(p1, letter, closure);

    std::vector<int> neg, pos;
    for (int j = 0; j < B1; ++j) {
        if (sets[static_cast<size_t>(j)].empty()) continue;
        (j <= z1 ? neg : pos).push_back(j);
    }
    if (static_cast<int>(neg.size()) != z2) return false;

    std::vector<int> g(static_cast<size_t>(B1), -1);
    for (int r = 0; r < z2; ++r) {
        int j = neg[static_cast<size_t>(r)];
        const auto& nb = p2.blocks[static_cast<size_t>(r)];
        const auto& ob = p1.blocks[static_cast<size_t>(j)];
        if (!same_opt_label(ob.before, nb.before) || !same_opt_label(ob.after, nb.after)) {
            return false;
        }
        if (!subset_of_block(sets[static_cast<size_t>(j)], nb)) return false;
        g[static_cast<size_t>(j)] = r;
    }
    for (int r = 0; r < z2; ++r) {
        bool want;
        if (r + 1 < z2) {
            want = (neg[static_cast<size_t>(r + 1)] == neg[static_cast<size_t>(r)] + 1) &&
                   p1.blocks[static_cast<size_t>(neg[static_cast<size_t>(r)])].adjacent_next;
        } else {
            want = (neg[static_cast<size_t>(r)] == z1);
        }
        if (p2.blocks[static_cast<size_t>(r)].adjacent_next != want) return false;
    }

    const auto& nzb = p2.blocks[static_cast<size_t>(z2)];
    if (!nzb.before || *nzb.before != letter) return false;

    const bool merged = (z1 + 1 < B1) && zb.adjacent_next;
    int prev_new = z2 - 1;
    for (int j : pos) {
        const auto& set = sets[static_cast<size_t>(j)];
        int target = -2;
        for (int id : set) {
            int tb = p2.block_of_term(id);
            if (tb < 0) return false;
            if (target == -2) target = tb;
            else if (target != tb) return false;
        }
        if (target <= prev_new || target < z2) return false;
        const auto& nb = p2.blocks[static_cast<size_t>(target)];
        const auto& ob = p1.blocks[static_cast<size_t>(j)];
        if (!same_opt_label(ob.before, nb.before) || !same_opt_label(ob.after, nb.after)) {
            return false;
        }
        if (j == z1 + 1) {
            if (merged && target != z2) return false;
            if (!merged && target == z2) return false;
        } else if (target == z2) {
            return false; // only the adjacent old block can merge into the new current
        }
        g[static_cast<size_t>(j)] = target;
        prev_new = target;
    }
    if (merged && (pos.empty() || pos.front() != z1 + 1)) return false;

    for (size_t r = 0; r + 1 < pos.size(); ++r) {
        int j = pos[r];
        int k = pos[r + 1];
        bool lhs = (k == j + 1) && p1.blocks[static_cast<size_t>(j)].adjacent_next;
        bool rhs = (g[static_cast<size_t>(k)] == g[static_cast<size_t>(j)] + 1) &&
                   p2.blocks[static_cast<size_t>(g[static_cast<size_t>(j)])].adjacent_next;
        if (lhs != rhs) return false;
    }

    // Sim pattern of the surviving blocks is preserved.
    std::vector<int> survivors = neg;
    survivors.insert(survivors.end(), pos.begin(), pos.end());
    for (size_t x = 0; x < survivors.size(); ++x) {
        for (size_t y = x + 1; y < survivors.size(); ++y) {
            int j = survivors[x], k = survivors[y];
            bool s1 = p1.sim_blocks(j, k);
            bool s2 = p2.sim_blocks(g[static_cast<size_t>(j)], g[static_cast<size_t>(k)]);
            if (s1 != s2) return false;
        }
    }

    // Position pinning: forced collisions of dropped old blocks with new
    // blocks must agree on labels and value pattern; forced distances must
    // leave room for the blocks in between.
    auto layout = pair_layout(p1, p2, g);
    if (!layout.ok) return false;
    auto comp = [&](int node) { return layout.component[static_cast<size_t>(node)]; };
    auto off = [&](int node) { return layout.offset[static_cast<size_t>(node)]; };
    for (int j = 0; j < B1; ++j) {
        for (int k = j + 1; k < B1; ++k) {
            if (comp(j) != comp(k)) continue;
            if (off(k) - off(j) < min_chain_distance(p1, j, k)) return false;
        }
    }
    for (int r = 0; r < B2; ++r) {
        for (int s = r + 1; s < B2; ++s) {
            if (comp(B1 + r) != comp(B1 + s)) continue;
            if (off(B1 + s) - off(B1 + r) < min_chain_distance(p2, r, s)) return false;
        }
    }
    std::vector<std::pair<int, int>> mergers; // dropped old block, new block
    for (int j = 0; j < B1; ++j) {
        if (g[static_cast<size_t>(j)] >= 0) continue;
        for (int r = 0; r < B2; ++r) {
            if (comp(j) != comp(B1 + r) || off(j) != off(B1 + r)) continue;
            const auto& ob = p1.blocks[static_cast<size_t>(j)];
            const auto& nb = p2.blocks[static_cast<size_t>(r)];
            if (!same_opt_label(ob.before, nb.before) || !same_opt_label(ob.after, nb.after)) {
                return false;
            }
            for (int s : survivors) {
                if (p1.sim_blocks(j, s) != p2.sim_blocks(r, g[static_cast<size_t>(s)])) {
                    return false;
                }
            }
            for (auto [j2, r2] : mergers) {
                if (p1.sim_blocks(j, j2) != p2.sim_blocks(r, r2)) return false;
            }
            mergers.push_back({j, r});
        }
    }

    if (embedding) *embedding = g;
    return true;
}

} // namespace

bool successor(const Profile& p1, const Label& letter, const Profile& p2,
               const TermClosure& closure) {
    if (!is_consistent(p1, closure) || !is_consistent(p2, closure)) {
        raise(ErrorKind::InconsistentInput, "successor needs consistent profiles");
    }
    return successor_checked(p1, letter, p2, closure, nullptr);
}

std::optional<std::vector<int>> successor_embedding(const Profile& p1, const Label& letter,
                                                    const Profile& p2,
                                                    const TermClosure& closure) {
    if (!is_consistent(p1, closure) || !is_consistent(p2, closure)) {
        raise(ErrorKind::InconsistentInput, "successor needs consistent profiles");
    }
    std::vector<int> g;
    if (!successor_checked(p1, letter, p2, closure, &g)) return std::nullopt;
    return g;
}

std::pair<DataPath, int> pair_witness_path(const Profile& p1, const Label& letter,
                                           const Profile& p2, const TermClosure& closure) {
    auto g_opt = successor_embedding(p1, letter, p2, closure);
    if (!g_opt) raise(ErrorKind::InconsistentInput, "not a successor pair");
    const auto& g = *g_opt;
    const int B1 = p1.block_count();
    const int B2 = p2.block_count();
    auto layout = pair_layout(p1, p2, g);

    // Solve concrete positions: difference constraints with exact edges from
    // the layout components and >= gaps along both chains.
    const int N = B1 + B2;
    std::vector<long> position(static_cast<size_t>(N), 0);
    bool changed = true;
    int iterations = 0;
    auto relax = [&](int a, int b, long delta) {
        // position[b] >= position[a] + delta
        if (position[static_cast<size_t>(b)] < position[static_cast<size_t>(a)] + delta) {
            position[static_cast<size_t>(b)] = position[static_cast<size_t>(a)] + delta;
            changed = true;
        }
    };
    while (changed && iterations < 4 * N + 8) {
        changed = false;
        ++iterations;
        for (int j = 0; j + 1 < B1; ++j) {
            long gap = p1.blocks[static_cast<size_t>(j)].adjacent_next ? 2 : 4;
            relax(j, j + 1, gap);
            if (gap == 2) relax(j + 1, j, -2);
        }
        for (int r = 0; r + 1 < B2; ++r) {
            long gap = p2.blocks[static_cast<size_t>(r)].adjacent_next ? 2 : 4;
            relax(B1 + r, B1 + r + 1, gap);
            if (gap == 2) relax(B1 + r + 1, B1 + r, -2);
        }
        relax(p1.zero, B1 + p2.zero, 2);
        relax(B1 + p2.zero, p1.zero, -2);
        for (int j = 0; j < B1; ++j) {
            if (g[static_cast<size_t>(j)] >= 0) {
                relax(j, B1 + g[static_cast<size_t>(j)], 0);
                relax(B1 + g[static_cast<size_t>(j)], j, 0);
            }
        }
        // Blocks pinned to equal offsets share a position.
        for (int j = 0; j < B1; ++j) {
            for (int r = 0; r < B2; ++r) {
                if (layout.component[static_cast<size_t>(j)] ==
                        layout.component[static_cast<size_t>(B1 + r)] &&
                    layout.offset[static_cast<size_t>(j)] ==
                        layout.offset[static_cast<size_t>(B1 + r)]) {
                    relax(j, B1 + r, 0);
                    relax(B1 + r, j, 0);
                }
            }
        }
    }

    // Value classes: union of both sim patterns over shared positions.
    std::map<long, std::vector<int>> at; // position -> nodes
    for (int v = 0; v < N; ++v) at[position[static_cast<size_t>(v)]].push_back(v);
    std::vector<long> spots;
    for (auto& [spot, nodes] : at) spots.push_back(spot);
    auto spot_index = [&](long s) {
        return static_cast<int>(std::lower_bound(spots.begin(), spots.end(), s) - spots.begin());
    };
    std::vector<int> value_class(spots.size());
    for (size_t i = 0; i < spots.size(); ++i) value_class[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (value_class[static_cast<size_t>(x)] != x) x = value_class[static_cast<size_t>(x)];
        return x;
    };
    auto unite = [&](int a, int b) { value_class[static_cast<size_t>(find(a))] = find(b); };
    for (int j = 0; j < B1; ++j) {
        for (int k = j + 1; k < B1; ++k) {
            if (p1.sim_blocks(j, k)) {
                unite(spot_index(position[static_cast<size_t>(j)]),
                      spot_index(position[static_cast<size_t>(k)]));
            }
        }
    }
    for (int r = 0; r < B2; ++r) {
        for (int s = r + 1; s < B2; ++s) {
            if (p2.sim_blocks(r, s)) {
                unite(spot_index(position[static_cast<size_t>(B1 + r)]),
                      spot_index(position[static_cast<size_t>(B1 + s)]));
            }
        }
    }

    // Labels around each spot.
    std::map<long, Label> label_at; // odd positions
    auto put_label = [&](long where, const std::optional<Label>& l) {
        if (l) label_at.emplace(where, *l);
    };
    for (int j = 0; j < B1; ++j) {
        put_label(position[static_cast<size_t>(j)] - 1, p1.blocks[static_cast<size_t>(j)].before);
        put_label(position[static_cast<size_t>(j)] + 1, p1.blocks[static_cast<size_t>(j)].after);
    }
    for (int r = 0; r < B2; ++r) {
        put_label(position[static_cast<size_t>(B1 + r)] - 1,
                  p2.blocks[static_cast<size_t>(r)].before);
        put_label(position[static_cast<size_t>(B1 + r)] + 1,
                  p2.blocks[static_cast<size_t>(r)].after);
    }

    long left = spots.front();
    bool pad_left = label_at.count(left - 1) > 0;
    long right = spots.back();
    bool pad_right = label_at.count(right + 1) > 0;

    std::vector<DataValue> values;
    std::vector<Label> labels;
    std::map<long, int> final_pos;
    long first_value_spot = pad_left ? left - 2 : left;
    for (long s = first_value_spot;; s += 2) {
        if (s == first_value_spot) {
            // leading value
        } else {
            auto it = label_at.find(s - 1);
            labels.push_back(it != label_at.end() ? it->second : Label("x"));
        }
        bool is_block_spot =
            std::binary_search(spots.begin(), spots.end(), s);
        if (is_block_spot) {
            values.push_back(std::to_string(find(spot_index(s)) + 1));
        } else {
            values.push_back(kFiller);
        }
        final_pos[s] = 2 * (static_cast<int>(values.size()) - 1);
        if (s >= (pad_right ? right + 2 : right)) break;
    }
    DataPath path(std::move(values), std::move(labels));
    return {path, final_pos.at(position[static_cast<size_t>(p1.zero)])};
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

std::vector<std::optional<Label>> label_candidates(const TermClosure& closure,
                                                   const LabelSet& alphabet,
                                                   const std::vector<int>& terms, bool is_before,
                                                   bool allow_bottom) {
    LabelSet allowed = alphabet;
    bool restricted = false;
    for (int id : terms) {
        const PositionTerm& t = closure.term(id);
        auto root = t.root();
        if (!root) continue;
        if (is_before && root->op == TermOp::SucA) {
            LabelSet inter;
            for (const auto& l : allowed) {
                if (root->labels.count(l)) inter.insert(l);
            }
            allowed = inter;
            restricted = true;
        }
        if (!is_before && root->op == TermOp::PredA) {
            LabelSet inter;
            for (const auto& l : allowed) {
                if (root->labels.count(l)) inter.insert(l);
            }
            allowed = inter;
            restricted = true;
        }
    }
    std::vector<std::optional<Label>> out;
    if (allow_bottom && !restricted) out.push_back(std::nullopt);
    for (const auto& l : allowed) out.push_back(l);
    return out;
}

struct StopEnumeration {};

// Enumerates consistent profiles whose block sequence extends a fixed,
// fully decorated prefix layout ("pins"), inserting extra blocks only in
// the allowed suffix region, then filters with a caller-provided check.
struct PinnedBlockSpec {
    std::set<int> terms;                  // required members
    std::optional<Label> before, after;   // exact labels (nullopt = path edge)
    bool before_fixed = false, after_fixed = false;
    int sim_group = -1;                   // pinned sim group id, -1 = free
    int s_known = -1;                     // s towards next pinned block: 1/0/-1
};

void enumerate_extensions_into(const TermClosure& closure, const LabelSet& alphabet,
                               const std::vector<PinnedBlockSpec>& pins, int pinned_zero,
                               int free_slots_from,
                               const std::function<bool(const Profile&)>& sink) {
    // Free terms: everything not already pinned.
    std::set<int> pinned_terms;
    for (const auto& p : pins) pinned_terms.insert(p.terms.begin(), p.terms.end());
    std::vector<int> free_terms;
    for (int id = 0; id < static_cast<int>(closure.size()); ++id) {
        if (!pinned_terms.count(id)) free_terms.push_back(id);
    }

    // Choose S2-extension: prefix-closed subsets of the free terms relative
    // to the union with pinned terms.
    std::vector<std::vector<int>> extensions;
    std::function<void(size_t, std::vector<int>&)> pick = [&](size_t idx, std::vector<int>& acc) {
        if (idx == free_terms.size()) {
            // prefix-closed check
            std::set<int> all = pinned_terms;
            all.insert(acc.begin(), acc.end());
            for (int id : all) {
                const PositionTerm& t = closure.term(id);
                if (t.is_cur()) continue;
                if (!all.count(closure.id_of(t.argument()))) return;
            }
            extensions.push_back(acc);
            return;
        }
        pick(idx + 1, acc);
        acc.push_back(free_terms[idx]);
        pick(idx + 1, acc);
        acc.pop_back();
    };
    std::vector<int> acc;
    pick(0, acc);

    for (const auto& extra : extensions) {
        // Assign each extra term to a pinned block or to a "new group" id.
        // New groups become fresh blocks inserted at free slots.
        const int P = static_cast<int>(pins.size());
        std::vector<int> assign(extra.size(), 0);
        std::function<void(size_t)> assign_rec = [&](size_t idx) {
            if (idx == extra.size()) {
                // Collect groups.
                int max_new = 0;
                for (int a : assign) max_new = std::max(max_new, a - P + 1);
                std::vector<std::set<int>> added(static_cast<size_t>(P));
                std::vector<std::set<int>> fresh(static_cast<size_t>(max_new));
                for (size_t i = 0; i < extra.size(); ++i) {
                    if (assign[i] < P) added[static_cast<size_t>(assign[i])].insert(extra[i]);
                    else fresh[static_cast<size_t>(assign[i] - P)].insert(extra[i]);
                }
                bool skip = false;
                for (const auto& group : fresh) {
                    if (group.empty()) skip = true; // canonical: no gaps in group ids
                }
                if (skip) return;
                // Choose slots for fresh groups: slot k in [free_slots_from, P]
                // means "after pinned block k-1"; fresh groups keep their
                // relative order, several may share a slot in order.
                const int F = static_cast<int>(fresh.size());
                std::vector<int> slot(static_cast<size_t>(F), 0);
                std::function<void(int, int)> slots_rec = [&](int i, int min_slot) {
                    if (i == F) {
                        // Build the final block layout.
                        struct Draft {
                            std::set<int> terms;
                            std::optional<Label> before, after;
                            bool before_fixed = false, after_fixed = false;
                            int sim_group = -1;
                            int pin_index = -1;
                        };
                        std::vector<Draft> seq;
                        for (int k = 0; k <= P; ++k) {
                            for (int f = 0; f < F; ++f) {
                                if (slot[static_cast<size_t>(f)] == k) {
                                    Draft d;
                                    d.terms = fresh[static_cast<size_t>(f)];
                                    seq.push_back(std::move(d));
                                }
                            }
                            if (k < P) {
                                Draft d;
                                d.terms = pins[static_cast<size_t>(k)].terms;
                                d.terms.insert(added[static_cast<size_t>(k)].begin(),
                                               added[static_cast<size_t>(k)].end());
                                d.before = pins[static_cast<size_t>(k)].before;
                                d.after = pins[static_cast<size_t>(k)].after;
                                d.before_fixed = pins[static_cast<size_t>(k)].before_fixed;
                                d.after_fixed = pins[static_cast<size_t>(k)].after_fixed;
                                d.sim_group = pins[static_cast<size_t>(k)].sim_group;
                                d.pin_index = k;
                                seq.push_back(std::move(d));
                            }
                        }
                        const int B = static_cast<int>(seq.size());
                        // Label choices per block.
                        std::vector<std::vector<std::optional<Label>>> befores(
                            static_cast<size_t>(B)),
                            afters(static_cast<size_t>(B));
                        for (int b = 0; b < B; ++b) {
                            std::vector<int> ts(seq[static_cast<size_t>(b)].terms.begin(),
                                                seq[static_cast<size_t>(b)].terms.end());
                            if (seq[static_cast<size_t>(b)].before_fixed) {
                                befores[static_cast<size_t>(b)] = {seq[static_cast<size_t>(b)].before};
                            } else {
                                befores[static_cast<size_t>(b)] =
                                    label_candidates(closure, alphabet, ts, true, b == 0);
                            }
                            if (seq[static_cast<size_t>(b)].after_fixed) {
                                afters[static_cast<size_t>(b)] = {seq[static_cast<size_t>(b)].after};
                            } else {
                                afters[static_cast<size_t>(b)] =
                                    label_candidates(closure, alphabet, ts, false, b == B - 1);
                            }
                        }
                        // Enumerate labels, s-bits and sims, filter by
                        // consistency.
                        std::vector<std::optional<Label>> bsel(static_cast<size_t>(B)),
                            asel(static_cast<size_t>(B));
                        std::vector<bool> ssel(static_cast<size_t>(B), false);
                        std::vector<int> simsel(static_cast<size_t>(B), 0);
                        std::function<void(int)> dec_rec = [&](int b) {
                            if (b == B) {
                                // sims: assign canonical classes; pinned
                                // groups share classes by group id, and two
                                // distinct pinned groups never merge, not
                                // even through a free representative.
                                std::map<int, int> group_rep;
                                std::map<int, int> rep_owner; // class rep -> group id
                                std::function<void(int)> sims_rec = [&](int i) {
                                    if (i == B) {
                                        Profile prof;
                                        for (int x = 0; x < B; ++x) {
                                            ProfileBlock blk;
                                            blk.before = bsel[static_cast<size_t>(x)];
                                            blk.after = asel[static_cast<size_t>(x)];
                                            blk.adjacent_next =
                                                (x < B - 1) && ssel[static_cast<size_t>(x)];
                                            blk.terms.assign(
                                                seq[static_cast<size_t>(x)].terms.begin(),
                                                seq[static_cast<size_t>(x)].terms.end());
                                            blk.sim_class = simsel[static_cast<size_t>(x)];
                                            prof.blocks.push_back(std::move(blk));
                                        }
                                        int zero = -1;
                                        for (int x = 0; x < B; ++x) {
                                            if (seq[static_cast<size_t>(x)].pin_index == pinned_zero)
                                                zero = x;
                                        }
                                        if (zero < 0) return;
                                        prof.zero = zero;
                                        if (is_consistent(prof, closure) && !sink(prof)) {
                                            throw StopEnumeration{};
                                        }
                                        return;
                                    }
                                    int grp = seq[static_cast<size_t>(i)].sim_group;
                                    if (grp >= 0) {
                                        auto it = group_rep.find(grp);
                                        if (it != group_rep.end()) {
                                            simsel[static_cast<size_t>(i)] = it->second;
                                            sims_rec(i + 1);
                                            return;
                                        }
                                    }
                                    for (int rep = 0; rep <= i; ++rep) {
                                        if (rep < i) {
                                            if (simsel[static_cast<size_t>(rep)] != rep) continue;
                                            int rg = seq[static_cast<size_t>(rep)].sim_group;
                                            if (grp >= 0 && rg >= 0) continue;
                                            auto owner = rep_owner.find(rep);
                                            if (grp >= 0 && owner != rep_owner.end() &&
                                                owner->second != grp) {
                                                continue;
                                            }
                                        }
                                        simsel[static_cast<size_t>(i)] = rep;
                                        bool reg_group = false, reg_owner = false;
                                        if (grp >= 0) {
                                            group_rep[grp] = rep;
                                            reg_group = true;
                                            if (rep < i && !rep_owner.count(rep)) {
                                                rep_owner[rep] = grp;
                                                reg_owner = true;
                                            }
                                        }
                                        sims_rec(i + 1);
                                        if (reg_group) group_rep.erase(grp);
                                        if (reg_owner) rep_owner.erase(rep);
                                    }
                                };
                                sims_rec(0);
                                return;
                            }
                            for (const auto& bl : befores[static_cast<size_t>(b)]) {
                                if (b > 0 && !bl.has_value()) continue;
                                if (b > 0 && ssel[static_cast<size_t>(b - 1)] &&
                                    (!asel[static_cast<size_t>(b - 1)].has_value() ||
                                     *asel[static_cast<size_t>(b - 1)] != *bl)) {
                                    continue;
                                }
                                bsel[static_cast<size_t>(b)] = bl;
                                for (const auto& al : afters[static_cast<size_t>(b)]) {
                                    if (b < B - 1 && !al.has_value()) continue;
                                    asel[static_cast<size_t>(b)] = al;
                                    if (b == B - 1) {
                                        ssel[static_cast<size_t>(b)] = false;
                                        dec_rec(b + 1);
                                    } else {
                                        int pin = seq[static_cast<size_t>(b)].pin_index;
                                        int next_pin = seq[static_cast<size_t>(b + 1)].pin_index;
                                        int forced = -1;
                                        if (pin >= 0 && next_pin == pin + 1) {
                                            forced = pins[static_cast<size_t>(pin)].s_known;
                                        }
                                        for (int s = 0; s <= 1; ++s) {
                                            if (forced >= 0 && s != forced) continue;
                                            ssel[static_cast<size_t>(b)] = (s == 1);
                                            dec_rec(b + 1);
                                        }
                                    }
                                }
                            }
                        };
                        dec_rec(0);
                        return;
                    }
                    for (int s = std::max(min_slot, free_slots_from); s <= P; ++s) {
                        slot[static_cast<size_t>(i)] = s;
                        slots_rec(i + 1, s);
                    }
                };
                slots_rec(0, 0);
                return;
            }
            for (int a = 0; a < P + static_cast<int>(extra.size()); ++a) {
                // a < P: join pinned block a; otherwise fresh group a-P.
                // Canonical: a fresh group id may be used only if the
                // previous one is in use.
                if (a >= P) {
                    int gid = a - P;
                    bool prev_used = (gid == 0);
                    for (size_t i = 0; i < idx && !prev_used; ++i) {
                        if (assign[i] == a - 1) prev_used = true;
                    }
                    if (!prev_used && gid > 0) continue;
                }
                assign[idx] = a;
                assign_rec(idx + 1);
            }
        };
        assign_rec(0);
    }
}

void enumerate_extensions(const TermClosure& closure, const LabelSet& alphabet,
                          const std::vector<PinnedBlockSpec>& pins, int pinned_zero,
                          int free_slots_from, std::vector<Profile>& out) {
    enumerate_extensions_into(closure, alphabet, pins, pinned_zero, free_slots_from,
                              [&](const Profile& p) {
                                  out.push_back(p);
                                  return true;
                              });
}

} // namespace

std::vector<Profile> enumerate_initial_profiles(const TermClosure& closure,
                                                const LabelSet& alphabet) {
    PinnedBlockSpec zero;
    zero.terms = {closure.cur_id()};
    zero.before = std::nullopt;
    zero.before_fixed = true;
    zero.sim_group = 0;
    std::vector<Profile> out;
    enumerate_extensions(closure, alphabet, {zero}, 0, 1, out);
    std::vector<Profile> keep;
    for (auto& p : out) {
        if (is_initial(p)) keep.push_back(std::move(p));
    }
    std::sort(keep.begin(), keep.end(),
              [](const Profile& a, const Profile& b) { return a.key() < b.key(); });
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
}

std::vector<Profile> enumerate_consistent_profiles(const TermClosure& closure,
                                                   const LabelSet& alphabet) {
    // General profiles: the current block is pinned, fresh blocks may appear
    // on both sides.
    PinnedBlockSpec zero;
    zero.terms = {closure.cur_id()};
    zero.sim_group = 0;
    std::vector<Profile> out;
    enumerate_extensions(closure, alphabet, {zero}, 0, 0, out);
    std::sort(out.begin(), out.end(),
              [](const Profile& a, const Profile& b) { return a.key() < b.key(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void stream_consistent_profiles(const TermClosure& closure, const LabelSet& alphabet,
                                const std::function<bool(const Profile&)>& sink) {
    PinnedBlockSpec zero;
    zero.terms = {closure.cur_id()};
    zero.sim_group = 0;
    try {
        enumerate_extensions_into(closure, alphabet, {zero}, 0, 0, sink);
    } catch (const StopEnumeration&) {
    }
}

std::vector<Profile> enumerate_successor_profiles(const Profile& p1, const Label& letter,
                                                  const TermClosure& closure,
                                                  const LabelSet& alphabet) {
    std::vector<Profile> result;
    const int B1 = p1.block_count();
    const int z1 = p1.zero;
    const auto& zb = p1.blocks[static_cast<size_t>(z1)];
    if (!zb.after || *zb.after != letter) return result;

    auto sets = inherited_sets(p1, letter, closure);
    std::vector<int> neg, pos;
    for (int j = 0; j < B1; ++j) {
        if (sets[static_cast<size_t>(j)].empty()) continue;
        (j <= z1 ? neg : pos).push_back(j);
    }
    const bool merged = (z1 + 1 < B1) && zb.adjacent_next;

    std::vector<PinnedBlockSpec> pins;
    std::map<int, int> sim_group_of_class; // p1 sim class -> group id
    int next_group = 0;
    auto group_for = [&](int old_block) {
        int cls = p1.blocks[static_cast<size_t>(old_block)].sim_class;
        auto it = sim_group_of_class.find(cls);
        if (it != sim_group_of_class.end()) return it->second;
        sim_group_of_class[cls] = next_group;
        return next_group++;
    };
    // negative survivors, fully decorated
    for (size_t r = 0; r < neg.size(); ++r) {
        int j = neg[r];
        PinnedBlockSpec spec;
        spec.terms = sets[static_cast<size_t>(j)];
        spec.before = p1.blocks[static_cast<size_t>(j)].before;
        spec.before_fixed = true;
        spec.after = p1.blocks[static_cast<size_t>(j)].after;
        spec.after_fixed = true;
        spec.sim_group = group_for(j);
        if (r + 1 < neg.size()) {
            spec.s_known = (neg[r + 1] == j + 1 && p1.blocks[static_cast<size_t>(j)].adjacent_next)
                               ? 1
                               : 0;
        } else {
            spec.s_known = (j == z1) ? 1 : 0;
        }
        pins.push_back(std::move(spec));
    }
    // the new current block
    int zero_pin = static_cast<int>(pins.size());
    {
        PinnedBlockSpec spec;
        spec.terms.insert(closure.cur_id());
        if (merged) {
            int j = z1 + 1;
            spec.terms.insert(sets[static_cast<size_t>(j)].begin(),
                              sets[static_cast<size_t>(j)].end());
            spec.after = p1.blocks[static_cast<size_t>(j)].after;
            spec.after_fixed = true;
            spec.sim_group = group_for(j);
        }
        spec.before = letter;
        spec.before_fixed = true;
        pins.push_back(std::move(spec));
    }
    // positive survivors
    for (size_t r = (merged ? 1 : 0); r < pos.size(); ++r) {
        int j = pos[r];
        PinnedBlockSpec spec;
        spec.terms = sets[static_cast<size_t>(j)];
        spec.before = p1.blocks[static_cast<size_t>(j)].before;
        spec.before_fixed = true;
        spec.after = p1.blocks[static_cast<size_t>(j)].after;
        spec.after_fixed = true;
        spec.sim_group = group_for(j);
        pins.push_back(std::move(spec));
    }

    std::vector<Profile> candidates;
    enumerate_extensions(closure, alphabet, pins, zero_pin, zero_pin + 1, candidates);
    for (auto& p2 : candidates) {
        if (successor_checked(p1, letter, p2, closure, nullptr)) result.push_back(std::move(p2));
    }
    std::sort(result.begin(), result.end(),
              [](const Profile& a, const Profile& b) { return a.key() < b.key(); });
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

} // namespace rra

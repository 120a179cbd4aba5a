#include "rra/twoway.hpp"

#include <algorithm>
#include <queue>

namespace rra {

std::string to_string(const TapeSymbol& s) {
    switch (s.kind) {
        case TapeSymbol::Letter: return to_string(s.label);
        case TapeSymbol::LeftEnd: return "|-";
        case TapeSymbol::RightEnd: return "-|";
    }
    return "?";
}

int TwoWayNrra::add_state(const std::string& name) {
    states.push_back(name);
    return static_cast<int>(states.size()) - 1;
}

void TwoWayNrra::refresh() {
    for (const auto& m : word_moves) {
        if (m.dir != 1 && m.dir != -1) raise(ErrorKind::BadInput, "direction must be +1/-1");
        if (m.symbol.kind == TapeSymbol::LeftEnd && m.dir != 1) {
            raise(ErrorKind::BadInput, "the left endmarker forces direction +1");
        }
        if (m.symbol.kind == TapeSymbol::RightEnd && m.dir != -1) {
            raise(ErrorKind::BadInput, "the right endmarker forces direction -1");
        }
        if (m.symbol.kind == TapeSymbol::Letter && !alphabet.count(m.symbol.label)) {
            raise(ErrorKind::AlphabetMismatch, to_string(m.symbol.label));
        }
    }
    for (const auto& m : data_moves) {
        if (m.dir != 1 && m.dir != -1) raise(ErrorKind::BadInput, "direction must be +1/-1");
    }
    constraints_.clear();
    std::set<std::string> seen;
    for (const auto& m : data_moves) {
        if (seen.insert(to_string(m.guard)).second) constraints_.push_back(m.guard);
    }
    closure_ = TermClosure::of_constraints(constraints_);
}

// ---------------------------------------------------------------------------
// Membership (configuration reachability over |- alpha -|)
// ---------------------------------------------------------------------------

namespace {

// |-alpha-| position layout: 0 = |-, value d_i at 2i+1, label a_i at 2i,
// -| at 2n+2.
struct TapeView {
    const DataPath& path;
    int n;

    explicit TapeView(const DataPath& p) : path(p), n(static_cast<int>(p.label_count())) {}
    int right_end() const { return 2 * n + 2; }
    bool is_value(int pos) const { return pos % 2 == 1 && pos >= 1 && pos <= 2 * n + 1; }
    TapeSymbol symbol_at(int pos) const {
        if (pos == 0) return TapeSymbol::left_end();
        if (pos == right_end()) return TapeSymbol::right_end();
        return TapeSymbol::letter(path.labels[static_cast<size_t>(pos / 2 - 1)]);
    }
};

} // namespace

bool two_way_membership(const TwoWayNrra& a, const DataPath& path) {
    return two_way_membership_capped(a, path, -1);
}

bool two_way_membership_capped(const TwoWayNrra& a, const DataPath& path, long max_steps) {
    TapeView tape(path);
    const int width = tape.right_end() + 1;
    std::vector<std::vector<bool>> seen(a.states.size(),
                                        std::vector<bool>(static_cast<size_t>(width), false));
    std::queue<std::tuple<int, int, long>> work;
    for (int q : a.initial) {
        if (!seen[static_cast<size_t>(q)][0]) {
            seen[static_cast<size_t>(q)][0] = true;
            work.push({q, 0, 0});
        }
    }
    while (!work.empty()) {
        auto [q, pos, steps] = work.front();
        work.pop();
        if (pos == tape.right_end() && a.final.count(q)) return true;
        if (max_steps >= 0 && steps >= max_steps) continue;
        auto visit = [&](int q2, int pos2) {
            if (pos2 < 0 || pos2 > tape.right_end()) return;
            if (seen[static_cast<size_t>(q2)][static_cast<size_t>(pos2)]) return;
            seen[static_cast<size_t>(q2)][static_cast<size_t>(pos2)] = true;
            work.push({q2, pos2, steps + 1});
        };
        if (tape.is_value(pos)) {
            for (const auto& m : a.data_moves) {
                if (m.from != q) continue;
                if (!eval_constraint(m.guard, path, pos - 1)) continue;
                visit(m.to, pos + m.dir);
            }
        } else {
            TapeSymbol sym = tape.symbol_at(pos);
            for (const auto& m : a.word_moves) {
                if (m.from != q || !(m.symbol == sym)) continue;
                visit(m.to, pos + m.dir);
            }
        }
    }
    return false;
}

TwoWayNrra embed_oneway(const Nrra& a) {
    TwoWayNrra t;
    t.alphabet = a.alphabet;
    // states: start, then data states, then word states of a
    int start = t.add_state("start");
    std::vector<int> dmap, wmap;
    for (const auto& n : a.data_states) dmap.push_back(t.add_state("d:" + n));
    for (const auto& n : a.word_states) wmap.push_back(t.add_state("w:" + n));
    t.initial.insert(start);
    for (int q : a.initial) {
        t.word_moves.push_back({start, TapeSymbol::left_end(), dmap[static_cast<size_t>(q)], 1});
    }
    for (const auto& tr : a.data_transitions) {
        t.data_moves.push_back(
            {dmap[static_cast<size_t>(tr.from)], tr.guard, wmap[static_cast<size_t>(tr.to)], 1});
    }
    for (const auto& tr : a.word_transitions) {
        t.word_moves.push_back({wmap[static_cast<size_t>(tr.from)], TapeSymbol::letter(tr.label),
                                dmap[static_cast<size_t>(tr.to)], 1});
    }
    for (int q : a.final) t.final.insert(wmap[static_cast<size_t>(q)]);
    t.refresh();
    return t;
}

// ---------------------------------------------------------------------------
// Crossing construction
// ---------------------------------------------------------------------------

namespace {

using Relation = std::vector<std::set<int>>; // per-state successor sets

// Crossing relation over a word symbol: alternate left moves over `sym`
// with re-entries through `reentry`, then one right move over `sym`.
Relation cross_word(const TwoWayNrra& a, const TapeSymbol& sym, const Relation& reentry) {
    const int n = static_cast<int>(a.states.size());
    Relation out(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        std::set<int> bounce{q};
        std::queue<int> work;
        work.push(q);
        while (!work.empty()) {
            int x = work.front();
            work.pop();
            for (const auto& m : a.word_moves) {
                if (m.from != x || !(m.symbol == sym) || m.dir != -1) continue;
                for (int y : reentry[static_cast<size_t>(m.to)]) {
                    if (bounce.insert(y).second) work.push(y);
                }
            }
        }
        for (int x : bounce) {
            for (const auto& m : a.word_moves) {
                if (m.from != x || !(m.symbol == sym) || m.dir != 1) continue;
                out[static_cast<size_t>(q)].insert(m.to);
            }
        }
    }
    return out;
}

// Crossing relation over a data value whose constraint set is C.
Relation cross_data(const TwoWayNrra& a, const std::vector<int>& constraint_ids,
                    const Relation& reentry) {
    const int n = static_cast<int>(a.states.size());
    std::set<int> allowed(constraint_ids.begin(), constraint_ids.end());
    auto guard_index = [&](const RigidConstraint& c) {
        const auto& cs = a.constraint_set();
        std::string text = to_string(c);
        for (size_t i = 0; i < cs.size(); ++i) {
            if (to_string(cs[i]) == text) return static_cast<int>(i);
        }
        return -1;
    };
    Relation out(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        std::set<int> bounce{q};
        std::queue<int> work;
        work.push(q);
        while (!work.empty()) {
            int x = work.front();
            work.pop();
            for (const auto& m : a.data_moves) {
                if (m.from != x || m.dir != -1) continue;
                if (!allowed.count(guard_index(m.guard))) continue;
                for (int y : reentry[static_cast<size_t>(m.to)]) {
                    if (bounce.insert(y).second) work.push(y);
                }
            }
        }
        for (int x : bounce) {
            for (const auto& m : a.data_moves) {
                if (m.from != x || m.dir != 1) continue;
                if (!allowed.count(guard_index(m.guard))) continue;
                out[static_cast<size_t>(q)].insert(m.to);
            }
        }
    }
    return out;
}

// Re-entry relation at the left endmarker.
Relation left_end_reentry(const TwoWayNrra& a) {
    Relation out(a.states.size());
    for (const auto& m : a.word_moves) {
        if (m.symbol.kind == TapeSymbol::LeftEnd) out[static_cast<size_t>(m.from)].insert(m.to);
    }
    return out;
}

std::string relation_key(const Relation& r) {
    std::string out;
    for (const auto& s : r) {
        for (int q : s) out += std::to_string(q) + ",";
        out += ";";
    }
    return out;
}

std::string set_key(const std::set<int>& s) {
    std::string out;
    for (int q : s) out += std::to_string(q) + ",";
    return out;
}

// States reachable at the right endmarker given first arrivals and the
// crossing relation of the last value.
std::set<int> right_end_states(const TwoWayNrra& a, const std::set<int>& arrivals,
                               const Relation& last_value_cross) {
    std::set<int> reach = arrivals;
    std::queue<int> work;
    for (int q : reach) work.push(q);
    while (!work.empty()) {
        int q = work.front();
        work.pop();
        for (const auto& m : a.word_moves) {
            if (m.from != q || m.symbol.kind != TapeSymbol::RightEnd) continue;
            for (int y : last_value_cross[static_cast<size_t>(m.to)]) {
                if (reach.insert(y).second) work.push(y);
            }
        }
    }
    return reach;
}

std::vector<std::vector<int>> satisfiable_constraint_subsets(const TwoWayNrra& a) {
    const auto& cs = a.constraint_set();
    std::vector<std::vector<int>> out;
    const size_t m = cs.size();
    if (m > 20) raise(ErrorKind::ResourceExceeded, "constraint set too large for subsets");
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        std::vector<int> ids;
        std::vector<RigidConstraint> parts;
        for (size_t i = 0; i < m; ++i) {
            if (mask & (size_t{1} << i)) {
                ids.push_back(static_cast<int>(i));
                parts.push_back(cs[i]);
            }
        }
        if (!satisfiable_over(RigidConstraint::conj_all(parts), a.alphabet)) continue;
        out.push_back(std::move(ids));
    }
    return out;
}

RigidConstraint conj_of(const TwoWayNrra& a, const std::vector<int>& ids) {
    std::vector<RigidConstraint> parts;
    for (int i : ids) parts.push_back(a.constraint_set()[static_cast<size_t>(i)]);
    return RigidConstraint::conj_all(parts);
}

std::vector<TapeSymbol> letter_symbols(const TwoWayNrra& a) {
    std::vector<TapeSymbol> out;
    for (const auto& l : a.alphabet) out.push_back(TapeSymbol::letter(l));
    out.push_back(TapeSymbol::right_end());
    return out;
}

} // namespace

Nrra to_oneway_relational(const TwoWayNrra& a, size_t state_budget) {
    Nrra out;
    out.alphabet = a.alphabet;
    auto subsets = satisfiable_constraint_subsets(a);
    auto symbols = letter_symbols(a);
    Relation at_left = left_end_reentry(a);

    struct DataState {
        std::vector<int> constraint_ids;
        std::set<int> arrivals;
        Relation cross;
    };
    struct WordState {
        TapeSymbol symbol;
        std::set<int> arrivals;
        Relation cross;
        bool accepted = false; // right endmarker only
    };
    std::vector<DataState> data_states;
    std::vector<WordState> word_states;
    std::map<std::string, int> data_ids, word_ids;
    std::queue<std::pair<int, bool>> work;

    auto data_state = [&](DataState s) {
        std::string key;
        for (int c : s.constraint_ids) key += std::to_string(c) + ",";
        key += "|" + set_key(s.arrivals) + "|" + relation_key(s.cross);
        auto it = data_ids.find(key);
        if (it != data_ids.end()) return it->second;
        int id = out.add_data_state("D" + std::to_string(data_states.size()));
        if (out.data_states.size() + out.word_states.size() > state_budget) {
            raise(ErrorKind::ResourceExceeded, "to_oneway state budget");
        }
        data_ids[key] = id;
        data_states.push_back(std::move(s));
        work.push({id, true});
        return id;
    };
    auto word_state = [&](WordState s) {
        std::string key = to_string(s.symbol) + "|" + set_key(s.arrivals) + "|" +
                          relation_key(s.cross) + (s.accepted ? "A" : "");
        auto it = word_ids.find(key);
        if (it != word_ids.end()) return it->second;
        int id = out.add_word_state("W" + std::to_string(word_states.size()));
        if (out.data_states.size() + out.word_states.size() > state_budget) {
            raise(ErrorKind::ResourceExceeded, "to_oneway state budget");
        }
        word_ids[key] = id;
        word_states.push_back(std::move(s));
        work.push({id, false});
        return id;
    };

    // initial data states: one per satisfiable constraint set
    for (const auto& ids : subsets) {
        DataState s;
        s.constraint_ids = ids;
        for (int q : a.initial) {
            for (int y : at_left[static_cast<size_t>(q)]) s.arrivals.insert(y);
        }
        if (s.arrivals.empty()) continue;
        s.cross = cross_data(a, ids, at_left);
        out.initial.insert(data_state(std::move(s)));
    }

    while (!work.empty()) {
        auto [id, is_data] = work.front();
        work.pop();
        if (is_data) {
            DataState s = data_states[static_cast<size_t>(id)];
            RigidConstraint guard = conj_of(a, s.constraint_ids);
            std::set<int> next_arrivals;
            for (int q : s.arrivals) {
                next_arrivals.insert(s.cross[static_cast<size_t>(q)].begin(),
                                     s.cross[static_cast<size_t>(q)].end());
            }
            if (next_arrivals.empty()) continue;
            for (const auto& sym : symbols) {
                WordState w;
                w.symbol = sym;
                w.arrivals = next_arrivals;
                if (sym.kind == TapeSymbol::RightEnd) {
                    w.cross.assign(a.states.size(), {});
                    auto reach = right_end_states(a, next_arrivals, s.cross);
                    bool ok = false;
                    for (int q : reach) {
                        if (a.final.count(q)) ok = true;
                    }
                    w.accepted = ok;
                } else {
                    w.cross = cross_word(a, sym, s.cross);
                }
                out.data_transitions.push_back({id, guard, word_state(std::move(w))});
            }
        } else {
            WordState s = word_states[static_cast<size_t>(id)];
            if (s.symbol.kind == TapeSymbol::RightEnd) continue;
            std::set<int> next_arrivals;
            for (int q : s.arrivals) {
                next_arrivals.insert(s.cross[static_cast<size_t>(q)].begin(),
                                     s.cross[static_cast<size_t>(q)].end());
            }
            if (next_arrivals.empty()) continue;
            for (const auto& ids : subsets) {
                DataState d;
                d.constraint_ids = ids;
                d.arrivals = next_arrivals;
                d.cross = cross_data(a, ids, s.cross);
                out.word_transitions.push_back(
                    {id, s.symbol.label, data_state(std::move(d))});
            }
        }
    }
    for (size_t i = 0; i < word_states.size(); ++i) {
        if (word_states[i].accepted) out.final.insert(static_cast<int>(i));
    }
    out.refresh();
    return out;
}

Nrra to_oneway(const TwoWayNrra& a, size_t state_budget) {
    Nrra out;
    out.alphabet = a.alphabet;
    const int n = static_cast<int>(a.states.size());
    auto subsets = satisfiable_constraint_subsets(a);
    auto symbols = letter_symbols(a);
    Relation at_left = left_end_reentry(a);

    // f is a vector of size n+1: entry n is the anchor f(.), entries 0..n-1
    // map states to a successor (-1 = undefined).
    using Crossing = std::vector<int>;
    auto as_relation = [&](const Crossing& f) {
        Relation r(static_cast<size_t>(n));
        for (int q = 0; q < n; ++q) {
            if (f[static_cast<size_t>(q)] >= 0) r[static_cast<size_t>(q)].insert(f[static_cast<size_t>(q)]);
        }
        return r;
    };

    struct DataState {
        std::vector<int> constraint_ids;
        Crossing f;
    };
    struct WordState {
        TapeSymbol symbol;
        Crossing f;
        bool accepted = false;
    };
    std::vector<DataState> data_states;
    std::vector<WordState> word_states;
    std::map<std::string, int> data_ids, word_ids;
    std::queue<std::pair<int, bool>> work;

    auto crossing_key = [&](const Crossing& f) {
        std::string key;
        for (int v : f) key += std::to_string(v) + ",";
        return key;
    };
    auto data_state = [&](DataState s) {
        std::string key;
        for (int c : s.constraint_ids) key += std::to_string(c) + ",";
        key += "|" + crossing_key(s.f);
        auto it = data_ids.find(key);
        if (it != data_ids.end()) return it->second;
        int id = out.add_data_state("D" + std::to_string(data_states.size()));
        if (out.data_states.size() + out.word_states.size() > state_budget) {
            raise(ErrorKind::ResourceExceeded, "to_oneway state budget");
        }
        data_ids[key] = id;
        data_states.push_back(std::move(s));
        work.push({id, true});
        return id;
    };
    auto word_state = [&](WordState s) {
        std::string key = to_string(s.symbol) + "|" + crossing_key(s.f) + (s.accepted ? "A" : "");
        auto it = word_ids.find(key);
        if (it != word_ids.end()) return it->second;
        int id = out.add_word_state("W" + std::to_string(word_states.size()));
        if (out.data_states.size() + out.word_states.size() > state_budget) {
            raise(ErrorKind::ResourceExceeded, "to_oneway state budget");
        }
        word_ids[key] = id;
        word_states.push_back(std::move(s));
        work.push({id, false});
        return id;
    };

    // Enumerate subfunctions of a relation with a fixed anchor.
    auto enumerate_crossings = [&](const Relation& r, int anchor,
                                   const std::function<void(const Crossing&)>& sink) {
        double combinations = 1;
        for (const auto& opts : r) combinations *= 1.0 + static_cast<double>(opts.size());
        if (combinations > 4.0 * static_cast<double>(state_budget)) {
            raise(ErrorKind::ResourceExceeded, "crossing-function enumeration too large");
        }
        Crossing f(static_cast<size_t>(n) + 1, -1);
        f[static_cast<size_t>(n)] = anchor;
        std::function<void(int)> rec = [&](int q) {
            if (q == n) {
                sink(f);
                return;
            }
            f[static_cast<size_t>(q)] = -1;
            rec(q + 1);
            for (int y : r[static_cast<size_t>(q)]) {
                f[static_cast<size_t>(q)] = y;
                rec(q + 1);
            }
            f[static_cast<size_t>(q)] = -1;
        };
        rec(0);
    };

    for (const auto& ids : subsets) {
        Relation r = cross_data(a, ids, at_left);
        std::set<int> anchors;
        for (int q : a.initial) {
            anchors.insert(at_left[static_cast<size_t>(q)].begin(),
                           at_left[static_cast<size_t>(q)].end());
        }
        for (int anchor : anchors) {
            enumerate_crossings(r, anchor, [&](const Crossing& f) {
                out.initial.insert(data_state({ids, f}));
            });
        }
    }

    while (!work.empty()) {
        auto [id, is_data] = work.front();
        work.pop();
        if (is_data) {
            DataState s = data_states[static_cast<size_t>(id)];
            RigidConstraint guard = conj_of(a, s.constraint_ids);
            int anchor = s.f[static_cast<size_t>(n)];
            int next_anchor = s.f[static_cast<size_t>(anchor)];
            if (next_anchor < 0) continue;
            Relation reentry = as_relation(s.f);
            for (const auto& sym : symbols) {
                if (sym.kind == TapeSymbol::RightEnd) {
                    // bounce at the right endmarker through s.f, fold the
                    // acceptance into the state
                    std::set<int> reach = right_end_states(a, {next_anchor}, reentry);
                    bool ok = false;
                    for (int q : reach) {
                        if (a.final.count(q)) ok = true;
                    }
                    WordState w;
                    w.symbol = sym;
                    w.f.assign(static_cast<size_t>(n) + 1, -1);
                    w.f[static_cast<size_t>(n)] = next_anchor;
                    w.accepted = ok;
                    out.data_transitions.push_back({id, guard, word_state(std::move(w))});
                    continue;
                }
                Relation r = cross_word(a, sym, reentry);
                int tid = id;
                enumerate_crossings(r, next_anchor, [&](const Crossing& f) {
                    WordState w;
                    w.symbol = sym;
                    w.f = f;
                    out.data_transitions.push_back({tid, guard, word_state(std::move(w))});
                });
            }
        } else {
            WordState s = word_states[static_cast<size_t>(id)];
            if (s.symbol.kind == TapeSymbol::RightEnd) continue;
            int anchor = s.f[static_cast<size_t>(n)];
            int next_anchor = s.f[static_cast<size_t>(anchor)];
            if (next_anchor < 0) continue;
            Relation reentry = as_relation(s.f);
            for (const auto& ids : subsets) {
                Relation r = cross_data(a, ids, reentry);
                int tid = id;
                enumerate_crossings(r, next_anchor, [&](const Crossing& f) {
                    out.word_transitions.push_back(
                        {tid, s.symbol.label, data_state({ids, f})});
                });
            }
        }
    }
    for (size_t i = 0; i < word_states.size(); ++i) {
        if (word_states[i].accepted) out.final.insert(static_cast<int>(i));
    }
    out.refresh();
    return out;
}

} // namespace rra

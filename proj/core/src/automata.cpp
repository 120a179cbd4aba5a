#include "rra/automata.hpp"

#include <algorithm>
#include <queue>

#include <json.hpp>

#include "rra/nrag.hpp"
#include "rra/parse.hpp"

namespace rra {

using nlohmann::json;

int Nrra::add_word_state(const std::string& name) {
    word_states.push_back(name);
    return static_cast<int>(word_states.size()) - 1;
}

int Nrra::add_data_state(const std::string& name) {
    data_states.push_back(name);
    return static_cast<int>(data_states.size()) - 1;
}

void Nrra::refresh() {
    auto check_word = [&](int q) {
        if (q < 0 || q >= static_cast<int>(word_states.size())) {
            raise(ErrorKind::BadInput, "word state out of range");
        }
    };
    auto check_data = [&](int q) {
        if (q < 0 || q >= static_cast<int>(data_states.size())) {
            raise(ErrorKind::BadInput, "data state out of range");
        }
    };
    for (const auto& t : word_transitions) {
        check_word(t.from);
        check_data(t.to);
        if (!alphabet.count(t.label)) {
            raise(ErrorKind::AlphabetMismatch, to_string(t.label) + " not in the alphabet");
        }
    }
    for (const auto& t : data_transitions) {
        check_data(t.from);
        check_word(t.to);
    }
    for (int q : initial) check_data(q);
    for (int q : final) check_word(q);
    constraints_.clear();
    std::set<std::string> seen;
    for (const auto& t : data_transitions) {
        if (seen.insert(to_string(t.guard)).second) constraints_.push_back(t.guard);
    }
    closure_ = TermClosure::of_constraints(constraints_);
    for (const auto& set : closure_.label_sets()) {
        for (const auto& l : set) {
            if (!alphabet.count(l)) {
                raise(ErrorKind::AlphabetMismatch,
                      "constraint label " + to_string(l) + " not in the alphabet");
            }
        }
    }
}

bool is_deterministic(const Nrra& a) {
    if (a.initial.size() != 1) return false;
    std::set<std::pair<int, Label>> word_out;
    for (const auto& t : a.word_transitions) {
        if (!word_out.insert({t.from, t.label}).second) return false;
    }
    for (size_t i = 0; i < a.data_transitions.size(); ++i) {
        for (size_t j = i + 1; j < a.data_transitions.size(); ++j) {
            const auto& t1 = a.data_transitions[i];
            const auto& t2 = a.data_transitions[j];
            if (t1.from != t2.from || t1.to == t2.to) continue;
            if (satisfiable_over(RigidConstraint::conj(t1.guard, t2.guard), a.alphabet)) {
                return false;
            }
        }
    }
    return true;
}

bool is_complete(const Nrra& a) {
    for (int q = 0; q < static_cast<int>(a.word_states.size()); ++q) {
        for (const auto& l : a.alphabet) {
            bool found = false;
            for (const auto& t : a.word_transitions) {
                if (t.from == q && t.label == l) found = true;
            }
            if (!found) return false;
        }
    }
    for (int q = 0; q < static_cast<int>(a.data_states.size()); ++q) {
        std::vector<RigidConstraint> negs;
        for (const auto& t : a.data_transitions) {
            if (t.from == q) negs.push_back(negate(t.guard));
        }
        RigidConstraint residual = RigidConstraint::conj_all(negs);
        if (satisfiable_over(residual, a.alphabet)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

std::optional<AcceptingRun> membership_run(const Nrra& a, const DataPath& path) {
    for (const auto& l : path.labels) {
        if (!a.alphabet.count(l)) {
            raise(ErrorKind::AlphabetMismatch, to_string(l) + " not in the alphabet");
        }
    }
    const int n = static_cast<int>(path.label_count());
    // parent tracking: at each layer, for each state, the transition used.
    std::vector<std::map<int, std::pair<int, int>>> word_layer(static_cast<size_t>(n) + 1);
    std::vector<std::map<int, std::pair<int, int>>> data_layer(static_cast<size_t>(n) + 1);
    for (int q : a.initial) data_layer[0].emplace(q, std::make_pair(-1, -1));
    for (int i = 0; i <= n; ++i) {
        for (const auto& [q, parent] : data_layer[static_cast<size_t>(i)]) {
            for (size_t ti = 0; ti < a.data_transitions.size(); ++ti) {
                const auto& t = a.data_transitions[ti];
                if (t.from != q) continue;
                if (!eval_constraint(t.guard, path, 2 * i)) continue;
                word_layer[static_cast<size_t>(i)].emplace(
                    t.to, std::make_pair(q, static_cast<int>(ti)));
            }
        }
        if (i == n) break;
        const Label& l = path.labels[static_cast<size_t>(i)];
        for (const auto& [q, parent] : word_layer[static_cast<size_t>(i)]) {
            for (size_t ti = 0; ti < a.word_transitions.size(); ++ti) {
                const auto& t = a.word_transitions[ti];
                if (t.from != q || !(t.label == l)) continue;
                data_layer[static_cast<size_t>(i) + 1].emplace(
                    t.to, std::make_pair(q, static_cast<int>(ti)));
            }
        }
    }
    int hit = -1;
    for (int q : a.final) {
        if (word_layer[static_cast<size_t>(n)].count(q)) {
            hit = q;
            break;
        }
    }
    if (hit < 0) return std::nullopt;
    AcceptingRun run;
    run.data_transition_indices.assign(static_cast<size_t>(n) + 1, -1);
    run.word_transition_indices.assign(static_cast<size_t>(n), -1);
    int q = hit;
    for (int i = n; i >= 0; --i) {
        auto [prev, ti] = word_layer[static_cast<size_t>(i)].at(q);
        run.data_transition_indices[static_cast<size_t>(i)] = ti;
        q = prev;
        if (i > 0) {
            auto [prev2, wi] = data_layer[static_cast<size_t>(i)].at(q);
            run.word_transition_indices[static_cast<size_t>(i) - 1] = wi;
            q = prev2;
        }
    }
    return run;
}

bool membership(const Nrra& a, const DataPath& path) { return membership_run(a, path).has_value(); }

bool run_is_valid(const Nrra& a, const DataPath& path, const AcceptingRun& run) {
    const int n = static_cast<int>(path.label_count());
    if (run.data_transition_indices.size() != static_cast<size_t>(n) + 1) return false;
    if (run.word_transition_indices.size() != static_cast<size_t>(n)) return false;
    int state = -1;
    for (int i = 0; i <= n; ++i) {
        const auto& dt =
            a.data_transitions[static_cast<size_t>(run.data_transition_indices[static_cast<size_t>(i)])];
        if (i == 0) {
            if (!a.initial.count(dt.from)) return false;
        } else if (dt.from != state) {
            return false;
        }
        if (!eval_constraint(dt.guard, path, 2 * i)) return false;
        state = dt.to;
        if (i < n) {
            const auto& wt =
                a.word_transitions[static_cast<size_t>(run.word_transition_indices[static_cast<size_t>(i)])];
            if (wt.from != state) return false;
            if (!(wt.label == path.labels[static_cast<size_t>(i)])) return false;
            state = wt.to;
        }
    }
    return a.final.count(state) > 0;
}

// ---------------------------------------------------------------------------
// Determinization (subset construction with guard minterms)
// ---------------------------------------------------------------------------

namespace {

std::string set_name(const std::vector<std::string>& names, const std::set<int>& set) {
    std::string out = "{";
    bool first = true;
    for (int q : set) {
        if (!first) out += ",";
        out += names[static_cast<size_t>(q)];
        first = false;
    }
    return out + "}";
}

} // namespace

Drra determinize(const Nrra& a) {
    Nrra d;
    d.alphabet = a.alphabet;
    std::map<std::set<int>, int> word_ids, data_ids;
    std::queue<std::pair<std::set<int>, bool>> work; // (set, is_data)
    auto data_id = [&](const std::set<int>& s) {
        auto it = data_ids.find(s);
        if (it != data_ids.end()) return it->second;
        int id = d.add_data_state(set_name(a.data_states, s));
        data_ids.emplace(s, id);
        work.push({s, true});
        return id;
    };
    auto word_id = [&](const std::set<int>& s) {
        auto it = word_ids.find(s);
        if (it != word_ids.end()) return it->second;
        int id = d.add_word_state(set_name(a.word_states, s));
        word_ids.emplace(s, id);
        work.push({s, false});
        return id;
    };
    d.initial.insert(data_id(a.initial));
    while (!work.empty()) {
        auto [s, is_data] = work.front();
        work.pop();
        if (is_data) {
            // guard pool out of s
            std::vector<RigidConstraint> pool;
            std::set<std::string> seen;
            for (const auto& t : a.data_transitions) {
                if (!s.count(t.from)) continue;
                if (seen.insert(to_string(t.guard)).second) pool.push_back(t.guard);
            }
            const int from = data_ids.at(s);
            const size_t m = pool.size();
            for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
                std::vector<RigidConstraint> parts;
                for (size_t i = 0; i < m; ++i) {
                    if (mask & (size_t{1} << i)) parts.push_back(pool[i]);
                    else parts.push_back(negate(pool[i]));
                }
                RigidConstraint guard = RigidConstraint::conj_all(parts);
                if (!satisfiable_over(guard, a.alphabet)) continue;
                std::set<int> target;
                for (const auto& t : a.data_transitions) {
                    if (!s.count(t.from)) continue;
                    std::string text = to_string(t.guard);
                    for (size_t i = 0; i < m; ++i) {
                        if ((mask & (size_t{1} << i)) && to_string(pool[i]) == text) {
                            target.insert(t.to);
                        }
                    }
                }
                d.data_transitions.push_back({from, guard, word_id(target)});
            }
        } else {
            const int from = word_ids.at(s);
            for (const auto& l : d.alphabet) {
                std::set<int> target;
                for (const auto& t : a.word_transitions) {
                    if (s.count(t.from) && t.label == l) target.insert(t.to);
                }
                d.word_transitions.push_back({from, l, data_id(target)});
            }
        }
    }
    for (const auto& [s, id] : word_ids) {
        for (int q : a.final) {
            if (s.count(q)) {
                d.final.insert(id);
                break;
            }
        }
    }
    d.refresh();
    return Drra{std::move(d)};
}

Drra complete(const Drra& input) {
    Nrra d = input.automaton;
    bool need_word_sink = false, need_data_sink = false;
    std::vector<std::pair<int, Label>> missing;
    for (int q = 0; q < static_cast<int>(d.word_states.size()); ++q) {
        for (const auto& l : d.alphabet) {
            bool found = false;
            for (const auto& t : d.word_transitions) {
                if (t.from == q && t.label == l) found = true;
            }
            if (!found) {
                missing.push_back({q, l});
                need_data_sink = true;
            }
        }
    }
    std::vector<std::pair<int, RigidConstraint>> residuals;
    for (int q = 0; q < static_cast<int>(d.data_states.size()); ++q) {
        std::vector<RigidConstraint> negs;
        for (const auto& t : d.data_transitions) {
            if (t.from == q) negs.push_back(negate(t.guard));
        }
        RigidConstraint residual = RigidConstraint::conj_all(negs);
        if (satisfiable_over(residual, d.alphabet)) {
            residuals.push_back({q, residual});
            need_word_sink = true;
        }
    }
    if (!need_word_sink && !need_data_sink) return input;
    int sink_w = d.add_word_state("@sink_w");
    int sink_d = d.add_data_state("@sink_d");
    for (const auto& l : d.alphabet) d.word_transitions.push_back({sink_w, l, sink_d});
    d.data_transitions.push_back({sink_d, RigidConstraint::truth(), sink_w});
    for (auto& [q, l] : missing) d.word_transitions.push_back({q, l, sink_d});
    for (auto& [q, c] : residuals) d.data_transitions.push_back({q, c, sink_w});
    d.refresh();
    return Drra{std::move(d)};
}

Drra complement(const Drra& input) {
    if (!is_complete(input.automaton)) {
        raise(ErrorKind::NotComplete, "complement needs a completed DRRA");
    }
    Nrra d = input.automaton;
    std::set<int> flipped;
    for (int q = 0; q < static_cast<int>(d.word_states.size()); ++q) {
        if (!d.final.count(q)) flipped.insert(q);
    }
    d.final = std::move(flipped);
    d.refresh();
    return Drra{std::move(d)};
}

Nrra combine(const Nrra& a, const Nrra& b, CombineMode mode) {
    if (a.alphabet != b.alphabet) {
        raise(ErrorKind::AlphabetMismatch, "combine needs matching alphabets");
    }
    Nrra out;
    out.alphabet = a.alphabet;
    if (mode == CombineMode::Union) {
        const int woff = static_cast<int>(a.word_states.size());
        const int doff = static_cast<int>(a.data_states.size());
        for (const auto& n : a.word_states) out.add_word_state("l:" + n);
        for (const auto& n : b.word_states) out.add_word_state("r:" + n);
        for (const auto& n : a.data_states) out.add_data_state("l:" + n);
        for (const auto& n : b.data_states) out.add_data_state("r:" + n);
        out.word_transitions = a.word_transitions;
        for (const auto& t : b.word_transitions) {
            out.word_transitions.push_back({t.from + woff, t.label, t.to + doff});
        }
        out.data_transitions = a.data_transitions;
        for (const auto& t : b.data_transitions) {
            out.data_transitions.push_back({t.from + doff, t.guard, t.to + woff});
        }
        for (int q : a.initial) out.initial.insert(q);
        for (int q : b.initial) out.initial.insert(q + doff);
        for (int q : a.final) out.final.insert(q);
        for (int q : b.final) out.final.insert(q + woff);
        out.refresh();
        return out;
    }
    // product
    std::map<std::pair<int, int>, int> wids, dids;
    auto wid = [&](int x, int y) {
        auto it = wids.find({x, y});
        if (it != wids.end()) return it->second;
        int id = out.add_word_state("(" + a.word_states[static_cast<size_t>(x)] + "," +
                                    b.word_states[static_cast<size_t>(y)] + ")");
        wids.emplace(std::make_pair(x, y), id);
        return id;
    };
    auto did = [&](int x, int y) {
        auto it = dids.find({x, y});
        if (it != dids.end()) return it->second;
        int id = out.add_data_state("(" + a.data_states[static_cast<size_t>(x)] + "," +
                                    b.data_states[static_cast<size_t>(y)] + ")");
        dids.emplace(std::make_pair(x, y), id);
        return id;
    };
    for (int x = 0; x < static_cast<int>(a.word_states.size()); ++x) {
        for (int y = 0; y < static_cast<int>(b.word_states.size()); ++y) wid(x, y);
    }
    for (int x = 0; x < static_cast<int>(a.data_states.size()); ++x) {
        for (int y = 0; y < static_cast<int>(b.data_states.size()); ++y) did(x, y);
    }
    for (const auto& ta : a.word_transitions) {
        for (const auto& tb : b.word_transitions) {
            if (!(ta.label == tb.label)) continue;
            out.word_transitions.push_back(
                {wid(ta.from, tb.from), ta.label, did(ta.to, tb.to)});
        }
    }
    for (const auto& ta : a.data_transitions) {
        for (const auto& tb : b.data_transitions) {
            out.data_transitions.push_back({did(ta.from, tb.from),
                                            RigidConstraint::conj(ta.guard, tb.guard),
                                            wid(ta.to, tb.to)});
        }
    }
    for (int x : a.initial) {
        for (int y : b.initial) out.initial.insert(did(x, y));
    }
    for (int x : a.final) {
        for (int y : b.final) out.final.insert(wid(x, y));
    }
    out.refresh();
    return out;
}

bool is_position_invariant(const Nrra& a, const LetterProjection& prj) {
    if (prj.source() != a.alphabet) return false;
    for (const auto& set : a.closure().label_sets()) {
        if (!prj.is_saturated(set)) return false;
    }
    return true;
}

Nrra letter_project(const Nrra& a, const LetterProjection& prj) {
    if (prj.source() != a.alphabet) {
        raise(ErrorKind::AlphabetMismatch, "projection source must match the alphabet");
    }
    Nrra out = a;
    out.alphabet = prj.target();
    for (auto& t : out.word_transitions) t.label = prj(t.label);
    for (auto& t : out.data_transitions) t.guard = project_constraint(prj, t.guard);
    out.refresh();
    return out;
}

EmptinessResult is_empty(const Nrra& a) {
    Nrag b = nrra_to_nrag(a);
    auto res = nrag_is_empty(b);
    EmptinessResult out;
    out.empty = res.empty;
    if (!res.empty) out.witness = res.witness;
    return out;
}

InclusionResult includes(const Nrra& a, const Nrra& b) {
    if (a.alphabet != b.alphabet) {
        raise(ErrorKind::AlphabetMismatch, "includes needs matching alphabets");
    }
    Nrra gap = intersect(a, complement(complete(determinize(b))).automaton);
    auto res = is_empty(gap);
    InclusionResult out;
    out.included = res.empty;
    if (!res.empty) out.witness = res.witness;
    return out;
}

// ---------------------------------------------------------------------------
// JSON dump
// ---------------------------------------------------------------------------

std::string automaton_to_json_text(const Nrra& a) {
    json j;
    json alpha = json::array();
    for (const auto& l : a.alphabet) alpha.push_back(to_string(l));
    j["alphabet"] = alpha;
    j["word_states"] = a.word_states;
    j["data_states"] = a.data_states;
    json init = json::array(), fin = json::array();
    for (int q : a.initial) init.push_back(a.data_states[static_cast<size_t>(q)]);
    for (int q : a.final) fin.push_back(a.word_states[static_cast<size_t>(q)]);
    j["initial"] = init;
    j["final"] = fin;
    json wt = json::array();
    for (const auto& t : a.word_transitions) {
        wt.push_back({{"from", a.word_states[static_cast<size_t>(t.from)]},
                      {"label", to_string(t.label)},
                      {"to", a.data_states[static_cast<size_t>(t.to)]}});
    }
    j["word_transitions"] = wt;
    json dt = json::array();
    for (const auto& t : a.data_transitions) {
        dt.push_back({{"from", a.data_states[static_cast<size_t>(t.from)]},
                      {"constraint", to_string(t.guard)},
                      {"to", a.word_states[static_cast<size_t>(t.to)]}});
    }
    j["data_transitions"] = dt;
    return j.dump(2);
}

Nrra automaton_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(ErrorKind::BadInput, std::string("automaton JSON: ") + e.what());
    }
    Nrra a;
    for (const auto& s : j.at("alphabet")) a.alphabet.insert(label_from_string(s.get<std::string>()));
    std::map<std::string, int> wmap, dmap;
    for (const auto& s : j.at("word_states")) {
        wmap[s.get<std::string>()] = a.add_word_state(s.get<std::string>());
    }
    for (const auto& s : j.at("data_states")) {
        dmap[s.get<std::string>()] = a.add_data_state(s.get<std::string>());
    }
    for (const auto& t : j.at("word_transitions")) {
        a.word_transitions.push_back({wmap.at(t.at("from").get<std::string>()),
                                      label_from_string(t.at("label").get<std::string>()),
                                      dmap.at(t.at("to").get<std::string>())});
    }
    for (const auto& t : j.at("data_transitions")) {
        a.data_transitions.push_back({dmap.at(t.at("from").get<std::string>()),
                                      parse_constraint(t.at("constraint").get<std::string>()),
                                      wmap.at(t.at("to").get<std::string>())});
    }
    for (const auto& s : j.at("initial")) a.initial.insert(dmap.at(s.get<std::string>()));
    for (const auto& s : j.at("final")) a.final.insert(wmap.at(s.get<std::string>()));
    a.refresh();
    return a;
}

} // namespace rra

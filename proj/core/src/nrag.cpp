#include "rra/nrag.hpp"

#include <algorithm>
#include <queue>

namespace rra {

RegConstraint RegConstraint::eq(int i, int j) {
    RegConstraint c;
    c.kind_ = ConstraintKind::Eq;
    c.lhs_ = i;
    c.rhs_ = j;
    return c;
}

RegConstraint RegConstraint::neq(int i, int j) {
    RegConstraint c;
    c.kind_ = ConstraintKind::Neq;
    c.lhs_ = i;
    c.rhs_ = j;
    return c;
}

RegConstraint RegConstraint::conj(RegConstraint a, RegConstraint b) {
    if (a.kind() == ConstraintKind::True) return b;
    if (b.kind() == ConstraintKind::True) return a;
    RegConstraint c;
    c.kind_ = ConstraintKind::And;
    c.a_ = std::make_shared<RegConstraint>(std::move(a));
    c.b_ = std::make_shared<RegConstraint>(std::move(b));
    return c;
}

RegConstraint RegConstraint::disj(RegConstraint a, RegConstraint b) {
    RegConstraint c;
    c.kind_ = ConstraintKind::Or;
    c.a_ = std::make_shared<RegConstraint>(std::move(a));
    c.b_ = std::make_shared<RegConstraint>(std::move(b));
    return c;
}

RegConstraint RegConstraint::conj_all(const std::vector<RegConstraint>& cs) {
    RegConstraint out;
    for (const auto& c : cs) out = conj(out, c);
    return out;
}

int RegConstraint::max_register() const {
    switch (kind_) {
        case ConstraintKind::True: return 0;
        case ConstraintKind::Eq:
        case ConstraintKind::Neq: return std::max(lhs_, rhs_);
        case ConstraintKind::And:
        case ConstraintKind::Or: return std::max(a_->max_register(), b_->max_register());
    }
    return 0;
}

void RegConstraint::collect_guess_pins(int k, std::map<int, std::vector<int>>& pins) const {
    switch (kind_) {
        case ConstraintKind::Eq: {
            if (lhs_ > k && rhs_ <= k) pins[lhs_ - k].push_back(rhs_);
            if (rhs_ > k && lhs_ <= k) pins[rhs_ - k].push_back(lhs_);
            return;
        }
        case ConstraintKind::And:
            a_->collect_guess_pins(k, pins);
            b_->collect_guess_pins(k, pins);
            return;
        default: return;
    }
}

std::string to_string(const RegConstraint& c) {
    switch (c.kind()) {
        case ConstraintKind::True: return "true";
        case ConstraintKind::Eq:
            return "r" + std::to_string(c.lhs()) + " == r" + std::to_string(c.rhs());
        case ConstraintKind::Neq:
            return "r" + std::to_string(c.lhs()) + " != r" + std::to_string(c.rhs());
        case ConstraintKind::And: return "(" + to_string(c.left()) + " && " + to_string(c.right()) + ")";
        case ConstraintKind::Or: return "(" + to_string(c.left()) + " || " + to_string(c.right()) + ")";
    }
    return "true";
}

bool eval_reg_constraint(const RegConstraint& c,
                         const std::function<std::optional<DataValue>(int)>& value_of) {
    switch (c.kind()) {
        case ConstraintKind::True: return true;
        case ConstraintKind::Eq: {
            auto a = value_of(c.lhs());
            auto b = value_of(c.rhs());
            return a && b && *a == *b;
        }
        case ConstraintKind::Neq: {
            auto a = value_of(c.lhs());
            auto b = value_of(c.rhs());
            return !(a && b && *a == *b);
        }
        case ConstraintKind::And:
            return eval_reg_constraint(c.left(), value_of) && eval_reg_constraint(c.right(), value_of);
        case ConstraintKind::Or:
            return eval_reg_constraint(c.left(), value_of) || eval_reg_constraint(c.right(), value_of);
    }
    return true;
}

int Nra::add_word_state(const std::string& name) {
    word_states.push_back(name);
    return static_cast<int>(word_states.size()) - 1;
}

int Nra::add_data_state(const std::string& name) {
    data_states.push_back(name);
    return static_cast<int>(data_states.size()) - 1;
}

int Nrag::add_word_state(const std::string& name) {
    word_states.push_back(name);
    return static_cast<int>(word_states.size()) - 1;
}

int Nrag::add_data_state(const std::string& name) {
    data_states.push_back(name);
    return static_cast<int>(data_states.size()) - 1;
}

void Nrag::validate() const {
    for (const auto& t : data_transitions) {
        for (int x : t.store) {
            if (x < 1 || x > registers) raise(ErrorKind::RegisterOutOfRange, "store r" + std::to_string(x));
        }
        for (int y : t.guess) {
            if (y < 1 || y > registers) raise(ErrorKind::RegisterOutOfRange, "guess r" + std::to_string(y));
            for (int x : t.store) {
                if (x == y) raise(ErrorKind::BadInput, "store and guess sets must be disjoint");
            }
        }
        if (t.guard.max_register() > registers) {
            raise(ErrorKind::RegisterOutOfRange, to_string(t.guard));
        }
        std::map<int, std::vector<int>> pins;
        (void)pins;
        if (t.guess_guard.max_register() > 2 * registers) {
            raise(ErrorKind::RegisterOutOfRange, to_string(t.guess_guard));
        }
    }
}

Nrag nrag_from_nra(const Nra& a) {
    Nrag b;
    b.alphabet = a.alphabet;
    b.registers = a.registers;
    b.word_states = a.word_states;
    b.data_states = a.data_states;
    b.word_transitions = a.word_transitions;
    for (const auto& t : a.data_transitions) {
        b.data_transitions.push_back({t.from, t.guard, t.to, t.store, {}, RegConstraint::truth()});
    }
    b.initial = a.initial;
    b.final = a.final;
    return b;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace {

std::string encode_registers(const RegisterState& regs) {
    std::string out;
    for (const auto& r : regs) {
        out += r ? ("v" + *r) : "_";
        out += ";";
    }
    return out;
}

std::vector<DataValue> guess_domain(const DataPath& path, int fresh_tokens) {
    std::set<DataValue> seen(path.values.begin(), path.values.end());
    std::vector<DataValue> domain(seen.begin(), seen.end());
    std::string stem = "__fresh";
    while (seen.count(stem)) stem += "_";
    for (int i = 0; i < fresh_tokens; ++i) domain.push_back(stem + std::to_string(i));
    return domain;
}

} // namespace

bool nra_membership(const Nra& a, const DataPath& path) {
    return nrag_membership(nrag_from_nra(a), path, 0);
}

bool nrag_membership(const Nrag& b, const DataPath& path, int fresh_tokens) {
    for (const auto& l : path.labels) {
        if (!b.alphabet.count(l)) {
            raise(ErrorKind::AlphabetMismatch, to_string(l) + " not in the alphabet");
        }
    }
    const int n = static_cast<int>(path.label_count());
    const int k = b.registers;
    auto domain = guess_domain(path, fresh_tokens);

    // layer-by-layer sets of (state, registers)
    std::set<std::string> visited;
    std::vector<std::pair<int, RegisterState>> data_frontier;
    RegisterState empty_regs(static_cast<size_t>(k));
    for (int q : b.initial) data_frontier.push_back({q, empty_regs});

    for (int i = 0; i <= n; ++i) {
        const DataValue& d = path.values[static_cast<size_t>(i)];
        std::vector<std::pair<int, RegisterState>> word_frontier;
        std::set<std::string> word_seen;
        for (auto& [q, regs] : data_frontier) {
            for (const auto& t : b.data_transitions) {
                if (t.from != q) continue;
                auto base_value = [&](int r) -> std::optional<DataValue> {
                    if (r == 0) return d;
                    return regs[static_cast<size_t>(r - 1)];
                };
                if (!eval_reg_constraint(t.guard, base_value)) continue;
                RegisterState stored = regs;
                for (int x : t.store) stored[static_cast<size_t>(x - 1)] = d;
                // enumerate guesses with pin restriction
                std::map<int, std::vector<int>> pins;
                t.guess_guard.collect_guess_pins(k, pins);
                std::map<int, DataValue> chosen;
                std::function<void(size_t)> pick = [&](size_t gi) {
                    if (gi == t.guess.size()) {
                        auto full_value = [&](int r) -> std::optional<DataValue> {
                            if (r == 0) return d;
                            if (r <= k) return stored[static_cast<size_t>(r - 1)];
                            auto it = chosen.find(r - k);
                            if (it != chosen.end()) return it->second;
                            return std::nullopt;
                        };
                        if (!eval_reg_constraint(t.guess_guard, full_value)) return;
                        RegisterState next = stored;
                        for (auto& [y, v] : chosen) next[static_cast<size_t>(y - 1)] = v;
                        std::string key = std::to_string(t.to) + "/" + encode_registers(next);
                        if (word_seen.insert(key).second) word_frontier.push_back({t.to, next});
                        return;
                    }
                    int y = t.guess[gi];
                    auto pin_it = pins.find(y);
                    if (pin_it != pins.end()) {
                        // pinned to earlier registers / r_0 / earlier guesses
                        std::set<DataValue> opts;
                        for (int src : pin_it->second) {
                            std::optional<DataValue> v;
                            if (src == 0) v = d;
                            else if (src <= k) v = stored[static_cast<size_t>(src - 1)];
                            else {
                                auto it = chosen.find(src - k);
                                if (it != chosen.end()) v = it->second;
                            }
                            if (v) opts.insert(*v);
                        }
                        if (!opts.empty()) {
                            for (const auto& v : opts) {
                                chosen[y] = v;
                                pick(gi + 1);
                            }
                            chosen.erase(y);
                            return;
                        }
                    }
                    for (const auto& v : domain) {
                        chosen[y] = v;
                        pick(gi + 1);
                    }
                    chosen.erase(y);
                };
                pick(0);
            }
        }
        if (i == n) {
            for (auto& [q, regs] : word_frontier) {
                if (b.final.count(q)) return true;
            }
            return false;
        }
        const Label& l = path.labels[static_cast<size_t>(i)];
        data_frontier.clear();
        std::set<std::string> data_seen;
        for (auto& [q, regs] : word_frontier) {
            for (const auto& t : b.word_transitions) {
                if (t.from != q || !(t.label == l)) continue;
                std::string key = std::to_string(t.to) + "/" + encode_registers(regs);
                if (data_seen.insert(key).second) data_frontier.push_back({t.to, regs});
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// NRRA -> NRAG (the profile simulation)
// ---------------------------------------------------------------------------

namespace {

int block_register(const Profile& p, int block, int closure_size) {
    return (block - p.zero) + closure_size;
}

} // namespace

Nrag nrra_to_nrag(const Nrra& a) {
    const TermClosure& closure = a.closure();
    const int tc = static_cast<int>(closure.size());
    Nrag b;
    b.alphabet = a.alphabet;
    b.registers = 2 * tc;

    auto initial_profiles = enumerate_initial_profiles(closure, a.alphabet);
    std::vector<Profile> profiles = initial_profiles;
    std::map<std::string, int> profile_ids;
    for (size_t i = 0; i < profiles.size(); ++i) profile_ids[profiles[i].key()] = static_cast<int>(i);
    auto intern_profile = [&](const Profile& p) {
        auto it = profile_ids.find(p.key());
        if (it != profile_ids.end()) return it->second;
        profiles.push_back(p);
        int id = static_cast<int>(profiles.size()) - 1;
        profile_ids[p.key()] = id;
        return id;
    };

    // state keys
    std::map<std::string, int> data_ids, word_ids;
    struct DataKey {
        int q;
        int prof;
        bool started;
    };
    std::vector<DataKey> data_keys;
    struct WordKey {
        int q;
        int prof;
        int next_prof; // -1 = path ends here
    };
    std::vector<WordKey> word_keys;
    std::queue<int> data_work;

    auto data_state = [&](int q, int prof, bool started) {
        std::string key = std::to_string(q) + "/" + std::to_string(prof) + "/" + (started ? "s" : "i");
        auto it = data_ids.find(key);
        if (it != data_ids.end()) return it->second;
        int id = b.add_data_state("d(" + a.data_states[static_cast<size_t>(q)] + ",p" +
                                  std::to_string(prof) + (started ? "" : ",init") + ")");
        data_ids[key] = id;
        data_keys.push_back({q, prof, started});
        data_work.push(id);
        return id;
    };
    auto word_state = [&](int q, int prof, int next_prof) {
        std::string key =
            std::to_string(q) + "/" + std::to_string(prof) + "/" + std::to_string(next_prof);
        auto it = word_ids.find(key);
        if (it != word_ids.end()) return it->second;
        int id = b.add_word_state("w(" + a.word_states[static_cast<size_t>(q)] + ",p" +
                                  std::to_string(prof) + "->" + std::to_string(next_prof) + ")");
        word_ids[key] = id;
        word_keys.push_back({q, prof, next_prof});
        return id;
    };

    std::queue<int> word_work;
    auto word_state_tracked = [&](int q, int prof, int next_prof) {
        size_t before = word_keys.size();
        int id = word_state(q, prof, next_prof);
        if (word_keys.size() != before) word_work.push(id);
        return id;
    };

    for (int q : a.initial) {
        for (size_t i = 0; i < initial_profiles.size(); ++i) {
            data_state(q, static_cast<int>(profile_ids.at(initial_profiles[i].key())), false);
        }
    }

    std::map<std::string, std::vector<std::pair<Profile, std::vector<int>>>> successor_cache;

    auto process_data_state = [&](int id) {
        DataKey key = data_keys[static_cast<size_t>(id)];
        const Profile& prof = profiles[static_cast<size_t>(key.prof)];

        // verification guard: the current value against the profile's sim
        // pattern; initial states have nothing stored yet.
        RegConstraint guard;
        if (key.started) {
            std::vector<RegConstraint> parts;
            for (int j = 0; j < prof.block_count(); ++j) {
                int reg = block_register(prof, j, tc);
                if (prof.sim_blocks(j, prof.zero)) parts.push_back(RegConstraint::eq(0, reg));
                else parts.push_back(RegConstraint::neq(0, reg));
            }
            guard = RegConstraint::conj_all(parts);
        }

        for (const auto& t : a.data_transitions) {
            if (t.from != key.q) continue;
            if (!satisfies(prof, t.guard, closure)) continue;

            if (is_final(prof)) {
                int w = word_state_tracked(t.to, key.prof, -1);
                b.data_transitions.push_back({id, guard, w, {}, {}, RegConstraint::truth()});
            }
            const auto& zb = prof.blocks[static_cast<size_t>(prof.zero)];
            if (!zb.after.has_value()) continue;
            Label letter = *zb.after;

            auto cache_it = successor_cache.find(prof.key());
            if (cache_it == successor_cache.end()) {
                std::vector<std::pair<Profile, std::vector<int>>> succs;
                for (auto& p2 : enumerate_successor_profiles(prof, letter, closure, a.alphabet)) {
                    auto g = successor_embedding(prof, letter, p2, closure);
                    succs.push_back({p2, *g});
                }
                cache_it = successor_cache.emplace(prof.key(), std::move(succs)).first;
            }
            for (const auto& [p2, g] : cache_it->second) {
                int p2id = intern_profile(p2);
                int w = word_state_tracked(t.to, key.prof, p2id);
                // rotation: guess the new layout.
                std::vector<int> guesses;
                for (int r = 0; r < p2.block_count(); ++r) {
                    guesses.push_back(block_register(p2, r, tc));
                }
                std::vector<RegConstraint> parts;
                const int k = b.registers;
                for (int j = 0; j < prof.block_count(); ++j) {
                    if (g[static_cast<size_t>(j)] < 0) continue;
                    int nr = block_register(p2, g[static_cast<size_t>(j)], tc);
                    if (key.started) {
                        parts.push_back(RegConstraint::eq(k + nr, block_register(prof, j, tc)));
                    } else {
                        // untracked old layout: tie survivors to the current
                        // value per the old sim pattern instead.
                        if (prof.sim_blocks(j, prof.zero)) parts.push_back(RegConstraint::eq(k + nr, 0));
                        else parts.push_back(RegConstraint::neq(k + nr, 0));
                    }
                }
                for (int r1 = 0; r1 < p2.block_count(); ++r1) {
                    for (int r2 = r1 + 1; r2 < p2.block_count(); ++r2) {
                        int a1 = k + block_register(p2, r1, tc);
                        int a2 = k + block_register(p2, r2, tc);
                        if (p2.sim_blocks(r1, r2)) parts.push_back(RegConstraint::eq(a1, a2));
                        else parts.push_back(RegConstraint::neq(a1, a2));
                    }
                }
                b.data_transitions.push_back(
                    {id, guard, w, {}, guesses, RegConstraint::conj_all(parts)});
            }
        }
    };

    auto process_word_state = [&](int id) {
        const WordKey& wk = word_keys[static_cast<size_t>(id)];
        if (wk.next_prof < 0) return;
        const Profile& prof = profiles[static_cast<size_t>(wk.prof)];
        Label letter = *prof.blocks[static_cast<size_t>(prof.zero)].after;
        for (const auto& t : a.word_transitions) {
            if (t.from != wk.q || !(t.label == letter)) continue;
            int dst = data_state(t.to, wk.next_prof, true);
            b.word_transitions.push_back({id, letter, dst});
        }
    };

    while (!data_work.empty() || !word_work.empty()) {
        while (!data_work.empty()) {
            int id = data_work.front();
            data_work.pop();
            process_data_state(id);
        }
        while (!word_work.empty()) {
            int id = word_work.front();
            word_work.pop();
            process_word_state(id);
        }
    }

    for (size_t di = 0; di < data_keys.size(); ++di) {
        if (!data_keys[di].started) b.initial.insert(static_cast<int>(di));
    }
    for (size_t wi = 0; wi < word_keys.size(); ++wi) {
        const WordKey& wk = word_keys[wi];
        if (wk.next_prof == -1 && a.final.count(wk.q) &&
            is_final(profiles[static_cast<size_t>(wk.prof)])) {
            b.final.insert(static_cast<int>(wi));
        }
    }
    b.validate();
    return b;
}

// ---------------------------------------------------------------------------
// Emptiness via register equality types
// ---------------------------------------------------------------------------

namespace {

// classes: -1 unassigned, otherwise canonical (smallest register index of
// the class).
std::vector<int> canonical_classes(std::vector<int> cls) {
    std::map<int, int> first;
    for (size_t i = 0; i < cls.size(); ++i) {
        if (cls[i] < 0) continue;
        auto it = first.find(cls[i]);
        if (it == first.end()) first[cls[i]] = static_cast<int>(i);
    }
    for (auto& c : cls) {
        if (c >= 0) c = first.at(c);
    }
    return cls;
}

std::string encode_classes(int state, const std::vector<int>& cls) {
    std::string out = std::to_string(state) + ":";
    for (int c : cls) out += std::to_string(c) + ",";
    return out;
}

} // namespace

NragEmptiness nrag_is_empty(const Nrag& b) {
    b.validate();
    const int k = b.registers;
    struct Node {
        int state; // data state if phase==0 else word state
        int phase; // 0 = about to read a value, 1 = about to read a label
        std::vector<int> classes;
    };
    struct Step {
        int parent = -1;
        bool is_data = false;
        int transition = -1;  // index into the transition vectors
        int value_class = -1; // data steps: class of the value read in the
                              // parent's class space; k = fresh
        Label label;          // word steps
    };
    std::vector<Node> nodes;
    std::vector<Step> steps; // parallel to nodes; steps[0] unused for roots
    std::map<std::string, int> seen;
    std::queue<int> work;

    auto push = [&](Node node, Step step) {
        node.classes = canonical_classes(std::move(node.classes));
        std::string key = encode_classes(node.state, node.classes) + (node.phase ? "w" : "d");
        if (seen.count(key)) return;
        seen[key] = static_cast<int>(nodes.size());
        nodes.push_back(node);
        steps.push_back(std::move(step));
        work.push(static_cast<int>(nodes.size()) - 1);
    };

    for (int q : b.initial) {
        push({q, 0, std::vector<int>(static_cast<size_t>(k), -1)}, Step{});
    }

    int accept_node = -1;
    while (!work.empty() && accept_node < 0) {
        int ni = work.front();
        work.pop();
        Node node = nodes[static_cast<size_t>(ni)];
        if (node.phase == 0) {
            // data step
            for (size_t ti = 0; ti < b.data_transitions.size(); ++ti) {
                const auto& t = b.data_transitions[ti];
                if (t.from != node.state) continue;
                // choose the equality class of the current value d
                std::set<int> existing;
                for (int c : node.classes) {
                    if (c >= 0) existing.insert(c);
                }
                std::vector<int> d_options(existing.begin(), existing.end());
                d_options.push_back(k); // fresh class id (outside register range)
                for (int dcls : d_options) {
                    auto class_of = [&](int r) -> int {
                        if (r == 0) return dcls;
                        if (r <= k) return node.classes[static_cast<size_t>(r - 1)];
                        return -2; // handled only in guess evaluation
                    };
                    auto base_value = [&](int r) -> std::optional<DataValue> {
                        int c = class_of(r);
                        if (c < 0) return std::nullopt;
                        return DataValue("c" + std::to_string(c));
                    };
                    if (!eval_reg_constraint(t.guard, base_value)) continue;
                    std::vector<int> stored = node.classes;
                    for (int x : t.store) stored[static_cast<size_t>(x - 1)] = dcls;
                    // enumerate guesses as classes
                    std::map<int, int> chosen; // guess register -> class
                    std::map<int, std::vector<int>> pins;
                    t.guess_guard.collect_guess_pins(k, pins);
                    int next_fresh = k + 1;
                    std::function<void(size_t, int)> pick = [&](size_t gi, int fresh_count) {
                        if (accept_node >= 0) return;
                        if (gi == t.guess.size()) {
                            auto full_value = [&](int r) -> std::optional<DataValue> {
                                int c;
                                if (r == 0) c = dcls;
                                else if (r <= k) c = stored[static_cast<size_t>(r - 1)];
                                else {
                                    auto it = chosen.find(r - k);
                                    if (it == chosen.end()) return std::nullopt;
                                    c = it->second;
                                }
                                if (c < 0) return std::nullopt;
                                return DataValue("c" + std::to_string(c));
                            };
                            if (!eval_reg_constraint(t.guess_guard, full_value)) return;
                            std::vector<int> next = stored;
                            for (auto& [y, c] : chosen) next[static_cast<size_t>(y - 1)] = c;
                            Node out{t.to, 1, next};
                            Step step;
                            step.parent = ni;
                            step.is_data = true;
                            step.transition = static_cast<int>(ti);
                            step.value_class = dcls;
                            push(std::move(out), std::move(step));
                            return;
                        }
                        int y = t.guess[gi];
                        std::vector<int> options;
                        auto pin_it = pins.find(y);
                        if (pin_it != pins.end()) {
                            std::set<int> opts;
                            for (int src : pin_it->second) {
                                int c;
                                if (src == 0) c = dcls;
                                else if (src <= k) c = stored[static_cast<size_t>(src - 1)];
                                else {
                                    auto it = chosen.find(src - k);
                                    c = (it == chosen.end()) ? -1 : it->second;
                                }
                                if (c >= 0) opts.insert(c);
                            }
                            options.assign(opts.begin(), opts.end());
                        }
                        if (options.empty()) {
                            std::set<int> opts(existing.begin(), existing.end());
                            opts.insert(dcls);
                            for (auto& [y2, c2] : chosen) opts.insert(c2);
                            options.assign(opts.begin(), opts.end());
                            options.push_back(next_fresh + fresh_count);
                        }
                        for (int c : options) {
                            chosen[y] = c;
                            pick(gi + 1, fresh_count + (c > k ? 1 : 0));
                            if (accept_node >= 0) return;
                        }
                        chosen.erase(y);
                    };
                    pick(0, 0);
                    if (accept_node >= 0) break;
                }
                if (accept_node >= 0) break;
            }
            // acceptance is checked on word nodes below
        } else {
            if (b.final.count(node.state)) {
                accept_node = ni;
                break;
            }
            for (size_t ti = 0; ti < b.word_transitions.size(); ++ti) {
                const auto& t = b.word_transitions[ti];
                if (t.from != node.state) continue;
                Node out{t.to, 0, node.classes};
                Step step;
                step.parent = ni;
                step.transition = static_cast<int>(ti);
                step.label = t.label;
                push(std::move(out), std::move(step));
            }
        }
    }

    NragEmptiness result;
    if (accept_node < 0) return result;
    result.empty = false;

    // Reconstruct the witness by replaying the chain with concrete register
    // contents: class ids are canonical per node, so equality is recovered
    // from each step's pre-state classes and the transition's store/guess
    // sets.
    std::vector<int> chain;
    for (int at = accept_node; at >= 0; at = steps[static_cast<size_t>(at)].parent) chain.push_back(at);
    std::reverse(chain.begin(), chain.end());

    std::vector<DataValue> values;
    std::vector<Label> labels;
    std::vector<std::optional<DataValue>> concrete(static_cast<size_t>(k));
    int next_value = 1;
    for (int node_index : chain) {
        const Step& step = steps[static_cast<size_t>(node_index)];
        if (step.parent < 0) continue;
        if (!step.is_data) {
            labels.push_back(step.label);
            continue;
        }
        const Node& pre = nodes[static_cast<size_t>(step.parent)];
        const Node& post = nodes[static_cast<size_t>(node_index)];
        const auto& t = b.data_transitions[static_cast<size_t>(step.transition)];
        // the value read
        DataValue d;
        if (step.value_class < k) {
            d = DataValue();
            for (int r = 0; r < k; ++r) {
                if (pre.classes[static_cast<size_t>(r)] == step.value_class &&
                    concrete[static_cast<size_t>(r)]) {
                    d = *concrete[static_cast<size_t>(r)];
                    break;
                }
            }
            if (d.empty()) d = std::to_string(next_value++);
        } else {
            d = std::to_string(next_value++);
        }
        values.push_back(d);
        // update registers: X := d; guesses per the post equality pattern.
        std::vector<std::optional<DataValue>> next = concrete;
        std::set<int> rewritten(t.store.begin(), t.store.end());
        for (int y : t.guess) rewritten.insert(y);
        for (int x : t.store) next[static_cast<size_t>(x - 1)] = d;
        std::map<int, DataValue> class_concrete;
        for (int r = 0; r < k; ++r) {
            int cls = post.classes[static_cast<size_t>(r)];
            if (cls < 0) continue;
            if (!rewritten.count(r + 1) && next[static_cast<size_t>(r)]) {
                class_concrete.emplace(cls, *next[static_cast<size_t>(r)]);
            }
        }
        for (int x : t.store) {
            int cls = post.classes[static_cast<size_t>(x - 1)];
            if (cls >= 0) class_concrete.emplace(cls, d);
        }
        for (int y : t.guess) {
            int cls = post.classes[static_cast<size_t>(y - 1)];
            if (cls < 0) continue;
            auto it = class_concrete.find(cls);
            if (it == class_concrete.end()) {
                it = class_concrete.emplace(cls, std::to_string(next_value++)).first;
            }
            next[static_cast<size_t>(y - 1)] = it->second;
        }
        concrete = std::move(next);
    }
    if (values.size() != labels.size() + 1) {
        raise(ErrorKind::BadInput, "internal: malformed witness reconstruction");
    }
    result.witness = DataPath(values, labels);
    return result;
}

} // namespace rra

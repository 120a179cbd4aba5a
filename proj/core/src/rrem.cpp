#include "rra/rrem.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "rra/parse.hpp"

namespace rra {

Rrem Rrem::eps() { return Rrem{}; }

Rrem Rrem::empty() {
    Rrem e;
    e.kind = RremKind::Empty;
    return e;
}

Rrem Rrem::letter(Label l) {
    Rrem e;
    e.kind = RremKind::Label;
    e.label = std::move(l);
    return e;
}

Rrem Rrem::test(RigidConstraint c) {
    Rrem e;
    e.kind = RremKind::Test;
    e.constraint = std::move(c);
    return e;
}

Rrem Rrem::concat(Rrem x, Rrem y) {
    Rrem e;
    e.kind = RremKind::Concat;
    e.a = std::make_shared<Rrem>(std::move(x));
    e.b = std::make_shared<Rrem>(std::move(y));
    return e;
}

Rrem Rrem::alt(Rrem x, Rrem y) {
    Rrem e;
    e.kind = RremKind::Union;
    e.a = std::make_shared<Rrem>(std::move(x));
    e.b = std::make_shared<Rrem>(std::move(y));
    return e;
}

Rrem Rrem::plus(Rrem x) {
    Rrem e;
    e.kind = RremKind::Plus;
    e.a = std::make_shared<Rrem>(std::move(x));
    return e;
}

std::string to_string(const Rrem& e) {
    switch (e.kind) {
        case RremKind::Eps: return "eps";
        case RremKind::Empty: return "empty";
        case RremKind::Label: return to_string(e.label);
        case RremKind::Test: return "[" + to_string(e.constraint) + "]";
        case RremKind::Concat: return "(" + to_string(*e.a) + " . " + to_string(*e.b) + ")";
        case RremKind::Union: return "(" + to_string(*e.a) + " | " + to_string(*e.b) + ")";
        case RremKind::Plus: return "(" + to_string(*e.a) + ")+";
    }
    return "eps";
}

LabelSet rrem_labels(const Rrem& e) {
    LabelSet out;
    std::function<void(const Rrem&)> walk = [&](const Rrem& x) {
        switch (x.kind) {
            case RremKind::Label: out.insert(x.label); break;
            case RremKind::Test: {
                std::set<PositionTerm> ts;
                x.constraint.collect_terms(ts);
                for (const auto& t : ts) {
                    for (const auto& step : t.steps) {
                        out.insert(step.labels.begin(), step.labels.end());
                    }
                }
                break;
            }
            case RremKind::Concat:
            case RremKind::Union:
                walk(*x.a);
                walk(*x.b);
                break;
            case RremKind::Plus: walk(*x.a); break;
            default: break;
        }
    };
    walk(e);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing (shared little cursor; the constraint part reuses parse_constraint)
// ---------------------------------------------------------------------------

namespace {

struct ExprCursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    void expect(const std::string& tok) {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    std::string bracket_body() {
        // after '[': scan to the matching ']'
        skip_ws();
        size_t depth = 1;
        size_t start = pos;
        while (pos < text.size()) {
            if (text[pos] == '[') ++depth;
            if (text[pos] == ']') {
                --depth;
                if (depth == 0) {
                    std::string body = text.substr(start, pos - start);
                    ++pos;
                    return body;
                }
            }
            ++pos;
        }
        fail("unbalanced '['");
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '$' || text[pos] == '#' || text[pos] == '@')) {
            ++pos;
        }
        if (pos == start) fail("expected an identifier");
        std::string name = text.substr(start, pos - start);
        if (text.compare(pos, 2, "^-") == 0) {
            pos += 2;
            name += "^-";
        }
        return name;
    }
    [[noreturn]] void fail(const std::string& msg) {
        raise(ErrorKind::SyntaxError,
              msg + " at offset " + std::to_string(pos) + " in '" + text + "'");
    }
};

Rrem parse_rrem_alt(ExprCursor& cur);

Rrem parse_rrem_atom(ExprCursor& cur) {
    if (cur.eat("eps")) return Rrem::eps();
    if (cur.eat("empty")) return Rrem::empty();
    if (cur.eat("(")) {
        Rrem e = parse_rrem_alt(cur);
        cur.expect(")");
        return e;
    }
    if (cur.eat("[")) {
        std::string body = cur.bracket_body();
        return Rrem::test(parse_constraint(body));
    }
    return Rrem::letter(label_from_string(cur.ident()));
}

Rrem parse_rrem_post(ExprCursor& cur) {
    Rrem e = parse_rrem_atom(cur);
    while (cur.eat("+")) e = Rrem::plus(std::move(e));
    return e;
}

Rrem parse_rrem_seq(ExprCursor& cur) {
    Rrem e = parse_rrem_post(cur);
    while (cur.eat(".")) e = Rrem::concat(std::move(e), parse_rrem_post(cur));
    return e;
}

Rrem parse_rrem_alt(ExprCursor& cur) {
    Rrem e = parse_rrem_seq(cur);
    while (cur.eat("|")) e = Rrem::alt(std::move(e), parse_rrem_seq(cur));
    return e;
}

} // namespace

Rrem parse_rrem(const std::string& text) {
    ExprCursor cur{text};
    Rrem e = parse_rrem_alt(cur);
    if (!cur.at_end()) cur.fail("trailing input");
    return e;
}

// ---------------------------------------------------------------------------
// Direct semantics
// ---------------------------------------------------------------------------

namespace {

using PairMatrix = std::vector<std::vector<bool>>; // (n+1) x (n+1)

PairMatrix matrix(int n) {
    return PairMatrix(static_cast<size_t>(n) + 1,
                      std::vector<bool>(static_cast<size_t>(n) + 1, false));
}

PairMatrix rrem_relation(const Rrem& e, const DataPath& path) {
    const int n = static_cast<int>(path.label_count());
    PairMatrix out = matrix(n);
    switch (e.kind) {
        case RremKind::Eps:
            for (int i = 0; i <= n; ++i) out[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
            break;
        case RremKind::Empty: break;
        case RremKind::Label:
            for (int i = 0; i < n; ++i) {
                if (path.labels[static_cast<size_t>(i)] == e.label) {
                    out[static_cast<size_t>(i)][static_cast<size_t>(i) + 1] = true;
                }
            }
            break;
        case RremKind::Test:
            for (int i = 0; i <= n; ++i) {
                if (eval_constraint(e.constraint, path, 2 * i)) {
                    out[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
                }
            }
            break;
        case RremKind::Concat: {
            PairMatrix ra = rrem_relation(*e.a, path);
            PairMatrix rb = rrem_relation(*e.b, path);
            for (int i = 0; i <= n; ++i) {
                for (int m = 0; m <= n; ++m) {
                    if (!ra[static_cast<size_t>(i)][static_cast<size_t>(m)]) continue;
                    for (int j = 0; j <= n; ++j) {
                        if (rb[static_cast<size_t>(m)][static_cast<size_t>(j)]) {
                            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                        }
                    }
                }
            }
            break;
        }
        case RremKind::Union: {
            PairMatrix ra = rrem_relation(*e.a, path);
            PairMatrix rb = rrem_relation(*e.b, path);
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; j <= n; ++j) {
                    out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        ra[static_cast<size_t>(i)][static_cast<size_t>(j)] ||
                        rb[static_cast<size_t>(i)][static_cast<size_t>(j)];
                }
            }
            break;
        }
        case RremKind::Plus: {
            out = rrem_relation(*e.a, path);
            // transitive closure (at least one iteration already included)
            for (int m = 0; m <= n; ++m) {
                for (int i = 0; i <= n; ++i) {
                    if (!out[static_cast<size_t>(i)][static_cast<size_t>(m)]) continue;
                    for (int j = 0; j <= n; ++j) {
                        if (out[static_cast<size_t>(m)][static_cast<size_t>(j)]) {
                            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                        }
                    }
                }
            }
            break;
        }
    }
    return out;
}

} // namespace

bool rrem_accepts(const Rrem& e, const DataPath& path) {
    const int n = static_cast<int>(path.label_count());
    return rrem_relation(e, path)[0][static_cast<size_t>(n)];
}

// ---------------------------------------------------------------------------
// Compilation to NRRA
// ---------------------------------------------------------------------------

namespace {

struct ThompsonGraph {
    struct Edge {
        int to;
        int kind; // 0 = eps, 1 = label, 2 = test
        Label label;
        RigidConstraint guard;
    };
    std::vector<std::vector<Edge>> adj;

    int add_node() {
        adj.emplace_back();
        return static_cast<int>(adj.size()) - 1;
    }
    void eps(int a, int b) { adj[static_cast<size_t>(a)].push_back({b, 0, Label(), {}}); }
    void lab(int a, const Label& l, int b) { adj[static_cast<size_t>(a)].push_back({b, 1, l, {}}); }
    void test(int a, const RigidConstraint& c, int b) {
        adj[static_cast<size_t>(a)].push_back({b, 2, Label(), c});
    }
};

std::pair<int, int> build_graph(const Rrem& e, ThompsonGraph& g) {
    int in = g.add_node();
    int out = g.add_node();
    switch (e.kind) {
        case RremKind::Eps: g.eps(in, out); break;
        case RremKind::Empty: break;
        case RremKind::Label: g.lab(in, e.label, out); break;
        case RremKind::Test: g.test(in, e.constraint, out); break;
        case RremKind::Concat: {
            auto [a_in, a_out] = build_graph(*e.a, g);
            auto [b_in, b_out] = build_graph(*e.b, g);
            g.eps(in, a_in);
            g.eps(a_out, b_in);
            g.eps(b_out, out);
            break;
        }
        case RremKind::Union: {
            auto [a_in, a_out] = build_graph(*e.a, g);
            auto [b_in, b_out] = build_graph(*e.b, g);
            g.eps(in, a_in);
            g.eps(in, b_in);
            g.eps(a_out, out);
            g.eps(b_out, out);
            break;
        }
        case RremKind::Plus: {
            auto [a_in, a_out] = build_graph(*e.a, g);
            g.eps(in, a_in);
            g.eps(a_out, out);
            g.eps(a_out, a_in);
            break;
        }
    }
    return {in, out};
}

} // namespace

Nrra rrem_to_nrra(const Rrem& e, const LabelSet& alphabet) {
    ThompsonGraph g;
    auto [start, accept] = build_graph(e, g);
    const int nodes = static_cast<int>(g.adj.size());

    Nrra a;
    a.alphabet = alphabet;
    for (int u = 0; u < nodes; ++u) a.add_data_state("n" + std::to_string(u));
    for (int u = 0; u < nodes; ++u) a.add_word_state("n" + std::to_string(u));

    // data transitions: test/eps paths with accumulated conjunctions
    for (int u = 0; u < nodes; ++u) {
        // DFS over (node, sorted set of constraint texts)
        std::set<std::pair<int, std::string>> seen;
        struct Item {
            int node;
            std::vector<RigidConstraint> guards;
        };
        std::vector<Item> stack{{u, {}}};
        auto key_of = [](const std::vector<RigidConstraint>& gs) {
            std::vector<std::string> texts;
            for (const auto& c : gs) texts.push_back(to_string(c));
            std::sort(texts.begin(), texts.end());
            texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
            std::string out;
            for (const auto& t : texts) out += t + "&";
            return out;
        };
        while (!stack.empty()) {
            Item item = std::move(stack.back());
            stack.pop_back();
            std::string key = key_of(item.guards);
            if (!seen.insert({item.node, key}).second) continue;
            a.data_transitions.push_back(
                {u, RigidConstraint::conj_all(item.guards), item.node});
            for (const auto& edge : g.adj[static_cast<size_t>(item.node)]) {
                if (edge.kind == 1) continue;
                Item next = item;
                next.node = edge.to;
                if (edge.kind == 2) next.guards.push_back(edge.guard);
                stack.push_back(std::move(next));
            }
        }
    }
    for (int u = 0; u < nodes; ++u) {
        for (const auto& edge : g.adj[static_cast<size_t>(u)]) {
            if (edge.kind != 1) continue;
            a.word_transitions.push_back({u, edge.label, edge.to});
        }
    }
    a.initial.insert(start);
    a.final.insert(accept);
    a.refresh();
    return a;
}

Nrra rrem_to_nrra(const Rrem& e) { return rrem_to_nrra(e, rrem_labels(e)); }

// ---------------------------------------------------------------------------
// REM
// ---------------------------------------------------------------------------

Rem Rem::eps() { return Rem{}; }

Rem Rem::empty() {
    Rem e;
    e.kind = RemKind::Empty;
    return e;
}

Rem Rem::letter(Label l) {
    Rem e;
    e.kind = RemKind::Label;
    e.label = std::move(l);
    return e;
}

Rem Rem::test(Rem inner, RegConstraint c) {
    Rem e;
    e.kind = RemKind::Test;
    e.constraint = std::move(c);
    e.a = std::make_shared<Rem>(std::move(inner));
    return e;
}

Rem Rem::concat(Rem x, Rem y) {
    Rem e;
    e.kind = RemKind::Concat;
    e.a = std::make_shared<Rem>(std::move(x));
    e.b = std::make_shared<Rem>(std::move(y));
    return e;
}

Rem Rem::alt(Rem x, Rem y) {
    Rem e;
    e.kind = RemKind::Union;
    e.a = std::make_shared<Rem>(std::move(x));
    e.b = std::make_shared<Rem>(std::move(y));
    return e;
}

Rem Rem::plus(Rem x) {
    Rem e;
    e.kind = RemKind::Plus;
    e.a = std::make_shared<Rem>(std::move(x));
    return e;
}

Rem Rem::bind_first(std::vector<int> regs, Rem inner) {
    Rem e;
    e.kind = RemKind::Bind;
    e.bind = std::move(regs);
    e.a = std::make_shared<Rem>(std::move(inner));
    return e;
}

int Rem::max_register() const {
    int m = 0;
    switch (kind) {
        case RemKind::Test: m = std::max(constraint.max_register(), a->max_register()); break;
        case RemKind::Bind: {
            m = a->max_register();
            for (int r : bind) m = std::max(m, r);
            break;
        }
        case RemKind::Concat:
        case RemKind::Union: m = std::max(a->max_register(), b->max_register()); break;
        case RemKind::Plus: m = a->max_register(); break;
        default: break;
    }
    return m;
}

std::string to_string(const Rem& e) {
    switch (e.kind) {
        case RemKind::Eps: return "eps";
        case RemKind::Empty: return "empty";
        case RemKind::Label: return to_string(e.label);
        case RemKind::Test: return "(" + to_string(*e.a) + ")[" + to_string(e.constraint) + "]";
        case RemKind::Concat: return "(" + to_string(*e.a) + " . " + to_string(*e.b) + ")";
        case RemKind::Union: return "(" + to_string(*e.a) + " | " + to_string(*e.b) + ")";
        case RemKind::Plus: return "(" + to_string(*e.a) + ")+";
        case RemKind::Bind: {
            std::string regs;
            for (size_t i = 0; i < e.bind.size(); ++i) {
                if (i) regs += ",";
                regs += std::to_string(e.bind[i]);
            }
            return "down{" + regs + "}(" + to_string(*e.a) + ")";
        }
    }
    return "eps";
}

namespace {

RegConstraint parse_reg_constraint_text(const std::string& text);

Rem parse_rem_alt(ExprCursor& cur);

Rem parse_rem_atom(ExprCursor& cur) {
    if (cur.eat("eps")) return Rem::eps();
    if (cur.eat("empty")) return Rem::empty();
    if (cur.eat("down{")) {
        std::vector<int> regs;
        do {
            cur.skip_ws();
            size_t start = cur.pos;
            while (cur.pos < cur.text.size() &&
                   std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
                ++cur.pos;
            }
            if (cur.pos == start) cur.fail("expected a register number");
            regs.push_back(std::stoi(cur.text.substr(start, cur.pos - start)));
        } while (cur.eat(","));
        cur.expect("}");
        cur.expect("(");
        Rem inner = parse_rem_alt(cur);
        cur.expect(")");
        return Rem::bind_first(std::move(regs), std::move(inner));
    }
    if (cur.eat("(")) {
        Rem e = parse_rem_alt(cur);
        cur.expect(")");
        return e;
    }
    return Rem::letter(label_from_string(cur.ident()));
}

Rem parse_rem_post(ExprCursor& cur) {
    Rem e = parse_rem_atom(cur);
    while (true) {
        if (cur.eat("+")) {
            e = Rem::plus(std::move(e));
        } else if (cur.eat("[")) {
            std::string body = cur.bracket_body();
            e = Rem::test(std::move(e), parse_reg_constraint_text(body));
        } else {
            break;
        }
    }
    return e;
}

Rem parse_rem_seq(ExprCursor& cur) {
    Rem e = parse_rem_post(cur);
    while (cur.eat(".")) e = Rem::concat(std::move(e), parse_rem_post(cur));
    return e;
}

Rem parse_rem_alt(ExprCursor& cur) {
    Rem e = parse_rem_seq(cur);
    while (cur.eat("|")) e = Rem::alt(std::move(e), parse_rem_seq(cur));
    return e;
}

// r<i> == r<j> / != with && || true
RegConstraint parse_reg_atom(ExprCursor& cur);

RegConstraint parse_reg_disj(ExprCursor& cur);

int parse_reg_index(ExprCursor& cur) {
    cur.expect("r");
    size_t start = cur.pos;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
        ++cur.pos;
    }
    if (cur.pos == start) cur.fail("expected a register index");
    return std::stoi(cur.text.substr(start, cur.pos - start));
}

RegConstraint parse_reg_atom(ExprCursor& cur) {
    if (cur.eat("true")) return RegConstraint::truth();
    if (cur.eat("(")) {
        RegConstraint c = parse_reg_disj(cur);
        cur.expect(")");
        return c;
    }
    int lhs = parse_reg_index(cur);
    if (cur.eat("==")) return RegConstraint::eq(lhs, parse_reg_index(cur));
    if (cur.eat("!=")) return RegConstraint::neq(lhs, parse_reg_index(cur));
    cur.fail("expected '==' or '!='");
}

RegConstraint parse_reg_conj(ExprCursor& cur) {
    RegConstraint c = parse_reg_atom(cur);
    while (cur.eat("&&")) c = RegConstraint::conj(std::move(c), parse_reg_atom(cur));
    return c;
}

RegConstraint parse_reg_disj(ExprCursor& cur) {
    RegConstraint c = parse_reg_conj(cur);
    while (cur.eat("||")) c = RegConstraint::disj(std::move(c), parse_reg_conj(cur));
    return c;
}

RegConstraint parse_reg_constraint_text(const std::string& text) {
    ExprCursor cur{text};
    RegConstraint c = parse_reg_disj(cur);
    if (!cur.at_end()) cur.fail("trailing input");
    return c;
}

} // namespace

Rem parse_rem(const std::string& text) {
    ExprCursor cur{text};
    Rem e = parse_rem_alt(cur);
    if (!cur.at_end()) cur.fail("trailing input");
    return e;
}

// ---------------------------------------------------------------------------
// REM semantics
// ---------------------------------------------------------------------------

namespace {

std::string reg_key(const RegisterState& regs) {
    std::string out;
    for (const auto& r : regs) out += (r ? *r : std::string("~")) + ";";
    return out;
}

// set of (position, registers) pairs reachable from one configuration
using RemConfigs = std::map<std::string, std::pair<int, RegisterState>>;

void rem_step(const Rem& e, const DataPath& path, int i, const RegisterState& regs,
              RemConfigs& out) {
    auto add = [&](int j, const RegisterState& r) {
        out.emplace(std::to_string(j) + "/" + reg_key(r), std::make_pair(j, r));
    };
    const int n = static_cast<int>(path.label_count());
    switch (e.kind) {
        case RemKind::Eps: add(i, regs); break;
        case RemKind::Empty: break;
        case RemKind::Label:
            if (i < n && path.labels[static_cast<size_t>(i)] == e.label) add(i + 1, regs);
            break;
        case RemKind::Test: {
            RemConfigs inner;
            rem_step(*e.a, path, i, regs, inner);
            for (auto& [key, cfg] : inner) {
                const auto& [j, r] = cfg;
                const DataValue& d = path.values[static_cast<size_t>(j)];
                auto value_of = [&](int reg) -> std::optional<DataValue> {
                    if (reg == 0) return d;
                    if (reg <= static_cast<int>(r.size())) return r[static_cast<size_t>(reg - 1)];
                    return std::nullopt;
                };
                if (eval_reg_constraint(e.constraint, value_of)) add(j, r);
            }
            break;
        }
        case RemKind::Bind: {
            RegisterState bound = regs;
            const DataValue& d = path.values[static_cast<size_t>(i)];
            for (int reg : e.bind) {
                if (reg < 1 || reg > static_cast<int>(regs.size())) {
                    raise(ErrorKind::RegisterOutOfRange, "r" + std::to_string(reg));
                }
                bound[static_cast<size_t>(reg - 1)] = d;
            }
            rem_step(*e.a, path, i, bound, out);
            break;
        }
        case RemKind::Concat: {
            RemConfigs mid;
            rem_step(*e.a, path, i, regs, mid);
            for (auto& [key, cfg] : mid) rem_step(*e.b, path, cfg.first, cfg.second, out);
            break;
        }
        case RemKind::Union:
            rem_step(*e.a, path, i, regs, out);
            rem_step(*e.b, path, i, regs, out);
            break;
        case RemKind::Plus: {
            RemConfigs frontier;
            rem_step(*e.a, path, i, regs, frontier);
            RemConfigs all = frontier;
            while (!frontier.empty()) {
                RemConfigs next;
                for (auto& [key, cfg] : frontier) {
                    RemConfigs step;
                    rem_step(*e.a, path, cfg.first, cfg.second, step);
                    for (auto& [k2, c2] : step) {
                        if (all.emplace(k2, c2).second) next.emplace(k2, c2);
                    }
                }
                frontier = std::move(next);
            }
            out.insert(all.begin(), all.end());
            break;
        }
    }
}

} // namespace

bool rem_accepts(const Rem& e, const DataPath& path, int registers) {
    if (e.max_register() > registers) {
        raise(ErrorKind::RegisterOutOfRange, "expression uses more than " +
                                                 std::to_string(registers) + " registers");
    }
    RemConfigs out;
    rem_step(e, path, 0, RegisterState(static_cast<size_t>(registers)), out);
    const int n = static_cast<int>(path.label_count());
    for (auto& [key, cfg] : out) {
        if (cfg.first == n) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// REM -> RREM (register elimination through the data-to-node labels)
// ---------------------------------------------------------------------------

namespace {

Label satellite_label(int reg) { return Label("__A" + std::to_string(reg), false); }

PositionTerm reg_term(int reg) {
    if (reg == 0) return PositionTerm::cur();
    return PositionTerm::pred_in({satellite_label(reg).inverse()}, PositionTerm::cur());
}

RigidConstraint reg_to_rigid(const RegConstraint& c) {
    switch (c.kind()) {
        case ConstraintKind::True: return RigidConstraint::truth();
        case ConstraintKind::Eq: return RigidConstraint::eq(reg_term(c.lhs()), reg_term(c.rhs()));
        case ConstraintKind::Neq: return RigidConstraint::neq(reg_term(c.lhs()), reg_term(c.rhs()));
        case ConstraintKind::And:
            return RigidConstraint::conj(reg_to_rigid(c.left()), reg_to_rigid(c.right()));
        case ConstraintKind::Or:
            return RigidConstraint::disj(reg_to_rigid(c.left()), reg_to_rigid(c.right()));
    }
    return RigidConstraint::truth();
}

} // namespace

Rrem rem_to_rrem(const Rem& e, int registers) {
    if (e.max_register() > registers) {
        raise(ErrorKind::RegisterOutOfRange, "expression uses more than " +
                                                 std::to_string(registers) + " registers");
    }
    switch (e.kind) {
        case RemKind::Eps: return Rrem::eps();
        case RemKind::Empty: return Rrem::empty();
        case RemKind::Label: return Rrem::letter(e.label);
        case RemKind::Test:
            return Rrem::concat(rem_to_rrem(*e.a, registers), Rrem::test(reg_to_rigid(e.constraint)));
        case RemKind::Concat:
            return Rrem::concat(rem_to_rrem(*e.a, registers), rem_to_rrem(*e.b, registers));
        case RemKind::Union:
            return Rrem::alt(rem_to_rrem(*e.a, registers), rem_to_rrem(*e.b, registers));
        case RemKind::Plus: return Rrem::plus(rem_to_rrem(*e.a, registers));
        case RemKind::Bind: {
            std::vector<int> regs = e.bind;
            std::sort(regs.begin(), regs.end());
            Rrem chain = rem_to_rrem(*e.a, registers);
            for (auto it = regs.rbegin(); it != regs.rend(); ++it) {
                Label a = satellite_label(*it);
                chain = Rrem::concat(Rrem::letter(a),
                                     Rrem::concat(Rrem::letter(a.inverse()), std::move(chain)));
            }
            return chain;
        }
    }
    return Rrem::eps();
}

} // namespace rra

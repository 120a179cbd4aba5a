#include "rra/parse.hpp"

#include <cctype>

namespace rra {

namespace {

class Cursor {
  public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (text_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool peek(const std::string& tok) {
        skip_ws();
        return text_.compare(pos_, tok.size(), tok) == 0;
    }

    void expect(const std::string& tok) {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '$' || text_[pos_] == '#' || text_[pos_] == '@')) {
            ++pos_;
        }
        if (pos_ == start) fail("expected an identifier");
        std::string name = text_.substr(start, pos_ - start);
        if (text_.compare(pos_, 2, "^-") == 0) {
            pos_ += 2;
            name += "^-";
        }
        return name;
    }

    [[noreturn]] void fail(const std::string& msg) {
        raise(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
    }

    size_t offset() const { return pos_; }

  private:
    const std::string& text_;
    size_t pos_ = 0;
};

LabelSet parse_label_set(Cursor& cur) {
    LabelSet set;
    cur.expect("{");
    set.insert(label_from_string(cur.ident()));
    while (cur.eat(",")) set.insert(label_from_string(cur.ident()));
    cur.expect("}");
    return set;
}

PositionTerm parse_term_inner(Cursor& cur) {
    if (cur.eat("cur")) return PositionTerm::cur();
    if (cur.eat("suc_")) {
        LabelSet set = parse_label_set(cur);
        cur.expect("(");
        PositionTerm arg = parse_term_inner(cur);
        cur.expect(")");
        return PositionTerm::suc_in(std::move(set), std::move(arg));
    }
    if (cur.eat("pred_")) {
        LabelSet set = parse_label_set(cur);
        cur.expect("(");
        PositionTerm arg = parse_term_inner(cur);
        cur.expect(")");
        return PositionTerm::pred_in(std::move(set), std::move(arg));
    }
    if (cur.eat("suc")) {
        cur.expect("(");
        PositionTerm arg = parse_term_inner(cur);
        cur.expect(")");
        return PositionTerm::suc(std::move(arg));
    }
    if (cur.eat("pred")) {
        cur.expect("(");
        PositionTerm arg = parse_term_inner(cur);
        cur.expect(")");
        return PositionTerm::pred(std::move(arg));
    }
    cur.fail("expected a position term");
}

RigidConstraint parse_disj(Cursor& cur);

RigidConstraint parse_atom(Cursor& cur) {
    if (cur.eat("true")) return RigidConstraint::truth();
    if (cur.eat("(")) {
        RigidConstraint c = parse_disj(cur);
        cur.expect(")");
        return c;
    }
    PositionTerm lhs = parse_term_inner(cur);
    if (cur.eat("==")) {
        PositionTerm rhs = parse_term_inner(cur);
        return RigidConstraint::eq(std::move(lhs), std::move(rhs));
    }
    if (cur.eat("!=")) {
        PositionTerm rhs = parse_term_inner(cur);
        return RigidConstraint::neq(std::move(lhs), std::move(rhs));
    }
    cur.fail("expected '==' or '!='");
}

RigidConstraint parse_conj(Cursor& cur) {
    RigidConstraint c = parse_atom(cur);
    while (cur.eat("&&")) c = RigidConstraint::conj(std::move(c), parse_atom(cur));
    return c;
}

RigidConstraint parse_disj(Cursor& cur) {
    RigidConstraint c = parse_conj(cur);
    while (cur.eat("||")) c = RigidConstraint::disj(std::move(c), parse_conj(cur));
    return c;
}

} // namespace

PositionTerm parse_term(const std::string& text) {
    Cursor cur(text);
    PositionTerm t = parse_term_inner(cur);
    if (!cur.at_end()) cur.fail("trailing input");
    return t;
}

RigidConstraint parse_constraint(const std::string& text) {
    Cursor cur(text);
    RigidConstraint c = parse_disj(cur);
    if (!cur.at_end()) cur.fail("trailing input");
    return c;
}

} // namespace rra

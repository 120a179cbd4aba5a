#ifndef RRA_ALPHABET_HPP_
#define RRA_ALPHABET_HPP_

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rra/errors.hpp"

namespace rra {

/// A signed edge label: a base name plus an inversion flag, so that
/// inverse(inverse(a)) == a. Rendered as "a" / "a^-".
struct Label {
    std::string name;
    bool inverted = false;

    Label() = default;
    Label(std::string n, bool inv = false) : name(std::move(n)), inverted(inv) {}

    Label inverse() const { return Label(name, !inverted); }
    auto operator<=>(const Label&) const = default;
};

std::string to_string(const Label& l);
Label label_from_string(const std::string& text);

using LabelSet = std::set<Label>;

std::string to_string(const LabelSet& set);

/// A finite set of base label names together with its signed closure.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(const std::vector<std::string>& base_names);

    const std::set<std::string>& base() const { return base_; }
    const LabelSet& signed_labels() const { return signed_; }
    bool contains_base(const std::string& name) const { return base_.count(name) > 0; }
    bool contains(const Label& l) const { return signed_.count(l) > 0; }

  private:
    std::set<std::string> base_;
    LabelSet signed_;
};

/// Surjective map from a source signed alphabet onto a target label set.
class LetterProjection {
  public:
    LetterProjection() = default;
    LetterProjection(std::map<Label, Label> mapping);

    static LetterProjection identity(const LabelSet& labels);

    const LabelSet& source() const { return source_; }
    const LabelSet& target() const { return target_; }

    Label operator()(const Label& l) const;
    LabelSet apply(const LabelSet& set) const;
    LabelSet preimage(const LabelSet& target_subset) const;

    /// True iff A = prj^{-1}(prj(A)).
    bool is_saturated(const LabelSet& set) const;

  private:
    std::map<Label, Label> map_;
    LabelSet source_;
    LabelSet target_;
};

} // namespace rra

#endif

#ifndef RRA_PROFILES_HPP_
#define RRA_PROFILES_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "rra/constraints.hpp"

namespace rra {

/// One block of a profile: the closure terms denoting a single path
/// position, with the labels adjacent to that position. `before`/`after`
/// are nullopt exactly when the position is the path start/end (only
/// possible on the leftmost/rightmost block). `adjacent_next` is the s-bit
/// towards the following block; it is meaningless on the last block and
/// kept false there.
struct ProfileBlock {
    std::optional<Label> before;
    std::optional<Label> after;
    bool adjacent_next = false;
    std::vector<int> terms;
    int sim_class = 0; // index of the first block of its equivalence class

    bool operator==(const ProfileBlock&) const = default;
};

/// The (S, chi, ~) abstraction of a data-path position over a term
/// closure. Blocks are ordered left to right; `zero` indexes the block
/// holding cur. Canonical: structural equality is semantic equality.
struct Profile {
    std::vector<ProfileBlock> blocks;
    int zero = 0;

    int block_count() const { return static_cast<int>(blocks.size()); }
    int block_of_term(int term_id) const;
    bool in_s(int term_id) const { return block_of_term(term_id) >= 0; }
    bool sim_blocks(int i, int j) const {
        return blocks[static_cast<size_t>(i)].sim_class == blocks[static_cast<size_t>(j)].sim_class;
    }
    std::vector<int> s_terms() const;

    /// Canonical text encoding; doubles as hash key.
    std::string key() const;

    bool operator==(const Profile&) const = default;
    bool operator<(const Profile& other) const { return key() < other.key(); }
};

/// Abstraction of (path, pos): groups the defined closure terms by target
/// position, records adjacent labels, adjacency bits and value equalities.
Profile profile_of(const DataPath& path, int pos, const TermClosure& closure);

/// Structural well-formedness of the block sequence (partition, label and
/// s-bit placement, canonical sim classes).
bool is_structural(const Profile& p, const TermClosure& closure);

/// Full consistency: structural validity plus the block-adjacency,
/// label-membership, ordering, gap and presence conditions that
/// characterize realizability.
bool is_consistent(const Profile& p, const TermClosure& closure);

/// No position precedes the current one (the profile of a path start).
bool is_initial(const Profile& p);
/// No position follows the current one (the profile of a path end).
bool is_final(const Profile& p);

/// Interprets c over the profile: Eq holds iff both terms are in S and
/// sim-related; Neq is the complement; True always holds.
bool satisfies(const Profile& p, const RigidConstraint& c, const TermClosure& closure);

/// Builds (path, position) with profile_of(path, position) == p.
std::pair<DataPath, int> witness_path(const Profile& p, const TermClosure& closure);

/// Syntactic one-letter successor relation between consistent profiles.
bool successor(const Profile& p1, const Label& letter, const Profile& p2,
               const TermClosure& closure);

/// When successor holds: old block index -> new block index (-1 = dropped).
std::optional<std::vector<int>> successor_embedding(const Profile& p1, const Label& letter,
                                                    const Profile& p2, const TermClosure& closure);

/// Builds a two-position witness: a path realizing p1 at `first` and p2 at
/// `first + 2` with `letter` in between. Used to validate the successor
/// relation independently.
std::pair<DataPath, int> pair_witness_path(const Profile& p1, const Label& letter,
                                           const Profile& p2, const TermClosure& closure);

/// All consistent profiles. Explicit enumeration; intended for closures of
/// up to ~5 terms.
std::vector<Profile> enumerate_consistent_profiles(const TermClosure& closure,
                                                   const LabelSet& alphabet);

/// Streams consistent profiles into `sink`; enumeration stops early when the
/// sink returns false.
void stream_consistent_profiles(const TermClosure& closure, const LabelSet& alphabet,
                                const std::function<bool(const Profile&)>& sink);

/// Consistent profiles with is_initial (path-start shape).
std::vector<Profile> enumerate_initial_profiles(const TermClosure& closure,
                                                const LabelSet& alphabet);

/// All p2 with successor(p1, letter, p2). Constructive; does not require
/// enumerating the full profile space.
std::vector<Profile> enumerate_successor_profiles(const Profile& p1, const Label& letter,
                                                  const TermClosure& closure,
                                                  const LabelSet& alphabet);

std::string to_string(const Profile& p, const TermClosure& closure);

} // namespace rra

#endif

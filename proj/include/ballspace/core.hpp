#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ballspace/errors.hpp"
#include "ballspace/subset.hpp"

namespace ballspace {

inline constexpr int kMaxGroundSize = 64;

// Finite ground set with stable element labels; indexing is positional and
// the index<->label bijection never changes after construction.
class GroundSet {
public:
    explicit GroundSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> index_of(std::string_view label) const;
    Subset universe() const;

    bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
};

enum class SystemKind { Nest, Directed, Centered };

std::string_view to_string(SystemKind kind);

// Ground set plus a deduplicated family of nonempty subsets, stored in
// canonical (popcount, mask) order.
class BallSpace {
public:
    BallSpace(GroundSet ground, std::vector<Subset> balls);

    const GroundSet& ground() const { return ground_; }
    std::span<const Subset> balls() const { return balls_; }
    int ball_count() const { return static_cast<int>(balls_.size()); }
    Subset ball(int i) const { return balls_[static_cast<size_t>(i)]; }
    bool is_ball(Subset s) const;

private:
    GroundSet ground_;
    std::vector<Subset> balls_;
};

// Bitwise AND over a nonempty collection; the result may be empty.
Subset intersection(std::span<const Subset> family);

// Decides whether coll (a nonempty subcollection of the space's balls) is a
// nest / directed system / centered system. Centered is decided by the
// finite shortcut: the total intersection is nonempty.
bool is_system(const BallSpace& space, std::span<const Subset> coll, SystemKind kind);

// The set { ⋂S : ∅ ≠ S ⊆ balls, ⋂S ≠ ∅ }, computed as the pairwise
// intersection closure with empty results discarded; canonical order.
std::vector<Subset> intersection_semilattice(const BallSpace& space);

struct BallsWithin {
    std::vector<Subset> all;     // balls contained in the region
    std::vector<Subset> maximal; // inclusion-maximal members of `all`
    std::optional<Subset> largest; // present iff `all` has a unique maximum
};

BallsWithin balls_within(const BallSpace& space, Subset region);

// Total map element -> ball of an associated space. The carrier for the
// (NB)/(C1)/(C2)/(C2s) checks and the fixed-point engines; kept here because
// instance builders produce it and the fixed-point module consumes it.
struct BxAssignment {
    std::vector<Subset> b;
};

// "{a b c}" rendering for diagnostics and witnesses.
std::string subset_to_string(const GroundSet& ground, Subset s);
std::string family_to_string(const GroundSet& ground, std::span<const Subset> family);

} // namespace ballspace

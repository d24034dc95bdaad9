#include "ballspace/core.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace ballspace {

namespace {

bool valid_label(const std::string& label) {
    if (label.empty()) return false;
    for (unsigned char c : label) {
        if (std::isspace(c) || std::iscntrl(c)) return false;
    }
    return true;
}

} // namespace

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw input_error("ground set must be nonempty");
    if (static_cast<int>(labels_.size()) > kMaxGroundSize)
        throw input_error("ground set exceeds " + std::to_string(kMaxGroundSize) + " elements");
    for (const auto& l : labels_) {
        if (!valid_label(l)) throw input_error("invalid label '" + l + "'");
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("duplicate label in ground set");
}

std::optional<int> GroundSet::index_of(std::string_view label) const {
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return static_cast<int>(i);
    }
    return std::nullopt;
}

Subset GroundSet::universe() const {
    int n = size();
    if (n == 64) return Subset(~std::uint64_t{0});
    return Subset((std::uint64_t{1} << n) - 1);
}

std::string_view to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Nest: return "nest";
        case SystemKind::Directed: return "directed";
        case SystemKind::Centered: return "centered";
    }
    return "?";
}

BallSpace::BallSpace(GroundSet ground, std::vector<Subset> balls)
    : ground_(std::move(ground)), balls_(std::move(balls)) {
    if (balls_.empty()) throw input_error("ball family must be nonempty");
    Subset universe = ground_.universe();
    for (Subset b : balls_) {
        if (b.empty()) throw input_error("balls must be nonempty");
        if (!b.subset_of(universe)) throw input_error("ball contains elements outside the ground set");
    }
    std::sort(balls_.begin(), balls_.end(), canonical_less);
    balls_.erase(std::unique(balls_.begin(), balls_.end()), balls_.end());
}

bool BallSpace::is_ball(Subset s) const {
    return std::binary_search(balls_.begin(), balls_.end(), s, canonical_less);
}

Subset intersection(std::span<const Subset> family) {
    if (family.empty()) throw input_error("empty collection");
    Subset acc = family[0];
    for (Subset s : family.subspan(1)) acc = acc & s;
    return acc;
}

bool is_system(const BallSpace& space, std::span<const Subset> coll, SystemKind kind) {
    if (coll.empty()) throw input_error("empty collection");
    for (Subset s : coll) {
        if (!space.is_ball(s)) throw input_error("collection contains a non-ball");
    }
    switch (kind) {
        case SystemKind::Nest:
            for (size_t i = 0; i < coll.size(); ++i)
                for (size_t j = i + 1; j < coll.size(); ++j)
                    if (!coll[i].comparable_with(coll[j])) return false;
            return true;
        case SystemKind::Directed:
            for (size_t i = 0; i < coll.size(); ++i) {
                for (size_t j = i; j < coll.size(); ++j) {
                    Subset meet = coll[i] & coll[j];
                    bool has_member = false;
                    for (Subset c : coll) {
                        if (c.subset_of(meet)) {
                            has_member = true;
                            break;
                        }
                    }
                    if (!has_member) return false;
                }
            }
            return true;
        case SystemKind::Centered:
            // Finite shortcut: the whole collection is itself a finite
            // subcollection, and every subcollection's intersection contains
            // the total one.
            return !intersection(coll).empty();
    }
    return false;
}

std::vector<Subset> intersection_semilattice(const BallSpace& space) {
    // Pairwise closure reaches every nonempty subfamily intersection: when
    // the total intersection of a subfamily is nonempty, so is every prefix
    // of the fold computing it.
    std::vector<Subset> items(space.balls().begin(), space.balls().end());
    std::unordered_set<std::uint64_t> seen;
    for (Subset b : items) seen.insert(b.bits);
    for (size_t i = 0; i < items.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            Subset meet = items[i] & items[j];
            if (meet.empty()) continue;
            if (seen.insert(meet.bits).second) items.push_back(meet);
        }
    }
    std::sort(items.begin(), items.end(), canonical_less);
    return items;
}

BallsWithin balls_within(const BallSpace& space, Subset region) {
    BallsWithin result;
    for (Subset b : space.balls()) {
        if (b.subset_of(region)) result.all.push_back(b);
    }
    for (Subset b : result.all) {
        bool maximal = true;
        for (Subset other : result.all) {
            if (b.proper_subset_of(other)) {
                maximal = false;
                break;
            }
        }
        if (maximal) result.maximal.push_back(b);
    }
    // Finitely a unique maximal element is a maximum.
    if (result.maximal.size() == 1) result.largest = result.maximal.front();
    return result;
}

std::string subset_to_string(const GroundSet& ground, Subset s) {
    std::string out = "{";
    bool first = true;
    for_each_element(s, [&](int i) {
        if (!first) out += ' ';
        out += ground.label(i);
        first = false;
    });
    out += '}';
    return out;
}

std::string family_to_string(const GroundSet& ground, std::span<const Subset> family) {
    std::string out = "{";
    bool first = true;
    for (Subset s : family) {
        if (!first) out += ", ";
        out += subset_to_string(ground, s);
        first = false;
    }
    out += '}';
    return out;
}

} // namespace ballspace

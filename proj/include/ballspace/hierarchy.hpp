#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballspace/core.hpp"

namespace ballspace {

enum class ClassifyMode { Fast, Exhaustive };

// Exhaustive classification and witness search enumerate subfamilies of the
// ball family; above this many balls they refuse with a resource error.
inline constexpr int kExhaustiveBallLimit = 20;

struct PropertyReport {
    // grid[i][k]: level i+1 (S_1..S_5), column k (0 nest, 1 directed, 2 centered)
    bool grid[5][3] = {};
    bool s_star = false;      // S_5^c
    bool s_star_star = false; // family closed under arbitrary intersections
    bool tree_like = false;
    bool fin_int_closed = false;
    bool chain_int_closed = false;
    bool int_closed = false;

    bool at(int level, SystemKind kind) const {
        return grid[level - 1][static_cast<int>(kind)];
    }
    bool operator==(const PropertyReport&) const = default;
};

enum class FailureReason { EmptyIntersection, NoBallInside, NoLargestBall, NotABall };

std::string_view to_string(FailureReason reason);

struct FailureWitness {
    SystemKind kind;
    std::vector<Subset> system; // a system of `kind`, canonical order
    Subset region;              // its intersection
    FailureReason reason;
};

// Decide all hierarchy properties plus S*, S**, tree-likeness and the three
// closure predicates. Fast mode uses the finite-collapse facts for the nest
// and directed columns and quantifies the centered column over the
// intersection semilattice; Exhaustive mode literally enumerates every
// subfamily. The two must agree; the agreement is itself under test.
PropertyReport classify(const BallSpace& space, ClassifyMode mode = ClassifyMode::Fast);

struct PropertyCheck {
    bool holds = false;
    std::optional<FailureWitness> witness; // lexicographically least failing system
};

PropertyCheck check_property(const BallSpace& space, int level, SystemKind kind);

bool is_tree_like(const BallSpace& space);

struct ClosurePredicates {
    bool fin_int_closed = false;
    bool chain_int_closed = false;
    bool int_closed = false;
};

ClosurePredicates closure_predicates(const BallSpace& space);

// Checks every unconditional implication of the hierarchy diagram and every
// condition-guarded equivalence inside a report; empty result means the
// report is self-consistent.
std::vector<std::string> validate_report(const PropertyReport& report);

// Named access to report fields, for the miner and the CLI.
// Recognized names: S1..S5, S1d..S5d, S1c..S5c, S*, S**, tree-like,
// fin-int-closed, chain-int-closed, int-closed.
std::optional<bool> report_property(const PropertyReport& report, std::string_view name);
const std::vector<std::string>& property_names();

} // namespace ballspace

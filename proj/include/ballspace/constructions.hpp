#pragma once

#include <span>
#include <vector>

#include "ballspace/core.hpp"

namespace ballspace {

enum class ProductMode { Pr, Tpr, Bpr };

enum class ClosureOp {
    FiniteUnions,
    FiniteIntersections,
    Intersections,
    NestIntersections,
    FullClosure, // finite unions first, then intersections
};

// Closed-set system of a topology on a finite ground set. Validated on
// construction: contains the empty set and the whole set, closed under
// pairwise unions and intersections (which finitely is all of them).
class Topology {
public:
    Topology(GroundSet ground, std::vector<Subset> closed_sets);

    const GroundSet& ground() const { return ground_; }
    std::span<const Subset> closed_sets() const { return closed_; }

private:
    GroundSet ground_;
    std::vector<Subset> closed_; // canonical order, dedup
};

// Family plus all singletons.
BallSpace with_singletons(const BallSpace& space);

// Family plus the whole ground set.
BallSpace with_top(const BallSpace& space);

// Union of two families over the same ground set.
BallSpace family_union(const BallSpace& a, const BallSpace& b);

// Least family containing the balls and closed under the named operation,
// empty intersections discarded. Computed by worklist to a fixed point.
BallSpace close(const BallSpace& space, ClosureOp op);

// Closed sets = FullClosure(balls) ∪ {∅, X}.
Topology associated_topology(const BallSpace& space);

// Induced ball space on region: { B ∩ region : B ball } minus the empty set,
// on a fresh ground set carrying region's labels.
BallSpace subspace(const BallSpace& space, Subset region);

// Smallest ball containing s; requires an S* space and s nonempty and
// contained in some ball.
Subset spherical_closure(const BallSpace& space, Subset s);

// Product of finitely many ball spaces; tuple labels are joined with '|'.
BallSpace product(std::span<const BallSpace> spaces, ProductMode mode);

} // namespace ballspace

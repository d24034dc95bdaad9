#include "ballspace/constructions.hpp"

#include <algorithm>
#include <unordered_set>

#include "ballspace/hierarchy.hpp"

namespace ballspace {

Topology::Topology(GroundSet ground, std::vector<Subset> closed_sets)
    : ground_(std::move(ground)), closed_(std::move(closed_sets)) {
    std::sort(closed_.begin(), closed_.end(), canonical_less);
    closed_.erase(std::unique(closed_.begin(), closed_.end()), closed_.end());
    Subset universe = ground_.universe();
    for (Subset s : closed_) {
        if (!s.subset_of(universe)) throw input_error("closed set outside the ground set");
    }
    auto member = [&](Subset s) {
        return std::binary_search(closed_.begin(), closed_.end(), s, canonical_less);
    };
    if (!member(Subset{})) throw input_error("closed sets must include the empty set");
    if (!member(universe)) throw input_error("closed sets must include the whole set");
    // Pairwise closure is the whole finite story for both operations.
    for (size_t i = 0; i < closed_.size(); ++i) {
        for (size_t j = i + 1; j < closed_.size(); ++j) {
            if (!member(closed_[i] | closed_[j]))
                throw input_error("closed sets not closed under union: " +
                                  subset_to_string(ground_, closed_[i]) + ", " +
                                  subset_to_string(ground_, closed_[j]));
            if (!member(closed_[i] & closed_[j]))
                throw input_error("closed sets not closed under intersection: " +
                                  subset_to_string(ground_, closed_[i]) + ", " +
                                  subset_to_string(ground_, closed_[j]));
        }
    }
}

BallSpace with_singletons(const BallSpace& space) {
    std::vector<Subset> balls(space.balls().begin(), space.balls().end());
    for (int i = 0; i < space.ground().size(); ++i) balls.push_back(Subset::singleton(i));
    return BallSpace(space.ground(), std::move(balls));
}

BallSpace with_top(const BallSpace& space) {
    std::vector<Subset> balls(space.balls().begin(), space.balls().end());
    balls.push_back(space.ground().universe());
    return BallSpace(space.ground(), std::move(balls));
}

BallSpace family_union(const BallSpace& a, const BallSpace& b) {
    if (!(a.ground() == b.ground())) throw input_error("ground mismatch");
    std::vector<Subset> balls(a.balls().begin(), a.balls().end());
    balls.insert(balls.end(), b.balls().begin(), b.balls().end());
    return BallSpace(a.ground(), std::move(balls));
}

namespace {

// Worklist closure under a binary step; empty results are discarded by the
// step returning an empty Subset.
template <class Step>
std::vector<Subset> pairwise_closure(std::span<const Subset> start, Step step) {
    std::vector<Subset> items(start.begin(), start.end());
    std::unordered_set<std::uint64_t> seen;
    for (Subset s : items) seen.insert(s.bits);
    for (size_t i = 0; i < items.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            Subset made = step(items[i], items[j]);
            if (made.empty()) continue;
            if (seen.insert(made.bits).second) items.push_back(made);
        }
    }
    return items;
}

std::vector<Subset> close_family(std::span<const Subset> family, ClosureOp op) {
    switch (op) {
        case ClosureOp::FiniteUnions:
            return pairwise_closure(family, [](Subset a, Subset b) { return a | b; });
        case ClosureOp::FiniteIntersections:
        case ClosureOp::Intersections:
            // Finitely, arbitrary intersections are finite intersections.
            return pairwise_closure(family, [](Subset a, Subset b) { return a & b; });
        case ClosureOp::NestIntersections:
            // A finite nest's intersection is its minimum, already a member;
            // the step below only ever reproduces existing balls.
            return pairwise_closure(family, [](Subset a, Subset b) {
                return a.comparable_with(b) ? (a & b) : Subset{};
            });
        case ClosureOp::FullClosure: {
            auto unions = close_family(family, ClosureOp::FiniteUnions);
            return close_family(unions, ClosureOp::Intersections);
        }
    }
    throw input_error("unknown closure operation");
}

} // namespace

BallSpace close(const BallSpace& space, ClosureOp op) {
    return BallSpace(space.ground(), close_family(space.balls(), op));
}

Topology associated_topology(const BallSpace& space) {
    std::vector<Subset> closed = close_family(space.balls(), ClosureOp::FullClosure);
    closed.push_back(Subset{});
    closed.push_back(space.ground().universe());
    return Topology(space.ground(), std::move(closed));
}

BallSpace subspace(const BallSpace& space, Subset region) {
    if (!region.subset_of(space.ground().universe()))
        throw input_error("region outside the ground set");
    std::vector<std::string> labels;
    std::vector<int> new_index(static_cast<size_t>(space.ground().size()), -1);
    for_each_element(region, [&](int i) {
        new_index[static_cast<size_t>(i)] = static_cast<int>(labels.size());
        labels.push_back(space.ground().label(i));
    });
    std::vector<Subset> balls;
    for (Subset b : space.balls()) {
        Subset trace = b & region;
        if (trace.empty()) continue;
        Subset compressed;
        for_each_element(trace, [&](int i) {
            compressed = compressed | Subset::singleton(new_index[static_cast<size_t>(i)]);
        });
        balls.push_back(compressed);
    }
    if (balls.empty()) throw precondition_error("empty induced family");
    return BallSpace(GroundSet(std::move(labels)), std::move(balls));
}

Subset spherical_closure(const BallSpace& space, Subset s) {
    if (s.empty()) throw precondition_error("spherical closure needs a nonempty subset");
    if (!classify(space).s_star) throw precondition_error("spherical closure requires an S* space");
    bool bounded = false;
    Subset acc = space.ground().universe();
    for (Subset b : space.balls()) {
        if (s.subset_of(b)) {
            acc = acc & b;
            bounded = true;
        }
    }
    if (!bounded) throw precondition_error("unbounded subset");
    if (!space.is_ball(acc))
        throw soundness_error("spherical closure of a bounded set is not a ball in an S* space");
    return acc;
}

namespace {

struct ProductShape {
    std::vector<int> sizes;
    std::vector<std::uint64_t> strides; // row major, first factor most significant
    int total = 1;
};

ProductShape product_shape(std::span<const BallSpace> spaces) {
    ProductShape shape;
    std::uint64_t total = 1;
    for (const BallSpace& s : spaces) {
        shape.sizes.push_back(s.ground().size());
        total *= static_cast<std::uint64_t>(s.ground().size());
        if (total > kMaxGroundSize) throw resource_error("product ground set exceeds 64 elements");
    }
    shape.total = static_cast<int>(total);
    shape.strides.assign(shape.sizes.size(), 1);
    for (int j = static_cast<int>(shape.sizes.size()) - 2; j >= 0; --j)
        shape.strides[j] = shape.strides[j + 1] * static_cast<std::uint64_t>(shape.sizes[j + 1]);
    return shape;
}

Subset product_subset(const ProductShape& shape, std::span<const Subset> choice) {
    Subset out;
    for (int t = 0; t < shape.total; ++t) {
        bool inside = true;
        int rest = t;
        for (size_t j = 0; j < shape.sizes.size(); ++j) {
            int coord = static_cast<int>(rest / shape.strides[j]);
            rest = static_cast<int>(rest % shape.strides[j]);
            if (!choice[j].contains(coord)) {
                inside = false;
                break;
            }
        }
        if (inside) out = out | Subset::singleton(t);
    }
    return out;
}

} // namespace

BallSpace product(std::span<const BallSpace> spaces, ProductMode mode) {
    if (spaces.empty()) throw input_error("product requires at least one factor");
    ProductShape shape = product_shape(spaces);
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(shape.total));
    for (int t = 0; t < shape.total; ++t) {
        std::string label;
        int rest = t;
        for (size_t j = 0; j < shape.sizes.size(); ++j) {
            int coord = static_cast<int>(rest / shape.strides[j]);
            rest = static_cast<int>(rest % shape.strides[j]);
            if (j) label += '|';
            label += spaces[j].ground().label(coord);
        }
        labels.push_back(std::move(label));
    }
    std::vector<Subset> wholes;
    for (const BallSpace& s : spaces) wholes.push_back(s.ground().universe());

    std::vector<Subset> balls;
    switch (mode) {
        case ProductMode::Pr: {
            // The whole product plus the one-coordinate cylinders.
            balls.push_back(product_subset(shape, wholes));
            for (size_t j = 0; j < spaces.size(); ++j) {
                std::vector<Subset> choice = wholes;
                for (Subset b : spaces[j].balls()) {
                    choice[j] = b;
                    balls.push_back(product_subset(shape, choice));
                }
            }
            break;
        }
        case ProductMode::Tpr:
        case ProductMode::Bpr: {
            // For a finite index set the topological product is the box
            // product over hatted factors.
            std::vector<std::vector<Subset>> pools;
            for (size_t j = 0; j < spaces.size(); ++j) {
                std::vector<Subset> pool(spaces[j].balls().begin(), spaces[j].balls().end());
                if (mode == ProductMode::Tpr) pool.push_back(wholes[j]);
                pools.push_back(std::move(pool));
            }
            std::vector<size_t> odometer(spaces.size(), 0);
            std::vector<Subset> choice(spaces.size());
            bool done = false;
            while (!done) {
                for (size_t j = 0; j < spaces.size(); ++j) choice[j] = pools[j][odometer[j]];
                balls.push_back(product_subset(shape, choice));
                done = true;
                for (size_t j = spaces.size(); j-- > 0;) {
                    if (++odometer[j] < pools[j].size()) {
                        done = false;
                        break;
                    }
                    odometer[j] = 0;
                }
            }
            break;
        }
    }
    return BallSpace(GroundSet(std::move(labels)), std::move(balls));
}

} // namespace ballspace

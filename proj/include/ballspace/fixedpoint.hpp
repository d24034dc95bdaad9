#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballspace/core.hpp"
#include "ballspace/instances.hpp"

namespace ballspace {

// Total self-map on a ground set, stored as an image table over indices.
struct SelfMap {
    std::vector<int> image;

    int operator()(int x) const { return image[static_cast<size_t>(x)]; }
    Subset apply(Subset s) const;
    Subset fixed_points() const;
};

enum class TheoremId {
    Basic1a,
    Basic1b,
    Basic1c,
    BTprime,
    GFPT2,
    GFPT2U,
    GFPT3,
    WBW,
    OrderPreserving,
    CaristiKirk,
    OettliThera,
    KTball,
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view name);

// Subfamily of f-closed balls; nullopt marks "no f-closed ball at all".
std::optional<BallSpace> f_closed_family(const BallSpace& space, const SelfMap& f);

// f-contracting: f(S) properly shrinks S unless S is a singleton.
// Requires S nonempty and f-closed.
bool is_f_contracting(Subset s, const SelfMap& f);

struct BxConditionFlags {
    bool nb = false;  // x in B_x
    bool c1 = false;  // y in B_x implies B_y subseteq B_x
    bool c2 = false;  // non-singleton B_x contains some strictly smaller B_y
    bool c2s = false; // every y != x in B_x has B_y strictly smaller
    std::optional<bool> co;       // only with f: B_fx subseteq B_x, strict at some iterate
    std::optional<bool> fx_in_bx; // only with f
};

// Each flag evaluated exactly per its quantified definition; the (CO)
// iterate search is bounded by the ground size, which suffices on finite
// orbits.
BxConditionFlags check_bx_conditions(const BallSpace& space, const BxAssignment& assignment,
                                     const SelfMap* f = nullptr);

struct DescentResult {
    std::optional<int> fixed_point; // absent on failure
    std::vector<Subset> trace;      // strictly decreasing chain of f-closed balls
    Subset terminal;                // minimal ball reached; the diagnostic on failure
};

// Constructive finite realization of the maximal-nest argument: extend
// {start} downward through f-closed balls, preferring f(B) when it is a
// strictly smaller f-closed ball, otherwise the least strictly smaller
// f-closed ball; stop at a minimal one and look for a fixed point there.
DescentResult greedy_fixed_point(const BallSpace& space, const SelfMap& f, Subset start);

// One bundle shape per theorem family; verify_theorem rejects mismatches.
struct TheoremBundle {
    std::optional<BallSpace> space;
    std::optional<SelfMap> f;
    std::optional<BxAssignment> bx;
    std::optional<PosetInstance> poset;
    std::optional<CKInstance> ck;
    std::optional<OTInstance> ot;
};

struct TheoremOutcome {
    bool hypotheses_hold = false;
    bool conclusion_holds = false;
    std::string witness;                // human-readable evidence either way
    std::optional<int> fixed_point;     // a concrete fixed point, when one backs the conclusion
};

// Checks the theorem's hypotheses literally on the bundle; when they hold,
// checks the conclusion literally. A hypotheses-hold, conclusion-fails
// outcome is a soundness alarm for the caller.
TheoremOutcome verify_theorem(TheoremId id, const TheoremBundle& bundle);

struct KnasterTarskiReport {
    bool hypothesis_plain = false;   // every ball contains a fixed point or a smaller ball
    bool hypothesis_fclosed = false; // same over f-closed balls (requires some to exist)
    std::optional<Subset> failing_ball;
    Subset fix;                                // Fix(f)
    std::optional<BallSpace> fix_space;        // (Fix, B ∩ Fix) when buildable
    std::optional<BallSpace> fix_space_fclosed;
    bool fix_space_is_s_star = false;
    bool fclosed_space_is_s_star = false;
    bool ball_continuous = false; // f^{-1}(B) is a ball for every ball
    bool induced_families_equal = false;
};

// Requires an S* space. Never throws on empty Fix(f); that is reported.
KnasterTarskiReport knaster_tarski_suite(const BallSpace& space, const SelfMap& f);

} // namespace ballspace

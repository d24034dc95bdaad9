#include "ballspace/hierarchy.hpp"

#include <algorithm>
#include <unordered_map>

namespace ballspace {

namespace {

// Condition bits for one intersection value: S_1..S_5 read off a region.
struct LevelConditions {
    bool c[5] = {};
};

LevelConditions level_conditions(const BallSpace& space, Subset region) {
    LevelConditions lc;
    lc.c[0] = !region.empty();
    BallsWithin bw = balls_within(space, region);
    lc.c[1] = !bw.all.empty();
    lc.c[2] = !bw.maximal.empty();
    lc.c[3] = bw.largest.has_value();
    lc.c[4] = space.is_ball(region);
    return lc;
}

// Shared scaffolding for the literal subfamily sweep: intersections and
// nest flags are built bottom-up over family-index masks.
struct SubfamilyTables {
    std::vector<std::uint64_t> inter; // intersection per subfamily mask
    std::vector<char> nest;
    std::vector<std::uint32_t> comparable;          // per ball: mask of comparable balls
    std::vector<std::vector<std::uint32_t>> inside; // per pair: mask of balls inside the meet
};

SubfamilyTables build_tables(const BallSpace& space) {
    const auto balls = space.balls();
    const int k = static_cast<int>(balls.size());
    SubfamilyTables t;
    t.inter.assign(std::size_t{1} << k, 0);
    t.nest.assign(std::size_t{1} << k, 0);
    t.comparable.assign(k, 0);
    t.inside.assign(k, std::vector<std::uint32_t>(k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (balls[i].comparable_with(balls[j])) t.comparable[i] |= std::uint32_t{1} << j;
            Subset meet = balls[i] & balls[j];
            std::uint32_t members = 0;
            for (int l = 0; l < k; ++l) {
                if (balls[l].subset_of(meet)) members |= std::uint32_t{1} << l;
            }
            t.inside[i][j] = members;
        }
    }
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
        int b = std::countr_zero(m);
        std::uint64_t rest = m & (m - 1);
        if (rest == 0) {
            t.inter[m] = balls[b].bits;
            t.nest[m] = 1;
        } else {
            t.inter[m] = t.inter[rest] & balls[b].bits;
            t.nest[m] = t.nest[rest] && (rest & ~std::uint64_t{t.comparable[b]}) == 0;
        }
    }
    return t;
}

bool subfamily_directed(const SubfamilyTables& t, std::uint64_t m) {
    for (std::uint64_t mi = m; mi; mi &= mi - 1) {
        int i = std::countr_zero(mi);
        for (std::uint64_t mj = mi; mj; mj &= mj - 1) {
            int j = std::countr_zero(mj);
            if ((t.inside[i][j] & m) == 0) return false;
        }
    }
    return true;
}

void classify_exhaustive(const BallSpace& space, PropertyReport& r) {
    const int k = space.ball_count();
    if (k > kExhaustiveBallLimit)
        throw resource_error("exhaustive classification limited to " +
                             std::to_string(kExhaustiveBallLimit) + " balls");
    SubfamilyTables t = build_tables(space);
    for (auto& row : r.grid) row[0] = row[1] = row[2] = true;
    bool closed_under_all_intersections = true;
    std::unordered_map<std::uint64_t, LevelConditions> cache;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
        Subset region(t.inter[m]);
        auto it = cache.find(region.bits);
        if (it == cache.end()) it = cache.emplace(region.bits, level_conditions(space, region)).first;
        const LevelConditions& lc = it->second;
        bool centered = !region.empty();
        bool nest = t.nest[m] != 0;
        bool directed = nest || subfamily_directed(t, m);
        for (int level = 0; level < 5; ++level) {
            if (nest) r.grid[level][0] = r.grid[level][0] && lc.c[level];
            if (directed) r.grid[level][1] = r.grid[level][1] && lc.c[level];
            if (centered) r.grid[level][2] = r.grid[level][2] && lc.c[level];
        }
        closed_under_all_intersections = closed_under_all_intersections && space.is_ball(region);
    }
    r.s_star = r.grid[4][2];
    r.s_star_star = closed_under_all_intersections;
}

void classify_fast(const BallSpace& space, PropertyReport& r) {
    // Finite collapse: a finite nest has a minimum ball, so its intersection
    // is that ball; a finite directed system's intersection is a member.
    // Both columns hold at every level. The centered column reduces to the
    // intersection semilattice: its members are exactly the intersections of
    // centered systems.
    for (auto& row : r.grid) row[0] = row[1] = true;
    r.grid[0][2] = true;
    bool s2c = true, s3c = true, s4c = true, s5c = true;
    for (Subset region : intersection_semilattice(space)) {
        BallsWithin bw = balls_within(space, region);
        s2c = s2c && !bw.all.empty();
        s3c = s3c && !bw.maximal.empty();
        s4c = s4c && bw.largest.has_value();
        s5c = s5c && space.is_ball(region);
    }
    r.grid[1][2] = s2c;
    r.grid[2][2] = s3c;
    r.grid[3][2] = s4c;
    r.grid[4][2] = s5c;
    r.s_star = s5c;
    r.s_star_star = s5c && !intersection(space.balls()).empty();
}

} // namespace

PropertyReport classify(const BallSpace& space, ClassifyMode mode) {
    PropertyReport r;
    r.tree_like = is_tree_like(space);
    ClosurePredicates cp = closure_predicates(space);
    r.fin_int_closed = cp.fin_int_closed;
    r.chain_int_closed = cp.chain_int_closed;
    r.int_closed = cp.int_closed;
    if (mode == ClassifyMode::Fast) {
        classify_fast(space, r);
    } else {
        classify_exhaustive(space, r);
    }
    return r;
}

std::string_view to_string(FailureReason reason) {
    switch (reason) {
        case FailureReason::EmptyIntersection: return "empty-intersection";
        case FailureReason::NoBallInside: return "no-ball-inside";
        case FailureReason::NoLargestBall: return "no-largest-ball";
        case FailureReason::NotABall: return "not-a-ball";
    }
    return "?";
}

namespace {

bool condition_at(const BallSpace& space, Subset region, int level) {
    return level_conditions(space, region).c[level - 1];
}

FailureReason reason_for(int level) {
    switch (level) {
        case 1: return FailureReason::EmptyIntersection;
        case 2:
        case 3: return FailureReason::NoBallInside;
        case 4: return FailureReason::NoLargestBall;
        default: return FailureReason::NotABall;
    }
}

// Depth-first extension of index prefixes visits systems in lexicographic
// order under the canonical family order, so the first failure found is the
// least one.
bool find_failing_system(const BallSpace& space, const SubfamilyTables& t, int level,
                         SystemKind kind, std::vector<int>& prefix, std::uint64_t mask,
                         FailureWitness& out) {
    const int k = space.ball_count();
    int from = prefix.empty() ? 0 : prefix.back() + 1;
    for (int i = from; i < k; ++i) {
        std::uint64_t m = mask | (std::uint64_t{1} << i);
        prefix.push_back(i);
        bool is_kind = false;
        switch (kind) {
            case SystemKind::Nest: is_kind = t.nest[m] != 0; break;
            case SystemKind::Directed: is_kind = subfamily_directed(t, m); break;
            case SystemKind::Centered: is_kind = t.inter[m] != 0; break;
        }
        if (is_kind && !condition_at(space, Subset(t.inter[m]), level)) {
            out.kind = kind;
            out.system.clear();
            for (int idx : prefix) out.system.push_back(space.ball(idx));
            out.region = Subset(t.inter[m]);
            out.reason = reason_for(level);
            prefix.pop_back();
            return true;
        }
        if (find_failing_system(space, t, level, kind, prefix, m, out)) {
            prefix.pop_back();
            return true;
        }
        prefix.pop_back();
    }
    return false;
}

} // namespace

PropertyCheck check_property(const BallSpace& space, int level, SystemKind kind) {
    if (level < 1 || level > 5) throw input_error("hierarchy level must be 1..5");
    PropertyCheck result;
    PropertyReport report = classify(space, ClassifyMode::Fast);
    result.holds = report.at(level, kind);
    if (result.holds) return result;
    if (space.ball_count() > kExhaustiveBallLimit)
        throw resource_error("witness search limited to " +
                             std::to_string(kExhaustiveBallLimit) + " balls");
    SubfamilyTables t = build_tables(space);
    FailureWitness w;
    std::vector<int> prefix;
    if (!find_failing_system(space, t, level, kind, prefix, 0, w))
        throw soundness_error("classifier reported a failure but no failing system exists");
    result.witness = std::move(w);
    return result;
}

bool is_tree_like(const BallSpace& space) {
    const auto balls = space.balls();
    for (size_t i = 0; i < balls.size(); ++i) {
        for (size_t j = i + 1; j < balls.size(); ++j) {
            if (balls[i].intersects(balls[j]) && !balls[i].comparable_with(balls[j])) return false;
        }
    }
    return true;
}

ClosurePredicates closure_predicates(const BallSpace& space) {
    ClosurePredicates cp;
    const auto balls = space.balls();
    // Pairwise closure decides the finite predicate: intersections of larger
    // finite collections fold through pairs.
    cp.fin_int_closed = true;
    for (size_t i = 0; i < balls.size() && cp.fin_int_closed; ++i) {
        for (size_t j = i + 1; j < balls.size(); ++j) {
            Subset meet = balls[i] & balls[j];
            if (!meet.empty() && !space.is_ball(meet)) {
                cp.fin_int_closed = false;
                break;
            }
        }
    }
    // A finite nest has a minimum ball equal to its intersection, so the
    // literal check reduces to comparable pairs, which always pass.
    cp.chain_int_closed = true;
    for (size_t i = 0; i < balls.size() && cp.chain_int_closed; ++i) {
        for (size_t j = i + 1; j < balls.size(); ++j) {
            if (!balls[i].comparable_with(balls[j])) continue;
            Subset meet = balls[i] & balls[j];
            if (!meet.empty() && !space.is_ball(meet)) cp.chain_int_closed = false;
        }
    }
    cp.int_closed = true;
    for (Subset region : intersection_semilattice(space)) {
        if (!space.is_ball(region)) {
            cp.int_closed = false;
            break;
        }
    }
    return cp;
}

std::vector<std::string> validate_report(const PropertyReport& r) {
    std::vector<std::string> v;
    auto fail = [&](std::string msg) { v.push_back(std::move(msg)); };
    static const char* kind_names[3] = {"", "d", "c"};
    for (int k = 0; k < 3; ++k) {
        for (int level = 0; level + 1 < 5; ++level) {
            if (r.grid[level + 1][k] && !r.grid[level][k])
                fail("S" + std::to_string(level + 2) + kind_names[k] + " does not imply S" +
                     std::to_string(level + 1) + kind_names[k]);
        }
    }
    for (int level = 0; level < 5; ++level) {
        if (r.grid[level][2] && !r.grid[level][1])
            fail("S" + std::to_string(level + 1) + "c does not imply S" + std::to_string(level + 1) +
                 "d");
        if (r.grid[level][1] && !r.grid[level][0])
            fail("S" + std::to_string(level + 1) + "d does not imply S" + std::to_string(level + 1));
    }
    if (r.s_star != r.grid[4][2]) fail("S* must equal S5c");
    if (r.s_star_star && !r.s_star) fail("S** does not imply S*");
    if (r.grid[3][0] && !r.grid[3][1]) fail("S4 does not imply S4d");
    if (r.s_star && !r.int_closed) fail("S* space is not intersection closed");
    if (r.int_closed && r.grid[0][0] != r.s_star)
        fail("intersection closed but S1 and S* differ");
    if (r.tree_like) {
        for (int level = 0; level < 5; ++level) {
            if (r.grid[level][0] != r.grid[level][1] || r.grid[level][1] != r.grid[level][2])
                fail("tree-like but row " + std::to_string(level + 1) + " does not collapse");
        }
    }
    if (r.fin_int_closed) {
        for (int level = 0; level < 5; ++level) {
            if (r.grid[level][1] != r.grid[level][2])
                fail("finitely intersection closed but S" + std::to_string(level + 1) +
                     "d and S" + std::to_string(level + 1) + "c differ");
        }
    }
    if (r.chain_int_closed) {
        for (int level = 0; level + 1 < 5; ++level) {
            if (r.grid[level][0] != r.grid[level + 1][0]) {
                fail("chain intersection closed but the nest column does not collapse");
                break;
            }
        }
    }
    return v;
}

namespace {

const std::vector<std::string>& all_property_names() {
    static const std::vector<std::string> names = {
        "S1", "S2", "S3", "S4", "S5",
        "S1d", "S2d", "S3d", "S4d", "S5d",
        "S1c", "S2c", "S3c", "S4c", "S5c",
        "S*", "S**", "tree-like",
        "fin-int-closed", "chain-int-closed", "int-closed",
    };
    return names;
}

} // namespace

std::optional<bool> report_property(const PropertyReport& r, std::string_view name) {
    if (name.size() >= 2 && (name[0] == 'S' || name[0] == 's') && name[1] >= '1' && name[1] <= '5') {
        int level = name[1] - '0';
        std::string_view rest = name.substr(2);
        if (rest.empty()) return r.at(level, SystemKind::Nest);
        if (rest == "d") return r.at(level, SystemKind::Directed);
        if (rest == "c") return r.at(level, SystemKind::Centered);
        return std::nullopt;
    }
    if (name == "S*" || name == "s*" || name == "Sstar" || name == "sstar") return r.s_star;
    if (name == "S**" || name == "s**" || name == "Sstarstar" || name == "sstarstar")
        return r.s_star_star;
    if (name == "tree-like" || name == "treelike") return r.tree_like;
    if (name == "fin-int-closed") return r.fin_int_closed;
    if (name == "chain-int-closed") return r.chain_int_closed;
    if (name == "int-closed") return r.int_closed;
    return std::nullopt;
}

const std::vector<std::string>& property_names() { return all_property_names(); }

} // namespace ballspace

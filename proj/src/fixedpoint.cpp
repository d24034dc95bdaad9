#include "ballspace/fixedpoint.hpp"

#include <algorithm>

#include "ballspace/constructions.hpp"
#include "ballspace/hierarchy.hpp"

namespace ballspace {

namespace {

constexpr int kSubsetSweepLimit = 20;

} // namespace

Subset SelfMap::apply(Subset s) const {
    Subset out;
    for_each_element(s, [&](int i) { out = out | Subset::singleton((*this)(i)); });
    return out;
}

Subset SelfMap::fixed_points() const {
    Subset out;
    for (size_t i = 0; i < image.size(); ++i)
        if (image[i] == static_cast<int>(i)) out = out | Subset::singleton(static_cast<int>(i));
    return out;
}

std::string_view to_string(TheoremId id) {
    switch (id) {
        case TheoremId::Basic1a: return "basic1a";
        case TheoremId::Basic1b: return "basic1b";
        case TheoremId::Basic1c: return "basic1c";
        case TheoremId::BTprime: return "btprime";
        case TheoremId::GFPT2: return "gfpt2";
        case TheoremId::GFPT2U: return "gfpt2u";
        case TheoremId::GFPT3: return "gfpt3";
        case TheoremId::WBW: return "wbw";
        case TheoremId::OrderPreserving: return "orderpreserving";
        case TheoremId::CaristiKirk: return "caristikirk";
        case TheoremId::OettliThera: return "oettlithera";
        case TheoremId::KTball: return "ktball";
    }
    return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view name) {
    for (TheoremId id :
         {TheoremId::Basic1a, TheoremId::Basic1b, TheoremId::Basic1c, TheoremId::BTprime,
          TheoremId::GFPT2, TheoremId::GFPT2U, TheoremId::GFPT3, TheoremId::WBW,
          TheoremId::OrderPreserving, TheoremId::CaristiKirk, TheoremId::OettliThera,
          TheoremId::KTball}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

std::optional<BallSpace> f_closed_family(const BallSpace& space, const SelfMap& f) {
    std::vector<Subset> closed;
    for (Subset b : space.balls())
        if (f.apply(b).subset_of(b)) closed.push_back(b);
    if (closed.empty()) return std::nullopt;
    return BallSpace(space.ground(), std::move(closed));
}

bool is_f_contracting(Subset s, const SelfMap& f) {
    if (s.empty()) throw precondition_error("f-contracting is defined for nonempty sets");
    Subset fs = f.apply(s);
    if (!fs.subset_of(s)) throw precondition_error("set is not f-closed");
    return s.count() == 1 || !(fs == s);
}

BxConditionFlags check_bx_conditions(const BallSpace& space, const BxAssignment& assignment,
                                     const SelfMap* f) {
    const int n = space.ground().size();
    if (assignment.b.size() != static_cast<size_t>(n))
        throw input_error("assignment must cover every ground element");
    for (Subset b : assignment.b)
        if (!space.is_ball(b)) throw input_error("assignment value is not a ball");
    auto bx = [&](int x) { return assignment.b[static_cast<size_t>(x)]; };

    BxConditionFlags flags;
    flags.nb = true;
    for (int x = 0; x < n; ++x) flags.nb = flags.nb && bx(x).contains(x);
    flags.c1 = true;
    for (int x = 0; x < n && flags.c1; ++x)
        for (int y = 0; y < n; ++y)
            if (bx(x).contains(y) && !bx(y).subset_of(bx(x))) {
                flags.c1 = false;
                break;
            }
    flags.c2 = true;
    for (int x = 0; x < n && flags.c2; ++x) {
        if (bx(x).count() == 1) continue;
        bool shrinks = false;
        for_each_element(bx(x), [&](int y) { shrinks = shrinks || bx(y).proper_subset_of(bx(x)); });
        flags.c2 = shrinks;
    }
    flags.c2s = true;
    for (int x = 0; x < n && flags.c2s; ++x)
        for (int y = 0; y < n; ++y)
            if (y != x && bx(x).contains(y) && !bx(y).proper_subset_of(bx(x))) {
                flags.c2s = false;
                break;
            }
    if (f) {
        bool co = true;
        for (int x = 0; x < n && co; ++x) {
            if (!bx((*f)(x)).subset_of(bx(x))) {
                co = false;
                break;
            }
            if ((*f)(x) == x) continue;
            // Orbits enter a cycle within n steps, so n iterates suffice.
            bool strict = false;
            int cur = x;
            for (int i = 1; i <= n && !strict; ++i) {
                cur = (*f)(cur);
                strict = bx(cur).proper_subset_of(bx(x));
            }
            co = strict;
        }
        flags.co = co;
        bool in = true;
        for (int x = 0; x < n; ++x) in = in && bx(x).contains((*f)(x));
        flags.fx_in_bx = in;
    }
    return flags;
}

DescentResult greedy_fixed_point(const BallSpace& space, const SelfMap& f, Subset start) {
    auto family = f_closed_family(space, f);
    if (!family || !family->is_ball(start))
        throw precondition_error("start must be an f-closed ball");
    DescentResult result;
    Subset current = start;
    result.trace.push_back(current);
    for (;;) {
        Subset image = f.apply(current);
        std::optional<Subset> next;
        if (image.proper_subset_of(current) && family->is_ball(image)) {
            next = image;
        } else {
            for (Subset b : family->balls()) {
                if (b.proper_subset_of(current)) {
                    next = b; // canonical order makes this the least one
                    break;
                }
            }
        }
        if (!next) break;
        current = *next;
        result.trace.push_back(current);
    }
    result.terminal = current;
    for_each_element(current, [&](int i) {
        if (!result.fixed_point && f(i) == i) result.fixed_point = i;
    });
    return result;
}

namespace {

bool has_fixed_point_in(const SelfMap& f, Subset region) {
    bool found = false;
    for_each_element(region, [&](int i) { found = found || f(i) == i; });
    return found;
}

std::optional<int> least_fixed_point_in(const SelfMap& f, Subset region) {
    std::optional<int> out;
    for_each_element(region, [&](int i) {
        if (!out && f(i) == i) out = i;
    });
    return out;
}

const BallSpace& need_space(const TheoremBundle& b, TheoremId id) {
    if (!b.space) throw input_error(std::string(to_string(id)) + " needs a ball space");
    return *b.space;
}

const SelfMap& need_map(const TheoremBundle& b, TheoremId id, int expected_size) {
    if (!b.f) throw input_error(std::string(to_string(id)) + " needs a self-map");
    if (b.f->image.size() != static_cast<size_t>(expected_size))
        throw input_error("self-map does not cover the ground set");
    for (int v : b.f->image)
        if (v < 0 || v >= expected_size) throw input_error("self-map image out of range");
    return *b.f;
}

const BxAssignment& need_bx(const TheoremBundle& b, TheoremId id) {
    if (!b.bx) throw input_error(std::string(to_string(id)) + " needs a B_x assignment");
    return *b.bx;
}

template <class Fn>
void for_each_fclosed_subset(int n, const SelfMap& f, Fn fn) {
    if (n > kSubsetSweepLimit)
        throw resource_error("f-closed subset sweep limited to " +
                             std::to_string(kSubsetSweepLimit) + " elements");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Subset s(mask);
        if (f.apply(s).subset_of(s)) fn(s);
    }
}

template <class Fn>
void for_each_chain(const PosetInstance& p, Fn fn) {
    const int n = p.size();
    if (n > kSubsetSweepLimit)
        throw resource_error("chain sweep limited to " + std::to_string(kSubsetSweepLimit) +
                             " elements");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Subset s(mask);
        bool chain = true;
        for_each_element(s, [&](int a) {
            for_each_element(s, [&](int b) { chain = chain && (p.le(a, b) || p.le(b, a)); });
        });
        if (chain) fn(s);
    }
}

TheoremOutcome verify_basic1a(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::Basic1a);
    const SelfMap& f = need_map(bundle, TheoremId::Basic1a, space.ground().size());
    TheoremOutcome out;
    bool s1 = classify(space).at(1, SystemKind::Nest);
    bool every_fclosed_has_contracting_ball = true;
    std::string bad;
    for_each_fclosed_subset(space.ground().size(), f, [&](Subset s) {
        if (!every_fclosed_has_contracting_ball) return;
        bool found = false;
        for (Subset b : space.balls()) {
            if (b.subset_of(s) && f.apply(b).subset_of(b) && is_f_contracting(b, f)) {
                found = true;
                break;
            }
        }
        if (!found) {
            every_fclosed_has_contracting_ball = false;
            bad = subset_to_string(space.ground(), s);
        }
    });
    out.hypotheses_hold = s1 && every_fclosed_has_contracting_ball;
    if (!out.hypotheses_hold) {
        out.witness = bad.empty() ? "space is not S1"
                                  : "f-closed set " + bad + " contains no f-contracting ball";
        return out;
    }
    out.conclusion_holds = true;
    for_each_fclosed_subset(space.ground().size(), f, [&](Subset s) {
        if (out.conclusion_holds && !has_fixed_point_in(f, s)) {
            out.conclusion_holds = false;
            out.witness = "no fixed point in f-closed set " + subset_to_string(space.ground(), s);
        }
    });
    if (out.conclusion_holds) {
        out.fixed_point = least_fixed_point_in(f, space.ground().universe());
        out.witness = "fixed point in every f-closed set";
    }
    return out;
}

TheoremOutcome verify_basic1b(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::Basic1b);
    const SelfMap& f = need_map(bundle, TheoremId::Basic1b, space.ground().size());
    TheoremOutcome out;
    bool s5 = classify(space).at(5, SystemKind::Nest);
    bool images_are_balls = true;
    bool fclosed_contract = true;
    std::string bad;
    for (Subset b : space.balls()) {
        if (!space.is_ball(f.apply(b))) {
            images_are_balls = false;
            bad = "f(" + subset_to_string(space.ground(), b) + ") is not a ball";
            break;
        }
    }
    if (images_are_balls) {
        for (Subset b : space.balls()) {
            if (f.apply(b).subset_of(b) && !is_f_contracting(b, f)) {
                fclosed_contract = false;
                bad = "f-closed ball " + subset_to_string(space.ground(), b) +
                      " is not f-contracting";
                break;
            }
        }
    }
    out.hypotheses_hold = s5 && images_are_balls && fclosed_contract;
    if (!out.hypotheses_hold) {
        out.witness = bad.empty() ? "space is not S5" : bad;
        return out;
    }
    out.conclusion_holds = true;
    Subset fix = f.fixed_points();
    for (Subset b : space.balls()) {
        if (!f.apply(b).subset_of(b)) continue;
        if ((b & fix).count() != 1) {
            out.conclusion_holds = false;
            out.witness = "f-closed ball " + subset_to_string(space.ground(), b) +
                          " does not contain exactly one fixed point";
            return out;
        }
        if (!out.fixed_point) out.fixed_point = least_fixed_point_in(f, b);
    }
    if (out.conclusion_holds) {
        if (fix.count() == 1)
            out.witness = "unique fixed point: " + space.ground().label(fix.min_element());
        else
            out.witness = "unique fixed point in each f-closed ball";
    }
    return out;
}

TheoremOutcome verify_basic1c(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::Basic1c);
    const SelfMap& f = need_map(bundle, TheoremId::Basic1c, space.ground().size());
    TheoremOutcome out;
    bool s2 = classify(space).at(2, SystemKind::Nest);
    bool hypothesis = true;
    std::string bad;
    for (Subset b : space.balls()) {
        bool ok = has_fixed_point_in(f, b);
        if (!ok) {
            for (Subset c : space.balls())
                if (c.proper_subset_of(b)) {
                    ok = true;
                    break;
                }
        }
        if (!ok) {
            hypothesis = false;
            bad = "ball " + subset_to_string(space.ground(), b) +
                  " has neither a fixed point nor a smaller ball";
            break;
        }
    }
    out.hypotheses_hold = s2 && hypothesis;
    if (!out.hypotheses_hold) {
        out.witness = bad.empty() ? "space is not S2" : bad;
        return out;
    }
    out.conclusion_holds = true;
    for (Subset b : space.balls()) {
        if (!has_fixed_point_in(f, b)) {
            out.conclusion_holds = false;
            out.witness = "no fixed point in ball " + subset_to_string(space.ground(), b);
            return out;
        }
    }
    out.fixed_point = least_fixed_point_in(f, space.ball(0));
    out.witness = "fixed point in every ball";
    return out;
}

TheoremOutcome verify_btprime(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::BTprime);
    const SelfMap& f = need_map(bundle, TheoremId::BTprime, space.ground().size());
    TheoremOutcome out;
    auto family = f_closed_family(space, f);
    if (!family) {
        out.witness = "no f-closed ball exists";
        return out;
    }
    // (B2) quantifies over nests in the f-closed family; a finite nest's
    // intersection is its minimum ball, so the balls themselves carry the
    // whole condition.
    bool b2 = true;
    std::string bad;
    for (Subset b : family->balls()) {
        bool ok = b.count() == 1;
        if (!ok) {
            for (Subset c : family->balls())
                if (c.proper_subset_of(b)) {
                    ok = true;
                    break;
                }
        }
        if (!ok) {
            b2 = false;
            bad = "f-closed ball " + subset_to_string(space.ground(), b) +
                  " is neither a singleton nor above a smaller f-closed ball";
            break;
        }
    }
    out.hypotheses_hold = b2;
    if (!out.hypotheses_hold) {
        out.witness = bad;
        return out;
    }
    out.conclusion_holds = true;
    for (Subset b : family->balls()) {
        if (!has_fixed_point_in(f, b)) {
            out.conclusion_holds = false;
            out.witness = "no fixed point in f-closed ball " + subset_to_string(space.ground(), b);
            return out;
        }
    }
    out.fixed_point = least_fixed_point_in(f, family->ball(0));
    out.witness = "fixed point in every f-closed ball";
    return out;
}

// Shared conclusion of the B_x theorems: a fixed point in every B_x.
bool fixed_point_in_every_bx(const SelfMap& f, const BxAssignment& bx, std::string& bad,
                             const BallSpace& space) {
    for (size_t x = 0; x < bx.b.size(); ++x) {
        if (!has_fixed_point_in(f, bx.b[x])) {
            bad = "no fixed point in B_" + space.ground().label(static_cast<int>(x));
            return false;
        }
    }
    return true;
}

TheoremOutcome verify_gfpt2(const TheoremBundle& bundle, bool use_c1) {
    TheoremId id = use_c1 ? TheoremId::GFPT2U : TheoremId::GFPT2;
    const BallSpace& space = need_space(bundle, id);
    const SelfMap& f = need_map(bundle, id, space.ground().size());
    const BxAssignment& bx = need_bx(bundle, id);
    TheoremOutcome out;
    BxConditionFlags flags = check_bx_conditions(space, bx, &f);
    bool ultimately_contracting = flags.nb && flags.co.value_or(false);
    bool extra = true;
    std::string bad;
    if (use_c1) {
        extra = flags.c1 && classify(space).at(1, SystemKind::Nest);
        if (!extra) bad = "condition (C1) or S1 fails";
    } else {
        // Every f-nest must trap some z with B_z inside its intersection.
        for_each_fclosed_subset(space.ground().size(), f, [&](Subset s) {
            if (!extra) return;
            std::vector<Subset> nest;
            for_each_element(s, [&](int x) { nest.push_back(bx.b[static_cast<size_t>(x)]); });
            for (size_t i = 0; i < nest.size() && extra; ++i)
                for (size_t j = i + 1; j < nest.size(); ++j)
                    if (!nest[i].comparable_with(nest[j])) return; // not an f-nest
            Subset meet = intersection(nest);
            bool trapped = false;
            for_each_element(meet, [&](int z) {
                trapped = trapped || bx.b[static_cast<size_t>(z)].subset_of(meet);
            });
            if (!trapped) {
                extra = false;
                bad = "f-nest over " + subset_to_string(space.ground(), s) +
                      " traps no B_z inside its intersection";
            }
        });
    }
    out.hypotheses_hold = ultimately_contracting && extra;
    if (!out.hypotheses_hold) {
        out.witness = !ultimately_contracting ? "f is not ultimately contracting on orbits" : bad;
        return out;
    }
    std::string bad2;
    out.conclusion_holds = fixed_point_in_every_bx(f, bx, bad2, space);
    out.witness = out.conclusion_holds ? "fixed point in every B_x" : bad2;
    if (out.conclusion_holds) out.fixed_point = least_fixed_point_in(f, bx.b[0]);
    return out;
}

TheoremOutcome verify_gfpt3(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::GFPT3);
    const SelfMap& f = need_map(bundle, TheoremId::GFPT3, space.ground().size());
    const BxAssignment& bx = need_bx(bundle, TheoremId::GFPT3);
    TheoremOutcome out;
    BxConditionFlags flags = check_bx_conditions(space, bx, &f);
    // B_x-ball space: the assignment values make up the whole family.
    std::vector<Subset> image(bx.b.begin(), bx.b.end());
    std::sort(image.begin(), image.end(), canonical_less);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    bool is_bx_space = std::equal(image.begin(), image.end(), space.balls().begin(),
                                  space.balls().end());
    bool s1 = classify(space).at(1, SystemKind::Nest);
    out.hypotheses_hold =
        s1 && is_bx_space && flags.c1 && flags.c2 && flags.fx_in_bx.value_or(false);
    if (!out.hypotheses_hold) {
        out.witness = !is_bx_space ? "assignment does not realize the family as a B_x-ball space"
                                   : "contractivity or fx-in-B_x fails";
        return out;
    }
    out.conclusion_holds = true;
    for (Subset b : space.balls()) {
        if (!has_fixed_point_in(f, b)) {
            out.conclusion_holds = false;
            out.witness = "no fixed point in ball " + subset_to_string(space.ground(), b);
            return out;
        }
    }
    out.fixed_point = least_fixed_point_in(f, space.ball(0));
    out.witness = "fixed point in every ball";
    return out;
}

TheoremOutcome verify_wbw(const TheoremBundle& bundle) {
    if (!bundle.poset) throw input_error("wbw needs a poset");
    const PosetInstance& p = *bundle.poset;
    const SelfMap& f = need_map(bundle, TheoremId::WBW, p.size());
    TheoremOutcome out;
    bool inductively_ordered = true;
    for_each_chain(p, [&](Subset chain) {
        if (!inductively_ordered) return;
        bool bounded = false;
        for (int m = 0; m < p.size() && !bounded; ++m) {
            bool ub = true;
            for_each_element(chain, [&](int a) { ub = ub && p.le(a, m); });
            bounded = ub;
        }
        inductively_ordered = bounded;
    });
    bool increasing = true;
    for (int x = 0; x < p.size(); ++x) increasing = increasing && p.le(x, f(x));
    out.hypotheses_hold = inductively_ordered && increasing;
    if (!out.hypotheses_hold) {
        out.witness = increasing ? "poset is not inductively ordered" : "f is not increasing";
        return out;
    }
    out.fixed_point = least_fixed_point_in(f, p.elements().universe());
    out.conclusion_holds = out.fixed_point.has_value();
    out.witness = out.conclusion_holds
                      ? "fixed point: " + p.elements().label(*out.fixed_point)
                      : "no fixed point";
    return out;
}

TheoremOutcome verify_order_preserving(const TheoremBundle& bundle) {
    if (!bundle.poset) throw input_error("orderpreserving needs a poset");
    const PosetInstance& p = *bundle.poset;
    const SelfMap& f = need_map(bundle, TheoremId::OrderPreserving, p.size());
    TheoremOutcome out;
    bool preserving = true;
    for (int x = 0; x < p.size() && preserving; ++x)
        for (int y = 0; y < p.size(); ++y)
            if (p.le(x, y) && !p.le(f(x), f(y))) {
                preserving = false;
                break;
            }
    bool seed = false;
    for (int x = 0; x < p.size(); ++x) seed = seed || p.le(x, f(x));
    bool chain_complete = true;
    for_each_chain(p, [&](Subset chain) {
        if (chain_complete && !p.supremum(chain)) chain_complete = false;
    });
    out.hypotheses_hold = preserving && seed && chain_complete;
    if (!out.hypotheses_hold) {
        out.witness = !preserving ? "f is not order preserving"
                      : !seed     ? "no x with fx >= x"
                                  : "poset is not chain complete";
        return out;
    }
    out.fixed_point = least_fixed_point_in(f, p.elements().universe());
    out.conclusion_holds = out.fixed_point.has_value();
    out.witness = out.conclusion_holds
                      ? "fixed point: " + p.elements().label(*out.fixed_point)
                      : "no fixed point";
    return out;
}

TheoremOutcome verify_caristi_kirk(const TheoremBundle& bundle) {
    if (!bundle.ck) throw input_error("caristikirk needs a Caristi-Kirk instance");
    const CKInstance& ck = *bundle.ck;
    const SelfMap& f = need_map(bundle, TheoremId::CaristiKirk, ck.metric.size());
    TheoremOutcome out;
    bool caristi = true;
    std::string bad;
    for (int x = 0; x < ck.metric.size(); ++x) {
        int fx = f(x);
        if (ck.metric.d(x, fx) >
            ck.phi[static_cast<size_t>(x)] - ck.phi[static_cast<size_t>(fx)]) {
            caristi = false;
            bad = "Caristi condition fails at " + ck.metric.points().label(x);
            break;
        }
    }
    out.hypotheses_hold = caristi;
    if (!caristi) {
        out.witness = bad;
        return out;
    }
    out.fixed_point = least_fixed_point_in(f, ck.metric.points().universe());
    out.conclusion_holds = out.fixed_point.has_value();
    out.witness = out.conclusion_holds
                      ? "fixed point: " + ck.metric.points().label(*out.fixed_point)
                      : "no fixed point";
    return out;
}

TheoremOutcome verify_oettli_thera(const TheoremBundle& bundle) {
    if (!bundle.ot) throw input_error("oettlithera needs an Oettli-Thera instance");
    const OTInstance& ot = *bundle.ot;
    const int n = ot.metric.size();
    const SelfMap& f = need_map(bundle, TheoremId::OettliThera, n);
    TheoremOutcome out;
    bool condition = true;
    std::string bad;
    for (int x = 0; x < n; ++x) {
        int fx = f(x);
        const ExtRational& phi = ot.phi2[static_cast<size_t>(x) * n + fx];
        if (!phi || ot.metric.d(x, fx) > -*phi) {
            condition = false;
            bad = "Oettli-Thera condition fails at " + ot.metric.points().label(x);
            break;
        }
    }
    out.hypotheses_hold = condition;
    if (!condition) {
        out.witness = bad;
        return out;
    }
    out.fixed_point = least_fixed_point_in(f, ot.metric.points().universe());
    out.conclusion_holds = out.fixed_point.has_value();
    out.witness = out.conclusion_holds
                      ? "fixed point: " + ot.metric.points().label(*out.fixed_point)
                      : "no fixed point";
    return out;
}

TheoremOutcome verify_ktball(const TheoremBundle& bundle) {
    const BallSpace& space = need_space(bundle, TheoremId::KTball);
    const SelfMap& f = need_map(bundle, TheoremId::KTball, space.ground().size());
    TheoremOutcome out;
    bool s_star = classify(space).s_star;
    bool hypothesis = true;
    std::string bad;
    for (Subset b : space.balls()) {
        bool ok = has_fixed_point_in(f, b);
        if (!ok) {
            for (Subset c : space.balls())
                if (c.proper_subset_of(b)) {
                    ok = true;
                    break;
                }
        }
        if (!ok) {
            hypothesis = false;
            bad = "ball " + subset_to_string(space.ground(), b) +
                  " has neither a fixed point nor a smaller ball";
            break;
        }
    }
    out.hypotheses_hold = s_star && hypothesis;
    if (!out.hypotheses_hold) {
        out.witness = bad.empty() ? "space is not S*" : bad;
        return out;
    }
    bool every_ball_has_fp = true;
    for (Subset b : space.balls()) {
        if (!has_fixed_point_in(f, b)) {
            every_ball_has_fp = false;
            out.witness = "no fixed point in ball " + subset_to_string(space.ground(), b);
            break;
        }
    }
    if (!every_ball_has_fp) {
        out.conclusion_holds = false;
        return out;
    }
    BallSpace induced = subspace(space, f.fixed_points());
    bool induced_s_star = classify(induced).s_star;
    out.conclusion_holds = induced_s_star;
    out.witness = induced_s_star ? "(Fix(f), B ∩ Fix(f)) is S*"
                                 : "(Fix(f), B ∩ Fix(f)) is not S*";
    if (out.conclusion_holds) out.fixed_point = least_fixed_point_in(f, space.ball(0));
    return out;
}

} // namespace

TheoremOutcome verify_theorem(TheoremId id, const TheoremBundle& bundle) {
    switch (id) {
        case TheoremId::Basic1a: return verify_basic1a(bundle);
        case TheoremId::Basic1b: return verify_basic1b(bundle);
        case TheoremId::Basic1c: return verify_basic1c(bundle);
        case TheoremId::BTprime: return verify_btprime(bundle);
        case TheoremId::GFPT2: return verify_gfpt2(bundle, false);
        case TheoremId::GFPT2U: return verify_gfpt2(bundle, true);
        case TheoremId::GFPT3: return verify_gfpt3(bundle);
        case TheoremId::WBW: return verify_wbw(bundle);
        case TheoremId::OrderPreserving: return verify_order_preserving(bundle);
        case TheoremId::CaristiKirk: return verify_caristi_kirk(bundle);
        case TheoremId::OettliThera: return verify_oettli_thera(bundle);
        case TheoremId::KTball: return verify_ktball(bundle);
    }
    throw input_error("unknown theorem");
}

KnasterTarskiReport knaster_tarski_suite(const BallSpace& space, const SelfMap& f) {
    if (f.image.size() != static_cast<size_t>(space.ground().size()))
        throw input_error("self-map does not cover the ground set");
    if (!classify(space).s_star)
        throw precondition_error("Knaster-Tarski suite requires an S* space");
    KnasterTarskiReport rep;
    rep.fix = f.fixed_points();

    rep.hypothesis_plain = true;
    for (Subset b : space.balls()) {
        bool ok = has_fixed_point_in(f, b);
        if (!ok) {
            for (Subset c : space.balls())
                if (c.proper_subset_of(b)) {
                    ok = true;
                    break;
                }
        }
        if (!ok) {
            rep.hypothesis_plain = false;
            rep.failing_ball = b;
            break;
        }
    }

    auto family = f_closed_family(space, f);
    rep.hypothesis_fclosed = family.has_value();
    if (family) {
        for (Subset b : family->balls()) {
            bool ok = has_fixed_point_in(f, b);
            if (!ok) {
                for (Subset c : family->balls())
                    if (c.proper_subset_of(b)) {
                        ok = true;
                        break;
                    }
            }
            if (!ok) {
                rep.hypothesis_fclosed = false;
                if (!rep.failing_ball) rep.failing_ball = b;
                break;
            }
        }
    }

    auto meets_fix = [&](const BallSpace& s) {
        for (Subset b : s.balls())
            if (!b.intersects(rep.fix)) return false;
        return true;
    };
    if (rep.hypothesis_plain && !rep.fix.empty() && meets_fix(space)) {
        rep.fix_space = subspace(space, rep.fix);
        rep.fix_space_is_s_star = classify(*rep.fix_space).s_star;
    }
    if (rep.hypothesis_fclosed && family && !rep.fix.empty() && meets_fix(*family)) {
        rep.fix_space_fclosed = subspace(*family, rep.fix);
        rep.fclosed_space_is_s_star = classify(*rep.fix_space_fclosed).s_star;
    }

    rep.ball_continuous = true;
    for (Subset b : space.balls()) {
        Subset preimage;
        for (int x = 0; x < space.ground().size(); ++x)
            if (b.contains(f(x))) preimage = preimage | Subset::singleton(x);
        if (!space.is_ball(preimage)) {
            rep.ball_continuous = false;
            break;
        }
    }

    // Compare the two induced families on the fixed-point set directly as
    // trace families; no compression needed for equality.
    auto traces = [&](const BallSpace& s) {
        std::vector<Subset> out;
        for (Subset b : s.balls()) {
            Subset t = b & rep.fix;
            if (!t.empty()) out.push_back(t);
        }
        std::sort(out.begin(), out.end(), canonical_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    std::vector<Subset> plain_traces = traces(space);
    std::vector<Subset> fclosed_traces = family ? traces(*family) : std::vector<Subset>{};
    rep.induced_families_equal = plain_traces == fclosed_traces;
    return rep;
}

} // namespace ballspace

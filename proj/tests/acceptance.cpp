// Acceptance suite: one pass/fail line per criterion. Exhaustive at desk
// scale; all tolerances are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ballspace/constructions.hpp"
#include "ballspace/fixedpoint.hpp"
#include "ballspace/hierarchy.hpp"
#include "ballspace/instances.hpp"
#include "ballspace/miner.hpp"

using namespace ballspace;

namespace {

struct Criterion {
    int number;
    std::string name;
    long long budget_ms; // stated runtime bound; exceeding it is a failure
    std::function<bool(std::string&)> body;
};

bool isomorphic(const BallSpace& a, const BallSpace& b) {
    if (a.ground().size() != b.ground().size()) return false;
    int n = a.ground().size();
    return canonical_form(n, a.balls()) == canonical_form(n, b.balls());
}

BallSpace numbered_space(std::vector<std::string> labels,
                         std::vector<std::vector<std::string>> balls) {
    GroundSet g(std::move(labels));
    std::vector<Subset> family;
    for (const auto& ball : balls) {
        Subset s;
        for (const auto& label : ball) s = s | Subset::singleton(*g.index_of(label));
        family.push_back(s);
    }
    return BallSpace(std::move(g), std::move(family));
}

std::vector<SelfMap> all_self_maps(int n) {
    std::vector<SelfMap> maps;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= n;
    for (int code = 0; code < total; ++code) {
        SelfMap f;
        int rest = code;
        for (int i = 0; i < n; ++i) {
            f.image.push_back(rest % n);
            rest /= n;
        }
        maps.push_back(std::move(f));
    }
    return maps;
}

std::vector<PosetInstance> all_posets(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pairs.push_back({i, j});
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    GroundSet ground(labels);
    std::vector<PosetInstance> posets;
    const size_t bits = pairs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        std::vector<char> leq(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
        for (size_t p = 0; p < bits; ++p)
            if (mask & (std::uint64_t{1} << p))
                leq[static_cast<size_t>(pairs[p].first) * n + pairs[p].second] = 1;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (a != b && leq[static_cast<size_t>(a) * n + b] &&
                    leq[static_cast<size_t>(b) * n + a])
                    ok = false;
                for (int c = 0; c < n && ok; ++c)
                    if (leq[static_cast<size_t>(a) * n + b] &&
                        leq[static_cast<size_t>(b) * n + c] &&
                        !leq[static_cast<size_t>(a) * n + c])
                        ok = false;
            }
        if (ok) posets.push_back(PosetInstance(ground, leq));
    }
    return posets;
}

// All topologies on n points, as closed-set systems.
std::vector<Topology> all_topologies(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    GroundSet ground(labels);
    Subset whole = ground.universe();
    std::vector<Subset> proper; // neither empty nor whole
    for (std::uint64_t m = 1; m < whole.bits; ++m) proper.push_back(Subset(m));
    std::vector<Topology> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << proper.size()); ++mask) {
        std::vector<Subset> closed = {Subset{}, whole};
        for (size_t i = 0; i < proper.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) closed.push_back(proper[i]);
        bool ok = true;
        for (size_t i = 0; i < closed.size() && ok; ++i)
            for (size_t j = i + 1; j < closed.size(); ++j) {
                auto member = [&](Subset s) {
                    for (Subset c : closed)
                        if (c == s) return true;
                    return false;
                };
                if (!member(closed[i] | closed[j]) || !member(closed[i] & closed[j])) {
                    ok = false;
                    break;
                }
            }
        if (ok) out.push_back(Topology(ground, closed));
    }
    return out;
}

struct CKGrid {
    std::vector<CKInstance> instances;
};

// 2- and 3-point metric spaces with distances in {1/2, 1, 2} and potentials
// in {0, 1, 2}^X.
CKGrid ck_grid() {
    CKGrid grid;
    std::vector<Rational> ds = {Rational(1, 2), Rational(1), Rational(2)};
    std::vector<Rational> phis = {Rational(0), Rational(1), Rational(2)};
    for (const Rational& d01 : ds) {
        MetricInstance m(GroundSet({"0", "1"}), {Rational(0), d01, d01, Rational(0)});
        for (const Rational& p0 : phis)
            for (const Rational& p1 : phis)
                grid.instances.push_back(CKInstance{m, {p0, p1}});
    }
    for (const Rational& d01 : ds) {
        for (const Rational& d02 : ds) {
            for (const Rational& d12 : ds) {
                if (d01 > d02 + d12 || d02 > d01 + d12 || d12 > d01 + d02) continue;
                MetricInstance m(GroundSet({"0", "1", "2"}),
                                 {Rational(0), d01, d02, d01, Rational(0), d12, d02, d12,
                                  Rational(0)});
                for (const Rational& p0 : phis)
                    for (const Rational& p1 : phis)
                        for (const Rational& p2 : phis)
                            grid.instances.push_back(CKInstance{m, {p0, p1, p2}});
            }
        }
    }
    return grid;
}

OTInstance ot_from_ck(const CKInstance& ck, int x0) {
    const int n = ck.metric.size();
    std::vector<ExtRational> phi2(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            phi2[static_cast<size_t>(x) * n + y] =
                ck.phi[static_cast<size_t>(y)] - ck.phi[static_cast<size_t>(x)];
    return make_ot_instance(ck.metric, std::move(phi2), x0);
}

bool criterion_implications(std::string& note) {
    ImplicationSummary three = verify_implications(3, false, 4);
    ImplicationSummary four = verify_implications(4, true, 4);
    note = std::to_string(three.covered) + " spaces at n=3, " + std::to_string(four.covered) +
           " covered at n=4 (" + std::to_string(four.representatives) + " representatives)";
    return three.covered == 127 && three.violations == 0 && four.covered == 32767 &&
           four.violations == 0;
}

bool criterion_agreement(std::string& note) {
    std::uint64_t checked = 0;
    for (int n : {1, 2, 3}) {
        AgreementSummary s = fast_exhaustive_agreement(n, 0, 0, 4);
        checked += s.checked;
        if (s.mismatches != 0) return false;
    }
    AgreementSummary sampled = fast_exhaustive_agreement(4, 10000, 0, 4);
    checked += sampled.checked;
    if (sampled.mismatches != 0) return false;
    // cheap enough to go beyond the sample: the whole n=4 family space
    AgreementSummary full = fast_exhaustive_agreement(4, 0, 0, 4);
    checked += full.checked;
    note = std::to_string(checked) + " spaces compared (includes the full n=4 sweep)";
    return full.mismatches == 0 && checked == 1 + 7 + 127 + 10000 + 32767;
}

bool criterion_equivalence_table(std::string& note) {
    EquivalenceSummary three = verify_equivalence_table(3, false, 4);
    EquivalenceSummary four = verify_equivalence_table(4, true, 4);
    note = "7 rows at n=3 and n=4";
    return three.rows.size() == 7 && three.violations == 0 && four.rows.size() == 7 &&
           four.violations == 0 && four.covered == 32767;
}

bool criterion_witnesses(std::string& note) {
    BallSpace i1 = numbered_space({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
    BallSpace w4 = numbered_space({"1", "2", "3", "4"},
                                  {{"1", "2", "3"}, {"1", "2", "4"}, {"1"}, {"2"}});
    auto a = find_witness("S1c", "S2c", 3);
    auto b = find_witness("S3c", "S4c", 4);
    if (!a || !b) return false;
    note = "witnesses found at n=3 and n=4";
    return isomorphic(a->space, i1) && isomorphic(b->space, w4);
}

bool criterion_product_counterexample(std::string& note) {
    BallSpace y = numbered_space({"1", "2"}, {{"1"}});
    std::vector<BallSpace> factors = {y, y};
    BallSpace p = product(factors, ProductMode::Pr);
    PropertyReport report = classify(p);
    if (report.at(2, SystemKind::Centered)) return false;
    // the whole three-ball family must itself be a centered system whose
    // intersection contains no ball
    std::vector<Subset> whole(p.balls().begin(), p.balls().end());
    if (whole.size() != 3) return false;
    if (!is_system(p, whole, SystemKind::Centered)) return false;
    Subset meet = intersection(whole);
    if (!balls_within(p, meet).all.empty()) return false;
    note = "pr product of two one-ball spaces is not S2c; 3-ball centered witness checked";
    return true;
}

bool criterion_closures(std::string& note) {
    bool ok = true;
    std::uint64_t count = 0;
    for (int n : {1, 2, 3}) {
        enumerate_spaces(n, false, [&](const BallSpace& space) {
            ++count;
            BallSpace ints = close(space, ClosureOp::Intersections);
            ok = ok && classify(ints).s_star;
            PropertyReport base = classify(space);
            BallSpace funs = close(space, ClosureOp::FiniteUnions);
            if (base.at(1, SystemKind::Centered))
                ok = ok && classify(funs).at(1, SystemKind::Centered);
            BallSpace full = close(space, ClosureOp::FullClosure);
            for (Subset a : full.balls()) {
                for (Subset b : full.balls()) {
                    ok = ok && full.is_ball(a | b);
                    if (!(a & b).empty()) ok = ok && full.is_ball(a & b);
                }
            }
        });
    }
    note = std::to_string(count) + " spaces closed three ways";
    return ok;
}

bool criterion_soundness_sweep(std::string& note) {
    std::uint64_t alarms = 0, bundles = 0;
    auto check = [&](TheoremId id, const TheoremBundle& bundle) {
        TheoremOutcome outcome = verify_theorem(id, bundle);
        ++bundles;
        if (outcome.hypotheses_hold && !outcome.conclusion_holds) ++alarms;
    };
    std::vector<SelfMap> maps3 = all_self_maps(3);
    enumerate_spaces(3, false, [&](const BallSpace& space) {
        for (const SelfMap& f : maps3) {
            TheoremBundle bundle;
            bundle.space = space;
            bundle.f = f;
            for (TheoremId id : {TheoremId::Basic1a, TheoremId::Basic1b, TheoremId::Basic1c,
                                 TheoremId::BTprime, TheoremId::KTball})
                check(id, bundle);
            // every ball-valued assignment feeds the B_x theorems
            const int k = space.ball_count();
            int total = k * k * k;
            for (int code = 0; code < total; ++code) {
                TheoremBundle bx_bundle = bundle;
                BxAssignment assignment;
                int rest = code;
                for (int i = 0; i < 3; ++i) {
                    assignment.b.push_back(space.ball(rest % k));
                    rest /= k;
                }
                bx_bundle.bx = std::move(assignment);
                check(TheoremId::GFPT2, bx_bundle);
                check(TheoremId::GFPT2U, bx_bundle);
                check(TheoremId::GFPT3, bx_bundle);
            }
        }
    });
    for (const PosetInstance& poset : all_posets(3)) {
        for (const SelfMap& f : maps3) {
            TheoremBundle bundle;
            bundle.poset = poset;
            bundle.f = f;
            check(TheoremId::WBW, bundle);
            check(TheoremId::OrderPreserving, bundle);
        }
    }
    for (const CKInstance& ck : ck_grid().instances) {
        for (const SelfMap& f : all_self_maps(ck.metric.size())) {
            TheoremBundle bundle;
            bundle.ck = ck;
            bundle.f = f;
            check(TheoremId::CaristiKirk, bundle);
            TheoremBundle ot_bundle;
            ot_bundle.ot = ot_from_ck(ck, 0);
            ot_bundle.f = f;
            check(TheoremId::OettliThera, ot_bundle);
        }
    }
    note = std::to_string(bundles) + " bundles, " + std::to_string(alarms) + " alarms";
    return alarms == 0;
}

bool criterion_caristi_kirk_suite(std::string& note) {
    std::uint64_t instances = 0;
    for (const CKInstance& ck : ck_grid().instances) {
        ++instances;
        BxSpace bx = caristi_kirk_balls(ck);
        BxConditionFlags flags = check_bx_conditions(bx.space, bx.assignment);
        if (!flags.nb || !flags.c1 || !flags.c2s) return false;
        // every maximal nest meets in a singleton ball B_a = {a}
        const int k = bx.space.ball_count();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            std::vector<Subset> chain;
            for (int i = 0; i < k; ++i)
                if (mask & (std::uint64_t{1} << i)) chain.push_back(bx.space.ball(i));
            bool is_chain = true;
            for (size_t i = 0; i < chain.size() && is_chain; ++i)
                for (size_t j = i + 1; j < chain.size(); ++j)
                    if (!chain[i].comparable_with(chain[j])) {
                        is_chain = false;
                        break;
                    }
            if (!is_chain) continue;
            bool maximal = true;
            for (int i = 0; i < k && maximal; ++i) {
                if (mask & (std::uint64_t{1} << i)) continue;
                bool extends = true;
                for (Subset c : chain) extends = extends && bx.space.ball(i).comparable_with(c);
                maximal = !extends;
            }
            if (!maximal) continue;
            Subset meet = intersection(chain);
            if (meet.count() != 1) return false;
            if (!(bx.assignment.b[static_cast<size_t>(meet.min_element())] == meet)) return false;
        }
        // every map satisfying the Caristi condition has a fixed point
        for (const SelfMap& f : all_self_maps(ck.metric.size())) {
            bool caristi = true;
            for (int x = 0; x < ck.metric.size() && caristi; ++x) {
                int fx = f.image[static_cast<size_t>(x)];
                caristi = ck.metric.d(x, fx) <=
                          ck.phi[static_cast<size_t>(x)] - ck.phi[static_cast<size_t>(fx)];
            }
            if (caristi && f.fixed_points().empty()) return false;
        }
    }
    note = std::to_string(instances) + " instances over the rational grids";
    return true;
}

bool criterion_instance_theorems(std::string& note) {
    std::uint64_t topologies = 0, posets = 0, ultrametrics = 0;
    for (int n : {1, 2, 3}) {
        for (const Topology& t : all_topologies(n)) {
            ++topologies;
            if (!classify(topology_balls(t)).s_star) return false;
        }
    }
    for (int n : {1, 2, 3, 4, 5}) {
        for (const PosetInstance& p : all_posets(n)) {
            ++posets;
            LatticeFlags flags = lattice_check(p);
            BallSpace segments = poset_balls(p, PosetVariant::Segments);
            bool s_star = classify(segments).s_star;
            bool bounded = p.top().has_value() && p.bottom().has_value();
            if (flags.is_complete_lattice != (s_star && bounded)) return false;
        }
    }
    // classical chain-valued ultrametrics on up to 4 points
    const int value_count = 4;
    std::vector<char> leq(static_cast<size_t>(value_count) * value_count, 0);
    for (int a = 0; a < value_count; ++a)
        for (int b = a; b < value_count; ++b) leq[static_cast<size_t>(a) * value_count + b] = 1;
    std::vector<std::string> names = {"0", "1", "2", "3"};
    for (int n : {2, 3, 4}) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
        std::vector<int> choice(pairs.size(), 1);
        bool done = false;
        while (!done) {
            std::vector<int> u(static_cast<size_t>(n) * n, 0);
            for (size_t p = 0; p < pairs.size(); ++p) {
                u[static_cast<size_t>(pairs[p].first) * n + pairs[p].second] = choice[p];
                u[static_cast<size_t>(pairs[p].second) * n + pairs[p].first] = choice[p];
            }
            bool ultra = true;
            for (int i = 0; i < n && ultra; ++i)
                for (int j = 0; j < n && ultra; ++j)
                    for (int k = 0; k < n; ++k)
                        if (u[static_cast<size_t>(i) * n + k] >
                            std::max(u[static_cast<size_t>(i) * n + j],
                                     u[static_cast<size_t>(j) * n + k])) {
                            ultra = false;
                            break;
                        }
            if (ultra) {
                ++ultrametrics;
                std::vector<std::string> labels;
                for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
                UltrametricInstance inst(GroundSet(labels), names, leq, u);
                if (!inst.classical()) return false;
                BallSpace closed = ultrametric_balls(inst, UltrametricVariant::Closed);
                BallSpace precise = ultrametric_balls(inst, UltrametricVariant::Precise);
                BallSpace full = ultrametric_balls(inst, UltrametricVariant::Full);
                if (!is_tree_like(closed) || !is_tree_like(precise)) return false;
                PropertyReport full_report = classify(full);
                if (!full_report.s_star || !full_report.tree_like || !full_report.int_closed)
                    return false;
            }
            done = true;
            for (size_t p = pairs.size(); p-- > 0;) {
                if (++choice[p] < value_count) {
                    done = false;
                    break;
                }
                choice[p] = 1;
            }
        }
    }
    note = std::to_string(topologies) + " topologies, " + std::to_string(posets) + " posets, " +
           std::to_string(ultrametrics) + " ultrametric instances";
    return true;
}

bool criterion_knaster_tarski(std::string& note) {
    std::uint64_t suites = 0;
    bool ok = true;
    std::vector<SelfMap> maps3 = all_self_maps(3);
    std::vector<SelfMap> maps2 = all_self_maps(2);
    std::vector<SelfMap> maps1 = all_self_maps(1);
    for (int n : {1, 2, 3}) {
        const auto& maps = n == 1 ? maps1 : n == 2 ? maps2 : maps3;
        enumerate_spaces(n, false, [&](const BallSpace& space) {
            if (!classify(space).s_star) return;
            for (const SelfMap& f : maps) {
                KnasterTarskiReport rep = knaster_tarski_suite(space, f);
                if (!rep.hypothesis_plain) continue;
                ++suites;
                ok = ok && rep.fix_space.has_value() && rep.fix_space_is_s_star;
                if (rep.ball_continuous) ok = ok && rep.induced_families_equal;
                if (rep.hypothesis_fclosed)
                    ok = ok && rep.fix_space_fclosed.has_value() && rep.fclosed_space_is_s_star;
            }
        });
    }
    note = std::to_string(suites) + " hypothesis-satisfying pairs";
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "hierarchy soundness over all n=3 and canonical n=4 spaces", 60000,
         criterion_implications},
        {2, "fast vs exhaustive oracle agreement", 120000, criterion_agreement},
        {3, "equivalence table rows at n=3 and canonical n=4", 120000,
         criterion_equivalence_table},
        {4, "strictness witnesses match the reference spaces", 120000, criterion_witnesses},
        {5, "pr product counterexample is not S2c", 120000, criterion_product_counterexample},
        {6, "closure operators reach S* and preserve S1c", 30000, criterion_closures},
        {7, "fixed-point soundness sweep never alarms", 600000, criterion_soundness_sweep},
        {8, "Caristi-Kirk suite over rational grids", 60000, criterion_caristi_kirk_suite},
        {9, "instance theorems for topologies, lattices and ultrametrics", 120000,
         criterion_instance_theorems},
        {10, "Knaster-Tarski analogue on small S* spaces", 60000, criterion_knaster_tarski},
    };
    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string note;
        bool pass = false;
        try {
            pass = criterion.body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (elapsed > criterion.budget_ms) {
            pass = false;
            note += note.empty() ? "" : "; ";
            note += "over the " + std::to_string(criterion.budget_ms / 1000) + " s budget";
        }
        std::printf("criterion %2d [%s] %s%s%s (%lld.%03lld s)\n", criterion.number,
                    pass ? "PASS" : "FAIL", criterion.name.c_str(), note.empty() ? "" : " — ",
                    note.c_str(), static_cast<long long>(elapsed / 1000),
                    static_cast<long long>(elapsed % 1000));
        if (!pass) ++failures;
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}

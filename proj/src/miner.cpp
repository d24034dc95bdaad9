#include "ballspace/miner.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace ballspace {

namespace {

GroundSet numbered_ground(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
}

// All nonempty subsets of an n-set in canonical order; family-code bit i
// selects the i-th entry.
std::vector<Subset> ball_universe(int n) {
    std::vector<Subset> universe;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) universe.push_back(Subset(m));
    std::sort(universe.begin(), universe.end(), canonical_less);
    return universe;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::uint64_t permute_mask(std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    while (mask) {
        int i = std::countr_zero(mask);
        out |= std::uint64_t{1} << perm[static_cast<size_t>(i)];
        mask &= mask - 1;
    }
    return out;
}

std::vector<std::uint64_t> sorted_masks(std::span<const Subset> family) {
    std::vector<std::uint64_t> masks;
    for (Subset s : family) masks.push_back(s.bits);
    std::sort(masks.begin(), masks.end());
    return masks;
}

void check_ground_size(int n) {
    if (n < 1 || n > kMinerMaxGround)
        throw input_error("exhaustive enumeration supports ground sizes 1.." +
                          std::to_string(kMinerMaxGround));
}

std::vector<Subset> family_from_code(const std::vector<Subset>& universe, std::uint64_t code) {
    std::vector<Subset> family;
    while (code) {
        family.push_back(universe[static_cast<size_t>(std::countr_zero(code))]);
        code &= code - 1;
    }
    return family;
}

// Chunked deterministic parallelism: each worker owns a contiguous code
// range and an accumulator; accumulators merge in range order.
template <class Acc, class Work>
std::vector<Acc> run_chunks(std::uint64_t first, std::uint64_t last, int jobs, Work work) {
    jobs = std::max(1, jobs);
    std::uint64_t total = last - first + 1;
    jobs = static_cast<int>(std::min<std::uint64_t>(jobs, total));
    std::vector<Acc> accs(static_cast<size_t>(jobs));
    std::vector<std::thread> threads;
    std::uint64_t chunk = total / jobs, extra = total % jobs;
    std::uint64_t lo = first;
    for (int t = 0; t < jobs; ++t) {
        std::uint64_t size = chunk + (static_cast<std::uint64_t>(t) < extra ? 1 : 0);
        std::uint64_t hi = lo + size - 1;
        threads.emplace_back([&, t, lo, hi]() { work(accs[static_cast<size_t>(t)], lo, hi); });
        lo = hi + 1;
    }
    for (auto& th : threads) th.join();
    return accs;
}

} // namespace

std::uint64_t family_count(int n) {
    check_ground_size(n);
    int u = (1 << n) - 1;
    return (std::uint64_t{1} << u) - 1;
}

std::vector<Subset> canonical_form(int n, std::span<const Subset> family) {
    auto perms = all_permutations(n);
    std::vector<std::uint64_t> best;
    for (const auto& perm : perms) {
        std::vector<std::uint64_t> mapped;
        for (Subset s : family) mapped.push_back(permute_mask(s.bits, perm));
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best) best = std::move(mapped);
    }
    std::vector<Subset> out;
    for (std::uint64_t m : best) out.push_back(Subset(m));
    return out;
}

bool is_canonical(int n, std::span<const Subset> family) {
    auto self = sorted_masks(family);
    auto canon = canonical_form(n, family);
    return self == sorted_masks(canon);
}

std::uint64_t orbit_size(int n, std::span<const Subset> family) {
    auto self = sorted_masks(family);
    std::uint64_t stabilizer = 0, total = 0;
    for (const auto& perm : all_permutations(n)) {
        ++total;
        std::vector<std::uint64_t> mapped;
        for (Subset s : family) mapped.push_back(permute_mask(s.bits, perm));
        std::sort(mapped.begin(), mapped.end());
        if (mapped == self) ++stabilizer;
    }
    return total / stabilizer;
}

void enumerate_spaces(int n, bool canonical_only,
                      const std::function<void(const BallSpace&)>& fn) {
    check_ground_size(n);
    GroundSet ground = numbered_ground(n);
    auto universe = ball_universe(n);
    std::uint64_t codes = family_count(n);
    for (std::uint64_t code = 1; code <= codes; ++code) {
        auto family = family_from_code(universe, code);
        if (canonical_only && !is_canonical(n, family)) continue;
        fn(BallSpace(ground, std::move(family)));
    }
}

ImplicationSummary verify_implications(int n, bool canonical_only, int jobs) {
    check_ground_size(n);
    GroundSet ground = numbered_ground(n);
    auto universe = ball_universe(n);
    const auto& names = property_names();

    struct Acc {
        ImplicationSummary summary;
        std::vector<std::uint64_t> counts;
    };
    auto accs = run_chunks<Acc>(
        1, family_count(n), jobs, [&](Acc& acc, std::uint64_t lo, std::uint64_t hi) {
            acc.counts.assign(names.size(), 0);
            for (std::uint64_t code = lo; code <= hi; ++code) {
                auto family = family_from_code(universe, code);
                if (canonical_only && !is_canonical(n, family)) continue;
                std::uint64_t weight = canonical_only ? orbit_size(n, family) : 1;
                BallSpace space(ground, family);
                PropertyReport report = classify(space);
                acc.summary.representatives += 1;
                acc.summary.covered += weight;
                for (size_t p = 0; p < names.size(); ++p)
                    if (*report_property(report, names[p])) acc.counts[p] += weight;
                auto violations = validate_report(report);
                if (!violations.empty()) {
                    acc.summary.violations += weight;
                    for (const auto& v : violations)
                        acc.summary.violation_notes.push_back(
                            family_to_string(ground, space.balls()) + ": " + v);
                }
            }
        });

    ImplicationSummary out;
    std::vector<std::uint64_t> counts(names.size(), 0);
    for (const Acc& acc : accs) {
        out.representatives += acc.summary.representatives;
        out.covered += acc.summary.covered;
        out.violations += acc.summary.violations;
        for (size_t p = 0; p < names.size(); ++p) counts[p] += acc.counts[p];
        out.violation_notes.insert(out.violation_notes.end(), acc.summary.violation_notes.begin(),
                                   acc.summary.violation_notes.end());
    }
    for (size_t p = 0; p < names.size(); ++p) out.property_counts[names[p]] = counts[p];
    return out;
}

namespace {

struct EquivalenceRowDef {
    const char* condition;
    bool (*applies)(const BallSpace&, const PropertyReport&);
    bool (*holds)(const PropertyReport&);
};

bool all_singletons_are_balls(const BallSpace& space) {
    for (int i = 0; i < space.ground().size(); ++i)
        if (!space.is_ball(Subset::singleton(i))) return false;
    return true;
}

bool rows_collapse(const PropertyReport& r, int from_level, int to_level) {
    for (int level = from_level; level <= to_level; ++level) {
        if (r.at(level, SystemKind::Nest) != r.at(level, SystemKind::Directed) ||
            r.at(level, SystemKind::Directed) != r.at(level, SystemKind::Centered))
            return false;
    }
    return true;
}

const EquivalenceRowDef kRows[] = {
    {"no condition", [](const BallSpace&, const PropertyReport&) { return true; },
     [](const PropertyReport& r) {
         return r.at(4, SystemKind::Nest) == r.at(4, SystemKind::Directed);
     }},
    {"all singletons are balls",
     [](const BallSpace& s, const PropertyReport&) { return all_singletons_are_balls(s); },
     [](const PropertyReport& r) {
         return r.at(1, SystemKind::Nest) == r.at(2, SystemKind::Nest) &&
                r.at(1, SystemKind::Directed) == r.at(2, SystemKind::Directed) &&
                r.at(1, SystemKind::Centered) == r.at(2, SystemKind::Centered);
     }},
    {"tree-like", [](const BallSpace&, const PropertyReport& r) { return r.tree_like; },
     [](const PropertyReport& r) { return rows_collapse(r, 1, 5); }},
    {"tree-like, all singletons are balls",
     [](const BallSpace& s, const PropertyReport& r) {
         return r.tree_like && all_singletons_are_balls(s);
     },
     [](const PropertyReport& r) {
         bool first = r.at(1, SystemKind::Nest);
         for (SystemKind k : {SystemKind::Nest, SystemKind::Directed, SystemKind::Centered}) {
             if (r.at(1, k) != first || r.at(2, k) != first) return false;
         }
         return rows_collapse(r, 3, 5);
     }},
    {"finitely intersection closed",
     [](const BallSpace&, const PropertyReport& r) { return r.fin_int_closed; },
     [](const PropertyReport& r) {
         for (int level = 1; level <= 5; ++level)
             if (r.at(level, SystemKind::Directed) != r.at(level, SystemKind::Centered))
                 return false;
         return true;
     }},
    {"chain intersection closed",
     [](const BallSpace&, const PropertyReport& r) { return r.chain_int_closed; },
     [](const PropertyReport& r) {
         for (int level = 2; level <= 5; ++level)
             if (r.at(level, SystemKind::Nest) != r.at(1, SystemKind::Nest)) return false;
         return true;
     }},
    {"intersection closed",
     [](const BallSpace&, const PropertyReport& r) { return r.int_closed; },
     [](const PropertyReport& r) {
         bool first = r.at(1, SystemKind::Nest);
         for (int level = 1; level <= 5; ++level)
             for (SystemKind k : {SystemKind::Nest, SystemKind::Directed, SystemKind::Centered})
                 if (r.at(level, k) != first) return false;
         return true;
     }},
};

constexpr size_t kRowCount = std::size(kRows);

} // namespace

EquivalenceSummary verify_equivalence_table(int n, bool canonical_only, int jobs) {
    check_ground_size(n);
    GroundSet ground = numbered_ground(n);
    auto universe = ball_universe(n);

    struct Acc {
        EquivalenceSummary summary;
        std::uint64_t row_spaces[kRowCount] = {};
        std::uint64_t row_violations[kRowCount] = {};
    };
    auto accs = run_chunks<Acc>(
        1, family_count(n), jobs, [&](Acc& acc, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t code = lo; code <= hi; ++code) {
                auto family = family_from_code(universe, code);
                if (canonical_only && !is_canonical(n, family)) continue;
                std::uint64_t weight = canonical_only ? orbit_size(n, family) : 1;
                BallSpace space(ground, family);
                PropertyReport report = classify(space);
                acc.summary.representatives += 1;
                acc.summary.covered += weight;
                for (size_t row = 0; row < kRowCount; ++row) {
                    if (!kRows[row].applies(space, report)) continue;
                    acc.row_spaces[row] += weight;
                    if (!kRows[row].holds(report)) {
                        acc.row_violations[row] += weight;
                        acc.summary.violations += weight;
                        acc.summary.violation_notes.push_back(
                            std::string(kRows[row].condition) + ": " +
                            family_to_string(ground, space.balls()));
                    }
                }
            }
        });

    EquivalenceSummary out;
    out.rows.resize(kRowCount);
    for (size_t row = 0; row < kRowCount; ++row) out.rows[row].condition = kRows[row].condition;
    for (const Acc& acc : accs) {
        out.representatives += acc.summary.representatives;
        out.covered += acc.summary.covered;
        out.violations += acc.summary.violations;
        for (size_t row = 0; row < kRowCount; ++row) {
            out.rows[row].spaces += acc.row_spaces[row];
            out.rows[row].violations += acc.row_violations[row];
        }
        out.violation_notes.insert(out.violation_notes.end(), acc.summary.violation_notes.begin(),
                                   acc.summary.violation_notes.end());
    }
    return out;
}

std::optional<WitnessResult> find_witness(std::string_view prop_a, std::string_view prop_b, int n,
                                          int /*jobs*/) {
    check_ground_size(n);
    if (prop_a == prop_b) throw input_error("witness search needs two distinct properties");
    PropertyReport probe;
    if (!report_property(probe, prop_a)) throw input_error("unknown property '" + std::string(prop_a) + "'");
    if (!report_property(probe, prop_b)) throw input_error("unknown property '" + std::string(prop_b) + "'");
    GroundSet ground = numbered_ground(n);
    auto universe = ball_universe(n);
    std::uint64_t codes = family_count(n);
    // Ascending code order makes the result the least canonical family; the
    // scan is cheap enough that parallelism would only complicate that.
    for (std::uint64_t code = 1; code <= codes; ++code) {
        auto family = family_from_code(universe, code);
        if (!is_canonical(n, family)) continue;
        BallSpace space(ground, std::move(family));
        PropertyReport report = classify(space);
        if (*report_property(report, prop_a) && !*report_property(report, prop_b)) {
            WitnessResult result{std::move(space), report,
                                 std::string(prop_a) + " holds, " + std::string(prop_b) + " fails"};
            return result;
        }
    }
    return std::nullopt;
}

MinerRun run_miner_job(const MinerJob& job, int jobs) {
    MinerRun run;
    switch (job.mode) {
        case MinerJob::Mode::Implications:
            run.implications = verify_implications(job.n, job.canonical_only, jobs);
            break;
        case MinerJob::Mode::EquivalenceTable:
            run.equivalence = verify_equivalence_table(job.n, job.canonical_only, jobs);
            break;
        case MinerJob::Mode::Witness:
            run.witness = find_witness(job.prop_a, job.prop_b, job.n, jobs);
            break;
    }
    return run;
}

AgreementSummary fast_exhaustive_agreement(int n, std::uint64_t samples, std::uint64_t seed,
                                           int jobs) {
    check_ground_size(n);
    GroundSet ground = numbered_ground(n);
    auto universe = ball_universe(n);
    std::vector<std::uint64_t> codes;
    if (samples == 0) {
        for (std::uint64_t code = 1; code <= family_count(n); ++code) codes.push_back(code);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist(1, family_count(n));
        for (std::uint64_t i = 0; i < samples; ++i) codes.push_back(dist(rng));
    }
    auto accs = run_chunks<AgreementSummary>(
        0, codes.size() - 1, jobs, [&](AgreementSummary& acc, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = lo; i <= hi; ++i) {
                BallSpace space(ground, family_from_code(universe, codes[static_cast<size_t>(i)]));
                PropertyReport fast = classify(space, ClassifyMode::Fast);
                PropertyReport slow = classify(space, ClassifyMode::Exhaustive);
                acc.checked += 1;
                if (!(fast == slow)) {
                    acc.mismatches += 1;
                    acc.mismatch_notes.push_back(family_to_string(ground, space.balls()));
                }
            }
        });
    AgreementSummary out;
    for (const auto& acc : accs) {
        out.checked += acc.checked;
        out.mismatches += acc.mismatches;
        out.mismatch_notes.insert(out.mismatch_notes.end(), acc.mismatch_notes.begin(),
                                  acc.mismatch_notes.end());
    }
    return out;
}

} // namespace ballspace

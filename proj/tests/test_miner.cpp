#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ballspace/miner.hpp"
#include "helpers.hpp"

using namespace ballspace;

namespace {

// Family isomorphism by brute force over ground permutations.
bool isomorphic(const BallSpace& a, const BallSpace& b) {
    if (a.ground().size() != b.ground().size()) return false;
    int n = a.ground().size();
    return canonical_form(n, a.balls()) == canonical_form(n, b.balls());
}

} // namespace

TEST_CASE("family counts") {
    CHECK(family_count(1) == 1);
    CHECK(family_count(2) == 7);
    CHECK(family_count(3) == 127);
    CHECK(family_count(4) == 32767);
    int count = 0;
    enumerate_spaces(2, false, [&](const BallSpace&) { ++count; });
    CHECK(count == 7);
    CHECK_THROWS_AS(family_count(5), input_error);
}

TEST_CASE("canonicalization is permutation-invariant and idempotent") {
    std::mt19937_64 rng(5);
    auto perms3 = std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 2);
        std::uint64_t universe = (std::uint64_t{1} << n) - 1;
        std::vector<Subset> family;
        int count = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) family.push_back(Subset(1 + rng() % universe));
        auto canon = canonical_form(n, family);
        CHECK(canonical_form(n, canon) == canon);
        CHECK(is_canonical(n, canon));
        if (n == 3) {
            const auto& perm = perms3[rng() % perms3.size()];
            std::vector<Subset> mapped;
            for (Subset s : family) {
                Subset t;
                for_each_element(s, [&](int i) {
                    t = t | Subset::singleton(perm[static_cast<size_t>(i)]);
                });
                mapped.push_back(t);
            }
            CHECK(canonical_form(n, mapped) == canon);
        }
    }
}

TEST_CASE("orbit sizes add up to the full family count") {
    for (int n : {2, 3}) {
        std::uint64_t covered = 0;
        enumerate_spaces(n, true, [&](const BallSpace& space) {
            covered += orbit_size(n, space.balls());
        });
        CHECK(covered == family_count(n));
    }
}

TEST_CASE("implications hold exhaustively") {
    ImplicationSummary two = verify_implications(2);
    CHECK(two.covered == 7);
    CHECK(two.violations == 0);
    ImplicationSummary three = verify_implications(3);
    CHECK(three.covered == 127);
    CHECK(three.representatives == 127);
    CHECK(three.violations == 0);
}

TEST_CASE("parallel runs produce identical summaries") {
    ImplicationSummary serial = verify_implications(3, false, 1);
    ImplicationSummary parallel = verify_implications(3, false, 4);
    CHECK(serial.covered == parallel.covered);
    CHECK(serial.violations == parallel.violations);
    CHECK(serial.property_counts == parallel.property_counts);

    EquivalenceSummary eq_serial = verify_equivalence_table(3, false, 1);
    EquivalenceSummary eq_parallel = verify_equivalence_table(3, false, 3);
    CHECK(eq_serial.covered == eq_parallel.covered);
    REQUIRE(eq_serial.rows.size() == eq_parallel.rows.size());
    for (size_t i = 0; i < eq_serial.rows.size(); ++i) {
        CHECK(eq_serial.rows[i].spaces == eq_parallel.rows[i].spaces);
        CHECK(eq_serial.rows[i].violations == eq_parallel.rows[i].violations);
    }
}

TEST_CASE("equivalence table rows hold on all three-element spaces") {
    EquivalenceSummary summary = verify_equivalence_table(3);
    CHECK(summary.covered == 127);
    CHECK(summary.violations == 0);
    REQUIRE(summary.rows.size() == 7);
    CHECK(summary.rows[0].spaces == 127); // no condition applies everywhere
    for (const auto& row : summary.rows) CHECK(row.violations == 0);
}

TEST_CASE("witness search finds the overlap example") {
    auto result = find_witness("S1c", "S2c", 3);
    REQUIRE(result.has_value());
    CHECK(isomorphic(result->space, testutil::i1()));
    CHECK(*report_property(result->report, "S1c"));
    CHECK_FALSE(*report_property(result->report, "S2c"));
    // the reported classification matches a fresh one
    CHECK(classify(result->space) == result->report);
}

TEST_CASE("witness search can exhaust") {
    // S4c and S5c cannot be separated on three points: a non-ball semilattice
    // element produced by two-element meets is a singleton, and a largest
    // ball inside a singleton is that singleton.
    auto result = find_witness("S4c", "S5c", 3);
    CHECK_FALSE(result.has_value());
    auto at4 = find_witness("S4c", "S5c", 4);
    CHECK(at4.has_value());
}

TEST_CASE("witness search validates its inputs") {
    CHECK_THROWS_AS(find_witness("S1c", "S1c", 3), input_error);
    CHECK_THROWS_AS(find_witness("bogus", "S2c", 3), input_error);
}

TEST_CASE("jobs dispatch to the matching sweep") {
    MinerJob implications{3, MinerJob::Mode::Implications, "", "", false};
    MinerRun a = run_miner_job(implications, 2);
    REQUIRE(a.implications.has_value());
    CHECK(a.implications->covered == 127);

    MinerJob witness{3, MinerJob::Mode::Witness, "S1c", "S2c", true};
    MinerRun b = run_miner_job(witness);
    REQUIRE(b.witness.has_value());
    CHECK(isomorphic(b.witness->space, testutil::i1()));

    MinerJob table{2, MinerJob::Mode::EquivalenceTable, "", "", false};
    MinerRun c = run_miner_job(table);
    REQUIRE(c.equivalence.has_value());
    CHECK(c.equivalence->violations == 0);
}

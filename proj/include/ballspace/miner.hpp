#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ballspace/hierarchy.hpp"

namespace ballspace {

// Exhaustive enumeration is limited to ground sizes whose full family space
// fits a desk run: 2^(2^n - 1) - 1 families.
inline constexpr int kMinerMaxGround = 4;

struct MinerJob {
    int n = 3;
    enum class Mode { Implications, EquivalenceTable, Witness } mode = Mode::Implications;
    std::string prop_a, prop_b; // Witness mode only; must be distinct
    bool canonical_only = false;
};

struct ImplicationSummary;
struct EquivalenceSummary;
struct WitnessResult;

struct MinerRun;

// Dispatches a job to the matching sweep below.
MinerRun run_miner_job(const MinerJob& job, int jobs = 1);

// Number of families on an n-element ground set: 2^(2^n - 1) - 1.
std::uint64_t family_count(int n);

// Streams all nonempty families of nonempty subsets of an n-set, in
// ascending family-code order (code bit i = i-th subset in canonical order).
// canonical_only keeps one representative per ground-permutation orbit.
void enumerate_spaces(int n, bool canonical_only, const std::function<void(const BallSpace&)>& fn);

// Lexicographically least mask list over all ground permutations.
std::vector<Subset> canonical_form(int n, std::span<const Subset> family);
bool is_canonical(int n, std::span<const Subset> family);
// Orbit size of the family under ground permutations.
std::uint64_t orbit_size(int n, std::span<const Subset> family);

struct ImplicationSummary {
    std::uint64_t representatives = 0; // families actually classified
    std::uint64_t covered = 0;         // families covered (orbit-weighted when canonical)
    std::uint64_t violations = 0;
    std::map<std::string, std::uint64_t> property_counts; // orbit-weighted
    std::vector<std::string> violation_notes;
};

// Classifies every enumerated space and asserts every implication of the
// hierarchy diagram via validate_report. Deterministic for any job count.
ImplicationSummary verify_implications(int n, bool canonical_only = false, int jobs = 1);

struct EquivalenceRowSummary {
    std::string condition;
    std::uint64_t spaces = 0; // spaces satisfying the row's condition (orbit-weighted)
    std::uint64_t violations = 0;
};

struct EquivalenceSummary {
    std::uint64_t representatives = 0;
    std::uint64_t covered = 0;
    std::uint64_t violations = 0;
    std::vector<EquivalenceRowSummary> rows; // the seven table rows, fixed order
    std::vector<std::string> violation_notes;
};

EquivalenceSummary verify_equivalence_table(int n, bool canonical_only = false, int jobs = 1);

struct WitnessResult {
    BallSpace space;
    PropertyReport report;
    std::string note; // which property held and which failed
};

// First canonical space (in family-code order) with propA and not propB.
std::optional<WitnessResult> find_witness(std::string_view prop_a, std::string_view prop_b, int n,
                                          int jobs = 1);

struct MinerRun {
    std::optional<ImplicationSummary> implications;
    std::optional<EquivalenceSummary> equivalence;
    std::optional<WitnessResult> witness; // absent in Witness mode = exhausted
};

struct AgreementSummary {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> mismatch_notes;
};

// Fast vs Exhaustive classification agreement; samples == 0 sweeps every
// family, otherwise draws that many family codes from a seeded generator.
AgreementSummary fast_exhaustive_agreement(int n, std::uint64_t samples = 0,
                                           std::uint64_t seed = 0, int jobs = 1);

} // namespace ballspace

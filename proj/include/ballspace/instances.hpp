#pragma once

#include <optional>
#include <vector>

#include "ballspace/constructions.hpp"
#include "ballspace/core.hpp"
#include "ballspace/rational.hpp"

namespace ballspace {

// Finite metric space with exact rational distances. Construction validates
// symmetry, the zero diagonal, positivity off the diagonal and the triangle
// inequality, reporting a failing triple.
class MetricInstance {
public:
    MetricInstance(GroundSet points, std::vector<Rational> d);

    const GroundSet& points() const { return points_; }
    int size() const { return points_.size(); }
    const Rational& d(int i, int j) const { return d_[static_cast<size_t>(i) * size() + j]; }

private:
    GroundSet points_;
    std::vector<Rational> d_; // n*n, row major
};

// Ultrametric with values in a finite poset that has a least element 0.
// Construction validates the partial order on the value set and (U1)-(U3),
// reporting an offending triple for (U2) violations.
class UltrametricInstance {
public:
    UltrametricInstance(GroundSet points,
                        std::vector<std::string> value_names,
                        std::vector<char> value_leq, // m*m, row major
                        std::vector<int> u);         // n*n value indices

    const GroundSet& points() const { return points_; }
    int size() const { return points_.size(); }
    int value_count() const { return static_cast<int>(value_names_.size()); }
    const std::string& value_name(int v) const { return value_names_[static_cast<size_t>(v)]; }
    bool value_le(int a, int b) const { return value_leq_[static_cast<size_t>(a) * value_count() + b] != 0; }
    int u(int i, int j) const { return u_[static_cast<size_t>(i) * size() + j]; }
    int least_value() const { return least_value_; }

    // Realized value set, ascending when classical.
    std::vector<int> realized_values() const;
    // True iff the realized value set is totally ordered.
    bool classical() const;

private:
    GroundSet points_;
    std::vector<std::string> value_names_;
    std::vector<char> value_leq_;
    std::vector<int> u_;
    int least_value_ = -1;
};

// Finite partial order; construction validates reflexivity, antisymmetry and
// transitivity.
class PosetInstance {
public:
    PosetInstance(GroundSet elements, std::vector<char> leq);

    const GroundSet& elements() const { return elements_; }
    int size() const { return elements_.size(); }
    bool le(int a, int b) const { return leq_[static_cast<size_t>(a) * size() + b] != 0; }

    Subset up_set(int a) const;   // { c : a <= c }
    Subset down_set(int b) const; // { c : c <= b }
    std::optional<int> supremum(Subset s) const; // least upper bound, if any
    std::optional<int> infimum(Subset s) const;
    std::optional<int> top() const;
    std::optional<int> bottom() const;

private:
    GroundSet elements_;
    std::vector<char> leq_;
};

// Metric space with a potential function. Lower semicontinuity and
// boundedness from below are automatic on finite spaces.
struct CKInstance {
    MetricInstance metric;
    std::vector<Rational> phi; // one value per point
};

// Metric space with an Oettli–Théra function (phi2[i][j], +infinity allowed
// off-diagonal) and a distinguished start point. Construction-time
// validation lives in make_ot_instance.
struct OTInstance {
    MetricInstance metric;
    std::vector<ExtRational> phi2; // n*n, row major
    int x0 = 0;
};

// Validates phi(x,x) = 0 and the triangle inequality for phi.
OTInstance make_ot_instance(MetricInstance metric, std::vector<ExtRational> phi2, int x0);

// Closed metric balls B_r(x) over the given radii. An absent radius set
// means "All": every realized distance { d(x,y) : x,y }, the only radii that
// can change the family. Explicit radii must be positive.
BallSpace metric_balls(const MetricInstance& m, const std::optional<std::vector<Rational>>& radii);

enum class UltrametricVariant { Closed, Precise, Full };

// Closed balls B_a(x), precise balls B(x,y), or (classical spaces only) the
// full family over nonempty initial segments of the realized value set.
BallSpace ultrametric_balls(const UltrametricInstance& u, UltrametricVariant variant);

enum class PosetVariant { PrincipalFinal, Segments };

// Principal final segments [a,∞), or all principal segments [a,b] with
// virtual bottom/top endpoints allowed (empty intervals dropped).
BallSpace poset_balls(const PosetInstance& p, PosetVariant variant);

struct LatticeFlags {
    bool is_lattice = false;
    bool is_complete_lattice = false;
};

// Pairwise suprema/infima existence, and the same over all nonempty subsets.
// Finitely the two coincide; both are computed and cross-checked.
LatticeFlags lattice_check(const PosetInstance& p);

// Nonempty closed sets of a (validated) topology.
BallSpace topology_balls(const Topology& t);

struct BxSpace {
    BallSpace space;         // deduplicated family
    BxAssignment assignment; // x -> B_x, pre-deduplication
};

// Caristi–Kirk balls B^phi_x = { y : d(x,y) <= phi(x) - phi(y) }.
BxSpace caristi_kirk_balls(const CKInstance& c);

// Oettli–Théra balls B^phi_x = { y : d(x,y) <= -phi(x,y) }, restricted to
// the ground set B^phi_{x0}.
BxSpace oettli_thera_balls(const OTInstance& o);

} // namespace ballspace

#include "ballspace/instances.hpp"

#include <algorithm>

namespace ballspace {

namespace {

constexpr int kSubsetSweepLimit = 20;

} // namespace

MetricInstance::MetricInstance(GroundSet points, std::vector<Rational> distances)
    : points_(std::move(points)), d_(std::move(distances)) {
    const int n = points_.size();
    if (d_.size() != static_cast<size_t>(n) * n)
        throw input_error("distance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (d(i, j) != d(j, i))
                throw input_error("metric not symmetric at (" + points_.label(i) + ", " +
                                  points_.label(j) + ")");
            if (i == j && d(i, j) != Rational(0))
                throw input_error("metric diagonal must be zero at " + points_.label(i));
            if (i != j && d(i, j) <= Rational(0))
                throw input_error("metric must be positive between " + points_.label(i) + " and " +
                                  points_.label(j));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d(i, k) > d(i, j) + d(j, k))
                    throw input_error("triangle inequality fails at (" + points_.label(i) + ", " +
                                      points_.label(j) + ", " + points_.label(k) + ")");
}

UltrametricInstance::UltrametricInstance(GroundSet points, std::vector<std::string> value_names,
                                         std::vector<char> value_leq, std::vector<int> distances)
    : points_(std::move(points)),
      value_names_(std::move(value_names)),
      value_leq_(std::move(value_leq)),
      u_(std::move(distances)) {
    const int n = points_.size();
    const int m = value_count();
    if (m <= 0) throw input_error("value set must be nonempty");
    if (value_leq_.size() != static_cast<size_t>(m) * m)
        throw input_error("value order must be an " + std::to_string(m) + "x" + std::to_string(m) +
                          " relation");
    if (u_.size() != static_cast<size_t>(n) * n)
        throw input_error("ultrametric matrix must be " + std::to_string(n) + "x" +
                          std::to_string(n));
    for (int a = 0; a < m; ++a) {
        if (!value_le(a, a)) throw input_error("value order not reflexive at " + value_name(a));
        for (int b = 0; b < m; ++b) {
            if (a != b && value_le(a, b) && value_le(b, a))
                throw input_error("value order not antisymmetric at (" + value_name(a) + ", " +
                                  value_name(b) + ")");
            for (int c = 0; c < m; ++c)
                if (value_le(a, b) && value_le(b, c) && !value_le(a, c))
                    throw input_error("value order not transitive at (" + value_name(a) + ", " +
                                      value_name(b) + ", " + value_name(c) + ")");
        }
    }
    for (int a = 0; a < m; ++a) {
        bool least = true;
        for (int b = 0; b < m; ++b) least = least && value_le(a, b);
        if (least) {
            least_value_ = a;
            break;
        }
    }
    if (least_value_ < 0) throw input_error("value set has no least element");
    for (int v : u_)
        if (v < 0 || v >= m) throw input_error("ultrametric value index out of range");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (u(i, j) != u(j, i))
                throw input_error("(U3) fails at (" + points_.label(i) + ", " + points_.label(j) +
                                  ")");
            if (i == j && u(i, j) != least_value_)
                throw input_error("(U1) fails: u(x,x) must be 0 at " + points_.label(i));
            if (i != j && u(i, j) == least_value_)
                throw input_error("(U1) fails: u(x,y) = 0 for distinct " + points_.label(i) +
                                  ", " + points_.label(j));
        }
    }
    for (int g = 0; g < m; ++g)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (value_le(u(i, j), g) && value_le(u(j, k), g) && !value_le(u(i, k), g))
                        throw input_error("(U2) fails at (" + points_.label(i) + ", " +
                                          points_.label(j) + ", " + points_.label(k) +
                                          ") with bound " + value_name(g));
}

std::vector<int> UltrametricInstance::realized_values() const {
    std::vector<int> vals;
    for (int v : u_)
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
    std::sort(vals.begin(), vals.end(), [&](int a, int b) { return a != b && value_le(a, b); });
    return vals;
}

bool UltrametricInstance::classical() const {
    std::vector<int> vals = realized_values();
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (!value_le(vals[i], vals[j]) && !value_le(vals[j], vals[i])) return false;
    return true;
}

PosetInstance::PosetInstance(GroundSet elements, std::vector<char> leq)
    : elements_(std::move(elements)), leq_(std::move(leq)) {
    const int n = elements_.size();
    if (leq_.size() != static_cast<size_t>(n) * n)
        throw input_error("order relation must be " + std::to_string(n) + "x" + std::to_string(n));
    for (int a = 0; a < n; ++a) {
        if (!le(a, a)) throw input_error("order not reflexive at " + elements_.label(a));
        for (int b = 0; b < n; ++b) {
            if (a != b && le(a, b) && le(b, a))
                throw input_error("order not antisymmetric at (" + elements_.label(a) + ", " +
                                  elements_.label(b) + ")");
            for (int c = 0; c < n; ++c)
                if (le(a, b) && le(b, c) && !le(a, c))
                    throw input_error("order not transitive at (" + elements_.label(a) + ", " +
                                      elements_.label(b) + ", " + elements_.label(c) + ")");
        }
    }
}

Subset PosetInstance::up_set(int a) const {
    Subset s;
    for (int c = 0; c < size(); ++c)
        if (le(a, c)) s = s | Subset::singleton(c);
    return s;
}

Subset PosetInstance::down_set(int b) const {
    Subset s;
    for (int c = 0; c < size(); ++c)
        if (le(c, b)) s = s | Subset::singleton(c);
    return s;
}

std::optional<int> PosetInstance::supremum(Subset s) const {
    if (s.empty()) throw input_error("supremum of the empty set is not defined here");
    Subset bounds = elements_.universe();
    for_each_element(s, [&](int a) { bounds = bounds & up_set(a); });
    std::optional<int> least;
    for_each_element(bounds, [&](int c) {
        bool below_all = true;
        for_each_element(bounds, [&](int d) { below_all = below_all && le(c, d); });
        if (below_all && !least) least = c;
    });
    return least;
}

std::optional<int> PosetInstance::infimum(Subset s) const {
    if (s.empty()) throw input_error("infimum of the empty set is not defined here");
    Subset bounds = elements_.universe();
    for_each_element(s, [&](int a) { bounds = bounds & down_set(a); });
    std::optional<int> greatest;
    for_each_element(bounds, [&](int c) {
        bool above_all = true;
        for_each_element(bounds, [&](int d) { above_all = above_all && le(d, c); });
        if (above_all && !greatest) greatest = c;
    });
    return greatest;
}

std::optional<int> PosetInstance::top() const {
    for (int c = 0; c < size(); ++c) {
        bool top = true;
        for (int b = 0; b < size(); ++b) top = top && le(b, c);
        if (top) return c;
    }
    return std::nullopt;
}

std::optional<int> PosetInstance::bottom() const {
    for (int c = 0; c < size(); ++c) {
        bool bottom = true;
        for (int b = 0; b < size(); ++b) bottom = bottom && le(c, b);
        if (bottom) return c;
    }
    return std::nullopt;
}

BallSpace metric_balls(const MetricInstance& m, const std::optional<std::vector<Rational>>& radii) {
    std::vector<Rational> rs;
    if (radii) {
        rs = *radii;
        if (rs.empty()) throw input_error("radius set must be nonempty");
        for (const Rational& r : rs)
            if (r <= Rational(0)) throw input_error("radii must be positive");
    } else {
        // Every realized distance; any other radius duplicates one of these
        // families. Includes 0, which contributes the singletons.
        for (int i = 0; i < m.size(); ++i)
            for (int j = 0; j < m.size(); ++j)
                if (std::find(rs.begin(), rs.end(), m.d(i, j)) == rs.end()) rs.push_back(m.d(i, j));
    }
    std::vector<Subset> balls;
    for (int x = 0; x < m.size(); ++x) {
        for (const Rational& r : rs) {
            Subset b;
            for (int y = 0; y < m.size(); ++y)
                if (m.d(x, y) <= r) b = b | Subset::singleton(y);
            balls.push_back(b);
        }
    }
    return BallSpace(m.points(), std::move(balls));
}

BallSpace ultrametric_balls(const UltrametricInstance& u, UltrametricVariant variant) {
    const int n = u.size();
    std::vector<Subset> balls;
    auto closed_ball = [&](int x, int alpha) {
        Subset b;
        for (int y = 0; y < n; ++y)
            if (u.value_le(u.u(x, y), alpha)) b = b | Subset::singleton(y);
        return b;
    };
    switch (variant) {
        case UltrametricVariant::Closed:
            for (int x = 0; x < n; ++x)
                for (int a = 0; a < u.value_count(); ++a) balls.push_back(closed_ball(x, a));
            break;
        case UltrametricVariant::Precise:
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) balls.push_back(closed_ball(x, u.u(x, y)));
            break;
        case UltrametricVariant::Full: {
            if (!u.classical())
                throw precondition_error(
                    "full ultrametric ball space requires a totally ordered value set");
            // Initial segments of a finite chain are principal, so the balls
            // B_S(x) range over the realized radii.
            std::vector<int> realized = u.realized_values();
            for (int x = 0; x < n; ++x)
                for (int a : realized) balls.push_back(closed_ball(x, a));
            break;
        }
    }
    return BallSpace(u.points(), std::move(balls));
}

BallSpace poset_balls(const PosetInstance& p, PosetVariant variant) {
    std::vector<Subset> balls;
    const int n = p.size();
    switch (variant) {
        case PosetVariant::PrincipalFinal:
            for (int a = 0; a < n; ++a) balls.push_back(p.up_set(a));
            break;
        case PosetVariant::Segments: {
            std::vector<Subset> ups, downs;
            for (int a = 0; a < n; ++a) {
                ups.push_back(p.up_set(a));
                downs.push_back(p.down_set(a));
            }
            Subset whole = p.elements().universe();
            ups.push_back(whole);   // virtual bottom endpoint
            downs.push_back(whole); // virtual top endpoint
            for (Subset up : ups) {
                for (Subset down : downs) {
                    Subset seg = up & down;
                    if (!seg.empty()) balls.push_back(seg);
                }
            }
            break;
        }
    }
    return BallSpace(p.elements(), std::move(balls));
}

LatticeFlags lattice_check(const PosetInstance& p) {
    const int n = p.size();
    LatticeFlags flags;
    flags.is_lattice = true;
    for (int a = 0; a < n && flags.is_lattice; ++a) {
        for (int b = a + 1; b < n; ++b) {
            Subset pair = Subset::singleton(a) | Subset::singleton(b);
            if (!p.supremum(pair) || !p.infimum(pair)) {
                flags.is_lattice = false;
                break;
            }
        }
    }
    if (n > kSubsetSweepLimit)
        throw resource_error("complete-lattice check limited to " +
                             std::to_string(kSubsetSweepLimit) + " elements");
    flags.is_complete_lattice = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Subset s(mask);
        if (!p.supremum(s) || !p.infimum(s)) {
            flags.is_complete_lattice = false;
            break;
        }
    }
    bool via_bounds = flags.is_lattice && p.top().has_value() && p.bottom().has_value();
    if (via_bounds != flags.is_complete_lattice)
        throw soundness_error("finite complete-lattice cross-check failed");
    return flags;
}

BallSpace topology_balls(const Topology& t) {
    std::vector<Subset> balls;
    for (Subset s : t.closed_sets())
        if (!s.empty()) balls.push_back(s);
    return BallSpace(t.ground(), std::move(balls));
}

BxSpace caristi_kirk_balls(const CKInstance& c) {
    const int n = c.metric.size();
    if (c.phi.size() != static_cast<size_t>(n))
        throw input_error("phi must assign a value to every point");
    BxAssignment assignment;
    assignment.b.resize(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        Subset b;
        for (int y = 0; y < n; ++y)
            if (c.metric.d(x, y) <= c.phi[static_cast<size_t>(x)] - c.phi[static_cast<size_t>(y)])
                b = b | Subset::singleton(y);
        assignment.b[static_cast<size_t>(x)] = b;
    }
    BallSpace space(c.metric.points(), assignment.b);
    return BxSpace{std::move(space), std::move(assignment)};
}

OTInstance make_ot_instance(MetricInstance metric, std::vector<ExtRational> phi2, int x0) {
    const int n = metric.size();
    if (phi2.size() != static_cast<size_t>(n) * n)
        throw input_error("phi must be an " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
    if (x0 < 0 || x0 >= n) throw input_error("x0 out of range");
    auto at = [&](int i, int j) -> const ExtRational& {
        return phi2[static_cast<size_t>(i) * n + j];
    };
    for (int i = 0; i < n; ++i) {
        if (!at(i, i) || *at(i, i) != Rational(0))
            throw input_error("phi(x,x) must be 0 at " + metric.points().label(i));
    }
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            for (int z = 0; z < n; ++z) {
                // phi(x,y) <= phi(x,z) + phi(z,y); an infinite right side
                // bounds nothing.
                if (!at(x, z) || !at(z, y)) continue;
                Rational rhs = *at(x, z) + *at(z, y);
                if (!at(x, y) || *at(x, y) > rhs)
                    throw input_error("phi triangle inequality fails at (" +
                                      metric.points().label(x) + ", " + metric.points().label(y) +
                                      ", " + metric.points().label(z) + ")");
            }
        }
    }
    // Condition (d) is automatic: a finite infimum over rationals-or-infinity
    // is never -infinity.
    return OTInstance{std::move(metric), std::move(phi2), x0};
}

BxSpace oettli_thera_balls(const OTInstance& o) {
    const int n = o.metric.size();
    auto phi = [&](int i, int j) -> const ExtRational& {
        return o.phi2[static_cast<size_t>(i) * n + j];
    };
    std::vector<Subset> raw(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        Subset b;
        for (int y = 0; y < n; ++y) {
            if (!phi(x, y)) continue; // d(x,y) <= -infinity never holds
            if (o.metric.d(x, y) <= -*phi(x, y)) b = b | Subset::singleton(y);
        }
        raw[static_cast<size_t>(x)] = b;
    }
    Subset ground_mask = raw[static_cast<size_t>(o.x0)];
    std::vector<std::string> labels;
    std::vector<int> new_index(static_cast<size_t>(n), -1);
    for_each_element(ground_mask, [&](int i) {
        new_index[static_cast<size_t>(i)] = static_cast<int>(labels.size());
        labels.push_back(o.metric.points().label(i));
    });
    BxAssignment assignment;
    std::vector<Subset> balls;
    for_each_element(ground_mask, [&](int x) {
        Subset b = raw[static_cast<size_t>(x)];
        if (!b.subset_of(ground_mask))
            throw soundness_error("Oettli-Thera ball escapes the restricted ground set");
        Subset compressed;
        for_each_element(b, [&](int y) {
            compressed = compressed | Subset::singleton(new_index[static_cast<size_t>(y)]);
        });
        assignment.b.push_back(compressed);
        balls.push_back(compressed);
    });
    BallSpace space(GroundSet(std::move(labels)), std::move(balls));
    return BxSpace{std::move(space), std::move(assignment)};
}

} // namespace ballspace

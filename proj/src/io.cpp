#include "ballspace/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ballspace {

namespace {

using nlohmann::json;

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw input_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        Line line;
        line.number = number;
        std::string token;
        std::istringstream stream{std::string(raw)};
        while (stream >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

bool looks_like_json(std::string_view text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{';
    }
    return false;
}

json parse_json_document(std::string_view text, std::string_view expected_format) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw input_error("malformed JSON document");
    if (!doc.is_object() || doc.value("format", "") != expected_format)
        throw input_error("expected a JSON document with format '" +
                          std::string(expected_format) + "'");
    return doc;
}

std::vector<std::string> json_string_list(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array())
        throw input_error("JSON document needs an array field '" + key + "'");
    std::vector<std::string> out;
    for (const auto& item : j[key]) {
        if (!item.is_string()) throw input_error("field '" + key + "' must contain strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

void expect_header(const std::vector<Line>& lines, const char* format) {
    if (lines.empty()) throw input_error("line 1: empty document");
    const Line& head = lines.front();
    if (head.tokens.size() != 2 || head.tokens[0] != format || head.tokens[1] != "v1")
        fail(head.number, std::string("expected header '") + format + " v1'");
}

GroundSet parse_ground_line(const Line& line, const char* keyword) {
    if (line.tokens.empty() || line.tokens[0] != keyword)
        fail(line.number, std::string("expected a '") + keyword + "' line");
    if (line.tokens.size() < 2) fail(line.number, "ground set must be nonempty");
    std::vector<std::string> labels(line.tokens.begin() + 1, line.tokens.end());
    try {
        return GroundSet(std::move(labels));
    } catch (const input_error& e) {
        fail(line.number, e.what());
    }
}

Subset parse_member_list(const Line& line, const GroundSet& ground, size_t from) {
    Subset s;
    for (size_t i = from; i < line.tokens.size(); ++i) {
        auto idx = ground.index_of(line.tokens[i]);
        if (!idx) fail(line.number, "unknown label '" + line.tokens[i] + "'");
        s = s | Subset::singleton(*idx);
    }
    return s;
}

json subset_to_labels(const GroundSet& ground, Subset s) {
    json arr = json::array();
    for_each_element(s, [&](int i) { arr.push_back(ground.label(i)); });
    return arr;
}

Subset labels_to_subset(const GroundSet& ground, const json& arr, const std::string& what) {
    if (!arr.is_array()) throw input_error(what + " must be an array of labels");
    Subset s;
    for (const auto& item : arr) {
        if (!item.is_string()) throw input_error(what + " must contain labels");
        auto idx = ground.index_of(item.get<std::string>());
        if (!idx) throw input_error("unknown label '" + item.get<std::string>() + "' in " + what);
        s = s | Subset::singleton(*idx);
    }
    return s;
}

} // namespace

BallSpace parse_ballspace(std::string_view text) {
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "ballspace");
        GroundSet ground(json_string_list(doc, "ground"));
        if (!doc.contains("balls") || !doc["balls"].is_array())
            throw input_error("JSON document needs an array field 'balls'");
        std::vector<Subset> balls;
        for (const auto& entry : doc["balls"]) {
            Subset b = labels_to_subset(ground, entry, "ball");
            if (b.empty()) throw input_error("empty ball");
            balls.push_back(b);
        }
        if (balls.empty()) throw input_error("empty family");
        return BallSpace(std::move(ground), std::move(balls));
    }
    auto lines = tokenize(text);
    expect_header(lines, "ballspace");
    if (lines.size() < 2) fail(lines.front().number + 1, "missing ground line");
    GroundSet ground = parse_ground_line(lines[1], "ground");
    std::vector<Subset> balls;
    for (size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "ball") fail(line.number, "expected a 'ball' line");
        if (line.tokens.size() < 2) fail(line.number, "empty ball");
        balls.push_back(parse_member_list(line, ground, 1));
    }
    if (balls.empty()) fail(lines.back().number + 1, "empty family");
    return BallSpace(std::move(ground), std::move(balls));
}

std::string emit_ballspace(const BallSpace& space) {
    std::string out = "ballspace v1\nground";
    for (const auto& label : space.ground().labels()) {
        out += ' ';
        out += label;
    }
    out += '\n';
    for (Subset b : space.balls()) {
        out += "ball";
        for_each_element(b, [&](int i) {
            out += ' ';
            out += space.ground().label(i);
        });
        out += '\n';
    }
    return out;
}

std::string emit_ballspace_json(const BallSpace& space) {
    json doc;
    doc["format"] = "ballspace";
    doc["version"] = 1;
    doc["ground"] = space.ground().labels();
    json balls = json::array();
    for (Subset b : space.balls()) balls.push_back(subset_to_labels(space.ground(), b));
    doc["balls"] = std::move(balls);
    return doc.dump(2) + "\n";
}

Topology parse_topology(std::string_view text) {
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "topology");
        GroundSet ground(json_string_list(doc, "ground"));
        if (!doc.contains("closed") || !doc["closed"].is_array())
            throw input_error("JSON document needs an array field 'closed'");
        std::vector<Subset> closed;
        for (const auto& entry : doc["closed"])
            closed.push_back(labels_to_subset(ground, entry, "closed set"));
        return Topology(std::move(ground), std::move(closed));
    }
    auto lines = tokenize(text);
    expect_header(lines, "topology");
    if (lines.size() < 2) fail(lines.front().number + 1, "missing ground line");
    GroundSet ground = parse_ground_line(lines[1], "ground");
    std::vector<Subset> closed;
    for (size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "closed") fail(line.number, "expected a 'closed' line");
        closed.push_back(parse_member_list(line, ground, 1));
    }
    return Topology(std::move(ground), std::move(closed));
}

std::string emit_topology(const Topology& t) {
    std::string out = "topology v1\nground";
    for (const auto& label : t.ground().labels()) {
        out += ' ';
        out += label;
    }
    out += '\n';
    for (Subset s : t.closed_sets()) {
        out += "closed";
        for_each_element(s, [&](int i) {
            out += ' ';
            out += t.ground().label(i);
        });
        out += '\n';
    }
    return out;
}

std::string emit_topology_json(const Topology& t) {
    json doc;
    doc["format"] = "topology";
    doc["version"] = 1;
    doc["ground"] = t.ground().labels();
    json closed = json::array();
    for (Subset s : t.closed_sets()) closed.push_back(subset_to_labels(t.ground(), s));
    doc["closed"] = std::move(closed);
    return doc.dump(2) + "\n";
}

namespace {

// Symmetric distance table fed line by line; diagonal entries are implicit.
class DistanceTable {
public:
    DistanceTable(const GroundSet& points) : n_(points.size()) {
        d_.assign(static_cast<size_t>(n_) * n_, Rational(0));
        given_.assign(static_cast<size_t>(n_) * n_, 0);
    }

    void set(int line, int i, int j, const Rational& value) {
        if (i == j) fail(line, "the diagonal is implicit; no d entry for a point with itself");
        size_t a = static_cast<size_t>(i) * n_ + j, b = static_cast<size_t>(j) * n_ + i;
        if (given_[a]) fail(line, "duplicate distance entry");
        d_[a] = d_[b] = value;
        given_[a] = given_[b] = 1;
    }

    std::vector<Rational> finish(const GroundSet& points) const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!given_[static_cast<size_t>(i) * n_ + j])
                    throw input_error("missing distance between " + points.label(i) + " and " +
                                      points.label(j));
        return d_;
    }

private:
    int n_;
    std::vector<Rational> d_;
    std::vector<char> given_;
};

int need_index(const Line& line, const GroundSet& ground, const std::string& token) {
    auto idx = ground.index_of(token);
    if (!idx) fail(line.number, "unknown label '" + token + "'");
    return *idx;
}

Rational parse_rational_at(int line, const std::string& token) {
    try {
        return parse_rational(token);
    } catch (const input_error& e) {
        fail(line, e.what());
    }
}

} // namespace

MetricDocument parse_metric(std::string_view text) {
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "metric");
        GroundSet points(json_string_list(doc, "points"));
        DistanceTable table(points);
        for (const auto& entry : doc.value("d", json::array())) {
            if (!entry.is_array() || entry.size() != 3)
                throw input_error("each 'd' entry must be [from, to, distance]");
            auto idx = [&](const json& j) {
                auto i = points.index_of(j.get<std::string>());
                if (!i) throw input_error("unknown label '" + j.get<std::string>() + "'");
                return *i;
            };
            table.set(0, idx(entry[0]), idx(entry[1]), parse_rational(entry[2].get<std::string>()));
        }
        MetricDocument out{MetricInstance(points, table.finish(points)), std::nullopt};
        if (doc.contains("radii") && doc["radii"].is_array()) {
            std::vector<Rational> radii;
            for (const auto& r : doc["radii"]) radii.push_back(parse_rational(r.get<std::string>()));
            out.radii = std::move(radii);
        }
        return out;
    }
    auto lines = tokenize(text);
    expect_header(lines, "metric");
    if (lines.size() < 2) fail(lines.front().number + 1, "missing points line");
    GroundSet points = parse_ground_line(lines[1], "points");
    DistanceTable table(points);
    std::optional<std::vector<Rational>> radii;
    for (size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "d") {
            if (line.tokens.size() != 4) fail(line.number, "expected 'd <a> <b> <p/q>'");
            table.set(line.number, need_index(line, points, line.tokens[1]),
                      need_index(line, points, line.tokens[2]),
                      parse_rational_at(line.number, line.tokens[3]));
        } else if (line.tokens[0] == "radii") {
            if (line.tokens.size() == 2 && line.tokens[1] == "all") {
                radii = std::nullopt;
            } else {
                if (line.tokens.size() < 2) fail(line.number, "radius set must be nonempty");
                std::vector<Rational> rs;
                for (size_t t = 1; t < line.tokens.size(); ++t)
                    rs.push_back(parse_rational_at(line.number, line.tokens[t]));
                radii = std::move(rs);
            }
        } else {
            fail(line.number, "expected a 'd' or 'radii' line");
        }
    }
    return MetricDocument{MetricInstance(points, table.finish(points)), std::move(radii)};
}

UltrametricInstance parse_ultrametric(std::string_view text) {
    std::vector<std::string> point_labels, value_names;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> vle_lines;
    std::vector<std::pair<int, std::vector<std::string>>> u_lines;
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "ultrametric");
        point_labels = json_string_list(doc, "points");
        value_names = json_string_list(doc, "values");
        for (const auto& entry : doc.value("vle", json::array())) {
            if (!entry.is_array() || entry.size() != 2)
                throw input_error("each 'vle' entry must be [lower, upper]");
            vle_lines.push_back({0, {entry[0].get<std::string>(), entry[1].get<std::string>()}});
        }
        for (const auto& entry : doc.value("u", json::array())) {
            if (!entry.is_array() || entry.size() != 3)
                throw input_error("each 'u' entry must be [from, to, value]");
            u_lines.push_back({0,
                               {entry[0].get<std::string>(), entry[1].get<std::string>(),
                                entry[2].get<std::string>()}});
        }
    } else {
        auto lines = tokenize(text);
        expect_header(lines, "ultrametric");
        if (lines.size() < 2) fail(lines.front().number + 1, "missing points line");
        for (size_t i = 1; i < lines.size(); ++i) {
            const Line& line = lines[i];
            if (line.tokens[0] == "points") {
                point_labels.assign(line.tokens.begin() + 1, line.tokens.end());
            } else if (line.tokens[0] == "values") {
                value_names.assign(line.tokens.begin() + 1, line.tokens.end());
            } else if (line.tokens[0] == "vle") {
                if (line.tokens.size() != 3) fail(line.number, "expected 'vle <a> <b>'");
                vle_lines.push_back({line.number, {line.tokens[1], line.tokens[2]}});
            } else if (line.tokens[0] == "u") {
                if (line.tokens.size() != 4) fail(line.number, "expected 'u <a> <b> <value>'");
                u_lines.push_back(
                    {line.number, {line.tokens[1], line.tokens[2], line.tokens[3]}});
            } else {
                fail(line.number, "expected 'points', 'values', 'vle' or 'u'");
            }
        }
    }
    if (point_labels.empty()) throw input_error("missing points");
    if (value_names.empty()) throw input_error("missing values");
    GroundSet points(point_labels);
    const int m = static_cast<int>(value_names.size());
    auto value_index = [&](int line, const std::string& name) {
        for (int v = 0; v < m; ++v)
            if (value_names[static_cast<size_t>(v)] == name) return v;
        fail(line, "unknown value '" + name + "'");
    };
    std::vector<char> leq(static_cast<size_t>(m) * m, 0);
    auto set_le = [&](int a, int b) { leq[static_cast<size_t>(a) * m + b] = 1; };
    for (int a = 0; a < m; ++a) set_le(a, a);
    if (vle_lines.empty()) {
        // No explicit order: the listed sequence is a chain.
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) set_le(a, b);
    } else {
        for (const auto& [line, pair] : vle_lines)
            set_le(value_index(line, pair.first), value_index(line, pair.second));
        // Reflexive-transitive closure; antisymmetry is validated downstream.
        for (int k = 0; k < m; ++k)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (leq[static_cast<size_t>(a) * m + k] && leq[static_cast<size_t>(k) * m + b])
                        set_le(a, b);
    }
    const int n = points.size();
    std::vector<int> u(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) u[static_cast<size_t>(i) * n + i] = 0; // provisional; fixed below
    // The least element is only known after validation; fill diagonal lazily
    // by requiring explicit entries only off the diagonal.
    std::vector<char> given(static_cast<size_t>(n) * n, 0);
    for (const auto& [line_no, triple] : u_lines) {
        auto a = points.index_of(triple[0]), b = points.index_of(triple[1]);
        if (!a || !b) fail(line_no, "unknown label");
        if (*a == *b) fail(line_no, "the diagonal is implicit; no u entry for a point with itself");
        int v = value_index(line_no, triple[2]);
        size_t ij = static_cast<size_t>(*a) * n + *b, ji = static_cast<size_t>(*b) * n + *a;
        if (given[ij]) fail(line_no, "duplicate u entry");
        u[ij] = u[ji] = v;
        given[ij] = given[ji] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!given[static_cast<size_t>(i) * n + j])
                throw input_error("missing u between " + points.label(i) + " and " +
                                  points.label(j));
    // Diagonal = the least element of the value order.
    int least = -1;
    for (int a = 0; a < m && least < 0; ++a) {
        bool is_least = true;
        for (int b = 0; b < m; ++b) is_least = is_least && leq[static_cast<size_t>(a) * m + b];
        if (is_least) least = a;
    }
    if (least < 0) throw input_error("value set has no least element");
    for (int i = 0; i < n; ++i) u[static_cast<size_t>(i) * n + i] = least;
    return UltrametricInstance(std::move(points), std::move(value_names), std::move(leq),
                               std::move(u));
}

PosetInstance parse_poset(std::string_view text) {
    std::vector<std::string> element_labels;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> le_lines;
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "poset");
        element_labels = json_string_list(doc, "elements");
        for (const auto& entry : doc.value("le", json::array())) {
            if (!entry.is_array() || entry.size() != 2)
                throw input_error("each 'le' entry must be [lower, upper]");
            le_lines.push_back({0, {entry[0].get<std::string>(), entry[1].get<std::string>()}});
        }
    } else {
        auto lines = tokenize(text);
        expect_header(lines, "poset");
        if (lines.size() < 2) fail(lines.front().number + 1, "missing elements line");
        GroundSet probe = parse_ground_line(lines[1], "elements");
        element_labels = probe.labels();
        for (size_t i = 2; i < lines.size(); ++i) {
            const Line& line = lines[i];
            if (line.tokens[0] != "le" || line.tokens.size() != 3)
                fail(line.number, "expected 'le <a> <b>'");
            le_lines.push_back({line.number, {line.tokens[1], line.tokens[2]}});
        }
    }
    GroundSet elements(element_labels);
    const int n = elements.size();
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) leq[static_cast<size_t>(a) * n + a] = 1;
    for (const auto& [line_no, pair] : le_lines) {
        auto a = elements.index_of(pair.first), b = elements.index_of(pair.second);
        if (!a) fail(line_no, "unknown label '" + pair.first + "'");
        if (!b) fail(line_no, "unknown label '" + pair.second + "'");
        leq[static_cast<size_t>(*a) * n + *b] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (leq[static_cast<size_t>(a) * n + k] && leq[static_cast<size_t>(k) * n + b])
                    leq[static_cast<size_t>(a) * n + b] = 1;
    return PosetInstance(std::move(elements), std::move(leq));
}

CKInstance parse_ck(std::string_view text) {
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "ck");
        GroundSet points(json_string_list(doc, "points"));
        DistanceTable table(points);
        for (const auto& entry : doc.value("d", json::array())) {
            if (!entry.is_array() || entry.size() != 3)
                throw input_error("each 'd' entry must be [from, to, distance]");
            auto idx = [&](const json& j) {
                auto i = points.index_of(j.get<std::string>());
                if (!i) throw input_error("unknown label '" + j.get<std::string>() + "'");
                return *i;
            };
            table.set(0, idx(entry[0]), idx(entry[1]), parse_rational(entry[2].get<std::string>()));
        }
        std::vector<Rational> phi(static_cast<size_t>(points.size()), Rational(0));
        std::vector<char> given(static_cast<size_t>(points.size()), 0);
        for (const auto& entry : doc.value("phi", json::array())) {
            if (!entry.is_array() || entry.size() != 2)
                throw input_error("each 'phi' entry must be [point, value]");
            auto i = points.index_of(entry[0].get<std::string>());
            if (!i) throw input_error("unknown label '" + entry[0].get<std::string>() + "'");
            phi[static_cast<size_t>(*i)] = parse_rational(entry[1].get<std::string>());
            given[static_cast<size_t>(*i)] = 1;
        }
        for (int i = 0; i < points.size(); ++i)
            if (!given[static_cast<size_t>(i)])
                throw input_error("missing phi for " + points.label(i));
        return CKInstance{MetricInstance(points, table.finish(points)), std::move(phi)};
    }
    auto lines = tokenize(text);
    expect_header(lines, "ck");
    if (lines.size() < 2) fail(lines.front().number + 1, "missing points line");
    GroundSet points = parse_ground_line(lines[1], "points");
    DistanceTable table(points);
    std::vector<Rational> phi(static_cast<size_t>(points.size()), Rational(0));
    std::vector<char> given(static_cast<size_t>(points.size()), 0);
    for (size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "d") {
            if (line.tokens.size() != 4) fail(line.number, "expected 'd <a> <b> <p/q>'");
            table.set(line.number, need_index(line, points, line.tokens[1]),
                      need_index(line, points, line.tokens[2]),
                      parse_rational_at(line.number, line.tokens[3]));
        } else if (line.tokens[0] == "phi") {
            if (line.tokens.size() != 3) fail(line.number, "expected 'phi <a> <p/q>'");
            int idx = need_index(line, points, line.tokens[1]);
            if (given[static_cast<size_t>(idx)]) fail(line.number, "duplicate phi entry");
            phi[static_cast<size_t>(idx)] = parse_rational_at(line.number, line.tokens[2]);
            given[static_cast<size_t>(idx)] = 1;
        } else {
            fail(line.number, "expected a 'd' or 'phi' line");
        }
    }
    for (int i = 0; i < points.size(); ++i)
        if (!given[static_cast<size_t>(i)]) throw input_error("missing phi for " + points.label(i));
    return CKInstance{MetricInstance(points, table.finish(points)), std::move(phi)};
}

OTInstance parse_ot(std::string_view text) {
    std::vector<std::string> point_labels;
    std::vector<std::pair<int, std::vector<std::string>>> d_lines, phi_lines;
    std::optional<std::pair<int, std::string>> x0_label;
    if (looks_like_json(text)) {
        json doc = parse_json_document(text, "ot");
        point_labels = json_string_list(doc, "points");
        for (const auto& entry : doc.value("d", json::array()))
            d_lines.push_back({0,
                               {entry[0].get<std::string>(), entry[1].get<std::string>(),
                                entry[2].get<std::string>()}});
        for (const auto& entry : doc.value("phi", json::array()))
            phi_lines.push_back({0,
                                 {entry[0].get<std::string>(), entry[1].get<std::string>(),
                                  entry[2].get<std::string>()}});
        if (!doc.contains("x0") || !doc["x0"].is_string())
            throw input_error("JSON document needs a string field 'x0'");
        x0_label = {0, doc["x0"].get<std::string>()};
    } else {
        auto lines = tokenize(text);
        expect_header(lines, "ot");
        if (lines.size() < 2) fail(lines.front().number + 1, "missing points line");
        GroundSet probe = parse_ground_line(lines[1], "points");
        point_labels = probe.labels();
        for (size_t i = 2; i < lines.size(); ++i) {
            const Line& line = lines[i];
            if (line.tokens[0] == "d") {
                if (line.tokens.size() != 4) fail(line.number, "expected 'd <a> <b> <p/q>'");
                d_lines.push_back({line.number, {line.tokens[1], line.tokens[2], line.tokens[3]}});
            } else if (line.tokens[0] == "phi") {
                if (line.tokens.size() != 4)
                    fail(line.number, "expected 'phi <a> <b> <p/q|inf>'");
                phi_lines.push_back(
                    {line.number, {line.tokens[1], line.tokens[2], line.tokens[3]}});
            } else if (line.tokens[0] == "x0") {
                if (line.tokens.size() != 2) fail(line.number, "expected 'x0 <a>'");
                x0_label = {line.number, line.tokens[1]};
            } else {
                fail(line.number, "expected a 'd', 'phi' or 'x0' line");
            }
        }
    }
    GroundSet points(point_labels);
    const int n = points.size();
    DistanceTable table(points);
    for (const auto& [line_no, triple] : d_lines) {
        auto a = points.index_of(triple[0]), b = points.index_of(triple[1]);
        if (!a || !b) fail(line_no, "unknown label");
        table.set(line_no, *a, *b, parse_rational_at(line_no, triple[2]));
    }
    std::vector<ExtRational> phi(static_cast<size_t>(n) * n, ExtRational{});
    std::vector<char> given(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        phi[static_cast<size_t>(i) * n + i] = Rational(0);
        given[static_cast<size_t>(i) * n + i] = 1;
    }
    for (const auto& [line_no, triple] : phi_lines) {
        auto a = points.index_of(triple[0]), b = points.index_of(triple[1]);
        if (!a || !b) fail(line_no, "unknown label");
        if (*a == *b) fail(line_no, "phi(x,x) is implicitly 0");
        size_t idx = static_cast<size_t>(*a) * n + *b;
        if (given[idx] && !(*a == *b)) fail(line_no, "duplicate phi entry");
        phi[idx] = triple[2] == "inf" ? ExtRational{} : ExtRational{parse_rational_at(line_no, triple[2])};
        given[idx] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!given[static_cast<size_t>(i) * n + j])
                throw input_error("missing phi(" + points.label(i) + ", " + points.label(j) + ")");
    if (!x0_label) throw input_error("missing x0 line");
    auto x0 = points.index_of(x0_label->second);
    if (!x0) fail(x0_label->first, "unknown label '" + x0_label->second + "'");
    return make_ot_instance(MetricInstance(points, table.finish(points)), std::move(phi), *x0);
}

SelfMap parse_selfmap(std::string_view text, const GroundSet& ground) {
    const int n = ground.size();
    SelfMap f;
    f.image.assign(static_cast<size_t>(n), -1);
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(',', pos);
        std::string_view entry =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 1;
        size_t colon = entry.find(':');
        if (colon == std::string_view::npos)
            throw input_error("self-map entries look like 'from:to'");
        auto from = ground.index_of(entry.substr(0, colon));
        auto to = ground.index_of(entry.substr(colon + 1));
        if (!from || !to)
            throw input_error("unknown label in self-map entry '" + std::string(entry) + "'");
        if (f.image[static_cast<size_t>(*from)] != -1)
            throw input_error("duplicate self-map entry for '" + ground.label(*from) + "'");
        f.image[static_cast<size_t>(*from)] = *to;
    }
    for (int i = 0; i < n; ++i)
        if (f.image[static_cast<size_t>(i)] == -1)
            throw input_error("self-map misses '" + ground.label(i) + "'");
    return f;
}

std::string emit_selfmap(const SelfMap& f, const GroundSet& ground) {
    std::string out;
    for (size_t i = 0; i < f.image.size(); ++i) {
        if (i) out += ',';
        out += ground.label(static_cast<int>(i));
        out += ':';
        out += ground.label(f.image[i]);
    }
    return out;
}

BxAssignment parse_bx_assignment(std::string_view text, const BallSpace& space) {
    const int n = space.ground().size();
    BxAssignment assignment;
    assignment.b.assign(static_cast<size_t>(n), Subset{});
    std::vector<char> given(static_cast<size_t>(n), 0);
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(';', pos);
        std::string entry{
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos)};
        pos = end == std::string_view::npos ? text.size() : end + 1;
        size_t colon = entry.find(':');
        if (colon == std::string::npos)
            throw input_error("assignment entries look like 'x:member member ...'");
        auto x = space.ground().index_of(entry.substr(0, colon));
        if (!x) throw input_error("unknown label in assignment entry '" + entry + "'");
        if (given[static_cast<size_t>(*x)])
            throw input_error("duplicate assignment entry for '" + space.ground().label(*x) + "'");
        Subset b;
        std::istringstream members{entry.substr(colon + 1)};
        std::string token;
        while (members >> token) {
            auto idx = space.ground().index_of(token);
            if (!idx) throw input_error("unknown label '" + token + "' in assignment");
            b = b | Subset::singleton(*idx);
        }
        if (!space.is_ball(b))
            throw input_error("assignment value for '" + space.ground().label(*x) +
                              "' is not a ball");
        assignment.b[static_cast<size_t>(*x)] = b;
        given[static_cast<size_t>(*x)] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!given[static_cast<size_t>(i)])
            throw input_error("assignment misses '" + space.ground().label(i) + "'");
    return assignment;
}

std::string report_to_text(const PropertyReport& report) {
    static const char* row_names[5] = {
        "S1 (intersection nonempty)", "S2 (contains a ball)", "S3 (contains maximal balls)",
        "S4 (contains a largest ball)", "S5 (intersection is a ball)"};
    std::string out = "property                       nest  directed  centered\n";
    for (int level = 1; level <= 5; ++level) {
        char buffer[96];
        std::snprintf(buffer, sizeof(buffer), "%-30s %4s  %8s  %8s\n", row_names[level - 1],
                      report.at(level, SystemKind::Nest) ? "yes" : "no",
                      report.at(level, SystemKind::Directed) ? "yes" : "no",
                      report.at(level, SystemKind::Centered) ? "yes" : "no");
        out += buffer;
    }
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    out += std::string("S*: ") + flag(report.s_star) + "   S**: " + flag(report.s_star_star) + "\n";
    out += std::string("tree-like: ") + flag(report.tree_like) + "\n";
    out += std::string("finitely intersection closed: ") + flag(report.fin_int_closed) + "\n";
    out += std::string("chain intersection closed: ") + flag(report.chain_int_closed) + "\n";
    out += std::string("intersection closed: ") + flag(report.int_closed) + "\n";
    return out;
}

std::string report_to_json(const PropertyReport& report) {
    json doc;
    for (const auto& name : property_names()) doc[name] = *report_property(report, name);
    return doc.dump(2) + "\n";
}

} // namespace ballspace

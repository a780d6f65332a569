#include "liftexp/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include "liftexp/error.hpp"

namespace liftexp::io {

using nlohmann::json;

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    return s.substr(i);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw ValidationError(std::string(what) + ": cannot parse number '" + s + "'");
    return v;
}

std::optional<long long> parse_integer(const std::string& s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct ParsedWeight {
    double value;
    std::optional<Rational> exact;
};

// "p/q" strings and integer counts stay exact; anything else is a double
ParsedWeight parse_weight_cell(const std::string& s, const char* what) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const auto num = parse_integer(trim(s.substr(0, slash)));
        const auto den = parse_integer(trim(s.substr(slash + 1)));
        if (!num || !den || *den <= 0 || *num <= 0)
            throw ValidationError(std::string(what) + ": bad rational weight '" + s + "'");
        const auto r = Rational::make(*num, *den);
        return {r->to_double(), r};
    }
    if (const auto i = parse_integer(s); i && *i > 0) {
        return {static_cast<double>(*i), Rational::make(*i, 1)};
    }
    return {parse_double(s, what), std::nullopt};
}

ParsedWeight parse_weight_json(const json& j, const char* what) {
    if (j.is_string()) return parse_weight_cell(j.get<std::string>(), what);
    if (j.is_number_integer()) {
        const auto v = j.get<long long>();
        if (v <= 0) throw ValidationError(std::string(what) + ": weight must be positive");
        return {static_cast<double>(v), Rational::make(v, 1)};
    }
    if (j.is_number()) {
        const double v = j.get<double>();
        if (v > 0.0 && v <= 9.007199254740992e15 && v == std::floor(v))
            return {v, Rational::make(static_cast<std::int64_t>(v), 1)};
        return {v, std::nullopt};
    }
    throw ValidationError(std::string(what) + ": weight must be a number or 'p/q' string");
}

Vec vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw ValidationError(std::string(what) + ": expected a nonempty coordinate array");
    std::vector<double> c;
    c.reserve(j.size());
    for (const auto& v : j) c.push_back(v.get<double>());
    return Vec(std::move(c));
}

ConvexBody body_from_json(const json& j);

ConvexBody body_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ValidationError("body JSON: missing \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "singleton") return Singleton{vec_from_json(j.at("point"), "singleton")};
    if (type == "segment")
        return Segment{vec_from_json(j.at("a"), "segment"), vec_from_json(j.at("b"), "segment")};
    if (type == "interval")
        return Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
    if (type == "polytope") {
        std::vector<Vec> vs;
        for (const auto& v : j.at("vertices")) vs.push_back(vec_from_json(v, "polytope"));
        return Polytope{std::move(vs)};
    }
    if (type == "ball")
        return Ball{vec_from_json(j.at("center"), "ball"), j.at("radius").get<double>()};
    if (type == "ellipsoid") {
        const auto& rows = j.at("shape");
        if (!rows.is_array() || rows.empty())
            throw ValidationError("ellipsoid: expected a matrix of rows");
        const std::size_t d = rows.size();
        std::vector<double> flat;
        flat.reserve(d * d);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != d)
                throw ValidationError("ellipsoid: shape matrix is not square");
            for (const auto& v : row) flat.push_back(v.get<double>());
        }
        return Ellipsoid{std::move(flat), d};
    }
    if (type == "l1ball") {
        std::vector<double> s;
        for (const auto& v : j.at("scales")) s.push_back(v.get<double>());
        return ScaledL1Ball{std::move(s)};
    }
    if (type == "minkowski") {
        std::vector<ScaledTerm> terms;
        for (const auto& t : j.at("terms"))
            terms.push_back({t.at("scale").get<double>(), body_from_json(t.at("body"))});
        return MinkowskiCombo{std::move(terms)};
    }
    throw ValidationError("body JSON: unknown type '" + type + "'");
}

json vec_to_json(const Vec& v) { return json(v.coords()); }

json body_to_json(const ConvexBody& body) {
    return std::visit(
        [](const auto& b) -> json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Singleton>)
                return {{"type", "singleton"}, {"point", vec_to_json(b.point)}};
            else if constexpr (std::is_same_v<T, Segment>)
                return {{"type", "segment"}, {"a", vec_to_json(b.a)}, {"b", vec_to_json(b.b)}};
            else if constexpr (std::is_same_v<T, Interval>)
                return {{"type", "interval"}, {"lo", b.lo}, {"hi", b.hi}};
            else if constexpr (std::is_same_v<T, Polytope>) {
                json vs = json::array();
                for (const Vec& v : b.vertices) vs.push_back(vec_to_json(v));
                return {{"type", "polytope"}, {"vertices", std::move(vs)}};
            } else if constexpr (std::is_same_v<T, Ball>)
                return {{"type", "ball"}, {"center", vec_to_json(b.center)},
                        {"radius", b.radius}};
            else if constexpr (std::is_same_v<T, Ellipsoid>) {
                json rows = json::array();
                for (std::size_t i = 0; i < b.dim; ++i) {
                    json row = json::array();
                    for (std::size_t k = 0; k < b.dim; ++k) row.push_back(b.shape[i * b.dim + k]);
                    rows.push_back(std::move(row));
                }
                return {{"type", "ellipsoid"}, {"shape", std::move(rows)}};
            } else if constexpr (std::is_same_v<T, ScaledL1Ball>)
                return {{"type", "l1ball"}, {"scales", b.scales}};
            else {
                json terms = json::array();
                for (const ScaledTerm& t : b.terms)
                    terms.push_back({{"scale", t.scale}, {"body", body_to_json(t.body)}});
                return {{"type", "minkowski"}, {"terms", std::move(terms)}};
            }
        },
        body.rep());
}

}  // namespace

std::vector<WeightedBody> read_body_jsonl(std::istream& in) {
    std::vector<WeightedBody> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ValidationError("body JSONL line " + std::to_string(lineno) + ": " + e.what());
        }
        WeightedBody rec{body_from_json(j), std::nullopt, std::nullopt, std::nullopt};
        if (j.contains("weight")) {
            const ParsedWeight w = parse_weight_json(j.at("weight"), "weight");
            rec.weight = w.value;
            rec.exact_weight = w.exact;
        }
        if (j.contains("obs")) rec.obs = j.at("obs").get<long long>();
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw ValidationError("body JSONL: no records");
    return records;
}

namespace {

struct NormalisedWeights {
    std::vector<double> doubles;
    std::vector<Rational> exact;  // empty when exactness was lost
};

NormalisedWeights normalise_weights(const std::vector<std::optional<double>>& ws,
                                    const std::vector<std::optional<Rational>>& exacts) {
    const std::size_t n = ws.size();
    NormalisedWeights out;
    std::size_t given = 0;
    for (const auto& w : ws)
        if (w) ++given;
    if (given == 0) {
        out.exact.assign(n, Rational{1, static_cast<std::int64_t>(n)});
        for (std::size_t i = 0; i < n; ++i) out.doubles.push_back(out.exact[i].to_double());
        return out;
    }
    if (given != n)
        throw ValidationError("weights: either every record carries a weight or none does");
    bool all_exact = true;
    for (const auto& e : exacts)
        if (!e) all_exact = false;
    if (all_exact) {
        std::optional<Rational> sum = Rational{0, 1};
        for (const auto& e : exacts) sum = rational_add(sum, *e);
        if (sum) {
            bool ok = true;
            for (const auto& e : exacts) {
                const auto r = rational_div(*e, *sum);
                if (!r) {
                    ok = false;
                    break;
                }
                out.exact.push_back(*r);
            }
            if (ok) {
                for (const auto& r : out.exact) out.doubles.push_back(r.to_double());
                return out;
            }
            out.exact.clear();
        }
    }
    double sum = 0.0;
    for (const auto& w : ws) sum += *w;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw ValidationError("weights: sum must be positive and finite");
    for (const auto& w : ws) out.doubles.push_back(*w / sum);
    return out;
}

}  // namespace

BodySample sample_from_weighted(const std::vector<WeightedBody>& records) {
    std::vector<ConvexBody> bodies;
    std::vector<std::optional<double>> ws;
    std::vector<std::optional<Rational>> exacts;
    for (const auto& r : records) {
        bodies.push_back(r.body);
        ws.push_back(r.weight);
        exacts.push_back(r.exact_weight);
    }
    NormalisedWeights nw = normalise_weights(ws, exacts);
    if (!nw.exact.empty()) return BodySample(std::move(bodies), std::move(nw.exact));
    return BodySample(std::move(bodies), std::move(nw.doubles));
}

CoupledTupleSample tuple_sample_from_weighted(const std::vector<WeightedBody>& records) {
    std::vector<long long> order;
    std::map<long long, std::size_t> index;
    for (const auto& r : records) {
        if (!r.obs)
            throw ValidationError("tuple records need an \"obs\" group key on every line");
        if (index.emplace(*r.obs, order.size()).second) order.push_back(*r.obs);
    }
    std::vector<std::vector<ConvexBody>> obs(order.size());
    std::vector<std::optional<double>> ws(order.size());
    std::vector<std::optional<Rational>> exacts(order.size());
    for (const auto& r : records) {
        const std::size_t g = index.at(*r.obs);
        obs[g].push_back(r.body);
        if (r.weight) {
            if (ws[g] && *ws[g] != *r.weight)
                throw ValidationError("tuple group " + std::to_string(*r.obs) +
                                      ": conflicting weights");
            ws[g] = r.weight;
            exacts[g] = r.exact_weight;
        }
    }
    NormalisedWeights nw = normalise_weights(ws, exacts);
    return CoupledTupleSample(std::move(obs), std::move(nw.doubles));
}

void write_body_jsonl(std::ostream& out, const BodySample& sample) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
        json j = body_to_json(sample.body(i));
        if (const auto e = sample.exact_weight(i))
            j["weight"] = std::to_string(e->num) + "/" + std::to_string(e->den);
        else
            j["weight"] = sample.weight(i);
        out << j.dump() << "\n";
    }
}

BodySample read_interval_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("interval CSV: empty file");
    const auto header = split_csv(line);
    const bool weighted = header.size() == 3 && header[2] == "weight";
    if (!(header.size() >= 2 && header[0] == "lo" && header[1] == "hi" &&
          (header.size() == 2 || weighted)))
        throw ValidationError("interval CSV: expected header 'lo,hi' or 'lo,hi,weight'");
    std::vector<ConvexBody> bodies;
    std::vector<std::optional<double>> ws;
    std::vector<std::optional<Rational>> exacts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw ValidationError("interval CSV line " + std::to_string(lineno) +
                                  ": wrong column count");
        bodies.push_back(Interval{parse_double(cells[0], "interval CSV lo"),
                                  parse_double(cells[1], "interval CSV hi")});
        if (weighted) {
            const ParsedWeight w = parse_weight_cell(cells[2], "interval CSV weight");
            ws.push_back(w.value);
            exacts.push_back(w.exact);
        } else {
            ws.push_back(std::nullopt);
            exacts.push_back(std::nullopt);
        }
    }
    if (bodies.empty()) throw ValidationError("interval CSV: no rows");
    NormalisedWeights nw = normalise_weights(ws, exacts);
    if (!nw.exact.empty()) return BodySample(std::move(bodies), std::move(nw.exact));
    return BodySample(std::move(bodies), std::move(nw.doubles));
}

void write_interval_csv(std::ostream& out, const BodySample& sample) {
    out << "lo,hi,weight\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto bounds = as_interval(sample.body(i));
        if (!bounds) throw ValidationError("write_interval_csv: expected interval bodies");
        out << format_double(bounds->first) << ',' << format_double(bounds->second) << ',';
        if (const auto e = sample.exact_weight(i))
            out << e->num << '/' << e->den << "\n";
        else
            out << format_double(sample.weight(i)) << "\n";
    }
}

Interval BinnedCodeScheme::interval_for(int code) const {
    if (code < 1 || code > max_code)
        throw ValidationError("BinnedCodeScheme: code " + std::to_string(code) +
                              " outside 1.." + std::to_string(max_code));
    const double a = origin + static_cast<double>(code - 1) * (width + 1.0);
    return Interval{a, a + width};
}

BodySample ingest_codes(std::istream& in, const BinnedCodeScheme& scheme, IngestReport* report) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("code CSV: empty file");
    const auto header = split_csv(line);
    const auto col_it = std::find(header.begin(), header.end(), "code");
    if (col_it == header.end()) throw ValidationError("code CSV: no 'code' column");
    const std::size_t col = static_cast<std::size_t>(col_it - header.begin());

    IngestReport local;
    IngestReport& rep = report ? *report : local;
    constexpr std::size_t kMaxListed = 20;
    const auto reject = [&rep](std::size_t lineno, const std::string& why) {
        ++rep.rejected;
        if (rep.rejections.size() < kMaxListed)
            rep.rejections.push_back("line " + std::to_string(lineno) + ": " + why);
    };

    std::vector<ConvexBody> bodies;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() <= col) {
            reject(lineno, "missing code column");
            continue;
        }
        const auto code = parse_integer(cells[col]);
        if (!code) {
            reject(lineno, "non-integer code '" + cells[col] + "'");
            continue;
        }
        if (*code < 1 || *code > scheme.max_code) {
            reject(lineno, "code " + std::to_string(*code) + " out of range 1.." +
                               std::to_string(scheme.max_code));
            continue;
        }
        bodies.push_back(scheme.interval_for(static_cast<int>(*code)));
        ++rep.accepted;
    }
    if (bodies.empty()) throw ValidationError("code CSV: no valid rows");
    return BodySample::uniform(std::move(bodies));
}

void generate_codes_csv(std::ostream& out, std::size_t rows, std::uint64_t seed,
                        const BinnedCodeScheme& scheme) {
    if (rows == 0) throw ValidationError("generate_codes_csv: rows must be positive");
    std::mt19937_64 eng(seed);
    const auto uniform = [&eng] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    out << "code\n";
    for (std::size_t i = 0; i < rows; ++i) {
        // income-shaped lognormal; the upper tail runs past the last bin so
        // the rejection path sees traffic, like the real survey data
        const double a = uniform();
        const double b = uniform();
        const double r = std::sqrt(-2.0 * std::log(std::max(a, 1e-300)));
        const double z = r * std::cos(6.283185307179586 * b);
        const double income = std::exp(10.2 + 0.75 * z);
        const long long code =
            1 + static_cast<long long>(std::floor(income / (scheme.width + 1.0)));
        out << std::min<long long>(code, scheme.max_code + 1) << "\n";
    }
}

void write_polygon_csv(std::ostream& out, const Polygon2D& polygon) {
    out << "x,y\n";
    for (const Point2& p : polygon.vertices())
        out << format_double(p.x) << ',' << format_double(p.y) << "\n";
}

Polygon2D read_polygon_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("polygon CSV: empty file");
    const auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "x" || header[1] != "y")
        throw ValidationError("polygon CSV: expected header 'x,y'");
    std::vector<Point2> pts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 2)
            throw ValidationError("polygon CSV line " + std::to_string(lineno) +
                                  ": wrong column count");
        pts.push_back({parse_double(cells[0], "polygon CSV x"),
                       parse_double(cells[1], "polygon CSV y")});
    }
    return Polygon2D(std::move(pts));
}

void write_polygon_svg(std::ostream& out, const Polygon2D& polygon) {
    double min_x = polygon.vertices().front().x, max_x = min_x;
    double min_y = polygon.vertices().front().y, max_y = min_y;
    for (const Point2& p : polygon.vertices()) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    const double mx = span_x > 0.0 ? 0.05 * span_x : 0.5;
    const double my = span_y > 0.0 ? 0.05 * span_y : 0.5;
    // y axis points up in data space, down in SVG: emit -y
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(min_x - mx)
        << ' ' << format_double(-(max_y + my)) << ' ' << format_double(span_x + 2.0 * mx) << ' '
        << format_double(span_y + 2.0 * my) << "\">\n";
    out << "  <path d=\"";
    bool first = true;
    for (const Point2& p : polygon.vertices()) {
        out << (first ? "M " : "L ") << format_double(p.x) << ' ' << format_double(-p.y) << ' ';
        first = false;
    }
    out << "Z\" fill=\"#dbe7f5\" stroke=\"#1f3552\" stroke-width=\""
        << format_double(0.004 * std::max(span_x + 2.0 * mx, span_y + 2.0 * my)) << "\"/>\n";
    out << "</svg>\n";
}

void write_oracle_csv(std::ostream& out, const MarginalOracle& oracle) {
    if (oracle.angles.size() != oracle.size())
        throw ValidationError("write_oracle_csv: oracle has no angular path");
    out << "direction_index,angle,value,prob\n";
    for (std::size_t k = 0; k < oracle.size(); ++k)
        for (const auto& atom : oracle.dists[k].atoms()) {
            out << k << ',' << format_double(oracle.angles[k]) << ','
                << format_double(atom.value) << ',';
            if (atom.exact_prob)
                out << atom.exact_prob->num << '/' << atom.exact_prob->den << "\n";
            else
                out << format_double(atom.prob) << "\n";
        }
}

MarginalOracle read_oracle_csv(std::istream& in, double merge_tol) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("oracle CSV: empty file");
    const auto header = split_csv(line);
    if (header != std::vector<std::string>{"direction_index", "angle", "value", "prob"})
        throw ValidationError(
            "oracle CSV: expected header 'direction_index,angle,value,prob'");
    std::map<long long, std::pair<double, std::vector<FiniteSupportDist::Atom>>> groups;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4)
            throw ValidationError("oracle CSV line " + std::to_string(lineno) +
                                  ": wrong column count");
        const auto idx = parse_integer(cells[0]);
        if (!idx || *idx < 0)
            throw ValidationError("oracle CSV line " + std::to_string(lineno) +
                                  ": bad direction_index");
        const double angle = parse_double(cells[1], "oracle CSV angle");
        const double value = parse_double(cells[2], "oracle CSV value");
        const ParsedWeight prob = parse_weight_cell(cells[3], "oracle CSV prob");
        auto& g = groups[*idx];
        if (g.second.empty()) g.first = angle;
        else if (g.first != angle)
            throw ValidationError("oracle CSV line " + std::to_string(lineno) +
                                  ": inconsistent angle for direction " + cells[0]);
        g.second.push_back({value, prob.value, prob.exact});
    }
    if (groups.empty()) throw ValidationError("oracle CSV: no rows");
    MarginalOracle oracle;
    long long expect = 0;
    for (auto& [idx, g] : groups) {
        if (idx != expect)
            throw ValidationError("oracle CSV: direction indices must be contiguous from 0");
        ++expect;
        oracle.angles.push_back(g.first);
        oracle.directions.push_back(Vec{std::cos(g.first), std::sin(g.first)});
        oracle.dists.emplace_back(std::move(g.second), merge_tol);
    }
    return oracle;
}

void write_reconstruction_csv(std::ostream& out, const ReconstructionResult& result) {
    out << "realization_index,direction_index,value,prob\n";
    for (std::size_t i = 0; i < result.realizations.size(); ++i) {
        const Realization& r = result.realizations[i];
        for (std::size_t k = 0; k < r.support_values.size(); ++k) {
            out << i << ',' << k << ',' << format_double(r.support_values[k]) << ',';
            if (r.exact_prob)
                out << r.exact_prob->num << '/' << r.exact_prob->den << "\n";
            else
                out << format_double(r.prob) << "\n";
        }
    }
}

}  // namespace liftexp::io

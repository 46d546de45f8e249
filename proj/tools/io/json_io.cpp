#include "json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cara::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw InputError("field " + (path.empty() ? std::string("<root>") : path) + ": " + what);
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string dot(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& array_of(const json& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array");
    return v;
}

bool read_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) bad(path, "expected true or false");
    return v.get<bool>();
}

std::string read_string(const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a string");
    return v.get<std::string>();
}

}  // namespace

json parse_document(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path.string());
}

void save_file(const std::filesystem::path& path, const json& doc) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << doc.dump(2) << "\n";
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) bad(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(dot(path, key), "missing");
    return *it;
}

std::size_t read_size(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) bad(path, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

Rational read_rational(const json& v, const std::string& path) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
        bad(path, e.what());
    }
    bad(path, "expected a rational as \"num/den\", a decimal string or an integer");
}

Point read_point(const json& v, const std::string& path) {
    array_of(v, path);
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(read_rational(v[i], at(path, i)));
    return Point(std::move(coords));
}

std::vector<Point> read_points(const json& v, const std::string& path) {
    array_of(v, path);
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(read_point(v[i], at(path, i)));
        if (out.back().dim() != out.front().dim()) bad(at(path, i), "dimension differs from the first point");
    }
    return out;
}

Family read_family(const json& v, const std::string& path) {
    Family f;
    f.dim = read_size(require(v, "dim", path), dot(path, "dim"));
    const auto& members = array_of(require(v, "members", path), dot(path, "members"));
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string mp = at(dot(path, "members"), i);
        auto verts = read_points(require(members[i], "vertices", mp), dot(mp, "vertices"));
        if (verts.empty()) bad(dot(mp, "vertices"), "member has no vertices");
        if (verts.front().dim() != f.dim) bad(dot(mp, "vertices"), "dimension differs from family.dim");
        f.members.push_back({std::move(verts)});
    }
    if (f.members.empty()) bad(dot(path, "members"), "family has no members");
    return f;
}

CompactumRep read_compactum(const json& v, const std::string& path) {
    const std::string kind = read_string(require(v, "kind", path), dot(path, "kind"));
    CompactumRep rep;
    if (kind == "pointCloud") {
        rep = CompactumRep::cloud(read_points(require(v, "points", path), dot(path, "points")));
    } else if (kind == "plCurve") {
        rep = CompactumRep::pl_curve(read_points(require(v, "waypoints", path), dot(path, "waypoints")));
    } else if (kind == "polytopeUnion") {
        const auto& polys = array_of(require(v, "polytopes", path), dot(path, "polytopes"));
        std::vector<VPolytope> out;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            const std::string pp = at(dot(path, "polytopes"), i);
            out.push_back({read_points(require(polys[i], "vertices", pp), dot(pp, "vertices"))});
        }
        rep = CompactumRep::polytope_union(std::move(out));
    } else if (kind == "oracle") {
        bad(dot(path, "kind"), "oracle colors exist only in-process");
    } else {
        bad(dot(path, "kind"), "unknown kind '" + kind + "' (pointCloud, plCurve, polytopeUnion)");
    }
    try {
        rep.validate();
    } catch (const InputError& e) {
        bad(path, e.what());
    }
    return rep;
}

ColorSystem read_color_system(const json& v, const std::string& path) {
    const auto& colors = array_of(require(v, "colors", path), dot(path, "colors"));
    std::vector<CompactumRep> reps;
    for (std::size_t i = 0; i < colors.size(); ++i) reps.push_back(read_compactum(colors[i], at(dot(path, "colors"), i)));
    if (reps.empty()) bad(dot(path, "colors"), "no colors");
    std::optional<Point> target;
    if (v.contains("target")) target = read_point(v["target"], dot(path, "target"));
    return ColorSystem::of(std::move(reps), std::move(target));
}

ConvexCombination read_combination(const json& v, const std::string& path) {
    ConvexCombination c;
    const auto& idx = array_of(require(v, "indices", path), dot(path, "indices"));
    const auto& w = array_of(require(v, "weights", path), dot(path, "weights"));
    if (idx.size() != w.size()) bad(path, "indices and weights differ in length");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        c.indices.push_back(read_size(idx[i], at(dot(path, "indices"), i)));
        c.weights.push_back(read_rational(w[i], at(dot(path, "weights"), i)));
    }
    return c;
}

Matrix read_matrix(const json& v, const std::string& path) {
    auto rows = read_points(v, path);
    if (rows.empty()) bad(path, "empty matrix");
    return Matrix::from_rows(rows);
}

json write(const Rational& q) { return format_rational(q); }

json write(const Point& p) {
    json out = json::array();
    for (const auto& c : p.coords()) out.push_back(format_rational(c));
    return out;
}

json write(const std::vector<Point>& points) {
    json out = json::array();
    for (const auto& p : points) out.push_back(write(p));
    return out;
}

json write(const Family& family) {
    json members = json::array();
    for (const auto& m : family.members) members.push_back({{"vertices", write(m.vertices)}});
    return {{"dim", family.dim}, {"members", members}};
}

json write(const CompactumRep& rep) {
    switch (rep.kind) {
        case CompactumRep::Kind::pointCloud:
            return {{"kind", "pointCloud"}, {"points", write(rep.points)}};
        case CompactumRep::Kind::plCurve:
            return {{"kind", "plCurve"}, {"waypoints", write(rep.curve.waypoints)}};
        case CompactumRep::Kind::polytopeUnion: {
            json polys = json::array();
            for (const auto& p : rep.polytopes) polys.push_back({{"vertices", write(p.vertices)}});
            return {{"kind", "polytopeUnion"}, {"polytopes", polys}};
        }
        case CompactumRep::Kind::oracle:
            break;
    }
    throw CapabilityError("oracle colors cannot be serialized");
}

json write(const ColorSystem& system) {
    json colors = json::array();
    for (const auto& c : system.colors) colors.push_back(write(c));
    return {{"colors", colors}, {"target", write(system.target)}};
}

json write(const ConvexCombination& comb) {
    json w = json::array();
    for (const auto& x : comb.weights) w.push_back(format_rational(x));
    return {{"indices", comb.indices}, {"weights", w}};
}

json write(const Matrix& m) {
    std::vector<Point> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return write(rows);
}

std::string decimal(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", to_double(q));
    return buf;
}

json approx(const Rational& q) { return {{"exact", format_rational(q)}, {"approx", decimal(q)}}; }

json audit_trail(const std::vector<Rational>& values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(approx(v));
    return out;
}

std::vector<Rational> read_audit_trail(const json& v, const std::string& path) {
    array_of(v, path);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(read_rational(require(v[i], "exact", at(path, i)), dot(at(path, i), "exact")));
    return out;
}

json write(const KappaBound& bound) {
    json out{{"lower", bound.lower},
             {"upper", bound.upper ? json(*bound.upper) : json(nullptr)},
             {"upper_proven", bound.upper_proven},
             {"method", bound.method}};
    if (bound.witness)
        out["witness"] = {{"subfamily", bound.witness->subfamily}, {"point", write(bound.witness->point)}};
    return out;
}

KappaBound read_kappa_bound(const json& v, const std::string& path) {
    KappaBound b;
    b.lower = static_cast<int>(read_size(require(v, "lower", path), dot(path, "lower")));
    const auto& up = require(v, "upper", path);
    if (!up.is_null()) b.upper = static_cast<int>(read_size(up, dot(path, "upper")));
    b.upper_proven = read_bool(require(v, "upper_proven", path), dot(path, "upper_proven"));
    b.method = read_string(require(v, "method", path), dot(path, "method"));
    if (v.contains("witness")) {
        const std::string wp = dot(path, "witness");
        KappaWitness w;
        const auto& sub = array_of(require(v["witness"], "subfamily", wp), dot(wp, "subfamily"));
        for (std::size_t i = 0; i < sub.size(); ++i) w.subfamily.push_back(read_size(sub[i], at(dot(wp, "subfamily"), i)));
        w.point = read_point(require(v["witness"], "point", wp), dot(wp, "point"));
        b.witness = std::move(w);
    }
    return b;
}

json write(const KConvexityVerdict& verdict) {
    json out{{"counterexample", verdict.counterexample},
             {"trials_run", verdict.trials_run},
             {"candidates_screened", verdict.candidates_screened},
             {"candidates_verified", verdict.candidates_verified}};
    if (verdict.counterexample) {
        out["projection"] = write(verdict.projection);
        out["hole"] = write(verdict.hole);
        if (verdict.hole_squared_distance) out["hole_squared_distance"] = approx(*verdict.hole_squared_distance);
    }
    return out;
}

KConvexityVerdict read_kconv_verdict(const json& v, const std::string& path) {
    KConvexityVerdict out;
    out.counterexample = read_bool(require(v, "counterexample", path), dot(path, "counterexample"));
    out.trials_run = read_size(require(v, "trials_run", path), dot(path, "trials_run"));
    if (out.counterexample) {
        out.projection = read_matrix(require(v, "projection", path), dot(path, "projection"));
        out.hole = read_point(require(v, "hole", path), dot(path, "hole"));
        if (v.contains("hole_squared_distance"))
            out.hole_squared_distance = read_rational(require(v["hole_squared_distance"], "exact", path),
                                                      dot(path, "hole_squared_distance.exact"));
    }
    return out;
}

json write(const FlatCertificate& cert) {
    return {{"base", write(cert.base)},
            {"directions", write(cert.directions)},
            {"squared_clearance", approx(cert.squared_clearance)},
            {"exact", cert.exact}};
}

FlatCertificate read_flat_certificate(const json& v, const std::string& path) {
    FlatCertificate c;
    c.base = read_point(require(v, "base", path), dot(path, "base"));
    c.directions = read_points(require(v, "directions", path), dot(path, "directions"));
    c.squared_clearance = read_rational(require(require(v, "squared_clearance", path), "exact", dot(path, "squared_clearance")),
                                        dot(path, "squared_clearance.exact"));
    c.exact = read_bool(require(v, "exact", path), dot(path, "exact"));
    return c;
}

json write(const ColorfulCertificate& cert) {
    json reps = json::array();
    for (const auto& r : cert.reps) {
        json e{{"point", write(r.point)}};
        if (r.segment) {
            e["segment"] = *r.segment;
            e["param"] = format_rational(r.param);
        }
        reps.push_back(e);
    }
    return {{"reps", reps},
            {"weights", write(cert.weights)},
            {"distance_trace", audit_trail(cert.distance_trace)},
            {"swaps", cert.swaps},
            {"parity_steps", cert.parity_steps},
            {"perturbations", cert.perturbations}};
}

ColorfulCertificate read_colorful_certificate(const json& v, const std::string& path) {
    ColorfulCertificate c;
    const auto& reps = array_of(require(v, "reps", path), dot(path, "reps"));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const std::string rp = at(dot(path, "reps"), i);
        RepPoint r{read_point(require(reps[i], "point", rp), dot(rp, "point")), std::nullopt, 0};
        if (reps[i].contains("segment")) {
            r.segment = read_size(reps[i]["segment"], dot(rp, "segment"));
            r.param = read_rational(require(reps[i], "param", rp), dot(rp, "param"));
        }
        c.reps.push_back(std::move(r));
    }
    c.weights = read_combination(require(v, "weights", path), dot(path, "weights"));
    c.distance_trace = read_audit_trail(require(v, "distance_trace", path), dot(path, "distance_trace"));
    c.swaps = read_size(require(v, "swaps", path), dot(path, "swaps"));
    c.parity_steps = read_size(require(v, "parity_steps", path), dot(path, "parity_steps"));
    c.perturbations = read_size(require(v, "perturbations", path), dot(path, "perturbations"));
    return c;
}

json write(const TverbergCertificate& cert) {
    json coeffs = json::array();
    for (const auto& part : cert.coefficients) {
        json terms = json::array();
        for (const auto& t : part)
            terms.push_back({{"member", t.member}, {"vertex", t.vertex}, {"weight", format_rational(t.weight)}});
        coeffs.push_back(terms);
    }
    return {{"r", cert.r},
            {"parts", cert.parts},
            {"witness", write(cert.witness)},
            {"coefficients", coeffs},
            {"empty_parts", cert.empty_parts},
            {"kappa", cert.kappa},
            {"kappa_status", cert.kappa_status},
            {"distance_trace", audit_trail(cert.distance_trace)},
            {"swaps", cert.swaps},
            {"rewrites", cert.rewrites}};
}

TverbergCertificate read_tverberg_certificate(const json& v, const std::string& path) {
    TverbergCertificate c;
    c.r = read_size(require(v, "r", path), dot(path, "r"));
    const auto& parts = array_of(require(v, "parts", path), dot(path, "parts"));
    for (std::size_t s = 0; s < parts.size(); ++s) {
        const std::string pp = at(dot(path, "parts"), s);
        array_of(parts[s], pp);
        std::vector<std::size_t> part;
        for (std::size_t i = 0; i < parts[s].size(); ++i) part.push_back(read_size(parts[s][i], at(pp, i)));
        c.parts.push_back(std::move(part));
    }
    c.witness = read_point(require(v, "witness", path), dot(path, "witness"));
    const auto& coeffs = array_of(require(v, "coefficients", path), dot(path, "coefficients"));
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
        const std::string cp = at(dot(path, "coefficients"), s);
        array_of(coeffs[s], cp);
        std::vector<PartTerm> terms;
        for (std::size_t j = 0; j < coeffs[s].size(); ++j) {
            const std::string tp = at(cp, j);
            terms.push_back({read_size(require(coeffs[s][j], "member", tp), dot(tp, "member")),
                             read_size(require(coeffs[s][j], "vertex", tp), dot(tp, "vertex")),
                             read_rational(require(coeffs[s][j], "weight", tp), dot(tp, "weight"))});
        }
        c.coefficients.push_back(std::move(terms));
    }
    c.empty_parts = read_bool(require(v, "empty_parts", path), dot(path, "empty_parts"));
    c.kappa = read_size(require(v, "kappa", path), dot(path, "kappa"));
    c.kappa_status = read_string(require(v, "kappa_status", path), dot(path, "kappa_status"));
    c.distance_trace = read_audit_trail(require(v, "distance_trace", path), dot(path, "distance_trace"));
    c.swaps = read_size(require(v, "swaps", path), dot(path, "swaps"));
    c.rewrites = read_size(require(v, "rewrites", path), dot(path, "rewrites"));
    return c;
}

}  // namespace cara::io

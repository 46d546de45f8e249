#include "tasks.hpp"

#include <algorithm>
#include <sstream>

#include "cara/combinatorics.hpp"
#include "cara/generators.hpp"

namespace cara::io {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

std::size_t size_field(const json& inst, const std::string& key) { return read_size(require(inst, key, ""), key); }

std::size_t optional_size(const json& obj, const std::string& key, std::size_t fallback, const std::string& path) {
    if (!obj.contains(key)) return fallback;
    return read_size(obj[key], path.empty() ? key : path + "." + key);
}

std::vector<CompactumRep> read_sets(const json& inst, const std::string& key) {
    const auto& arr = require(inst, key, "");
    if (!arr.is_array() || arr.empty()) throw InputError("field " + key + ": expected a nonempty array");
    std::vector<CompactumRep> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_compactum(arr[i], key + "[" + str(i) + "]"));
    return out;
}

std::vector<std::vector<Point>> read_pieces(const json& inst) {
    const auto& arr = require(inst, "pieces", "");
    if (!arr.is_array()) throw InputError("field pieces: expected an array");
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_points(arr[i], "pieces[" + str(i) + "]"));
    return out;
}

Verification pass() { return {true, ""}; }
Verification fail(std::string why) { return {false, std::move(why)}; }

// ---------------------------------------------------------------------------
// convm

TaskOutcome run_convm(const json& inst) {
    const Point q = read_point(require(inst, "query", ""), "query");
    const std::size_t m = size_field(inst, "m");
    TaskOutcome out;
    if (inst.contains("pieces")) {
        auto res = convm_membership_pieces(q, read_pieces(inst), m);
        out.iterations = res.subsets_tested;
        out.certificate = {{"member", res.member()}, {"subsets_tested", res.subsets_tested}};
        if (res.member()) {
            const auto& c = *res.combination;
            out.certificate["pieces"] = c.pieces;
            out.certificate["points"] = write(c.points);
            out.certificate["weights"] = write(Point(c.weights));
        }
        out.result = "member=" + std::string(res.member() ? "true" : "false");
        return out;
    }
    const auto X = read_points(require(inst, "points", ""), "points");
    auto res = convm_membership(q, X, m);
    out.iterations = res.subsets_tested;
    out.certificate = {{"member", res.member()}, {"subsets_tested", res.subsets_tested}};
    if (res.member()) out.certificate["combination"] = write(*res.combination);
    out.result = "member=" + std::string(res.member() ? "true" : "false");
    return out;
}

Verification verify_convm(const json& inst, const json& cert) {
    const Point q = read_point(require(inst, "query", ""), "query");
    const std::size_t m = size_field(inst, "m");
    const bool member = require(cert, "member", "certificate").get<bool>();
    if (inst.contains("pieces")) {
        const auto pieces = read_pieces(inst);
        if (!member) {
            if (convm_membership_pieces(q, pieces, m).member()) return fail("refusal contradicted by a combination");
            return pass();
        }
        const auto& idx = require(cert, "pieces", "certificate");
        const auto pts = read_points(require(cert, "points", "certificate"), "certificate.points");
        const auto w = read_point(require(cert, "weights", "certificate"), "certificate.weights").coords();
        if (idx.size() != pts.size() || pts.size() != w.size() || pts.empty()) return fail("length mismatch");
        if (pts.size() > m) return fail("more than m pieces");
        std::vector<std::size_t> used;
        Point sum(q.dim());
        Rational total = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::size_t p = read_size(idx[i], "certificate.pieces[" + str(i) + "]");
            if (p >= pieces.size()) return fail("piece index out of range");
            if (std::find(used.begin(), used.end(), p) != used.end()) return fail("piece repeated");
            used.push_back(p);
            if (w[i] <= 0) return fail("nonpositive weight");
            if (!hull_membership(pts[i], pieces[p]).member()) return fail("point outside its piece");
            sum = sum + w[i] * pts[i];
            total += w[i];
        }
        if (total != 1) return fail("weights do not sum to one");
        if (sum != q) return fail("combination misses the query");
        return pass();
    }
    const auto X = read_points(require(inst, "points", ""), "points");
    if (!member) {
        if (convm_membership(q, X, m).member()) return fail("refusal contradicted by a combination");
        return pass();
    }
    const auto comb = read_combination(require(cert, "combination", "certificate"), "certificate.combination");
    try {
        comb.validate(X.size());
    } catch (const InputError& e) {
        return fail(e.what());
    }
    if (comb.size() > m) return fail("more than m terms");
    if (comb.evaluate(X) != q) return fail("combination misses the query");
    return pass();
}

// ---------------------------------------------------------------------------
// Caratheodory numbers

KappaConfig kappa_config(const json& inst) {
    KappaConfig c;
    c.samples = optional_size(inst, "samples", c.samples, "");
    c.max_subfamilies = optional_size(inst, "maxSubfamilies", c.max_subfamilies, "");
    return c;
}

std::string bound_summary(const KappaBound& b) {
    std::string s = "kappa=";
    if (b.exact())
        s += str(static_cast<std::size_t>(b.lower));
    else
        s += "[" + std::to_string(b.lower) + "," + (b.upper ? std::to_string(*b.upper) : std::string("unknown")) + "]";
    return s + " method=" + b.method;
}

TaskOutcome run_kappa_pointset(const json& inst) {
    const auto X = read_points(require(inst, "points", ""), "points");
    auto b = caratheodory_number_pointset(X, kappa_config(inst));
    return {bound_summary(b), {{"bound", write(b)}}, 1, false};
}

Verification verify_bound_shape(const KappaBound& b) {
    if (b.lower < 1) return fail("lower bound below one");
    if (b.upper && *b.upper < b.lower) return fail("upper bound below lower bound");
    if (b.lower > 1 && !b.witness) return fail("lower bound without a witness");
    return pass();
}

Verification verify_kappa_pointset(const json& inst, const json& cert) {
    const auto X = read_points(require(inst, "points", ""), "points");
    const auto b = read_kappa_bound(require(cert, "bound", "certificate"), "certificate.bound");
    if (auto v = verify_bound_shape(b); !v.ok) return v;
    if (b.upper && b.upper_proven && static_cast<std::size_t>(*b.upper) > X.front().dim() + 1 &&
        static_cast<std::size_t>(*b.upper) > X.size())
        return fail("proven upper bound exceeds the Caratheodory bound");
    if (b.lower == 1) return pass();
    const Point& w = b.witness->point;
    if (!hull_membership(w, X).member()) return fail("witness outside conv X");
    if (convm_membership(w, X, static_cast<std::size_t>(b.lower - 1)).member())
        return fail("witness lies in conv_{lower-1} X");
    return pass();
}

TaskOutcome run_kappa_family(const json& inst) {
    const Family f = read_family(require(inst, "family", ""), "family");
    auto b = family_caratheodory_number(f, kappa_config(inst));
    return {bound_summary(b), {{"bound", write(b)}}, 1, false};
}

Verification verify_kappa_family(const json& inst, const json& cert) {
    const Family f = read_family(require(inst, "family", ""), "family");
    const auto b = read_kappa_bound(require(cert, "bound", "certificate"), "certificate.bound");
    if (auto v = verify_bound_shape(b); !v.ok) return v;
    if (b.lower == 1) return pass();
    const auto& sub = b.witness->subfamily;
    for (auto i : sub)
        if (i >= f.size()) return fail("witness subfamily index out of range");
    const Point& w = b.witness->point;
    if (!hull_membership(w, f.union_vertices(sub)).member()) return fail("witness outside the subfamily hull");
    bool covered = false;
    for_each_combination(sub.size(), static_cast<std::size_t>(b.lower - 1), [&](const std::vector<std::size_t>& pick) {
        std::vector<std::size_t> members;
        for (auto j : pick) members.push_back(sub[j]);
        covered = hull_membership(w, f.union_vertices(members)).member();
        return !covered;
    });
    if (covered) return fail("witness covered by lower-1 members");
    return pass();
}

// ---------------------------------------------------------------------------
// k-convexity and flats

TaskOutcome run_kconv_check(const json& inst, std::uint64_t seed) {
    const auto X = read_compactum(require(inst, "set", ""), "set");
    const std::size_t k = size_field(inst, "k");
    const Rational tol = read_rational(require(inst, "tolerance", ""), "tolerance");
    KConvexityConfig cfg;
    cfg.trials = optional_size(inst, "trials", cfg.trials, "");
    cfg.seed = seed;
    auto v = check_k_convexity(X, k, tol, cfg);
    TaskOutcome out{"counterexample=" + std::string(v.counterexample ? "true" : "false") + " trials=" + str(v.trials_run),
                    write(v), v.trials_run, false};
    return out;
}

Verification verify_kconv_check(const json& inst, const json& cert) {
    const auto X = read_compactum(require(inst, "set", ""), "set");
    const Rational tol = read_rational(require(inst, "tolerance", ""), "tolerance");
    const auto v = read_kconv_verdict(cert, "certificate");
    if (!v.counterexample) return pass();
    if (v.projection.rows() != size_field(inst, "k")) return fail("projection has the wrong rank");
    if (!verify_k_convexity_counterexample(X, v, tol)) return fail("hole does not re-verify");
    return pass();
}

TaskOutcome run_avoid_flat(const json& inst, std::uint64_t seed) {
    const Point p = read_point(require(inst, "point", ""), "point");
    const auto sets = read_sets(inst, "sets");
    const std::size_t k = size_field(inst, "k");
    AvoidFlatConfig cfg;
    cfg.restarts = optional_size(inst, "restarts", cfg.restarts, "");
    cfg.seed = seed;
    auto res = find_avoiding_flat(p, sets, k, cfg);
    TaskOutcome out;
    out.iterations = res.restarts_used;
    if (res.certificate) {
        out.result = "found=true clearance2~" + decimal(res.certificate->squared_clearance);
        out.certificate = {{"found", true}, {"flat", write(*res.certificate)}, {"warnings", res.warnings}};
    } else {
        out.result = "found=false restarts=" + str(res.restarts_used);
        out.certificate = {{"found", false}, {"warnings", res.warnings}};
        out.miss = true;
    }
    return out;
}

Verification verify_avoid_flat(const json& inst, const json& cert) {
    if (!require(cert, "found", "certificate").get<bool>()) return pass();
    const Point p = read_point(require(inst, "point", ""), "point");
    const auto sets = read_sets(inst, "sets");
    const auto flat = read_flat_certificate(require(cert, "flat", "certificate"), "certificate.flat");
    if (flat.base != p) return fail("flat does not pass through the point");
    if (flat.directions.size() != size_field(inst, "k")) return fail("flat has the wrong dimension");
    if (!verify_flat_certificate(flat, sets)) return fail("clearance does not re-verify");
    return pass();
}

// ---------------------------------------------------------------------------
// Colorful

ColorfulConfig colorful_config(const json& inst) {
    ColorfulConfig c;
    c.max_iterations = optional_size(inst, "maxIterations", c.max_iterations, "");
    return c;
}

std::string colorful_summary(const ColorfulCertificate& c) {
    return "swaps=" + str(c.swaps) + " parity=" + str(c.parity_steps) + " perturbations=" + str(c.perturbations);
}

TaskOutcome run_colorful(const json& inst) {
    const auto system = read_color_system(require(inst, "system", ""), "system");
    auto c = colorful_caratheodory(system, colorful_config(inst));
    return {colorful_summary(c), write(c), c.iterations(), false};
}

TaskOutcome run_kconv_colorful(const json& inst) {
    const auto system = read_color_system(require(inst, "system", ""), "system");
    auto c = kconv_colorful(system, size_field(inst, "k"), colorful_config(inst));
    return {colorful_summary(c), write(c), c.iterations(), false};
}

Verification verify_colorful(const json& inst, const json& cert) {
    const auto system = read_color_system(require(inst, "system", ""), "system");
    const auto c = read_colorful_certificate(cert, "certificate");
    for (std::size_t i = 1; i < c.distance_trace.size(); ++i)
        if (!(c.distance_trace[i] < c.distance_trace[i - 1])) return fail("distance trace not strictly decreasing");
    std::string why;
    if (!verify_colorful_certificate(system, c, &why)) return fail(why);
    return pass();
}

// ---------------------------------------------------------------------------
// Tverberg and the lift

TaskOutcome run_tverberg(const json& inst) {
    const Family f = read_family(require(inst, "family", ""), "family");
    const std::size_t r = size_field(inst, "r");
    TverbergConfig cfg;
    if (inst.contains("kappa") && !(inst["kappa"].is_string() && inst["kappa"] == "auto")) {
        cfg.kappa = read_size(inst["kappa"], "kappa");
    }
    if (inst.contains("maxIterations")) cfg.max_iterations = read_size(inst["maxIterations"], "maxIterations");
    auto c = tverberg_partition(f, r, cfg);
    std::ostringstream parts;
    for (std::size_t s = 0; s < c.parts.size(); ++s) {
        parts << (s ? "|" : "");
        for (std::size_t j = 0; j < c.parts[s].size(); ++j) parts << (j ? "," : "") << c.parts[s][j];
    }
    return {"parts=" + parts.str() + " kappa=" + str(c.kappa) + "(" + c.kappa_status + ") rewrites=" + str(c.rewrites),
            write(c), c.iterations(), false};
}

Verification verify_tverberg(const json& inst, const json& cert) {
    const Family f = read_family(require(inst, "family", ""), "family");
    const auto c = read_tverberg_certificate(cert, "certificate");
    if (c.r != size_field(inst, "r") || c.parts.size() != c.r) return fail("wrong number of parts");
    if (auto chk = verify_certificate(f, c); !chk) return fail(chk.reason);
    if (auto chk = check_coefficients(f, c); !chk) return fail(chk.reason);
    return pass();
}

struct SweepCounts {
    std::size_t cases = 0;
    std::size_t equivalent = 0;
    std::size_t intersecting = 0;
    json mismatches = json::array();
};

SweepCounts sarkaria_sweep(const Family& f, std::size_t r) {
    const std::size_t m = f.size();
    std::size_t total = 1;
    for (const auto& mem : f.members) total *= mem.vertices.size() * r;
    constexpr std::size_t kMaxCases = 200000;
    if (total > kMaxCases)
        throw ResourceError("sarkariaCheck: " + str(total) + " representative systems exceed the budget of " +
                            str(kMaxCases));
    const auto L = lift(f, r);
    SweepCounts out;
    std::vector<std::size_t> tags(m, 0), verts(m, 0);
    for (;;) {
        std::vector<TaggedRep> reps;
        for (std::size_t i = 0; i < m; ++i) reps.push_back({tags[i], f.members[i].vertices[verts[i]]});
        const auto sides = sarkaria_equiv_check(L, reps);
        ++out.cases;
        if (sides.intersection) ++out.intersecting;
        if (sides.agree())
            ++out.equivalent;
        else if (out.mismatches.size() < 16)
            out.mismatches.push_back({{"tags", tags}, {"vertices", verts}, {"lifted", sides.lifted}});
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (++verts[i] < f.members[i].vertices.size()) break;
            verts[i] = 0;
            if (++tags[i] < r) break;
            tags[i] = 0;
        }
        if (i == m) break;
    }
    return out;
}

TaskOutcome run_sarkaria(const json& inst) {
    const Family f = read_family(require(inst, "family", ""), "family");
    const auto s = sarkaria_sweep(f, size_field(inst, "r"));
    return {"cases=" + str(s.cases) + ", equivalent=" + str(s.equivalent),
            {{"cases", s.cases}, {"equivalent", s.equivalent}, {"intersecting", s.intersecting},
             {"mismatches", s.mismatches}},
            s.cases,
            false};
}

Verification verify_sarkaria(const json& inst, const json& cert) {
    const Family f = read_family(require(inst, "family", ""), "family");
    const auto s = sarkaria_sweep(f, size_field(inst, "r"));
    if (read_size(require(cert, "cases", "certificate"), "certificate.cases") != s.cases ||
        read_size(require(cert, "equivalent", "certificate"), "certificate.equivalent") != s.equivalent)
        return fail("sweep counts do not replay");
    if (s.equivalent != s.cases) return fail(str(s.cases - s.equivalent) + " inequivalent representative systems");
    return pass();
}

// ---------------------------------------------------------------------------
// Generators

struct Generated {
    enum class Kind { points, curve, polytopes, family } kind;
    std::vector<Point> points;
    std::vector<VPolytope> polytopes;
    Family family;

    CompactumRep as_set() const {
        switch (kind) {
            case Kind::points: return CompactumRep::cloud(points);
            case Kind::curve: return CompactumRep::pl_curve(points);
            case Kind::polytopes: return CompactumRep::polytope_union(polytopes);
            case Kind::family: return CompactumRep::polytope_union(family.members);
        }
        return {};
    }
};

long read_long(const json& g, const std::string& key, long fallback) {
    if (!g.contains(key)) return fallback;
    if (!g[key].is_number_integer()) throw InputError("field generator." + key + ": expected an integer");
    return g[key].get<long>();
}

Generated run_generator(const json& g, std::uint64_t seed) {
    auto need = [&](const std::string& key) { return read_size(require(g, key, "generator"), "generator." + key); };
    const std::string kind = require(g, "kind", "generator").is_string() ? g["kind"].get<std::string>() : "";
    Generated out{Generated::Kind::points, {}, {}, {}};
    if (kind == "randomPoints") {
        out.points = random_points(need("n"), need("count"), read_long(g, "range", 10), seed);
    } else if (kind == "momentCurve") {
        std::vector<Rational> ts;
        if (g.contains("ts")) {
            ts = read_point(g["ts"], "generator.ts").coords();
        } else {
            const std::size_t count = need("count");
            if (count < 2) throw InputError("field generator.count: momentCurve needs at least 2 samples");
            for (std::size_t i = 0; i < count; ++i) ts.push_back(ratio(static_cast<long>(i), static_cast<long>(count - 1)));
        }
        out.points = moment_curve(need("n"), ts);
    } else if (kind == "veroneseSphere") {
        out.points = veronese_sphere(need("n"), need("density"));
    } else if (kind == "polytopeSkeleton") {
        const std::string base = g.value("base", std::string("crosspolytope"));
        if (base != "crosspolytope" && base != "simplex")
            throw InputError("field generator.base: expected crosspolytope or simplex");
        out.kind = Generated::Kind::polytopes;
        out.polytopes = polytope_skeleton(base == "simplex" ? SkeletonBase::simplex : SkeletonBase::crosspolytope,
                                          need("n"), need("k"));
    } else if (kind == "plLoop") {
        out.kind = Generated::Kind::curve;
        out.points = pl_loop(need("n"), need("vertices"), read_rational(require(g, "radius", "generator"), "generator.radius"),
                             g.contains("height") ? read_rational(g["height"], "generator.height") : Rational(0));
        out.points.push_back(out.points.front());
    } else if (kind == "randomWalk") {
        out.kind = Generated::Kind::curve;
        out.points = random_walk(need("n"), need("waypoints"), read_long(g, "range", 3), seed);
    } else if (kind == "singletonFamily") {
        out.kind = Generated::Kind::family;
        out.family = singleton_family(need("n"), need("count"), read_long(g, "range", 10), seed);
    } else if (kind == "edgeFamily") {
        out.kind = Generated::Kind::family;
        out.family = edge_family(need("sides"), optional_size(g, "inner", 0, "generator"), seed);
    } else if (kind == "squareEdges") {
        out.kind = Generated::Kind::family;
        out.family = square_edges_family();
        if (optional_size(g, "center", 0, "generator")) out.family.members.push_back({{Point{ratio(1, 2), ratio(1, 2)}}});
    } else {
        throw InputError("field generator.kind: unknown kind '" + kind +
                         "' (randomPoints, momentCurve, veroneseSphere, polytopeSkeleton, plLoop, randomWalk, "
                         "singletonFamily, edgeFamily, squareEdges)");
    }
    return out;
}

CompactumRep centered(const CompactumRep& rep) {
    const auto gens = rep.generators();
    Point c(gens.front().dim());
    for (const auto& p : gens) c = c + p;
    c = c / Rational(static_cast<long>(gens.size()));
    CompactumRep out = rep;
    for (auto& p : out.points) p = p - c;
    for (auto& p : out.curve.waypoints) p = p - c;
    for (auto& poly : out.polytopes)
        for (auto& p : poly.vertices) p = p - c;
    return out;
}

}  // namespace

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"convm",         "kappaPointset", "kappaFamily",
                                                "kconvCheck",    "colorful",      "kconvColorful",
                                                "avoidFlat",     "tverberg",      "sarkariaCheck",
                                                "generate"};
    return names;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TaskOutcome run_task(const json& instance, std::uint64_t seed) {
    const auto& t = require(instance, "task", "");
    if (!t.is_string()) throw InputError("field task: expected a string");
    const std::string task = t.get<std::string>();
    if (task == "convm") return run_convm(instance);
    if (task == "kappaPointset") return run_kappa_pointset(instance);
    if (task == "kappaFamily") return run_kappa_family(instance);
    if (task == "kconvCheck") return run_kconv_check(instance, seed);
    if (task == "colorful") return run_colorful(instance);
    if (task == "kconvColorful") return run_kconv_colorful(instance);
    if (task == "avoidFlat") return run_avoid_flat(instance, seed);
    if (task == "tverberg") return run_tverberg(instance);
    if (task == "sarkariaCheck") return run_sarkaria(instance);
    if (task == "generate") {
        auto doc = generate_experiment(require(instance, "spec", ""), seed);
        const std::size_t n = doc["instances"].size();
        return {"instances=" + str(n), {{"seed", seed}, {"experiment", std::move(doc)}}, n, false};
    }
    throw InputError("field task: unknown task '" + task + "'");
}

Verification verify_task(const json& instance, const json& certificate) {
    try {
        const std::string task = require(instance, "task", "").get<std::string>();
        if (certificate.is_null()) return fail("no certificate");
        if (task == "convm") return verify_convm(instance, certificate);
        if (task == "kappaPointset") return verify_kappa_pointset(instance, certificate);
        if (task == "kappaFamily") return verify_kappa_family(instance, certificate);
        if (task == "kconvCheck") return verify_kconv_check(instance, certificate);
        if (task == "colorful" || task == "kconvColorful") return verify_colorful(instance, certificate);
        if (task == "avoidFlat") return verify_avoid_flat(instance, certificate);
        if (task == "tverberg") return verify_tverberg(instance, certificate);
        if (task == "sarkariaCheck") return verify_sarkaria(instance, certificate);
        if (task == "generate") {
            const auto seed = require(certificate, "seed", "certificate").get<std::uint64_t>();
            if (generate_experiment(require(instance, "spec", ""), seed) != require(certificate, "experiment", "certificate"))
                return fail("generated experiment does not replay");
            return pass();
        }
        return fail("unknown task '" + task + "'");
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

json certificate_document(const json& instance, std::uint64_t seed, const TaskOutcome& outcome) {
    return {{"id", instance.value("id", std::string())},
            {"task", instance["task"]},
            {"seed", seed},
            {"result", outcome.result},
            {"iterations", outcome.iterations},
            {"instance", instance},
            {"certificate", outcome.certificate}};
}

Verification verify_certificate_document(const json& doc) {
    if (!doc.is_object() || !doc.contains("instance") || !doc.contains("certificate"))
        return fail("not a certificate file (needs instance and certificate)");
    return verify_task(doc["instance"], doc["certificate"]);
}

json generate_experiment(const json& spec, std::uint64_t seed) {
    if (spec.contains("generators")) {
        const auto& gens = spec["generators"];
        if (!gens.is_array()) throw InputError("field generators: expected an array");
        json all = json::array();
        for (std::size_t j = 0; j < gens.size(); ++j) {
            auto part = generate_experiment(gens[j], instance_seed(seed, 1000003 * (j + 1)));
            for (auto& inst : part["instances"]) {
                inst["id"] = "g" + str(j) + "-" + inst["id"].get<std::string>();
                all.push_back(std::move(inst));
            }
        }
        return {{"instances", all}};
    }
    const auto& g = require(spec, "generator", "");
    const std::size_t count = optional_size(spec, "instances", 1, "");
    json tmpl = spec.contains("task") ? spec["task"] : json::object();
    if (!tmpl.is_object()) throw InputError("field task: expected an object with the task name and fields");
    const bool center = spec.value("center", false);
    json out = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = instance_seed(seed, i);
        Generated first = run_generator(g, s);
        std::string task = tmpl.value("task", std::string());
        if (task.empty()) {
            if (first.kind == Generated::Kind::family)
                task = "tverberg";
            else if (first.kind == Generated::Kind::points)
                task = "kappaPointset";
            else
                throw InputError("field task.task: required for generator kind " + g.value("kind", std::string()));
        }
        json inst = tmpl;
        inst["task"] = task;
        char id[32];
        std::snprintf(id, sizeof id, "%s-%04zu", g.value("kind", std::string()).c_str(), i);
        inst["id"] = id;
        if (task == "tverberg" || task == "kappaFamily" || task == "sarkariaCheck") {
            if (first.kind != Generated::Kind::family)
                throw InputError("field generator.kind: task " + task + " needs a family generator");
            inst["family"] = write(first.family);
            if (task != "kappaFamily" && !inst.contains("r")) inst["r"] = 2;
            if (task == "tverberg" && !inst.contains("kappa")) inst["kappa"] = "auto";
        } else if (task == "convm" || task == "kappaPointset") {
            if (first.kind == Generated::Kind::points) {
                inst["points"] = write(first.points);
            } else {
                json pieces = json::array();
                for (const auto& p : first.as_set().pieces()) pieces.push_back(write(p));
                if (task == "kappaPointset") inst["points"] = write(first.as_set().generators());
                else inst["pieces"] = pieces;
            }
        } else if (task == "kconvCheck") {
            inst["set"] = write(center ? centered(first.as_set()) : first.as_set());
        } else if (task == "colorful" || task == "kconvColorful" || task == "avoidFlat") {
            const std::size_t dim = first.as_set().dim();
            const std::size_t fallback = task == "colorful"        ? dim + 1
                                         : task == "kconvColorful" ? optional_size(tmpl, "k", dim - 1, "task") + 1
                                                                   : 2;
            const std::size_t colors = optional_size(spec, "colors", fallback, "");
            json sets = json::array();
            for (std::size_t c = 0; c < colors; ++c) {
                Generated gen = c == 0 ? first : run_generator(g, instance_seed(s, c));
                sets.push_back(write(center ? centered(gen.as_set()) : gen.as_set()));
            }
            if (task == "avoidFlat") {
                inst["sets"] = sets;
                if (!inst.contains("k")) inst["k"] = 1;
            } else {
                json system{{"colors", sets}};
                if (inst.contains("target")) system["target"] = inst["target"], inst.erase("target");
                inst["system"] = system;
                if (task == "kconvColorful" && !inst.contains("k")) inst["k"] = dim - 1;
            }
        } else if (task == "generate") {
            throw InputError("field task.task: generate cannot wrap a generator");
        } else {
            throw InputError("field task.task: unknown task '" + task + "'");
        }
        out.push_back(std::move(inst));
    }
    return {{"instances", out}};
}

}  // namespace cara::io

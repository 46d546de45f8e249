#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cara/generators.hpp"
#include "io/svg.hpp"
#include "io/tasks.hpp"

namespace fs = std::filesystem;
using namespace cara;
using namespace cara::io;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("cara_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Proc {
    int status = -1;
    std::string output;
};

Proc run_cli(const std::string& args, const fs::path& dir, const std::string& env = "") {
    const fs::path log = dir / "log.txt";
    const std::string cmd = env + " " CARA_EXE " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(log)};
}

json seven_points_instance() {
    json spec{{"generator", {{"kind", "singletonFamily"}, {"n", 2}, {"count", 7}, {"range", 10}}},
              {"task", {{"task", "tverberg"}, {"r", 2}, {"kappa", 3}}}};
    return generate_experiment(spec, 1)["instances"][0];
}

json square_edges_instance() {
    return generate_experiment({{"generator", {{"kind", "squareEdges"}, {"center", 1}}}}, 0)["instances"][0];
}

}  // namespace

TEST(JsonIo, RationalsAreCanonical) {
    EXPECT_EQ(write(Point{ratio(6, 4), Rational(-3), ratio(0, 5)}), json({"3/2", "-3", "0"}));
    EXPECT_EQ(read_point(json({"6/4", "0.25", 7}), "p"), (Point{ratio(3, 2), ratio(1, 4), Rational(7)}));
    EXPECT_EQ(approx(ratio(1, 3))["approx"], "0.33333333333333331");
}

TEST(JsonIo, DiagnosticsNameTheField) {
    json fam = json::parse(R"({"dim": 2, "members": [{"vertices": [["0","0"]]}, {"vertices": [["1","x"]]}]})");
    try {
        read_family(fam, "family");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("family.members[1].vertices[0][1]"), std::string::npos) << e.what();
    }
    try {
        parse_document("{\"a\": [1, 2,, 3]}", "doc.json");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("byte 13"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_compactum(json{{"kind", "blob"}}, "set"), InputError);
}

TEST(JsonIo, CertificatesRoundTrip) {
    const Family f = read_family(square_edges_instance()["family"], "family");
    const auto cert = tverberg_partition(f, 2, {});
    const auto back = read_tverberg_certificate(write(cert), "c");
    EXPECT_EQ(back.parts, cert.parts);
    EXPECT_EQ(back.witness, cert.witness);
    EXPECT_EQ(back.distance_trace, cert.distance_trace);
    EXPECT_EQ(write(back), write(cert));
}

TEST(Csv, Quoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("cases=8, equivalent=8"), "\"cases=8, equivalent=8\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("a\nb"), "\"a\nb\"");
}

TEST(Generate, MomentCurveSamples) {
    json spec{{"generator", {{"kind", "momentCurve"}, {"n", 2}, {"ts", {"0", "1/2", "1"}}}}};
    const auto inst = generate_experiment(spec, 0)["instances"][0];
    EXPECT_EQ(inst["points"], json::parse(R"([["0","0"],["1/2","1/4"],["1","1"]])"));
}

TEST(Generate, VeroneseOfAPythagoreanPoint) {
    json spec{{"generator", {{"kind", "veroneseSphere"}, {"n", 2}, {"density", 3}}}};
    const auto pts = read_points(generate_experiment(spec, 0)["instances"][0]["points"], "points");
    EXPECT_NE(std::find(pts.begin(), pts.end(), Point{ratio(9, 25), ratio(12, 25), ratio(16, 25)}), pts.end());
    for (const auto& p : pts) EXPECT_EQ(p[0] + p[2], 1);
    EXPECT_EQ(std::set<Point>(pts.begin(), pts.end()).size(), pts.size());
}

TEST(Generate, SingletonFamilyIsReplayable) {
    json spec{{"generator", {{"kind", "singletonFamily"}, {"n", 2}, {"count", 7}}}, {"instances", 3}};
    const auto a = generate_experiment(spec, 1), b = generate_experiment(spec, 1), c = generate_experiment(spec, 2);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    const Family f = read_family(a["instances"][0]["family"], "family");
    ASSERT_EQ(f.size(), 7u);
    for (const auto& m : f.members) EXPECT_EQ(m.vertices.size(), 1u);
    EXPECT_EQ(a["instances"][0]["task"], "tverberg");
}

TEST(Generate, RejectsBadSpecs) {
    EXPECT_THROW(generate_experiment({{"generator", {{"kind", "torus"}}}}, 0), InputError);
    EXPECT_THROW(generate_experiment({{"generator", {{"kind", "randomPoints"}, {"n", 2}}}}, 0), InputError);
    EXPECT_THROW(generate_experiment({{"generator", {{"kind", "randomPoints"}, {"n", 2}, {"count", 3}}},
                                      {"task", {{"task", "tverberg"}}}},
                                     0),
                 InputError);
}

TEST(Tasks, TverbergOnSevenSingletons) {
    const json inst = seven_points_instance();
    const auto out = run_task(inst, 0);
    EXPECT_TRUE(verify_task(inst, out.certificate).ok);
    json bad = out.certificate;
    bad["witness"][0] = "1000";
    const auto v = verify_task(inst, bad);
    EXPECT_FALSE(v.ok);
    EXPECT_FALSE(v.reason.empty());
}

TEST(Tasks, SarkariaSweepSummary) {
    const json inst = json::parse(R"({"task": "sarkariaCheck", "id": "s", "r": 2, "family": {"dim": 1,
        "members": [{"vertices": [["0"], ["2"]]}, {"vertices": [["1"]]}, {"vertices": [["3"]]}]}})");
    const auto out = run_task(inst, 0);
    EXPECT_EQ(out.result, "cases=16, equivalent=16");
    EXPECT_TRUE(verify_task(inst, out.certificate).ok);
    json bad = out.certificate;
    bad["equivalent"] = 31;
    EXPECT_FALSE(verify_task(inst, bad).ok);
}

TEST(Tasks, ConvmAndColorfulTampering) {
    const json conv = json::parse(R"({"task": "convm", "id": "c", "m": 2, "query": ["1/2", "1/2"],
        "points": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]})");
    auto out = run_task(conv, 0);
    ASSERT_TRUE(out.certificate["member"].get<bool>());
    EXPECT_TRUE(verify_task(conv, out.certificate).ok);
    out.certificate["combination"]["weights"] = {"1/3", "2/3"};
    EXPECT_FALSE(verify_task(conv, out.certificate).ok);

    const json col = json::parse(R"({"task": "colorful", "id": "k", "system": {"colors": [
        {"kind": "pointCloud", "points": [["-1"], ["2"]]}, {"kind": "pointCloud", "points": [["1"], ["-3"]]}]}})");
    out = run_task(col, 0);
    EXPECT_TRUE(verify_task(col, out.certificate).ok);
    out.certificate["reps"][0]["point"] = json::array({"5"});
    EXPECT_FALSE(verify_task(col, out.certificate).ok);
}

TEST(Tasks, SolverErrorsPropagate) {
    json inst = seven_points_instance();
    inst["kappa"] = 4;
    EXPECT_THROW(run_task(inst, 0), InputError);
    inst["task"] = "nonsense";
    EXPECT_THROW(run_task(inst, 0), InputError);
}

TEST(Svg, SquareEdgesStructure) {
    json inst = generate_experiment({{"generator", {{"kind", "squareEdges"}}}}, 0)["instances"][0];
    const std::string svg = render_svg(inst);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
        return n;
    };
    EXPECT_EQ(count("<line "), 4u);
    EXPECT_EQ(count("stroke-dasharray"), 1u);
    EXPECT_EQ(count("<path "), 0u);
}

TEST(Svg, PartsAndWitness) {
    const json inst = square_edges_instance();
    const auto out = run_task(inst, 0);
    const std::string svg = render_svg(inst, &out.certificate);
    EXPECT_NE(svg.find("#d62728"), std::string::npos);
    EXPECT_NE(svg.find("<path "), std::string::npos);
    EXPECT_EQ(svg, render_svg(inst, &out.certificate));
}

TEST(Svg, RejectsNonPlanar) {
    json inst = seven_points_instance();
    inst["family"] = write(singleton_family(3, 9, 5, 1));
    EXPECT_THROW(render_svg(inst), CapabilityError);
}

TEST(Cli, RunVerifyAndCsv) {
    const fs::path dir = scratch("run");
    json exp{{"instances", {seven_points_instance(), square_edges_instance()}}};
    exp["instances"][1]["id"] = "square";
    exp["instances"].push_back(json{{"task", "sarkariaCheck"}, {"id", "sweep"}, {"r", 2},
                                    {"family", write(singleton_family(1, 3, 4, 2))}});
    save_file(dir / "exp.json", exp);
    auto p = run_cli("run --spec " + (dir / "exp.json").string() + " --seed 5 --jobs 3 --out " + (dir / "out").string(), dir);
    ASSERT_EQ(p.status, 0) << p.output;
    const std::string csv = slurp(dir / "out" / "results.csv");
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "id,task,result,certificate,iterations,wall_ms");
    std::getline(lines, row);
    EXPECT_EQ(row.rfind("singletonFamily-0000,tverberg,\"valid=true", 0), 0u) << row;
    EXPECT_NE(csv.find(",sarkariaCheck,\"valid=true cases=8, equivalent=8\",certificates/sweep.json,"), std::string::npos)
        << csv;
    EXPECT_TRUE(fs::exists(dir / "out" / "certificates" / "square.json"));

    p = run_cli("verify --out " + (dir / "out").string(), dir);
    EXPECT_EQ(p.status, 0) << p.output;

    json doc = load_file(dir / "out" / "certificates" / "square.json");
    doc["certificate"]["parts"] = {{0, 1}, {2, 3, 4}};
    save_file(dir / "tampered.json", doc);
    p = run_cli("verify --certificate " + (dir / "tampered.json").string(), dir);
    EXPECT_EQ(p.status, 1) << p.output;
    EXPECT_NE(p.output.find("REJECTED"), std::string::npos);
}

TEST(Cli, DeterministicAcrossJobCounts) {
    const fs::path dir = scratch("det");
    json gen{{"generator", {{"kind", "singletonFamily"}, {"n", 2}, {"count", 7}}},
             {"instances", 6},
             {"task", {{"task", "tverberg"}, {"r", 2}, {"kappa", 3}}}};
    save_file(dir / "gen.json", gen);
    ASSERT_EQ(run_cli("generate --spec " + (dir / "gen.json").string() + " --seed 9 --out " + dir.string(), dir).status, 0);
    const std::string exp = (dir / "experiment.json").string();
    ASSERT_EQ(run_cli("run --no-wall-time --jobs 1 --seed 9 --spec " + exp + " --out " + (dir / "a").string(), dir).status, 0);
    ASSERT_EQ(run_cli("run --no-wall-time --jobs 4 --seed 9 --spec " + exp + " --out " + (dir / "b").string(), dir).status, 0);
    EXPECT_EQ(slurp(dir / "a" / "results.csv"), slurp(dir / "b" / "results.csv"));
    for (const auto& e : fs::directory_iterator(dir / "a" / "certificates"))
        EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / "certificates" / e.path().filename()));
}

TEST(Cli, MalformedInput) {
    const fs::path dir = scratch("bad");
    std::ofstream(dir / "syntax.json") << "{\"instances\": [ {\"task\": \"tverberg\" ";
    auto p = run_cli("run --spec " + (dir / "syntax.json").string() + " --out " + dir.string(), dir);
    EXPECT_EQ(p.status, 2);
    EXPECT_NE(p.output.find("malformed JSON at byte"), std::string::npos) << p.output;

    json inst = seven_points_instance();
    inst["family"]["members"][3]["vertices"][0][1] = "1/0";
    save_file(dir / "field.json", json{{"instances", {inst}}});
    p = run_cli("run --spec " + (dir / "field.json").string() + " --out " + (dir / "o").string(), dir);
    EXPECT_NE(p.status, 0);
    EXPECT_NE(p.output.find("family.members[3].vertices[0][1]"), std::string::npos) << p.output;

    save_file(dir / "task.json", json{{"instances", {{{"task", "tverbreg"}}}}});
    p = run_cli("run --spec " + (dir / "task.json").string() + " --out " + dir.string(), dir);
    EXPECT_EQ(p.status, 2);
    EXPECT_NE(p.output.find("instances[0].task"), std::string::npos) << p.output;
}

TEST(Cli, BudgetSkipsAreNotSuccess) {
    const fs::path dir = scratch("budget");
    save_file(dir / "exp.json", json{{"instances", {seven_points_instance()}}});
    auto p = run_cli("run --spec " + (dir / "exp.json").string() + " --out " + dir.string(), dir, "CARA_BUDGET_MS=0");
    EXPECT_EQ(p.status, 3) << p.output;
    EXPECT_NE(slurp(dir / "results.csv").find("skipped=budget"), std::string::npos);
}

TEST(Cli, RenderIsByteIdentical) {
    const fs::path dir = scratch("render");
    save_file(dir / "exp.json", json{{"instances", {square_edges_instance()}}});
    ASSERT_EQ(run_cli("run --spec " + (dir / "exp.json").string() + " --out " + (dir / "run").string(), dir).status, 0);
    const std::string cert = (dir / "run" / "certificates" / "squareEdges-0000.json").string();
    ASSERT_EQ(run_cli("render --spec " + cert + " --seed 3 --out " + (dir / "a").string(), dir).status, 0);
    ASSERT_EQ(run_cli("render --spec " + cert + " --seed 3 --out " + (dir / "b").string(), dir).status, 0);
    const std::string a = slurp(dir / "a" / "squareEdges-0000.svg");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / "squareEdges-0000.svg"));

    save_file(dir / "r3.json", json{{"instances", {{{"task", "tverberg"}, {"id", "x"}, {"r", 2},
                                                    {"family", write(singleton_family(3, 9, 5, 1))}}}}});
    auto p = run_cli("render --spec " + (dir / "r3.json").string() + " --out " + dir.string(), dir);
    EXPECT_EQ(p.status, 2);
    EXPECT_NE(p.output.find("unsupported"), std::string::npos) << p.output;
}

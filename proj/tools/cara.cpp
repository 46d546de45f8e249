// cara: instance generation, batch runs, certificate checks and planar drawings.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "io/svg.hpp"
#include "io/tasks.hpp"

namespace fs = std::filesystem;
using namespace cara;
using namespace cara::io;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kSkipped = 3 };

std::string safe_name(const std::string& id) {
    std::string out;
    for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
    return out.empty() ? "instance" : out;
}

/// Instances of an experiment document; follows "inputPath" relative to the spec file.
json load_instances(const fs::path& spec_path) {
    json doc = load_file(spec_path);
    if (doc.is_object() && doc.contains("inputPath")) {
        if (!doc["inputPath"].is_string()) throw InputError("field inputPath: expected a string");
        doc = load_file(spec_path.parent_path() / doc["inputPath"].get<std::string>());
    }
    if (doc.is_object() && doc.contains("task") && !doc.contains("instances")) doc = {{"instances", json::array({doc})}};
    const auto& list = require(doc, "instances", "");
    if (!list.is_array()) throw InputError("field instances: expected an array");
    std::set<std::string> ids;
    json out = json::array();
    for (std::size_t i = 0; i < list.size(); ++i) {
        json inst = list[i];
        const std::string path = "instances[" + std::to_string(i) + "]";
        if (!inst.is_object()) throw InputError("field " + path + ": expected an object");
        if (!inst.contains("id")) inst["id"] = "instance-" + std::to_string(i);
        if (!inst["id"].is_string()) throw InputError("field " + path + ".id: expected a string");
        if (!inst.contains("task") || !inst["task"].is_string()) throw InputError("field " + path + ".task: missing");
        const auto& names = task_names();
        if (std::find(names.begin(), names.end(), inst["task"].get<std::string>()) == names.end())
            throw InputError("field " + path + ".task: unknown task '" + inst["task"].get<std::string>() + "'");
        if (!ids.insert(safe_name(inst["id"].get<std::string>())).second)
            throw InputError("field " + path + ".id: duplicate id '" + inst["id"].get<std::string>() + "'");
        out.push_back(std::move(inst));
    }
    return out;
}

std::optional<long> budget_ms() {
    const char* env = std::getenv("CARA_BUDGET_MS");
    if (!env || !*env) return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end || v < 0) throw InputError("CARA_BUDGET_MS: expected a nonnegative integer, got '" + std::string(env) + "'");
    return v;
}

struct Row {
    std::string id, task, result, certificate;
    std::size_t iterations = 0;
    long long wall_ms = 0;
    bool failed = false;
    bool skipped = false;
    std::string log;
};

int cmd_generate(const fs::path& spec, std::uint64_t seed, const fs::path& out) {
    const json doc = generate_experiment(load_file(spec), seed);
    save_file(out / "experiment.json", doc);
    std::cout << "wrote " << (out / "experiment.json").string() << " (" << doc["instances"].size() << " instances)\n";
    return kOk;
}

int cmd_run(const fs::path& spec, std::uint64_t seed, const fs::path& out, unsigned jobs, bool wall_time) {
    const json instances = load_instances(spec);
    const auto budget = budget_ms();
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out / "certificates");

    std::vector<Row> rows(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
            const json& inst = instances[i];
            Row& row = rows[i];
            row.id = inst["id"].get<std::string>();
            row.task = inst["task"].get<std::string>();
            if (budget && std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                                  .count() >= *budget) {
                row.result = "skipped=budget";
                row.skipped = true;
                continue;
            }
            const std::uint64_t s = instance_seed(seed, i);
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const TaskOutcome outcome = run_task(inst, s);
                row.iterations = outcome.iterations;
                const json doc = certificate_document(inst, s, outcome);
                const Verification v = verify_certificate_document(doc);
                row.certificate = "certificates/" + safe_name(row.id) + ".json";
                save_file(out / row.certificate, doc);
                row.result = std::string("valid=") + (v.ok ? "true" : "false") + " " + outcome.result;
                if (!v.ok) {
                    row.failed = true;
                    row.log = "instance " + row.id + ": certificate rejected: " + v.reason;
                }
            } catch (const std::exception& e) {
                row.failed = true;
                row.result = std::string("error=") + e.what();
                row.log = "instance " + row.id + ": " + e.what();
            }
            row.wall_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ofstream csv(out / "results.csv");
    csv << "id,task,result,certificate,iterations,wall_ms\n";
    bool failed = false, skipped = false;
    for (const auto& r : rows) {
        csv << csv_field(r.id) << ',' << csv_field(r.task) << ',' << csv_field(r.result) << ','
            << csv_field(r.certificate) << ',' << r.iterations << ',' << (wall_time ? std::to_string(r.wall_ms) : "")
            << '\n';
        if (!r.log.empty()) std::cerr << r.log << "\n";
        failed |= r.failed;
        skipped |= r.skipped;
    }
    std::cout << "ran " << rows.size() << " instances, results in " << (out / "results.csv").string() << "\n";
    if (failed) return kFailed;
    if (skipped) {
        std::cerr << "some instances were skipped after CARA_BUDGET_MS ran out\n";
        return kSkipped;
    }
    return kOk;
}

int cmd_verify(const std::vector<std::string>& certificates, const std::string& out) {
    std::vector<fs::path> files(certificates.begin(), certificates.end());
    if (!out.empty()) {
        const fs::path dir = fs::path(out) / "certificates";
        if (!fs::is_directory(dir)) throw InputError("no certificates directory under " + out);
        std::vector<fs::path> found;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".json") found.push_back(e.path());
        std::sort(found.begin(), found.end());
        files.insert(files.end(), found.begin(), found.end());
    }
    if (files.empty()) throw InputError("verify: give --certificate files or --out with a run directory");
    bool ok = true;
    for (const auto& f : files) {
        const auto v = verify_certificate_document(load_file(f));
        std::cout << f.string() << ": " << (v.ok ? "ok" : "REJECTED " + v.reason) << "\n";
        ok &= v.ok;
    }
    return ok ? kOk : kFailed;
}

int cmd_render(const fs::path& spec, const std::string& certificate, const std::string& id, const fs::path& out) {
    json doc = load_file(spec);
    std::vector<std::pair<json, json>> jobs;
    if (doc.is_object() && doc.contains("instance") && doc.contains("certificate")) {
        jobs.emplace_back(doc["instance"], doc["certificate"]);
    } else {
        const json instances = load_instances(spec);
        for (const auto& inst : instances)
            if (id.empty() || inst["id"] == id) jobs.emplace_back(inst, json());
        if (jobs.empty()) throw InputError("render: no instance with id '" + id + "'");
    }
    if (!certificate.empty()) {
        if (jobs.size() != 1) throw InputError("render: --certificate needs a single instance (use --id)");
        const json c = load_file(certificate);
        jobs.front().second = c.contains("certificate") ? c["certificate"] : c;
    }
    fs::create_directories(out);
    for (const auto& [inst, cert] : jobs) {
        const fs::path file = out / (safe_name(inst.value("id", std::string("instance"))) + ".svg");
        std::ofstream(file) << render_svg(inst, cert.is_null() ? nullptr : &cert);
        std::cout << "wrote " << file.string() << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact convexity experiments: generate instances, run solvers, verify certificates, draw."};
    app.require_subcommand(1);

    std::string spec, out = ".", id;
    std::uint64_t seed = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool no_wall_time = false;
    std::vector<std::string> certificates;
    std::string certificate;

    auto* gen = app.add_subcommand("generate", "Expand a generator spec into <out>/experiment.json");
    gen->add_option("--spec", spec, "Generator spec (JSON)")->required()->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Seed");
    gen->add_option("--out", out, "Output directory");

    auto* run = app.add_subcommand("run", "Run every instance; writes <out>/results.csv and <out>/certificates/");
    run->add_option("--spec", spec, "Experiment document (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Seed");
    run->add_option("--out", out, "Output directory");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--no-wall-time", no_wall_time, "Leave the wall_ms column empty (byte-stable output)");

    auto* ver = app.add_subcommand("verify", "Re-check certificate files from scratch");
    ver->add_option("--certificate", certificates, "Certificate file(s)")->check(CLI::ExistingFile);
    ver->add_option("--out", out, "Run directory whose certificates/ are checked");
    ver->add_option("--spec", spec, "Ignored; accepted for symmetry");
    ver->add_option("--seed", seed, "Ignored; certificates carry their seeds");

    auto* ren = app.add_subcommand("render", "Draw planar instances as SVG into <out>/<id>.svg");
    ren->add_option("--spec", spec, "Instance, experiment or certificate file")->required()->check(CLI::ExistingFile);
    ren->add_option("--certificate", certificate, "Certificate to overlay")->check(CLI::ExistingFile);
    ren->add_option("--id", id, "Instance id within an experiment");
    ren->add_option("--seed", seed, "Ignored; drawings are deterministic");
    ren->add_option("--out", out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_generate(spec, seed, out);
        if (*run) return cmd_run(spec, seed, out, jobs, !no_wall_time);
        if (*ver) return cmd_verify(certificates, ver->count("--out") ? out : std::string());
        if (*ren) return cmd_render(spec, certificate, id, out);
    } catch (const InputError& e) {
        std::cerr << "cara: " << e.what() << "\n";
        return kUsage;
    } catch (const CapabilityError& e) {
        std::cerr << "cara: unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "cara: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}

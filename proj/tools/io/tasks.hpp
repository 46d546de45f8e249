#pragma once

#include <cstdint>
#include <string>

#include "json_io.hpp"

namespace cara::io {

/// Task names accepted in instance documents.
const std::vector<std::string>& task_names();

struct TaskOutcome {
    /// Short "key=value" summary for the CSV.
    std::string result;
    /// Task-specific certificate body; null when the task produced nothing to check.
    json certificate;
    std::size_t iterations = 0;
    /// A search that ran out of budget without a claim.
    bool miss = false;
};

/// Runs one instance document {"task", "id", ...}. Randomized tasks draw from `seed`.
TaskOutcome run_task(const json& instance, std::uint64_t seed);

struct Verification {
    bool ok = false;
    std::string reason;
};

/// Re-checks a certificate against its instance from scratch.
Verification verify_task(const json& instance, const json& certificate);

/// Self-contained certificate file: instance, seed and certificate body.
json certificate_document(const json& instance, std::uint64_t seed, const TaskOutcome& outcome);
Verification verify_certificate_document(const json& doc);

/// Expands a generator spec into {"instances": [...]}.
json generate_experiment(const json& spec, std::uint64_t seed);

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted.
std::string csv_field(const std::string& s);

/// Seed of instance `index` under a run seed.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cara::io

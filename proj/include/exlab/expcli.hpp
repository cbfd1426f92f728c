#pragma once

#include <exlab/rng.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exlab::expcli {

inline constexpr int schema_version = 1;

struct ExperimentSpec {
    std::string module;
    std::string op;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    int trials = 1;
    std::string preset = "desk";
    std::string out; // empty: not written

    nlohmann::json to_json() const;
    static ExperimentSpec from_json(const nlohmann::json & j);
};

struct TrialOutcome {
    int trial = 0;
    bool success = false;
    std::string digest; // FNV-1a of the witness
    nlohmann::json stats = nlohmann::json::object();
    std::string error;

    nlohmann::json to_json() const;
    static TrialOutcome from_json(const nlohmann::json & j);
};

struct ExperimentRecord {
    ExperimentSpec spec; // parameters as resolved
    std::vector<TrialOutcome> trials;
    nlohmann::json aggregate;
    double wall_clock_seconds = 0;
    int threads = 1;

    bool all_ok() const;
    nlohmann::json to_json() const;
    static ExperimentRecord from_json(const nlohmann::json & j);
};

enum class ParamType { integer, real, text, flag };

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::integer;
    nlohmann::json fallback; // null: required
    std::optional<double> min, max;
    std::vector<std::string> choices;
    std::string help;
};

struct TrialContext {
    const nlohmann::json & params;
    const nlohmann::json & preset;
    RngStream rng;
    int trial = 0;
};

struct TrialResult {
    bool success = false;
    nlohmann::json witness;
    nlohmann::json stats = nlohmann::json::object();
};

struct Operation {
    std::string module;
    std::string op;
    std::string summary;
    std::vector<ParamSpec> params;
    /// JSON pointer into the preset whose object fills unspecified params.
    std::string preset_defaults;
    /// Cross-parameter checks after typing; may add derived values.
    std::function<void(nlohmann::json & params, const nlohmann::json & preset)> check;
    std::function<TrialResult(TrialContext &)> run;
    std::string key_stat;
};

const std::vector<Operation> & registry();

/// Throws ValidationError for an unknown module or op.
const Operation & find_operation(const std::string & module, const std::string & op);

/// Types, ranges, defaults and cross-checks. String values are converted
/// to the declared type. Throws ValidationError.
nlohmann::json resolve_params(const Operation & op, const nlohmann::json & raw, const nlohmann::json & preset);

/// The spec with its parameters resolved.
ExperimentSpec validate(const ExperimentSpec & spec);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest(const nlohmann::json & witness);

/// EXLAB_THREADS if set and positive, else the hardware concurrency.
int thread_count();

/// Validate, then run every trial. Trial t uses RngStream(seed).derive(t).
/// Per-trial failures are recorded, not thrown.
ExperimentRecord run(const ExperimentSpec & spec);

void write_record(const ExperimentRecord & r, const std::filesystem::path & path);
nlohmann::json read_record_json(const std::filesystem::path & path);

/// Per-trial rows: trial, success, digest, then every numeric stat.
std::string record_csv(const ExperimentRecord & r);

enum class ReportFormat { json, csv, md };
ReportFormat parse_format(const std::string & s);

/// One row per record, sorted by module then op. Records with another
/// schema version are flagged and carry no statistics.
std::string report(const std::vector<nlohmann::json> & records, ReportFormat format);

} // namespace exlab::expcli

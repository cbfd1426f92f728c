#include <exlab/errors.hpp>
#include <exlab/expcli.hpp>
#include <exlab/presets.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace exlab::expcli {

using nlohmann::json;

// ---------------------------------------------------------------- records

json ExperimentSpec::to_json() const
{
    return {{"module", module}, {"op", op},         {"params", params}, {"seed", seed},
            {"trials", trials}, {"preset", preset}, {"out", out}};
}

ExperimentSpec ExperimentSpec::from_json(const json & j)
{
    ExperimentSpec s;
    s.module = j.at("module").get<std::string>();
    s.op = j.at("op").get<std::string>();
    s.params = j.value("params", json::object());
    s.seed = j.value("seed", std::uint64_t{0});
    s.trials = j.value("trials", 1);
    s.preset = j.value("preset", std::string("desk"));
    s.out = j.value("out", std::string());
    return s;
}

json TrialOutcome::to_json() const
{
    json j{{"trial", trial}, {"success", success}, {"digest", digest}, {"stats", stats}};
    if (!error.empty())
        j["error"] = error;
    return j;
}

TrialOutcome TrialOutcome::from_json(const json & j)
{
    TrialOutcome t;
    t.trial = j.at("trial").get<int>();
    t.success = j.at("success").get<bool>();
    t.digest = j.value("digest", std::string());
    t.stats = j.value("stats", json::object());
    t.error = j.value("error", std::string());
    return t;
}

bool ExperimentRecord::all_ok() const
{
    return std::all_of(trials.begin(), trials.end(), [](const TrialOutcome & t) { return t.success; });
}

json ExperimentRecord::to_json() const
{
    json t = json::array();
    for (const auto & x : trials)
        t.push_back(x.to_json());
    return {{"schema_version", schema_version},
            {"spec", spec.to_json()},
            {"rng", {{"algorithm", std::string(RngStream::algorithm)}, {"seed", spec.seed}}},
            {"trials", t},
            {"aggregate", aggregate},
            {"wall_clock_seconds", wall_clock_seconds},
            {"threads", threads},
            {"all_ok", all_ok()}};
}

ExperimentRecord ExperimentRecord::from_json(const json & j)
{
    if (j.value("schema_version", -1) != schema_version)
        throw ValidationError("record: unsupported schema_version");
    ExperimentRecord r;
    r.spec = ExperimentSpec::from_json(j.at("spec"));
    for (const auto & t : j.at("trials"))
        r.trials.push_back(TrialOutcome::from_json(t));
    r.aggregate = j.value("aggregate", json::object());
    r.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
    r.threads = j.value("threads", 1);
    return r;
}

// ---------------------------------------------------------------- validation

const Operation & find_operation(const std::string & module, const std::string & op)
{
    bool module_known = false;
    for (const auto & o : registry()) {
        if (o.module != module)
            continue;
        module_known = true;
        if (o.op == op)
            return o;
    }
    if (!module_known)
        throw ValidationError("unknown module '" + module + "'");
    throw ValidationError("module '" + module + "' has no op '" + op + "'");
}

namespace {

json convert(const ParamSpec & p, const json & v)
{
    auto bad = [&](const std::string & why) { return ValidationError("parameter '" + p.name + "': " + why); };
    switch (p.type) {
    case ParamType::integer: {
        if (v.is_string()) {
            const auto & s = v.get_ref<const std::string &>();
            std::size_t used = 0;
            long long x = 0;
            try {
                x = std::stoll(s, &used);
            }
            catch (const std::exception &) {
                throw bad("expected an integer, got '" + s + "'");
            }
            if (used != s.size())
                throw bad("expected an integer, got '" + s + "'");
            return x;
        }
        if (v.is_number_integer())
            return v;
        if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>())
            return static_cast<long long>(v.get<double>());
        throw bad("expected an integer");
    }
    case ParamType::real: {
        if (v.is_string()) {
            const auto & s = v.get_ref<const std::string &>();
            std::size_t used = 0;
            double x = 0;
            try {
                x = std::stod(s, &used);
            }
            catch (const std::exception &) {
                throw bad("expected a number, got '" + s + "'");
            }
            if (used != s.size())
                throw bad("expected a number, got '" + s + "'");
            return x;
        }
        if (v.is_number())
            return v.get<double>();
        throw bad("expected a number");
    }
    case ParamType::flag:
        if (v.is_boolean())
            return v;
        if (v.is_string()) {
            const auto & s = v.get_ref<const std::string &>();
            if (s == "true" || s == "1")
                return true;
            if (s == "false" || s == "0")
                return false;
        }
        if (v.is_number_integer())
            return v.get<long long>() != 0;
        throw bad("expected true or false");
    case ParamType::text:
        if (v.is_string())
            return v;
        throw bad("expected a string");
    }
    return v;
}

} // namespace

json resolve_params(const Operation & op, const json & raw, const json & preset)
{
    if (!raw.is_object())
        throw ValidationError("parameters must be an object");
    for (const auto & [key, value] : raw.items())
        if (std::none_of(op.params.begin(), op.params.end(), [&](const ParamSpec & p) { return p.name == key; }))
            throw ValidationError(op.module + " " + op.op + ": unknown parameter '" + key + "'");
    json from_preset = json::object();
    if (!op.preset_defaults.empty()) {
        json::json_pointer ptr(op.preset_defaults);
        if (preset.contains(ptr))
            from_preset = preset.at(ptr);
    }
    json out = json::object();
    for (const auto & p : op.params) {
        json v;
        if (raw.contains(p.name))
            v = raw.at(p.name);
        else if (from_preset.contains(p.name))
            v = from_preset.at(p.name);
        else
            v = p.fallback;
        if (v.is_null())
            throw ValidationError(op.module + " " + op.op + ": missing parameter '" + p.name + "'");
        v = convert(p, v);
        if (v.is_number()) {
            double x = v.get<double>();
            if ((p.min && x < *p.min) || (p.max && x > *p.max)) {
                std::ostringstream msg;
                msg << "parameter '" << p.name << "' = " << v.dump() << " outside [" << (p.min ? *p.min : -INFINITY)
                    << ", " << (p.max ? *p.max : INFINITY) << "]";
                throw ValidationError(msg.str());
            }
        }
        if (!p.choices.empty() &&
            std::find(p.choices.begin(), p.choices.end(), v.get<std::string>()) == p.choices.end())
            throw ValidationError("parameter '" + p.name + "' must be one of the listed choices, got '" +
                                  v.get<std::string>() + "'");
        out[p.name] = v;
    }
    if (op.check)
        op.check(out, preset);
    return out;
}

ExperimentSpec validate(const ExperimentSpec & spec)
{
    const auto & op = find_operation(spec.module, spec.op);
    if (spec.trials < 1 || spec.trials > 1'000'000)
        throw ValidationError("trials must lie in 1..10^6");
    const json * pre = nullptr;
    try {
        pre = &preset(spec.preset);
    }
    catch (const std::invalid_argument & e) {
        throw ValidationError(e.what());
    }
    ExperimentSpec out = spec;
    out.params = resolve_params(op, spec.params, *pre);
    return out;
}

// ---------------------------------------------------------------- running

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest(const json & witness)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(witness.dump())));
    return buf;
}

int thread_count()
{
    if (const char * env = std::getenv("EXLAB_THREADS")) {
        char * end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(std::min(v, 256L));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

json aggregate_of(const std::vector<TrialOutcome> & trials, const std::string & key_stat)
{
    struct Acc {
        double sum = 0, lo = INFINITY, hi = -INFINITY;
        int count = 0;
    };
    std::map<std::string, Acc> acc;
    int ok = 0;
    for (const auto & t : trials) {
        ok += t.success;
        for (const auto & [k, v] : t.stats.items()) {
            if (!v.is_number() && !v.is_boolean())
                continue;
            double x = v.is_boolean() ? (v.get<bool>() ? 1.0 : 0.0) : v.get<double>();
            auto & a = acc[k];
            a.sum += x;
            a.lo = std::min(a.lo, x);
            a.hi = std::max(a.hi, x);
            ++a.count;
        }
    }
    json stats = json::object();
    for (const auto & [k, a] : acc)
        stats[k] = {{"mean", a.sum / a.count}, {"min", a.lo}, {"max", a.hi}, {"count", a.count}};
    json out{{"trials", trials.size()},
             {"successes", ok},
             {"success_rate", trials.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(trials.size())},
             {"stats", stats}};
    if (!key_stat.empty() && stats.contains(key_stat))
        out["key_stat"] = {{"name", key_stat}, {"mean", stats[key_stat]["mean"]}, {"min", stats[key_stat]["min"]}};
    return out;
}

} // namespace

ExperimentRecord run(const ExperimentSpec & input)
{
    auto spec = validate(input);
    const auto & op = find_operation(spec.module, spec.op);
    const json & pre = preset(spec.preset);
    ExperimentRecord rec;
    rec.spec = spec;
    rec.trials.resize(static_cast<std::size_t>(spec.trials));
    rec.threads = std::min(thread_count(), spec.trials);
    const RngStream base(spec.seed);
    const auto start = std::chrono::steady_clock::now();
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < spec.trials; t = next++) {
            TrialOutcome out;
            out.trial = t;
            TrialContext ctx{spec.params, pre, base.derive(static_cast<std::uint64_t>(t)), t};
            try {
                auto res = op.run(ctx);
                out.success = res.success;
                out.digest = digest(res.witness);
                out.stats = std::move(res.stats);
            }
            catch (const SearchFailure & e) {
                out.error = e.what();
                out.stats = {{"failed_stage", e.stage()}};
                out.digest = digest(nullptr);
            }
            catch (const std::exception & e) {
                out.error = e.what();
                out.digest = digest(nullptr);
            }
            rec.trials[static_cast<std::size_t>(t)] = std::move(out);
        }
    };
    if (rec.threads <= 1) {
        worker();
    }
    else {
        std::vector<std::thread> pool;
        for (int i = 0; i < rec.threads; ++i)
            pool.emplace_back(worker);
        for (auto & th : pool)
            th.join();
    }
    rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.aggregate = aggregate_of(rec.trials, op.key_stat);
    if (!spec.out.empty())
        write_record(rec, spec.out);
    return rec;
}

void write_record(const ExperimentRecord & r, const std::filesystem::path & path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << r.to_json().dump(2) << '\n';
}

json read_record_json(const std::filesystem::path & path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot read " + path.string());
    try {
        return json::parse(f);
    }
    catch (const json::parse_error & e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------- output

namespace {

std::string csv_field(const std::string & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string scalar(const json & v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "";
    return v.dump();
}

} // namespace

std::string record_csv(const ExperimentRecord & r)
{
    std::vector<std::string> keys;
    for (const auto & t : r.trials)
        for (const auto & [k, v] : t.stats.items())
            if ((v.is_number() || v.is_boolean()) && std::find(keys.begin(), keys.end(), k) == keys.end())
                keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    std::ostringstream out;
    out << "trial,success,digest";
    for (const auto & k : keys)
        out << ',' << csv_field(k);
    out << '\n';
    for (const auto & t : r.trials) {
        out << t.trial << ',' << (t.success ? "true" : "false") << ',' << t.digest;
        for (const auto & k : keys)
            out << ',' << (t.stats.contains(k) ? scalar(t.stats[k]) : "");
        out << '\n';
    }
    return out.str();
}

ReportFormat parse_format(const std::string & s)
{
    if (s == "json")
        return ReportFormat::json;
    if (s == "csv")
        return ReportFormat::csv;
    if (s == "md")
        return ReportFormat::md;
    throw ValidationError("format must be json, csv or md");
}

std::string report(const std::vector<json> & records, ReportFormat format)
{
    std::vector<json> rows;
    for (const auto & rec : records) {
        json row;
        const auto spec = rec.value("spec", json::object());
        row["module"] = spec.value("module", std::string("?"));
        row["op"] = spec.value("op", std::string("?"));
        row["params"] = spec.value("params", json::object()).dump();
        const int version = rec.value("schema_version", -1);
        if (version != schema_version) {
            row["flag"] = "schema_version " + std::to_string(version) + " unsupported";
            rows.push_back(row);
            continue;
        }
        const auto agg = rec.value("aggregate", json::object());
        row["trials"] = agg.value("trials", 0);
        row["success_rate"] = agg.value("success_rate", 0.0);
        if (agg.contains("key_stat")) {
            row["key_stat"] = agg["key_stat"]["name"];
            row["key_mean"] = agg["key_stat"]["mean"];
            row["key_min"] = agg["key_stat"]["min"];
        }
        row["flag"] = "";
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const json & a, const json & b) {
        return std::pair(a["module"].get<std::string>(), a["op"].get<std::string>()) <
               std::pair(b["module"].get<std::string>(), b["op"].get<std::string>());
    });
    if (format == ReportFormat::json)
        return json(rows).dump(2) + "\n";
    const std::vector<std::string> cols{"module", "op", "params", "trials", "success_rate", "key_stat", "key_mean",
                                        "key_min", "flag"};
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto & row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                out << (i ? "," : "") << csv_field(row.contains(cols[i]) ? scalar(row[cols[i]]) : "");
            out << '\n';
        }
        return out.str();
    }
    out << '|';
    for (const auto & c : cols)
        out << ' ' << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << "---|";
    out << '\n';
    for (const auto & row : rows) {
        out << '|';
        for (const auto & c : cols) {
            std::string cell = row.contains(c) ? scalar(row[c]) : "";
            std::string esc;
            for (char ch : cell)
                esc += ch == '|' ? std::string("\\|") : std::string(1, ch);
            out << ' ' << esc << " |";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace exlab::expcli

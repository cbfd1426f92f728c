#include <exlab/errors.hpp>
#include <exlab/expcli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>

using namespace exlab;
using nlohmann::json;

namespace {

struct ModuleOptions {
    std::string op;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string preset = "desk";
    std::string out;
    std::string format = "json";
    bool dry_run = false;
    std::vector<std::string> extra; // key=value
    std::map<std::string, std::string> named;
    std::vector<std::string> random_pair;
};

std::string flag_name(std::string param)
{
    for (auto & c : param)
        if (c == '_')
            c = '-';
    return "--" + param;
}

int run_module(const std::string & module, ModuleOptions & o)
{
    expcli::ExperimentSpec spec;
    spec.module = module;
    spec.op = o.op;
    spec.seed = o.seed;
    spec.trials = o.trials;
    spec.preset = o.preset;
    for (const auto & [k, v] : o.named)
        if (!v.empty())
            spec.params[k] = v;
    if (!o.random_pair.empty()) {
        // bipfree: --random n p; removal: --random-grid N r
        if (module == "bipfree") {
            spec.params["vertices"] = o.random_pair[0];
            spec.params["p"] = o.random_pair[1];
        }
        else {
            spec.params["N"] = o.random_pair[0];
            spec.params["r"] = o.random_pair[1];
        }
    }
    for (const auto & kv : o.extra) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ValidationError("--param expects key=value, got '" + kv + "'");
        spec.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (o.dry_run) {
        auto resolved = expcli::validate(spec);
        std::cout << resolved.to_json().dump(2) << '\n';
        return 0;
    }
    auto rec = expcli::run(spec);
    if (!o.out.empty()) {
        if (o.format == "csv") {
            std::ofstream f(o.out);
            if (!f)
                throw std::runtime_error("cannot write " + o.out);
            f << expcli::record_csv(rec);
        }
        else {
            expcli::write_record(rec, o.out);
        }
    }
    json summary{{"module", module},
                 {"op", rec.spec.op},
                 {"params", rec.spec.params},
                 {"seed", rec.spec.seed},
                 {"aggregate", rec.aggregate},
                 {"all_ok", rec.all_ok()},
                 {"wall_clock_seconds", rec.wall_clock_seconds}};
    for (const auto & t : rec.trials)
        if (!t.error.empty()) {
            summary["first_error"] = t.error;
            break;
        }
    std::cout << summary.dump(2) << '\n';
    return rec.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"exlab: constructions and verifiers from extremal combinatorics"};
    app.require_subcommand(1);

    std::map<std::string, std::set<std::string>> ops, params;
    for (const auto & op : expcli::registry()) {
        ops[op.module].insert(op.op);
        for (const auto & p : op.params)
            params[op.module].insert(p.name);
    }

    std::map<std::string, ModuleOptions> options;
    std::string chosen;
    for (const auto & [module, names] : ops) {
        auto & o = options[module];
        std::string list;
        for (const auto & n : names)
            list += (list.empty() ? "" : ",") + n;
        auto * sub = app.add_subcommand(module, "operations: " + list);
        auto * op_opt = sub->add_option("--op", o.op, "operation")->check(CLI::IsMember(names));
        if (module == "setmap")
            sub->add_option("--mode", o.op, "alias of --op")->check(CLI::IsMember(names))->excludes(op_opt);
        sub->add_option("--seed", o.seed, "base seed");
        sub->add_option("--trials", o.trials, "number of trials");
        sub->add_option("--preset", o.preset, "constant preset (paper, desk)");
        sub->add_option("--out", o.out, "write the record here");
        sub->add_option("--format", o.format, "record format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--dry-run", o.dry_run, "validate and print the resolved parameters");
        sub->add_option("--param", o.extra, "extra parameter key=value");
        for (const auto & p : params[module]) {
            o.named[p];
            sub->add_option(flag_name(p), o.named[p], "parameter " + p);
        }
        if (module == "bipfree")
            sub->add_option("--random", o.random_pair, "G(n, p): n p")->expected(2);
        if (module == "removal")
            sub->add_option("--random-grid", o.random_pair, "random grid: N r")->expected(2);
        sub->callback([&chosen, module = module] { chosen = module; });
    }

    std::vector<std::string> files;
    std::string report_format = "md";
    auto * rep = app.add_subcommand("report", "summarise record files");
    rep->add_option("records", files, "record files")->required();
    rep->add_option("--format", report_format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    rep->callback([&] { chosen = "report"; });

    auto * list = app.add_subcommand("list", "list modules, operations and parameters");
    list->callback([&] { chosen = "list"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (chosen == "list") {
            for (const auto & op : expcli::registry()) {
                std::cout << op.module << ' ' << op.op << ": " << op.summary << '\n';
                for (const auto & p : op.params)
                    std::cout << "    " << flag_name(p.name) << (p.fallback.is_null() ? " (required)" : " = " + p.fallback.dump())
                              << (p.help.empty() ? "" : "  " + p.help) << '\n';
            }
            return 0;
        }
        if (chosen == "report") {
            std::vector<json> recs;
            for (const auto & f : files)
                recs.push_back(expcli::read_record_json(f));
            std::cout << expcli::report(recs, expcli::parse_format(report_format));
            return 0;
        }
        auto & o = options[chosen];
        if (o.op.empty())
            throw ValidationError("--op is required");
        return run_module(chosen, o);
    }
    catch (const ValidationError & e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return 2;
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "metricline/catalog.hpp"
#include "metricline/report.hpp"

using namespace metricline;

namespace {

struct CommonArgs {
    std::string config_path;
    long long seed = -1;
    std::string json_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "flat key=value configuration file");
    cmd->add_option("--seed", args.seed, "RNG seed override");
    cmd->add_option("--json", args.json_path, "write the JSON report here");
}

CheckConfig load_common(const CommonArgs& args) {
    CheckConfig cfg;
    if (!args.config_path.empty()) cfg = load_config_file(args.config_path);
    if (args.seed >= 0) cfg.rng_seed = static_cast<std::uint64_t>(args.seed);
    return cfg;
}

int emit(const Report& report, const CommonArgs& args) {
    std::cout << report_summary(report);
    if (!args.json_path.empty()) {
        std::ofstream out(args.json_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << args.json_path << "\n";
            return 1;
        }
        out << report_to_json(report);
    }
    return exit_code_for(report.verdict.kind);
}

int run_certify(const std::string& expr_text, const std::string& catalog_name,
                const std::vector<std::string>& params, const CommonArgs& common) {
    CheckConfig cfg = load_common(common);

    MetricCandidate candidate;
    if (!expr_text.empty()) {
        candidate = candidate_from_source(expr_text);
    } else {
        std::map<std::string, double> numeric;
        ExprPtr generator;
        for (const std::string& kv : params) {
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
                return 1;
            }
            const std::string key = kv.substr(0, eq);
            const std::string val = kv.substr(eq + 1);
            if (key == "g") {
                generator = parse(val, {"x"});
            } else {
                try {
                    std::size_t used = 0;
                    numeric[key] = std::stod(val, &used);
                    if (used != val.size()) throw std::invalid_argument(val);
                } catch (const std::exception&) {
                    std::cerr << "error: parameter '" << key << "' is not a number: " << val
                              << "\n";
                    return 1;
                }
            }
        }
        candidate = catalog_get(catalog_name, numeric, generator).d;
    }
    return emit(run_full(candidate, cfg), common);
}

int run_subadditive(const std::string& generator_text, bool half_line, const CommonArgs& common) {
    CheckConfig cfg = load_common(common);
    GeneratorFunction gen = is_generator_fixture(generator_text)
                                ? generator_fixture(generator_text)
                                : make_generator(generator_text, half_line);
    return emit(run_generator(gen, cfg), common);
}

int run_catalog(const std::string& name) {
    if (name.empty()) {
        for (const CatalogDescriptor& d : catalog_list()) {
            std::printf("%-20s %-34s expected: %s\n", d.name.c_str(), d.param_schema.c_str(),
                        d.expected_theorem.c_str());
            std::printf("    %s\n", d.formula.c_str());
        }
        return 0;
    }
    for (const CatalogDescriptor& d : catalog_list()) {
        if (d.name == name) {
            std::printf("%s\n  parameters: %s\n  expected: %s\n  formula: %s\n", d.name.c_str(),
                        d.param_schema.c_str(), d.expected_theorem.c_str(), d.formula.c_str());
            return 0;
        }
    }
    std::cerr << "error: unknown catalog entry '" << name << "'\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical distance certification on the real line"};
    app.require_subcommand(1);

    // certify
    auto* certify_cmd =
        app.add_subcommand("certify", "certify, refute or fail to decide a candidate d(x,y)");
    std::string expr_text, catalog_name;
    std::vector<std::string> params;
    CommonArgs certify_common;
    auto* expr_opt = certify_cmd->add_option("--expr", expr_text, "candidate expression in x,y");
    auto* cat_opt = certify_cmd->add_option("--catalog", catalog_name, "built-in candidate name");
    certify_cmd->add_option("--param", params, "catalog parameter key=value (g=<expr> for generators)");
    add_common(certify_cmd, certify_common);
    expr_opt->excludes(cat_opt);

    // subadditive
    auto* sub_cmd = app.add_subcommand(
        "subadditive", "classify a translation-invariant generator (fixture name or expression in x)");
    std::string generator_text;
    bool half_line = false;
    CommonArgs sub_common;
    sub_cmd->add_option("--generator", generator_text, "generator expression or fixture name")
        ->required();
    sub_cmd->add_flag("--half-line", half_line, "generator lives on [0,inf)");
    add_common(sub_cmd, sub_common);

    // catalog
    auto* cat_cmd = app.add_subcommand("catalog", "list built-in candidates");
    std::string list_name;
    cat_cmd->add_option("--name", list_name, "show one entry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify_cmd->parsed()) {
            if (expr_text.empty() == catalog_name.empty()) {
                std::cerr << "error: exactly one of --expr or --catalog is required\n";
                return 1;
            }
            return run_certify(expr_text, catalog_name, params, certify_common);
        }
        if (sub_cmd->parsed()) return run_subadditive(generator_text, half_line, sub_common);
        if (cat_cmd->parsed()) return run_catalog(list_name);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

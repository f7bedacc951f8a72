#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskfold/errors.hpp"
#include "riskfold/oracle.hpp"
#include "riskfold/pipeline.hpp"

namespace {

using riskfold::PipelineConfig;
using riskfold::UsageError;

std::vector<int> parse_int_list(const std::string& text, char sep) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(value);
        } catch (const std::exception&) {
            throw UsageError("cannot parse integer '" + item + "' in '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list '" + text + "'");
    return out;
}

std::vector<riskfold::VertexSet> parse_cliques(const std::string& text) {
    std::vector<riskfold::VertexSet> cliques;
    std::string group;
    std::istringstream in(text);
    while (std::getline(in, group, ';')) {
        riskfold::VertexSet c = 0;
        for (int v : parse_int_list(group, ',')) {
            if (v < 0 || v >= 64) throw UsageError("variable index out of range: " + std::to_string(v));
            c |= riskfold::set_of(v);
        }
        cliques.push_back(c);
    }
    if (cliques.empty()) throw UsageError("no cliques in '" + text + "'");
    return cliques;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw riskfold::DomainError("cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw riskfold::DomainError("failed while writing " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disclosure risk evaluation and control for categorical microdata"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string model_path;

    auto add_data_opts = [&](CLI::App* cmd) {
        cmd->add_option("--schema", cfg.schema_path, "schema JSON (variables + population size)")
            ->required()
            ->envname("RISKFOLD_SCHEMA");
        cmd->add_option("--data", cfg.data_path, "microdata CSV, one record per line")
            ->required()
            ->envname("RISKFOLD_DATA");
        cmd->add_option("--out-dir", cfg.out_dir, "directory for emitted artifacts")
            ->envname("RISKFOLD_OUT_DIR");
        cmd->add_option("--population", cfg.population, "override the schema's population size");
        cmd->add_flag("--header", cfg.skip_header, "skip a header row in the data file");
        cmd->add_flag("--infer-codes", cfg.infer_codes,
                      "build code dictionaries from the data before ingesting");
        cmd->add_option("--threads", cfg.threads, "worker threads (default 1)")
            ->envname("RISKFOLD_THREADS");
    };
    auto add_search_opts = [&](CLI::App* cmd) {
        cmd->add_option("--restarts", cfg.restarts, "random restarts for the model search")
            ->envname("RISKFOLD_RESTARTS");
        cmd->add_option("--seed", cfg.seed, "seed for the random restarts")
            ->envname("RISKFOLD_SEED");
        cmd->add_option("--coin-prob", cfg.coin_prob,
                        "probability of starting a fresh clique while growing a random start");
        cmd->add_option("--top", cfg.top, "models kept in the report");
    };
    auto add_risk_opts = [&](CLI::App* cmd) {
        cmd->add_option("--risk-threshold", cfg.risk_threshold,
                        "cell probability at or below which a record counts as risky");
    };
    auto add_swap_opts = [&](CLI::App* cmd) {
        cmd->add_option("--max-records", cfg.max_swap_records,
                        "cap on risky records to swap (negative: all)");
    };
    auto resolved_model = [&]() -> std::string {
        if (!model_path.empty()) return model_path;
        return (std::filesystem::path(cfg.out_dir) / "model.json").string();
    };

    CLI::App* run = app.add_subcommand("run", "full pipeline: search, risk, swap, emit");
    add_data_opts(run);
    add_search_opts(run);
    add_risk_opts(run);
    add_swap_opts(run);
    run->callback([&] {
        riskfold::run_pipeline(cfg);
        std::cout << "wrote model/risk/swap reports and swapped.csv to " << cfg.out_dir << "\n";
    });

    CLI::App* fit_cmd =
        app.add_subcommand("fit", "model search only; writes the model report and model file");
    add_data_opts(fit_cmd);
    add_search_opts(fit_cmd);
    fit_cmd->callback([&] {
        riskfold::run_fit(cfg);
        std::cout << "wrote model report and model.json to " << cfg.out_dir << "\n";
    });

    CLI::App* risk_cmd = app.add_subcommand("risk", "risk report under a persisted model");
    add_data_opts(risk_cmd);
    add_risk_opts(risk_cmd);
    risk_cmd->add_option("--model", model_path, "model file written by the fit stage");
    risk_cmd->callback([&] {
        riskfold::run_risk(cfg, resolved_model());
        std::cout << "wrote risk report to " << cfg.out_dir << "\n";
    });

    CLI::App* swap_cmd = app.add_subcommand("swap", "swap risky records under a persisted model");
    add_data_opts(swap_cmd);
    add_risk_opts(swap_cmd);
    add_swap_opts(swap_cmd);
    swap_cmd->add_option("--model", model_path, "model file written by the fit stage");
    swap_cmd->callback([&] {
        riskfold::run_swap(cfg, resolved_model());
        std::cout << "wrote swap log and swapped.csv to " << cfg.out_dir << "\n";
    });

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force references");
    oracle->require_subcommand(1);

    int count_m = 4;
    CLI::App* count = oracle->add_subcommand("count-chordal", "count labeled chordal graphs");
    count->add_option("-m,--vars", count_m, "vertex count (1 to 7)")->required();
    count->add_option("--threads", cfg.threads, "worker threads");
    count->callback([&] { std::cout << riskfold::count_chordal(count_m, cfg.threads) << "\n"; });

    std::string cliques_arg;
    std::string cards_arg;
    std::int64_t synth_n = 1000;
    std::uint64_t synth_seed = 1;
    std::int64_t synth_pop = -1;
    CLI::App* synth = oracle->add_subcommand("synth", "generate synthetic microdata");
    synth->add_option("--cliques", cliques_arg,
                      "cliques as semicolon-separated groups of comma-separated 0-based variables, "
                      "e.g. '0,1;1,2'")
        ->required();
    synth->add_option("--cards", cards_arg, "comma-separated cardinalities, e.g. '5,4,3'")
        ->required();
    synth->add_option("-n,--records", synth_n, "records to draw");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--pop", synth_pop, "population size stored in the schema");
    synth->add_option("--out-dir", cfg.out_dir, "directory for synthetic.csv and synthetic_schema.json");
    synth->callback([&] {
        const auto table = riskfold::synth_table(parse_cliques(cliques_arg),
                                                 parse_int_list(cards_arg, ','), synth_n,
                                                 synth_seed, synth_pop);
        std::filesystem::create_directories(cfg.out_dir);
        std::ostringstream csv;
        riskfold::write_csv(csv, table);
        write_file(std::filesystem::path(cfg.out_dir) / "synthetic.csv", csv.str());
        write_file(std::filesystem::path(cfg.out_dir) / "synthetic_schema.json",
                   riskfold::schema_to_json(table.schema()));
        std::cout << "wrote synthetic.csv and synthetic_schema.json to " << cfg.out_dir << "\n";
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "dmass/cli.hpp"
#include "dmass/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

namespace {

int emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) {
        std::cerr << "dmass: cannot write " << output << "\n";
        return 1;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for zeta functions, hereditary orders, Dieudonne modules and mass formulas"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dmass::cli::kVersion);

    std::string config_path;
    std::string output;
    std::string format = "json";
    std::optional<std::uint64_t> seed;

    for (const auto& name : dmass::cli::commands()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " computation");
        sub->add_option("--config", config_path, "JSON config file (standard input when absent)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--output", output, "output file (standard output when absent)");
    }
    CLI11_PARSE(app, argc, argv);

    dmass::cli::RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.seed = seed;

    std::string text;
    if (config_path.empty() || config_path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "dmass: cannot read " << config_path << "\n";
            return 2;
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }

    dmass::cli::RunResult result;
    try {
        cfg.payload = nlohmann::json::parse(text);
        result = dmass::cli::run(cfg);
    } catch (const nlohmann::json::parse_error& err) {
        result.exit_code = 2;
        result.report = {{"tool", dmass::cli::kToolName},
                         {"version", dmass::cli::kVersion},
                         {"command", cfg.command},
                         {"seed", seed.value_or(dmass::kDefaultSeed)},
                         {"config", nullptr},
                         {"status", "invalid"},
                         {"errors", {{{"path", ""}, {"message", std::string("malformed JSON: ") + err.what()}}}}};
    }

    const std::string rendered = format == "table" ? dmass::cli::render_table(result.report)
                                                   : dmass::cli::render_json(result.report);
    if (emit(rendered, output) != 0) return 1;
    return result.exit_code;
}

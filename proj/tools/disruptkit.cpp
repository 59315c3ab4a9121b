#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "disruptkit/pipeline.hpp"
#include "disruptkit/types.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disruptkit: disruption scores, impact ranks and their correlation analyses"};
    app.require_subcommand(1);

    CliArgs args;
    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"ingest", "build the corpus cache from metadata + edge list"},
        {"score", "export per-paper disruption scores and c5"},
        {"sweep", "percentile sweeps and citation share curves"},
        {"careers", "author eligibility and career-level curves"},
        {"null", "seeded permutation null experiment"},
        {"synth", "generate a synthetic corpus"},
    };
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--config", args.config_path, "pipeline config file")->required();
        sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
        sub->add_option("--seed", args.seed, "master seed override");
        sub->add_option("--out", args.out_dir, "output directory override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return disruptkit::kExitConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        disruptkit::PipelineConfig config =
            disruptkit::PipelineConfig::from_file(args.config_path);
        if (sub->count("--threads") > 0) config.threads = args.threads;
        if (sub->count("--seed") > 0) {
            config.seed = args.seed;
            config.synth.seed = args.seed;
        }
        if (sub->count("--out") > 0) config.out_dir = args.out_dir;

        const std::string name = sub->get_name();
        if (name == "ingest")
            disruptkit::cmd_ingest(config);
        else if (name == "score")
            disruptkit::cmd_score(config);
        else if (name == "sweep")
            disruptkit::cmd_sweep(config);
        else if (name == "careers")
            disruptkit::cmd_careers(config);
        else if (name == "null")
            disruptkit::cmd_null(config);
        else
            disruptkit::cmd_synth(config);
    } catch (const disruptkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return disruptkit::kExitConfigError;
    } catch (const disruptkit::PrerequisiteError& e) {
        std::cerr << "missing prerequisite: " << e.what() << '\n';
        return disruptkit::kExitMissingPrerequisite;
    } catch (const disruptkit::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return disruptkit::kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return disruptkit::kExitOk;
}

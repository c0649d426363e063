// norbrack <suite> --config <path> [--out <path>] [--n N] [--seed S]
// norbrack --list
//
// Exit status: 0 all records pass, 1 any failure, 2 configuration error.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "norbrack/errors.hpp"
#include "norbrack/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical checks for normal-bundle brackets on closed curves"};
    std::string suite_name;
    std::string config_path;
    std::string out_path;
    std::optional<std::size_t> grid_n;
    std::optional<std::uint64_t> seed;
    bool list = false;

    app.add_option("suite", suite_name, "Suite to run");
    app.add_option("--config", config_path, "JSON config document")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "JSON-lines report path (overrides the config)");
    app.add_option("--n", grid_n, "Grid size (overrides the config)");
    app.add_option("--seed", seed, "Random seed (overrides the config)");
    app.add_flag("--list", list, "List the available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    if (list) {
        for (norbrack::Suite s : norbrack::all_suites())
            std::cout << norbrack::to_string(s) << '\n';
        return kExitPass;
    }

    norbrack::SuiteConfig config;
    try {
        if (suite_name.empty())
            throw norbrack::ConfigInvalid("no suite given (see --list)");
        const norbrack::Suite suite = norbrack::suite_from_string(suite_name);
        if (config_path.empty()) {
            config = norbrack::parse_config("{}", suite);
        } else {
            config = norbrack::load_config(config_path, suite);
            if (config.suite != suite)
                throw norbrack::ConfigInvalid("config is for suite '" + std::string(norbrack::to_string(config.suite)) +
                                              "', not '" + suite_name + "'");
        }
        if (grid_n)
            config.grid_n = *grid_n;
        if (seed)
            config.seed = *seed;
        if (!out_path.empty())
            config.output = out_path;
        config.validate();
    } catch (const norbrack::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }

    const std::vector<norbrack::ReportRecord> records = norbrack::run_suite(config);
    std::size_t failed = 0;
    for (const norbrack::ReportRecord& r : records)
        if (!r.pass) {
            ++failed;
            std::cerr << "FAIL " << r.case_id << ' ' << r.metric << " = " << r.value << " > " << r.tolerance << '\n';
        }

    if (config.output.empty()) {
        for (const norbrack::ReportRecord& r : records)
            std::cout << r.to_json() << '\n';
    } else {
        try {
            norbrack::emit_report(records, config.output);
        } catch (const norbrack::Error& e) {
            std::cerr << e.what() << '\n';
            return kExitFail;
        }
    }
    std::cerr << norbrack::to_string(config.suite) << ": " << records.size() - failed << '/' << records.size()
              << " records pass\n";
    return failed == 0 ? kExitPass : kExitFail;
}

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "spmm/run.hpp"

namespace fs = std::filesystem;

namespace {

fs::path output_root(const spmm::run::RunConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("SPMM_OUT")) return env;
    return "out";
}

fs::path artifact_dir_for(const fs::path& config_path, const spmm::run::RunConfig& cfg) {
    return output_root(cfg) / config_path.stem();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving short pulse equation solver suite"};
    app.require_subcommand(1);

    std::string config_path;
    std::string dir_path;
    int levels = 3;

    auto* cmd_run = app.add_subcommand("run", "execute one configured run");
    cmd_run->add_option("config", config_path, "config file")->required();

    auto* cmd_conv = app.add_subcommand("convergence", "refinement study against the exact solution");
    cmd_conv->add_option("config", config_path, "config file")->required();
    cmd_conv->add_option("--levels", levels, "number of refinement levels")->capture_default_str();

    auto* cmd_inv = app.add_subcommand("invariants", "summarize invariant drift of a finished run");
    cmd_inv->add_option("dir", dir_path, "run artifact directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const auto cfg = spmm::run::parse_config_file(config_path);
            const fs::path dir = artifact_dir_for(config_path, cfg);
            spmm::run::run(cfg, dir);
            std::cout << "artifacts written to " << dir.string() << "\n";
            return 0;
        }
        if (cmd_conv->parsed()) {
            const auto cfg = spmm::run::parse_config_file(config_path);
            const auto rows = spmm::run::convergence(cfg, levels);
            std::cout << "K,delta_t,err_phys,err_theta,gap_naive,order_phys\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                std::cout << r.K << ',' << r.delta_t << ',' << r.err_phys << ',' << r.err_theta
                          << ',' << r.gap_naive;
                if (i > 0)
                    std::cout << ',' << std::log2(rows[i - 1].err_phys / r.err_phys);
                std::cout << "\n";
            }
            return 0;
        }
        const int code = spmm::run::invariants_report(dir_path, std::cout);
        return code;
    } catch (const spmm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const spmm::NewtonDivergence& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const spmm::SingularJacobian& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

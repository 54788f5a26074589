#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moutard/moutard.hpp"

namespace moutard {

enum class CheckKind { Dbar, Symmetry, Omega, Seed };

struct GridParams {
    double r_min = 0.1;
    double r_max = 10.0;
    int n_radial = 16;
    int n_angular = 12;
};

// Validated run configuration shared by all CLI commands.
struct RunConfig {
    double energy = -1.0;
    std::optional<double> alpha;
    GridParams grid;
    std::vector<Complex> z_samples = {Complex(1.0, 0.5)};
    double fd_step = 1e-3;
    QuadratureConfig quadrature;
    OmegaMode omega_mode = OmegaMode::ClosedForm;
    std::string output_dir = "moutard-out";
    std::optional<double> c_ff_override;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_json_file(const std::string& path);
    nlohmann::ordered_json to_json() const;

    Coupling require_alpha() const {
        if (!alpha)
            throw ConfigError("alpha: required for this command");
        return Coupling(*alpha);
    }
};

struct CheckLine {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct OutputTable {
    std::string name;    // file stem
    std::string header;  // exact CSV header line
    std::vector<std::string> rows;
};

struct OutputRecord {
    std::string command;
    nlohmann::ordered_json params;
    std::vector<OutputTable> tables;
    std::vector<CheckLine> checks;

    bool all_pass() const;
    // Writes <command>_<table>.csv per table and <command>_summary.json.
    // Returns the written paths in a fixed order.
    std::vector<std::string> write(const std::string& dir) const;
};

OutputRecord cmd_green(const RunConfig& cfg);
OutputRecord cmd_spectrum(const RunConfig& cfg);
OutputRecord cmd_check(const RunConfig& cfg, CheckKind which);
OutputRecord cmd_create(const RunConfig& cfg);
OutputRecord cmd_annihilate(const RunConfig& cfg);

// Round-trip exact double formatting used for every CSV cell.
std::string format_double(double v);

// Full command-line entry point; maps errors to the exit-code contract
// (0 ok, 2 config, 3 numerical failure, 4 failed checks).
int run_cli(int argc, char** argv);

} // namespace moutard

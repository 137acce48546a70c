#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace favprop::cli {

// invalid flag combinations; mapped to exit status 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnsembleCommandArgs {
    std::string model;              // rayleigh | urlos
    std::size_t num_antennas = 0;   // --M
    std::size_t num_terminals = 0;  // --K
    double rho = 1.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    double spacing = 0.5;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;
};

struct DropArgs {
    std::size_t num_beams = 0;      // --M
    std::size_t num_terminals = 0;  // --K
    std::size_t mc_trials = 0;      // 0 = no Monte Carlo overlay
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;
};

struct VarianceArgs {
    std::string model;
    std::string m_list;  // comma-separated antenna counts
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    double spacing = 0.5;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;
};

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string format = "text";  // text | json
    std::string out;              // empty = stdout
};

int run_singular_cdf(const EnsembleCommandArgs& args);
int run_capacity_cdf(const EnsembleCommandArgs& args);
int run_drop_prob(const DropArgs& args);
int run_variance_check(const VarianceArgs& args);
int run_report(const ReportArgs& args);
int run_rerun(const std::string& manifest_path);

// Bare file names are placed under $FAVPROP_OUT_DIR when it is set; paths
// with a directory part are used as given.
std::string resolve_output_path(const std::string& out, const std::string& default_name);

void apply_preset(const std::string& preset, std::size_t& num_antennas,
                  std::size_t& num_terminals, bool antennas_set, bool terminals_set);

}  // namespace favprop::cli

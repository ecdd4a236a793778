#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "aniso_mhd/state.hpp"

namespace mhd {

enum class InitKind { Gaussian, RandomBandlimited, SingleMode };

struct RunConfig {
    int n = 128;
    double domain_length = 8.0 * M_PI;
    double dt = 0.01;
    double t_end = 10.0;
    double epsilon = 1e-3;
    InitKind init_kind = InitKind::Gaussian;
    std::uint64_t seed = 1;
    int integrator_order = 2;
    int sample_every = 1;
    double ratio_cap = 10.0;
    std::string output_path = "out";

    // single_mode placement
    int mode_k1 = 1;
    int mode_k2 = 0;

    // run variants and safeguards
    bool linear_only = false;
    bool zero_velocity = false;
    double blowup_threshold = 1e6;

    // heat-weighted initial norm quadrature
    double a0_t_cut = 16.0;
    double a0_quad_dt = 0.01;

    // sweep subcommand
    std::string sweep_epsilons = "1e-3,1e-2,1e-1";
};

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& msg)
        : std::runtime_error("config error at line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

// Line-oriented `key = value` format, '#' comments, unknown keys rejected.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);
std::string serialize(const RunConfig& cfg);

State make_initial_data(const RunConfig& cfg);

const char* init_kind_name(InitKind kind);

}  // namespace mhd

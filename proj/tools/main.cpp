#include <iostream>
#include <string>

#include "aniso_mhd/runner.hpp"

namespace {

void usage(std::ostream& os) {
    os << "usage: aniso_mhd <subcommand> [config-file]\n"
          "\n"
          "subcommands:\n"
          "  simulate          integrate and write timeseries.csv + summary.json\n"
          "  propagator-audit  multiplier bound and kernel-norm report\n"
          "  energy-audit      energy-identity residual convergence study\n"
          "  interp-audit      interpolation-ratio corpus report\n"
          "  sweep             run the epsilon list, one summary row each\n"
          "  print-defaults    print the default configuration\n"
          "\n"
          "config: line-oriented `key = value`, '#' comments; omitted keys take\n"
          "the defaults shown by print-defaults.\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(std::cerr);
        return mhd::kExitConfig;
    }
    const std::string name = argv[1];
    if (name == "--help" || name == "-h" || name == "help") {
        usage(std::cout);
        return mhd::kExitOk;
    }

    mhd::RunConfig cfg;
    if (argc >= 3) {
        try {
            cfg = mhd::parse_config_file(argv[2]);
        } catch (const mhd::ConfigError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return mhd::kExitConfig;
        }
    }
    return mhd::run_subcommand(name, cfg);
}

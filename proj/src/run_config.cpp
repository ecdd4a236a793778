#include "aniso_mhd/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "aniso_mhd/format.hpp"

namespace mhd {

const char* init_kind_name(InitKind kind) {
    switch (kind) {
        case InitKind::Gaussian: return "gaussian";
        case InitKind::RandomBandlimited: return "random_bandlimited";
        default: return "single_mode";
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, "expected true/false, got '" + v + "'");
}

void validate(const RunConfig& cfg, int line) {
    if (cfg.n < 8 || cfg.n % 2 != 0) throw ConfigError(line, "n must be even and >= 8");
    if (!(cfg.domain_length > 0.0)) throw ConfigError(line, "domain_length must be positive");
    if (!(cfg.dt > 0.0)) throw ConfigError(line, "dt must be positive");
    if (cfg.t_end < 0.0) throw ConfigError(line, "t_end must be >= 0");
    if (cfg.epsilon < 0.0) throw ConfigError(line, "epsilon must be >= 0");
    if (cfg.integrator_order != 2 && cfg.integrator_order != 4)
        throw ConfigError(line, "integrator_order must be 2 or 4");
    if (cfg.sample_every < 1) throw ConfigError(line, "sample_every must be >= 1");
    if (!(cfg.ratio_cap > 0.0)) throw ConfigError(line, "ratio_cap must be positive");
    if (!(cfg.blowup_threshold > 0.0)) throw ConfigError(line, "blowup_threshold must be positive");
    if (!(cfg.a0_t_cut > 0.0) || !(cfg.a0_quad_dt > 0.0))
        throw ConfigError(line, "a0_t_cut and a0_quad_dt must be positive");
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key");
        if (value.empty()) throw ConfigError(line, "missing value for '" + key + "'");

        if (key == "n") cfg.n = static_cast<int>(parse_int(value, line));
        else if (key == "domain_length") cfg.domain_length = parse_double(value, line);
        else if (key == "dt") cfg.dt = parse_double(value, line);
        else if (key == "t_end") cfg.t_end = parse_double(value, line);
        else if (key == "epsilon") cfg.epsilon = parse_double(value, line);
        else if (key == "init_kind") {
            if (value == "gaussian") cfg.init_kind = InitKind::Gaussian;
            else if (value == "random_bandlimited") cfg.init_kind = InitKind::RandomBandlimited;
            else if (value == "single_mode") cfg.init_kind = InitKind::SingleMode;
            else throw ConfigError(line, "unknown init_kind '" + value + "'");
        }
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, line));
        else if (key == "integrator_order") cfg.integrator_order = static_cast<int>(parse_int(value, line));
        else if (key == "sample_every") cfg.sample_every = static_cast<int>(parse_int(value, line));
        else if (key == "ratio_cap") cfg.ratio_cap = parse_double(value, line);
        else if (key == "output_path") cfg.output_path = value;
        else if (key == "mode_k1") cfg.mode_k1 = static_cast<int>(parse_int(value, line));
        else if (key == "mode_k2") cfg.mode_k2 = static_cast<int>(parse_int(value, line));
        else if (key == "linear_only") cfg.linear_only = parse_bool(value, line);
        else if (key == "zero_velocity") cfg.zero_velocity = parse_bool(value, line);
        else if (key == "blowup_threshold") cfg.blowup_threshold = parse_double(value, line);
        else if (key == "a0_t_cut") cfg.a0_t_cut = parse_double(value, line);
        else if (key == "a0_quad_dt") cfg.a0_quad_dt = parse_double(value, line);
        else if (key == "sweep_epsilons") cfg.sweep_epsilons = value;
        else throw ConfigError(line, "unknown key '" + key + "'");

        validate(cfg, line);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open '" + path + "'");
    return parse_config(in);
}

std::string serialize(const RunConfig& cfg) {
    std::ostringstream os;
    os << "n = " << cfg.n << '\n'
       << "domain_length = " << fmt_g17(cfg.domain_length) << '\n'
       << "dt = " << fmt_g17(cfg.dt) << '\n'
       << "t_end = " << fmt_g17(cfg.t_end) << '\n'
       << "epsilon = " << fmt_g17(cfg.epsilon) << '\n'
       << "init_kind = " << init_kind_name(cfg.init_kind) << '\n'
       << "seed = " << cfg.seed << '\n'
       << "integrator_order = " << cfg.integrator_order << '\n'
       << "sample_every = " << cfg.sample_every << '\n'
       << "ratio_cap = " << fmt_g17(cfg.ratio_cap) << '\n'
       << "output_path = " << cfg.output_path << '\n'
       << "mode_k1 = " << cfg.mode_k1 << '\n'
       << "mode_k2 = " << cfg.mode_k2 << '\n'
       << "linear_only = " << (cfg.linear_only ? "true" : "false") << '\n'
       << "zero_velocity = " << (cfg.zero_velocity ? "true" : "false") << '\n'
       << "blowup_threshold = " << fmt_g17(cfg.blowup_threshold) << '\n'
       << "a0_t_cut = " << fmt_g17(cfg.a0_t_cut) << '\n'
       << "a0_quad_dt = " << fmt_g17(cfg.a0_quad_dt) << '\n'
       << "sweep_epsilons = " << cfg.sweep_epsilons << '\n';
    return os.str();
}

namespace {

// Gaussian periodized over the nearest image shifts; the tails beyond one
// image are below double precision for sigma <= l/8.
PhysicalField periodized_gaussian(const GridSpec& g, double c1, double c2, double sigma) {
    PhysicalField f(g);
    for (int j1 = 0; j1 < g.n1; ++j1) {
        for (int j2 = 0; j2 < g.n2; ++j2) {
            double v = 0.0;
            for (int m1 = -1; m1 <= 1; ++m1) {
                for (int m2 = -1; m2 <= 1; ++m2) {
                    const double dx1 = g.x1(j1) - c1 - m1 * g.l1;
                    const double dx2 = g.x2(j2) - c2 - m2 * g.l2;
                    v += std::exp(-(dx1 * dx1 + dx2 * dx2) / (sigma * sigma));
                }
            }
            f.at(j1, j2) = v;
        }
    }
    return f;
}

double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) - 1.0;
}

}  // namespace

State make_initial_data(const RunConfig& cfg) {
    const GridSpec g = GridSpec::square(cfg.n, cfg.domain_length);
    State s(g);
    s.t = 0.0;
    if (cfg.epsilon == 0.0) return s;

    switch (cfg.init_kind) {
        case InitKind::Gaussian: {
            const double sigma = cfg.domain_length / 16.0;
            PhysicalField psi =
                periodized_gaussian(g, 0.5 * g.l1, 0.5 * g.l2, sigma);
            for (double& v : psi.val) v *= cfg.epsilon;
            s.psi = forward(psi);

            const PhysicalField chi =
                periodized_gaussian(g, 0.75 * g.l1, 0.75 * g.l2, sigma);
            SpectralField chi_hat = forward(chi);
            s.v1 = derivative(chi_hat, 2);
            s.v2 = derivative(chi_hat, 1);
            for (std::size_t i = 0; i < g.size(); ++i) {
                s.v1.coef[i] *= cfg.epsilon;
                s.v2.coef[i] *= -cfg.epsilon;
            }
            break;
        }
        case InitKind::RandomBandlimited: {
            std::mt19937_64 rng(cfg.seed);
            SpectralField psi(g), chi(g);
            const int kmax = cfg.n / 8;
            for (int k1 = 0; k1 <= kmax; ++k1) {
                for (int k2 = -kmax; k2 <= kmax; ++k2) {
                    if (k1 == 0 && k2 <= 0) continue;  // half-space representative
                    if (k1 * k1 + k2 * k2 > kmax * kmax) continue;
                    const Complex cp(uniform_pm1(rng), uniform_pm1(rng));
                    const Complex cc(uniform_pm1(rng), uniform_pm1(rng));
                    psi.at_mode(k1, k2) = cp;
                    psi.at_mode(-k1, -k2) = std::conj(cp);
                    chi.at_mode(k1, k2) = cc;
                    chi.at_mode(-k1, -k2) = std::conj(cc);
                }
            }
            s.psi = psi;
            s.v1 = derivative(chi, 2);
            SpectralField v2 = derivative(chi, 1);
            for (Complex& c : v2.coef) c = -c;
            s.v2 = v2;

            // Scale so the A_{1,0} proxy ||grad psi||_{H2} + ||v||_{H2} equals epsilon.
            const double proxy =
                std::sqrt(sobolev_inner(derivative(s.psi, 1), derivative(s.psi, 1), 2) +
                          sobolev_inner(derivative(s.psi, 2), derivative(s.psi, 2), 2)) +
                std::sqrt(sobolev_inner(s.v1, s.v1, 2) + sobolev_inner(s.v2, s.v2, 2));
            if (proxy > 0.0) {
                const double scale = cfg.epsilon / proxy;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    s.psi.coef[i] *= scale;
                    s.v1.coef[i] *= scale;
                    s.v2.coef[i] *= scale;
                }
            }
            break;
        }
        case InitKind::SingleMode: {
            const int h1 = g.n1 / 2, h2 = g.n2 / 2;
            if (cfg.mode_k1 <= -h1 || cfg.mode_k1 >= h1 || cfg.mode_k2 <= -h2 ||
                cfg.mode_k2 >= h2 || (cfg.mode_k1 == 0 && cfg.mode_k2 == 0))
                throw std::invalid_argument("make_initial_data: single mode out of range");
            s.psi.at_mode(cfg.mode_k1, cfg.mode_k2) = Complex(0.5 * cfg.epsilon, 0.0);
            s.psi.at_mode(-cfg.mode_k1, -cfg.mode_k2) = Complex(0.5 * cfg.epsilon, 0.0);
            break;
        }
    }

    if (cfg.zero_velocity) {
        s.v1 = SpectralField(g);
        s.v2 = SpectralField(g);
    }
    enforce_state_invariants(s);
    return s;
}

}  // namespace mhd

#include "d2d/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "d2d/units.hpp"

namespace d2d {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
    if (trim(v.substr(pos)).size())
        throw ConfigError("trailing characters in value for '" + key + "': " + v);
    return x;
}

// power with mandatory unit suffix, stored in watts
double parse_power(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad power value for '" + key + "': " + v);
    }
    const std::string unit = trim(v.substr(pos));
    if (unit == "W") return x;
    if (unit == "mW") return milliwatts_to_watts(x);
    if (unit == "dBm") return dbm_to_watts(x);
    throw ConfigError("power '" + key + "' needs a unit suffix (W, mW or dBm): " + v);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("bad boolean for '" + key + "' (true/false): " + v);
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (trim(v.substr(pos)).size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': " + v);
    }
}

// "lo:step:hi" or a comma-separated list, in dB
std::vector<double> parse_grid(const std::string& v, const std::string& key) {
    std::vector<double> grid;
    if (v.find(':') != std::string::npos) {
        double lo = 0, step = 0, hi = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(v);
        if (!(is >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || step <= 0)
            throw ConfigError("bad grid for '" + key + "' (want lo:step:hi): " + v);
        for (int i = 0;; ++i) {
            const double x = lo + i * step;
            if (x > hi + 1e-9 * step) break;
            grid.push_back(x);
        }
    } else {
        std::istringstream is(v);
        std::string tok;
        while (std::getline(is, tok, ',')) grid.push_back(parse_number(trim(tok), key));
    }
    if (grid.empty()) throw ConfigError("empty grid for '" + key + "'");
    return grid;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct PolicyFlags {
    bool auto_set = false;
    bool gmin_set = false;
    bool ps_set = false;
};

void assign(RunConfig& cfg, PolicyFlags& flags, const std::string& key,
            const std::string& value) {
    SystemParams& p = cfg.spec.params;
    if (key == "cell_radius_m") p.cell_radius_m = parse_number(value, key);
    else if (key == "d2d_density") p.d2d_density = parse_number(value, key);
    else if (key == "pathloss_exp") p.pathloss_exp = parse_number(value, key);
    else if (key == "d2d_link_dist_m") p.d2d_link_dist_m = parse_number(value, key);
    else if (key == "p_max_cell") p.p_max_cell_w = parse_power(value, key);
    else if (key == "p_max_d2d") p.p_max_d2d_w = parse_power(value, key);
    else if (key == "p_avg_cell") p.p_avg_cell_w = parse_power(value, key);
    else if (key == "noise") p.noise_w = parse_power(value, key);
    else if (key == "drop_margin_m") p.drop_margin_m = parse_number(value, key);
    else if (key == "scheme") {
        const auto s = scheme_from_name(value);
        if (!s) throw ConfigError("unknown scheme: " + value);
        cfg.spec.scheme = *s;
    } else if (key == "beta_grid_db") cfg.spec.beta_grid_db = parse_grid(value, key);
    else if (key == "drops") cfg.spec.n_drops = static_cast<int>(parse_u64(value, key));
    else if (key == "seed") cfg.spec.seed = parse_u64(value, key);
    else if (key == "threads") cfg.spec.threads = static_cast<int>(parse_u64(value, key));
    else if (key == "out") cfg.out_path = value;
    else if (key == "auto_optimal_ps") {
        cfg.spec.auto_optimal_ps = parse_bool(value, key);
        flags.auto_set = true;
    } else if (key == "gmin") {
        cfg.spec.fixed_gmin = parse_number(value, key);
        flags.gmin_set = true;
    } else if (key == "ps") {
        cfg.spec.fixed_ps = parse_number(value, key);
        flags.ps_set = true;
    } else if (key == "cell_onoff") cfg.spec.cell_onoff = parse_bool(value, key);
    else if (key == "cov_rel_tol") cfg.cov_rel_tol = parse_number(value, key);
    else if (key == "rate_rel_tol") cfg.rate_rel_tol = parse_number(value, key);
    else if (key == "sum_rate_rel_tol") cfg.sum_rate_rel_tol = parse_number(value, key);
    else throw ConfigError("unknown config key: " + key);
}

void reconcile_policy(RunConfig& cfg, const PolicyFlags& flags) {
    if (flags.gmin_set && flags.ps_set)
        throw ConfigError("gmin and ps are mutually exclusive");
    if ((flags.gmin_set || flags.ps_set)) {
        if (flags.auto_set && cfg.spec.auto_optimal_ps)
            throw ConfigError("auto_optimal_ps conflicts with a fixed gmin/ps");
        cfg.spec.auto_optimal_ps = false;
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.spec.beta_grid_db = parse_grid("-6:1.5:21", "beta_grid_db");
    PolicyFlags flags;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        assign(cfg, flags, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    reconcile_policy(cfg, flags);
    cfg.spec.params.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value) {
    PolicyFlags flags;
    assign(cfg, flags, key, value);
    reconcile_policy(cfg, flags);
    cfg.spec.params.validate();
}

std::string dump_config(const RunConfig& cfg) {
    const SystemParams& p = cfg.spec.params;
    std::ostringstream os;
    os << "# scenario\n";
    os << "cell_radius_m = " << fmt(p.cell_radius_m) << "\n";
    os << "d2d_density = " << fmt(p.d2d_density) << "\n";
    os << "pathloss_exp = " << fmt(p.pathloss_exp) << "\n";
    os << "d2d_link_dist_m = " << fmt(p.d2d_link_dist_m) << "\n";
    os << "p_max_cell = " << fmt(p.p_max_cell_w) << " W\n";
    os << "p_max_d2d = " << fmt(p.p_max_d2d_w) << " W\n";
    os << "p_avg_cell = " << fmt(p.p_avg_cell_w) << " W\n";
    os << "noise = " << fmt(p.noise_w) << " W\n";
    os << "drop_margin_m = " << fmt(p.drop_margin_m) << "\n";
    os << "# experiment\n";
    os << "scheme = " << scheme_name(cfg.spec.scheme) << "\n";
    os << "beta_grid_db = ";
    for (std::size_t i = 0; i < cfg.spec.beta_grid_db.size(); ++i)
        os << (i ? "," : "") << fmt(cfg.spec.beta_grid_db[i]);
    os << "\n";
    os << "drops = " << cfg.spec.n_drops << "\n";
    os << "seed = " << cfg.spec.seed << "\n";
    os << "threads = " << cfg.spec.threads << "\n";
    if (!cfg.out_path.empty()) os << "out = " << cfg.out_path << "\n";
    os << "# distributed policy\n";
    if (cfg.spec.fixed_gmin) os << "gmin = " << fmt(*cfg.spec.fixed_gmin) << "\n";
    else if (cfg.spec.fixed_ps) os << "ps = " << fmt(*cfg.spec.fixed_ps) << "\n";
    else os << "auto_optimal_ps = " << (cfg.spec.auto_optimal_ps ? "true" : "false") << "\n";
    os << "cell_onoff = " << (cfg.spec.cell_onoff ? "true" : "false") << "\n";
    os << "# analysis tolerances\n";
    os << "cov_rel_tol = " << fmt(cfg.cov_rel_tol) << "\n";
    os << "rate_rel_tol = " << fmt(cfg.rate_rel_tol) << "\n";
    os << "sum_rate_rel_tol = " << fmt(cfg.sum_rate_rel_tol) << "\n";
    return os.str();
}

} // namespace d2d

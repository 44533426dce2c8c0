#include "sirfb/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sirfb/errors.hpp"

namespace sirfb {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": trailing garbage: '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (x != std::floor(x)) throw ConfigError(key + ": expected an integer");
    return static_cast<int>(x);
}

ProfileSpec parse_profile(const std::string& key, const std::string& v,
                          bool allow_constant) {
    const auto colon = v.find(':');
    const std::string kind = colon == std::string::npos ? v : v.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : v.substr(colon + 1);
    ProfileSpec p;
    if (kind == "constant" && allow_constant) {
        p.kind = ProfileSpec::Kind::Constant;
        p.value = parse_double(key, rest);
    } else if (kind == "bump" && !allow_constant) {
        p.kind = ProfileSpec::Kind::Bump;
        p.value = parse_double(key, rest);
    } else if (kind == "table") {
        p.kind = ProfileSpec::Kind::Table;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) p.table.push_back(parse_double(key, trim(item)));
        if (p.table.size() < 2) throw ConfigError(key + ": table needs at least 2 values");
    } else {
        throw ConfigError(key + ": unknown profile kind '" + kind + "' (expected " +
                          (allow_constant ? "constant or table" : "bump or table") + ")");
    }
    return p;
}

std::string dump_profile(const ProfileSpec& p) {
    switch (p.kind) {
        case ProfileSpec::Kind::Constant: return "constant:" + fmt17(p.value);
        case ProfileSpec::Kind::Bump: return "bump:" + fmt17(p.value);
        default: {
            std::string out = "table:";
            for (std::size_t i = 0; i < p.table.size(); ++i) {
                if (i) out += ',';
                out += fmt17(p.table[i]);
            }
            return out;
        }
    }
}

// Evaluator over a uniform table on [0, domain].
std::function<double(double)> table_evaluator(std::vector<double> vals, double domain) {
    return [vals = std::move(vals), domain](double r) {
        const std::size_t N = vals.size() - 1;
        if (r <= 0) return vals[0];
        if (r >= domain) return vals[N];
        const double pos = r / domain * static_cast<double>(N);
        const auto j = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(j);
        return (1.0 - w) * vals[j] + w * vals[j + 1];
    };
}

} // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    cfg.ts.save_stride = 1;
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'section.key = value'");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    const auto take = [&kv](const std::string& key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(key + ": missing required key");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    const auto take_opt = [&kv](const std::string& key, std::string* out) {
        const auto it = kv.find(key);
        if (it == kv.end()) return false;
        *out = it->second;
        kv.erase(it);
        return true;
    };

    cfg.params.b = parse_double("model.b", take("model.b"));
    cfg.params.beta = parse_double("model.beta", take("model.beta"));
    cfg.params.mu1 = parse_double("model.mu1", take("model.mu1"));
    cfg.params.mu2 = parse_double("model.mu2", take("model.mu2"));
    cfg.params.mu3 = parse_double("model.mu3", take("model.mu3"));
    cfg.params.alpha = parse_double("model.alpha", take("model.alpha"));
    cfg.params.d1 = parse_double("model.d1", take("model.d1"));
    cfg.params.d2 = parse_double("model.d2", take("model.d2"));
    cfg.params.d3 = parse_double("model.d3", take("model.d3"));
    cfg.params.mu = parse_double("model.mu", take("model.mu"));
    cfg.params.n = parse_int("model.n", take("model.n"));

    cfg.h0 = parse_double("init.h0", take("init.h0"));
    cfg.s0 = parse_profile("init.S0", take("init.S0"), true);
    cfg.i0 = parse_profile("init.I0", take("init.I0"), false);
    std::string v;
    if (take_opt("init.R0", &v)) cfg.r0 = parse_profile("init.R0", v, false);

    cfg.L = parse_double("grid.L", take("grid.L"));
    cfg.N_L = parse_int("grid.N_L", take("grid.N_L"));
    cfg.N_h = parse_int("grid.N_h", take("grid.N_h"));

    cfg.ts.dt = parse_double("time.dt", take("time.dt"));
    cfg.ts.t_end = parse_double("time.t_end", take("time.t_end"));
    if (take_opt("time.save_stride", &v)) cfg.ts.save_stride = parse_int("time.save_stride", v);
    if (take_opt("time.positivity_tol", &v)) {
        cfg.ts.positivity_tol = parse_double("time.positivity_tol", v);
    }
    if (take_opt("time.dt_safety", &v)) cfg.ts.dt_safety = parse_double("time.dt_safety", v);

    take_opt("output.series", &cfg.series_path);
    take_opt("output.profiles", &cfg.profiles_dir);
    take_opt("output.svg", &cfg.svg_path);

    if (!kv.empty()) throw ConfigError(kv.begin()->first + ": unknown config key");
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

std::string dump_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << "model.b = " << fmt17(cfg.params.b) << "\n"
       << "model.beta = " << fmt17(cfg.params.beta) << "\n"
       << "model.mu1 = " << fmt17(cfg.params.mu1) << "\n"
       << "model.mu2 = " << fmt17(cfg.params.mu2) << "\n"
       << "model.mu3 = " << fmt17(cfg.params.mu3) << "\n"
       << "model.alpha = " << fmt17(cfg.params.alpha) << "\n"
       << "model.d1 = " << fmt17(cfg.params.d1) << "\n"
       << "model.d2 = " << fmt17(cfg.params.d2) << "\n"
       << "model.d3 = " << fmt17(cfg.params.d3) << "\n"
       << "model.mu = " << fmt17(cfg.params.mu) << "\n"
       << "model.n = " << cfg.params.n << "\n"
       << "init.h0 = " << fmt17(cfg.h0) << "\n"
       << "init.S0 = " << dump_profile(cfg.s0) << "\n"
       << "init.I0 = " << dump_profile(cfg.i0) << "\n"
       << "init.R0 = " << dump_profile(cfg.r0) << "\n"
       << "grid.L = " << fmt17(cfg.L) << "\n"
       << "grid.N_L = " << cfg.N_L << "\n"
       << "grid.N_h = " << cfg.N_h << "\n"
       << "time.dt = " << fmt17(cfg.ts.dt) << "\n"
       << "time.t_end = " << fmt17(cfg.ts.t_end) << "\n"
       << "time.save_stride = " << cfg.ts.save_stride << "\n"
       << "time.positivity_tol = " << fmt17(cfg.ts.positivity_tol) << "\n"
       << "time.dt_safety = " << fmt17(cfg.ts.dt_safety) << "\n";
    if (!cfg.series_path.empty()) os << "output.series = " << cfg.series_path << "\n";
    if (!cfg.profiles_dir.empty()) os << "output.profiles = " << cfg.profiles_dir << "\n";
    if (!cfg.svg_path.empty()) os << "output.svg = " << cfg.svg_path << "\n";
    return os.str();
}

void ScenarioConfig::validate() const {
    params.validate();
    if (!(h0 > 0)) throw ConfigError("init.h0: must be positive");
    if (h0 >= L) throw ConfigError("init.h0: geometry error, h0 must lie inside [0, L)");
    build_grid(*this).validate();
    ts.validate();
    build_initial_data(*this).validate();
}

InitialData build_initial_data(const ScenarioConfig& cfg) {
    InitialData init;
    init.h0 = cfg.h0;

    if (cfg.s0.kind == ProfileSpec::Kind::Constant) {
        const double c = cfg.s0.value;
        init.S0 = [c](double) { return c; };
        init.sup_S0 = c;
    } else {
        init.S0 = table_evaluator(cfg.s0.table, cfg.L);
        init.sup_S0 = *std::max_element(cfg.s0.table.begin(), cfg.s0.table.end());
    }

    const auto bump = [h0 = cfg.h0](double a) {
        return [h0, a](double r) {
            const double y = r / h0;
            return r >= h0 ? 0.0 : a * (1.0 - y * y);
        };
    };
    if (cfg.i0.kind == ProfileSpec::Kind::Bump) {
        init.I0 = bump(cfg.i0.value);
        init.sup_I0 = cfg.i0.value;
        init.i0_slope = 2.0 * cfg.i0.value / cfg.h0;
    } else {
        init.I0 = table_evaluator(cfg.i0.table, cfg.h0);
        init.sup_I0 = *std::max_element(cfg.i0.table.begin(), cfg.i0.table.end());
        double slope = 0.0;
        const double dr = cfg.h0 / static_cast<double>(cfg.i0.table.size() - 1);
        for (std::size_t j = 0; j + 1 < cfg.i0.table.size(); ++j) {
            slope = std::max(slope, std::abs(cfg.i0.table[j + 1] - cfg.i0.table[j]) / dr);
        }
        init.i0_slope = slope;
    }
    if (cfg.r0.kind == ProfileSpec::Kind::Bump) {
        init.R0 = bump(cfg.r0.value);
        init.sup_R0 = cfg.r0.value;
    } else {
        init.R0 = table_evaluator(cfg.r0.table, cfg.h0);
        init.sup_R0 = *std::max_element(cfg.r0.table.begin(), cfg.r0.table.end());
    }
    return init;
}

GridSpec build_grid(const ScenarioConfig& cfg) {
    return {cfg.L, cfg.N_L, cfg.N_h, cfg.params.n, cfg.h0};
}

} // namespace sirfb

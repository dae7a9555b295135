#include "ssns/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ssns/random.hpp"

namespace ssns {

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::simulate: return "simulate";
        case RunMode::cascade: return "cascade";
        case RunMode::verify: return "verify";
        case RunMode::sweep: return "sweep";
    }
    return "unknown";
}

namespace {

const std::vector<std::string> kKnownKeys = {
    "mode",
    "seed",
    "output.dir",
    "output.cadence",
    "grid.n",
    "dissipation.gamma",
    "solver.cfl_safety",
    "solver.dt_min",
    "solver.dt_max",
    "solver.t_end",
    "solver.advection",
    "solver.dissipation",
    "init.family",
    "init.seed",
    "init.energy",
    "init.shell",
    "init.kpeak",
    "diagnostics.barrier_c",
    "cascade.c",
    "cascade.jmax",
    "cascade.d",
    "cascade.diss_form",
    "cascade.t_end",
    "cascade.cadence",
    "cascade.atol",
    "cascade.rtol",
    "cascade.init_family",
    "cascade.init_shell",
    "cascade.init_value",
    "cascade.init_ratio",
    "sweep.gammas",
    "verify.ensemble",
};

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best = kKnownKeys.front();
    std::size_t best_dist = edit_distance(key, best);
    for (const std::string& cand : kKnownKeys) {
        const std::size_t d = edit_distance(key, cand);
        if (d < best_dist) {
            best_dist = d;
            best = cand;
        }
    }
    return best;
}

class KeyValues {
public:
    void insert(const std::string& key, const std::string& value, int line_no) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown config key \"" + key + "\" (line " +
                              std::to_string(line_no) + "); nearest valid key is \"" +
                              nearest_key(key) + "\"");
        if (values_.count(key))
            throw ConfigError("duplicate config key \"" + key + "\"");
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key \"" + key + "\": not a number: \"" + it->second + "\"");
        }
    }

    long long get_int(const std::string& key, long long fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        long long v = 0;
        const char* first = it->second.data();
        const char* last = first + it->second.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw ConfigError("config key \"" + key + "\": not an integer: \"" + it->second + "\"");
        return v;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw ConfigError("config key \"" + key + "\": expected true or false, got \"" +
                          it->second + "\"");
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw ConfigError("config key \"" + key + "\": empty list entry");
            try {
                std::size_t used = 0;
                out.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ConfigError("config key \"" + key + "\": not a number: \"" + item + "\"");
            }
        }
        if (out.empty()) throw ConfigError("config key \"" + key + "\": empty list");
        return out;
    }

private:
    std::map<std::string, std::string> values_;
};

KeyValues parse_lines(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto pos = line.find('=');
        if (pos == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value, got \"" + line + "\"");
        kv.insert(trim(line.substr(0, pos)), trim(line.substr(pos + 1)), line_no);
    }
    return kv;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError("config key \"" + key + "\": " + what);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    KeyValues kv = parse_lines(text);

    if (!kv.has("mode")) throw ConfigError("config is missing required key \"mode\"");
    RunConfig cfg;
    const std::string mode = kv.get_string("mode", "");
    if (mode == "simulate")
        cfg.mode = RunMode::simulate;
    else if (mode == "cascade")
        cfg.mode = RunMode::cascade;
    else if (mode == "verify")
        cfg.mode = RunMode::verify;
    else if (mode == "sweep")
        cfg.mode = RunMode::sweep;
    else
        throw ConfigError("config key \"mode\": expected simulate|cascade|verify|sweep, got \"" +
                          mode + "\"");

    const long long seed = kv.get_int("seed", 1);
    require(seed >= 0, "seed", "must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.out_dir = kv.get_string("output.dir", cfg.out_dir);

    cfg.solver.grid.n = static_cast<int>(kv.get_int("grid.n", 128));
    require(cfg.solver.grid.n >= 16 && is_power_of_two(cfg.solver.grid.n), "grid.n",
            "must be a power of two >= 16");

    cfg.solver.diss.gamma = kv.get_double("dissipation.gamma", 0.25);
    require(cfg.solver.diss.gamma >= 0.0, "dissipation.gamma", "must be >= 0");

    cfg.solver.cfl_safety = kv.get_double("solver.cfl_safety", 0.4);
    require(cfg.solver.cfl_safety > 0.0 && cfg.solver.cfl_safety < 1.0, "solver.cfl_safety",
            "must lie in (0, 1)");
    cfg.solver.dt_min = kv.get_double("solver.dt_min", 1e-9);
    cfg.solver.dt_max = kv.get_double("solver.dt_max", 5e-3);
    require(cfg.solver.dt_min > 0.0, "solver.dt_min", "must be positive");
    require(cfg.solver.dt_max >= cfg.solver.dt_min, "solver.dt_max", "must be >= solver.dt_min");
    cfg.solver.t_end = kv.get_double("solver.t_end", 1.0);
    require(cfg.solver.t_end >= 0.0, "solver.t_end", "must be >= 0");
    cfg.solver.cadence = kv.get_double("output.cadence", 0.05);
    require(cfg.solver.cadence > 0.0, "output.cadence", "must be positive");
    cfg.solver.advection = kv.get_bool("solver.advection", true);
    cfg.solver.dissipation = kv.get_bool("solver.dissipation", true);

    const std::string family = kv.get_string("init.family", "random_smooth");
    if (family == "taylor_green")
        cfg.init.family = InitFamily::taylor_green;
    else if (family == "random_smooth")
        cfg.init.family = InitFamily::random_smooth;
    else if (family == "random_shell")
        cfg.init.family = InitFamily::random_shell;
    else
        throw ConfigError(
            "config key \"init.family\": expected taylor_green|random_smooth|random_shell, "
            "got \"" + family + "\"");
    const long long init_seed = kv.get_int("init.seed", static_cast<long long>(cfg.seed));
    require(init_seed >= 0, "init.seed", "must be nonnegative");
    cfg.init.seed = static_cast<std::uint64_t>(init_seed);
    cfg.init.energy = kv.get_double("init.energy", 1.0);
    require(cfg.init.energy > 0.0, "init.energy", "must be positive");
    cfg.init.shell = static_cast<int>(kv.get_int("init.shell", 3));
    require(cfg.init.shell >= 0, "init.shell", "must be >= 0");
    cfg.init.kpeak = kv.get_double("init.kpeak", 4.0);
    require(cfg.init.kpeak > 0.0, "init.kpeak", "must be positive");

    cfg.barrier_C = kv.get_double("diagnostics.barrier_c", 2.0);
    require(cfg.barrier_C > 0.0, "diagnostics.barrier_c", "must be positive");

    cfg.cascade.params.coupling = kv.get_double("cascade.c", 1.0);
    require(cfg.cascade.params.coupling >= 0.0, "cascade.c", "must be >= 0");
    cfg.cascade.params.gamma = cfg.solver.diss.gamma;
    cfg.cascade.params.d = static_cast<int>(kv.get_int("cascade.d", 2));
    require(cfg.cascade.params.d >= 2, "cascade.d", "must be >= 2");
    cfg.cascade.params.jmax = static_cast<int>(kv.get_int("cascade.jmax", 40));
    require(cfg.cascade.params.jmax >= 10, "cascade.jmax", "must be >= 10");
    const std::string diss_form = kv.get_string("cascade.diss_form", "paper_j");
    if (diss_form == "paper_j")
        cfg.cascade.params.diss_form = DissForm::paper_j;
    else if (diss_form == "symbol_log")
        cfg.cascade.params.diss_form = DissForm::symbol_log;
    else
        throw ConfigError("config key \"cascade.diss_form\": expected paper_j|symbol_log, got \"" +
                          diss_form + "\"");
    cfg.cascade.params.atol = kv.get_double("cascade.atol", 1e-10);
    cfg.cascade.params.rtol = kv.get_double("cascade.rtol", 1e-8);
    require(cfg.cascade.params.atol > 0.0, "cascade.atol", "must be positive");
    require(cfg.cascade.params.rtol > 0.0, "cascade.rtol", "must be positive");
    cfg.cascade.t_end = kv.get_double("cascade.t_end", 5.0);
    require(cfg.cascade.t_end >= 0.0, "cascade.t_end", "must be >= 0");
    cfg.cascade.cadence = kv.get_double("cascade.cadence", 0.05);
    require(cfg.cascade.cadence > 0.0, "cascade.cadence", "must be positive");

    const std::string cascade_family = kv.get_string("cascade.init_family", "single_shell");
    if (cascade_family == "single_shell")
        cfg.cascade.init_family = CascadeInitFamily::single_shell;
    else if (cascade_family == "geometric")
        cfg.cascade.init_family = CascadeInitFamily::geometric;
    else
        throw ConfigError(
            "config key \"cascade.init_family\": expected single_shell|geometric, got \"" +
            cascade_family + "\"");
    cfg.cascade.init_shell = static_cast<int>(kv.get_int("cascade.init_shell", 3));
    require(cfg.cascade.init_shell >= 0 && cfg.cascade.init_shell <= cfg.cascade.params.jmax,
            "cascade.init_shell", "must lie in [0, cascade.jmax]");
    cfg.cascade.init_value = kv.get_double("cascade.init_value", 1.0);
    require(cfg.cascade.init_value >= 0.0, "cascade.init_value", "must be >= 0");
    cfg.cascade.init_ratio = kv.get_double("cascade.init_ratio", 0.5);
    require(cfg.cascade.init_ratio > 0.0 && cfg.cascade.init_ratio < 1.0, "cascade.init_ratio",
            "must lie in (0, 1)");

    cfg.sweep_gammas = kv.get_double_list("sweep.gammas", cfg.sweep_gammas);
    for (double gamma : cfg.sweep_gammas)
        require(gamma >= 0.0, "sweep.gammas", "entries must be >= 0");

    cfg.verify_ensemble = static_cast<int>(kv.get_int("verify.ensemble", 100));
    require(cfg.verify_ensemble >= 2, "verify.ensemble", "must be >= 2");

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

SpectralField make_initial_vorticity(const Grid& g, const InitSpec& init) {
    switch (init.family) {
        case InitFamily::taylor_green: {
            SpectralField omega = taylor_green_vorticity(g);
            const double norm = velocity_l2_norm(omega);
            omega.coeffs *= init.energy / norm;
            return omega;
        }
        case InitFamily::random_smooth:
            return random_smooth_vorticity(g, init.seed, init.energy, init.kpeak);
        case InitFamily::random_shell: {
            LPBank bank = make_lp_bank(g);
            if (init.shell > bank.jmax)
                throw ConfigError("config key \"init.shell\": exceeds grid jmax");
            return random_shell_vorticity(g, bank, init.shell, init.seed, init.energy);
        }
    }
    throw ConfigError("unreachable init family");
}

Eigen::ArrayXd make_cascade_initial(const CascadeRunSpec& spec) {
    Eigen::ArrayXd b = Eigen::ArrayXd::Zero(spec.params.jmax + 1);
    switch (spec.init_family) {
        case CascadeInitFamily::single_shell:
            b[spec.init_shell] = spec.init_value;
            break;
        case CascadeInitFamily::geometric:
            for (int j = 0; j <= spec.params.jmax; ++j)
                b[j] = spec.init_value * std::pow(spec.init_ratio, j);
            break;
    }
    return b;
}

}  // namespace ssns

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "pscat/error.hpp"
#include "pscat/limit_laws.hpp"
#include "pscat/multiplicity.hpp"
#include "pscat/parallel.hpp"
#include "pscat/polynomials.hpp"
#include "pscat/spectrum.hpp"
#include "pscat/stats.hpp"
#include "pscat/torus.hpp"
#include "pscat/wavevector.hpp"
#include "pscat/weyl.hpp"

namespace pscat::cli {

using json = nlohmann::json;

namespace {

struct Flag {
    std::string name, def, help;
};

// Subcommand flags with their defaults.  Seed, output and format are
// handled separately since every config carries them.
const std::map<std::string, std::vector<Flag>>& flag_table() {
    static const std::map<std::string, std::vector<Flag>> t{
        {"coeffs", {{"pmax", "6", "largest polynomial index"}}},
        {"torus",
         {{"alpha-sq", "1", "alpha^2 as P/Q"},
          {"cutoff", "90", "bound on |xi|^2"},
          {"moments", "2,3,4", "moment orders"},
          {"tau", "17", "spectral parameter"},
          {"phi", "", "if set, also solve for new eigenvalues at this phase"},
          {"k-min", "1", "first new eigenvalue index"},
          {"k-max", "10", "last new eigenvalue index"},
          {"reg-terms", "200", "levels beyond k-max kept in the spectral equation"},
          {"tol", "1e-10", "relative tolerance between tuple sum and grid"}}},
        {"na-check",
         {{"trials", "100", "random configurations"},
          {"max-levels", "4", "levels per configuration"},
          {"variant", "rect", "rect or square"},
          {"max-order", "6", "largest |a|"},
          {"max-mult", "2", "largest number of directions per level"}}},
        {"simulate",
         {{"m", "const:1", "multiplicity function"},
          {"tau", "1e5", "spectral parameter"},
          {"pmax", "3", "largest moment index"},
          {"replicas", "100", "independent spectra"},
          {"window-frac", "0.5", "half-width of the window over tau"}}},
        {"weyl",
         {{"m", "const:1", "multiplicity function"},
          {"lambdas", "1e4,1e5,1e6", "evaluation points"},
          {"replicas", "200", "independent spectra"}}},
        {"limit",
         {{"p", "2", "number of sums"},
          {"l", "inf", "inf or a positive value"},
          {"n", "1000", "samples"},
          {"proxy-tau", "1e5", "tau used as a proxy for the limit"},
          {"window-frac", "0.5", "half-width of the window over tau"}}},
        {"limit psi",
         {{"p", "1", "dimension"},
          {"points", "", "file with one point per line"},
          {"tol", "1e-9", "quadrature tolerance"}}},
        {"limit density",
         {{"p", "1", "dimension (1 or 2)"},
          {"points", "", "file with one point per line"},
          {"tol", "1e-6", "truncation tolerance"}}},
        {"report", {{"inputs", "", "comma separated acceptance JSON files"}}},
    };
    return t;
}

bool uses_seed(const std::string& sub) {
    return sub == "na-check" || sub == "simulate" || sub == "weyl" || sub == "limit";
}

const std::string& param(const ExperimentConfig& c, const std::string& key) {
    auto it = c.params.find(key);
    if (it == c.params.end()) throw ValidationError("missing parameter --" + key);
    return it->second;
}

double to_double(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad value for --" + key + ": '" + s + "'");
    }
    if (used != s.size()) throw ValidationError("bad value for --" + key + ": '" + s + "'");
    return v;
}

double num(const ExperimentConfig& c, const std::string& key) { return to_double(key, param(c, key)); }

long integer(const ExperimentConfig& c, const std::string& key, long lo) {
    const double v = num(c, key);
    if (v != std::floor(v) || v < lo || v > 1e15)
        throw ValidationError("--" + key + " must be an integer >= " + std::to_string(lo));
    return static_cast<long>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> num_list(const ExperimentConfig& c, const std::string& key) {
    std::vector<double> out;
    for (const auto& s : split(param(c, key), ',')) out.push_back(to_double(key, s));
    if (out.empty()) throw ValidationError("--" + key + " needs at least one value");
    return out;
}

std::vector<std::vector<double>> read_points(const std::string& path, int p) {
    if (path.empty()) throw ValidationError("--points is required");
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read points file " + path);
    std::vector<std::vector<double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (char& ch : line)
            if (ch == ',' || ch == '\t') ch = ' ';
        std::vector<double> row;
        for (const auto& tok : split(line, ' ')) row.push_back(to_double("points", tok));
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != p)
            throw ValidationError("points file: expected " + std::to_string(p) + " values per line");
        pts.push_back(std::move(row));
    }
    return pts;
}

// Output tables.  CSV and JSON carry the same rows.
using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
    if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto* s = std::get_if<std::string>(&c)) return *s;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
    return buf;
}

json cell_json(const Cell& c) {
    if (auto* i = std::get_if<long long>(&c)) return *i;
    if (auto* s = std::get_if<std::string>(&c)) return *s;
    const double d = std::get<double>(c);
    return std::isfinite(d) ? json(d) : json(nullptr);
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
        rows.push_back(std::move(o));
    }
    return rows;
}

void write_tables(const std::vector<Table>& tables, const std::string& format, std::ostream& out) {
    if (format == "json") {
        if (tables.size() == 1) {
            out << table_json(tables[0]).dump(2) << '\n';
        } else {
            json o = json::object();
            for (const auto& t : tables) o[t.name] = table_json(t);
            out << o.dump(2) << '\n';
        }
        return;
    }
    for (std::size_t k = 0; k < tables.size(); ++k) {
        if (k) out << '\n';
        const auto& t = tables[k];
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell_text(r[i]);
            out << '\n';
        }
    }
}

void cmd_coeffs(const ExperimentConfig& c, std::ostream& out) {
    const int pmax = static_cast<int>(integer(c, "pmax", 1));
    const auto table = build_table(pmax);
    if (c.format == "json") {
        json o;
        o["pmax"] = pmax;
        for (int p = 1; p <= pmax; ++p) {
            json terms = json::array();
            for (std::size_t i = 0; i < table.terms(p).size(); ++i)
                terms.push_back({{"partition", table.terms(p)[i].to_string()},
                                 {"P", to_fraction_string(table.P(p)[i])},
                                 {"Q", to_fraction_string(table.Q(p)[i])}});
            o["polynomials"][std::to_string(p)] = terms;
            o["A"][std::to_string(p)] = to_fraction_string(table.A(p));
        }
        out << o.dump(2) << '\n';
        return;
    }
    Table t{"coefficients", {"p", "kind", "partition", "coefficient"}, {}};
    for (int p = 1; p <= pmax; ++p) {
        for (std::size_t i = 0; i < table.terms(p).size(); ++i) {
            t.rows.push_back({static_cast<long long>(p), std::string("P"), table.terms(p)[i].to_string(), to_fraction_string(table.P(p)[i])});
            t.rows.push_back({static_cast<long long>(p), std::string("Q"), table.terms(p)[i].to_string(), to_fraction_string(table.Q(p)[i])});
        }
        t.rows.push_back({static_cast<long long>(p), std::string("A"), std::string(""), to_fraction_string(table.A(p))});
    }
    write_tables({t}, c.format, out);
}

bool cmd_torus(const ExperimentConfig& c, unsigned, std::ostream& out) {
    const auto lat = build_lattice(parse_rational(param(c, "alpha-sq")), parse_rational(param(c, "cutoff")));
    const double tau = num(c, "tau"), tol = num(c, "tol");
    Table levels{"levels", {"k", "lambda_k", "r_k"}, {}};
    for (std::size_t k = 0; k < lat.levels.size(); ++k)
        levels.rows.push_back({static_cast<long long>(k), lat.levels[k].lambda,
                               static_cast<long long>(lat.levels[k].multiplicity())});
    Table moments{"moments", {"p", "M_p_formula", "M_p_grid", "rel_err"}, {}};
    bool ok = true;
    for (double pd : num_list(c, "moments")) {
        if (pd != std::floor(pd) || pd < 1) throw ValidationError("--moments must be positive integers");
        const int p = static_cast<int>(pd);
        const double a = deterministic_moment(lat, tau, p), b = grid_moment(lat, tau, p);
        const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
        if (std::abs(a - b) > tol * std::abs(b)) ok = false;
        moments.rows.push_back({static_cast<long long>(p), a, b, rel});
    }
    std::vector<Table> tables{levels, moments};
    if (!param(c, "phi").empty()) {
        const auto ev = solve_new_eigenvalues(lat, num(c, "phi"), static_cast<int>(integer(c, "k-min", 0)),
                                              static_cast<int>(integer(c, "k-max", 0)),
                                              static_cast<int>(integer(c, "reg-terms", 0)));
        Table e{"eigenvalues", {"k", "tau_k", "lhs_truncation_bias", "rhs_truncation_bias"}, {}};
        for (std::size_t i = 0; i < ev.k.size(); ++i)
            e.rows.push_back({static_cast<long long>(ev.k[i]), ev.tau[i], ev.lhs_truncation_bias, ev.rhs_truncation_bias});
        tables.push_back(e);
    }
    write_tables(tables, c.format, out);
    return ok;
}

bool cmd_na_check(const ExperimentConfig& c, std::ostream& out) {
    const long trials = integer(c, "trials", 1);
    const int max_levels = static_cast<int>(integer(c, "max-levels", 1));
    const int max_order = static_cast<int>(integer(c, "max-order", 0));
    const long max_mult = integer(c, "max-mult", 1);
    const Variant variant = parse_variant(param(c, "variant"));
    const std::uint64_t budget = 100'000'000ull;
    json mismatches = json::array();
    long checked = 0;
    for (long trial = 0; trial < trials; ++trial) {
        RngStream rng(c.master_seed, static_cast<std::uint64_t>(trial));
        const int K = 1 + static_cast<int>(rng.uniform() * max_levels);
        std::vector<double> lam;
        std::vector<long> mult;
        double l = 0.0;
        for (int k = 0; k < K; ++k) {
            l += 1.0 + 99.0 * rng.uniform();
            lam.push_back(l);
            mult.push_back(1 + static_cast<long>(rng.uniform() * max_mult));
        }
        const auto sys = sample_system(lam, mult, variant, rng);
        // Draw a until the enumeration fits the budget.
        FiniteSupportSequence a;
        for (int attempt = 0; attempt < 100; ++attempt) {
            a = FiniteSupportSequence();
            int left = max_order;
            double size = 1.0;
            for (int k = 1; k <= K; ++k) {
                int ak = std::min(left, static_cast<int>(rng.uniform() * (max_order + 1)));
                a.set(k, ak);
                left -= ak;
                size *= std::pow(static_cast<double>(sys.levels[k - 1].vectors.size()), ak);
            }
            if (size <= static_cast<double>(budget)) break;
        }
        const auto eff = sys.effective_multiplicities();
        const Integer formula = na_formula(a, eff);
        const std::uint64_t brute = na_bruteforce(sys, a, -1.0, budget);
        ++checked;
        if (Integer(brute) != formula) {
            json jm;
            jm["trial"] = trial;
            jm["lambdas"] = lam;
            jm["multiplicities"] = eff;
            json ja = json::object();
            for (const auto& [k, v] : a.entries()) ja[std::to_string(k)] = v;
            jm["a"] = ja;
            jm["bruteforce"] = brute;
            jm["formula"] = formula.get_str();
            mismatches.push_back(jm);
        }
    }
    json o;
    o["variant"] = to_string(variant);
    o["trials"] = trials;
    o["checked"] = checked;
    o["seed"] = c.master_seed;
    o["mismatches"] = mismatches;
    out << o.dump(2) << '\n';
    return mismatches.empty();
}

void cmd_simulate(const ExperimentConfig& c, unsigned threads, std::ostream& out) {
    const auto m = MultiplicityFunction::parse(param(c, "m"));
    const int pmax = static_cast<int>(integer(c, "pmax", 1));
    const auto rows = simulate_moments(m, num(c, "tau"), pmax, static_cast<std::size_t>(integer(c, "replicas", 1)),
                                       num(c, "window-frac"), c.master_seed, threads);
    Table t{"moments", {"replica"}, {}};
    for (int q = 1; q <= pmax; ++q) t.columns.push_back("S" + std::to_string(q));
    for (int q = 1; q <= pmax; ++q) t.columns.push_back("M" + std::to_string(2 * q));
    for (int q = 2; q <= pmax; ++q) t.columns.push_back("norm" + std::to_string(2 * q));
    for (int q = 1; q <= pmax; ++q) t.columns.push_back("tail_bias_" + std::to_string(q));
    for (const auto& r : rows) {
        std::vector<Cell> row{static_cast<long long>(r.replica)};
        for (double v : r.S) row.push_back(v);
        for (double v : r.M) row.push_back(v);
        for (double v : r.norm) row.push_back(v);
        for (double v : r.tail_bias) row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    write_tables({t}, c.format, out);
}

void cmd_weyl(const ExperimentConfig& c, unsigned threads, std::ostream& out) {
    const auto m = MultiplicityFunction::parse(param(c, "m"));
    const auto lambdas = num_list(c, "lambdas");
    const auto replicas = static_cast<std::size_t>(integer(c, "replicas", 2));
    const auto rec = sample_counts(m, lambdas, replicas, c.master_seed, threads);
    Table t{"weyl",
            {"lambda", "replicas", "count_mean", "count_var", "weyl_mean", "weyl_var", "mean_dev_se", "var_dev_se",
             "ks_normal", "mean_ratio", "mean_rel_dev", "rms_rel_dev", "max_rel_dev"},
            {}};
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        std::vector<double> col, z;
        for (const auto& r : rec.counts) col.push_back(r[i]);
        const auto s = summarize(col);
        const auto w = weyl_moments(m, lambdas[i]);
        for (double v : col) z.push_back((v - w.mean) / std::sqrt(w.variance));
        const double ks = ks_one_sample(EmpiricalDistribution(z), normal_cdf);
        double mx = 0.0, sq = 0.0;
        for (double v : col) {
            const double rel = v / lambdas[i] * 4.0 * M_PI - 1.0;
            mx = std::max(mx, std::abs(rel));
            sq += rel * rel;
        }
        const double ratio = s.mean / lambdas[i];
        t.rows.push_back({lambdas[i], static_cast<long long>(replicas), s.mean, s.variance, w.mean, w.variance,
                          (s.mean - w.mean) / s.se_mean, (s.variance - w.variance) / s.se_variance, ks, ratio,
                          std::abs(ratio * 4.0 * M_PI - 1.0), std::sqrt(sq / replicas), mx});
    }
    write_tables({t}, c.format, out);
}

double parse_l(const std::string& s) {
    if (s == "inf" || s == "infinity") return INFINITY;
    const double l = to_double("l", s);
    if (!(l > 0.0)) throw ValidationError("--l must be positive or inf");
    return l;
}

void cmd_limit(const ExperimentConfig& c, unsigned threads, std::ostream& out) {
    const int p = static_cast<int>(integer(c, "p", 2));
    const auto rs = sample_R(parse_l(param(c, "l")), p, static_cast<std::size_t>(integer(c, "n", 1)), c.master_seed,
                             num(c, "proxy-tau"), num(c, "window-frac"), threads);
    Table t{"R", {"sample"}, {}};
    for (int q = 2; q <= p; ++q) t.columns.push_back("R" + std::to_string(q));
    for (std::size_t i = 0; i < rs.size(); ++i) {
        std::vector<Cell> row{static_cast<long long>(i)};
        for (double v : rs[i]) row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    write_tables({t}, c.format, out);
}

void cmd_limit_psi(const ExperimentConfig& c, std::ostream& out) {
    const int p = static_cast<int>(integer(c, "p", 1));
    const auto pts = read_points(param(c, "points"), p);
    const double tol = num(c, "tol");
    Table t{"psi", {}, {}};
    for (int q = 1; q <= p; ++q) t.columns.push_back("x" + std::to_string(q));
    for (const char* s : {"re", "im", "abs", "error_estimate"}) t.columns.push_back(s);
    for (const auto& x : pts) {
        const auto r = psi_eval(p, x, tol);
        std::vector<Cell> row(x.begin(), x.end());
        row.insert(row.end(), {r.value.real(), r.value.imag(), std::abs(r.value), r.error_estimate});
        t.rows.push_back(std::move(row));
    }
    write_tables({t}, c.format, out);
}

void cmd_limit_density(const ExperimentConfig& c, std::ostream& out) {
    const int p = static_cast<int>(integer(c, "p", 1));
    const auto pts = read_points(param(c, "points"), p);
    const auto inv = invert_density(p, pts, num(c, "tol"));
    Table t{"density", {}, {}};
    for (int q = 1; q <= p; ++q) t.columns.push_back("t" + std::to_string(q));
    for (const char* s : {"density", "truncation_estimate"}) t.columns.push_back(s);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Cell> row(pts[i].begin(), pts[i].end());
        row.insert(row.end(), {inv.values[i], inv.truncation_estimate});
        t.rows.push_back(std::move(row));
    }
    write_tables({t}, c.format, out);
}

bool cmd_report(const ExperimentConfig& c, std::ostream& out) {
    const auto files = split(param(c, "inputs"), ',');
    if (files.empty()) throw ValidationError("--inputs needs at least one file");
    json all = json::array();
    int passed = 0, failed = 0;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw ValidationError("cannot read " + f);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError(f + ": " + e.what());
        }
        if (!doc.contains("criteria") || !doc["criteria"].is_array())
            throw ValidationError(f + ": no criteria array");
        for (auto crit : doc["criteria"]) {
            crit["source"] = f;
            (crit.value("pass", false) ? passed : failed)++;
            all.push_back(crit);
        }
    }
    json o;
    o["sources"] = files;
    o["criteria"] = all;
    o["passed"] = passed;
    o["failed"] = failed;
    o["all_pass"] = failed == 0;
    out << o.dump(2) << '\n';
    return failed == 0;
}

// Returns false when the run finished but the accuracy target was missed.
bool dispatch(const ExperimentConfig& c, unsigned threads, std::ostream& out) {
    if (c.format != "csv" && c.format != "json") throw ValidationError("--format must be csv or json");
    const auto& s = c.subcommand;
    if (s == "coeffs") return cmd_coeffs(c, out), true;
    if (s == "torus") return cmd_torus(c, threads, out);
    if (s == "na-check") return cmd_na_check(c, out);
    if (s == "simulate") return cmd_simulate(c, threads, out), true;
    if (s == "weyl") return cmd_weyl(c, threads, out), true;
    if (s == "limit") return cmd_limit(c, threads, out), true;
    if (s == "limit psi") return cmd_limit_psi(c, out), true;
    if (s == "limit density") return cmd_limit_density(c, out), true;
    if (s == "report") return cmd_report(c, out);
    throw ValidationError("unknown subcommand: " + s);
}

class AccuracyNotMet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace

std::string serialize(const ExperimentConfig& config) {
    json o;
    o["subcommand"] = config.subcommand;
    o["params"] = config.params;
    o["master_seed"] = config.master_seed;
    o["output"] = config.output;
    o["format"] = config.format;
    return o.dump(2);
}

ExperimentConfig parse_config(const std::string& text) {
    try {
        const json o = json::parse(text);
        ExperimentConfig c;
        c.subcommand = o.at("subcommand").get<std::string>();
        c.params = o.at("params").get<std::map<std::string, std::string>>();
        c.master_seed = o.at("master_seed").get<std::uint64_t>();
        c.output = o.at("output").get<std::string>();
        c.format = o.at("format").get<std::string>();
        if (!flag_table().count(c.subcommand)) throw ValidationError("unknown subcommand: " + c.subcommand);
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

void execute(const ExperimentConfig& config, unsigned threads, std::ostream& out) {
    if (!dispatch(config, threads, out)) throw AccuracyNotMet("accuracy target not met");
}

std::string describe(const std::string& name) {
    static const std::map<std::string, std::string> d{
        {"coeffs", "exact P_p, Q_p and A_p tables"},
        {"torus", "deterministic moments on a flat torus, optionally new eigenvalues"},
        {"na-check", "brute-force N_a counts against the closed formula"},
        {"simulate", "randomized moments over Poisson spectra"},
        {"weyl", "counting function: moments, LLN rows and CLT"},
        {"limit", "limit law tools: samples of (S^1..S^p) and R(l)"},
        {"limit psi", "characteristic function psi at given points"},
        {"limit density", "density of the limit law by Fourier inversion"},
        {"report", "merge acceptance results into one JSON"},
    };
    auto it = d.find(name);
    return it == d.end() ? std::string() : it->second;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Random model of point scatterer eigenfunction moments"};
    app.name(args.empty() ? "pscat" : args[0]);
    unsigned threads = 0;
    std::string config_file, out_override;
    app.add_option("--threads", threads, "worker threads (default: PSCAT_THREADS or hardware)");
    app.add_option("--config", config_file, "re-run a saved <out>.config.json");
    app.require_subcommand(0, 1);
    app.fallthrough();

    struct Sub {
        CLI::App* app;
        std::map<std::string, std::string> values;
        std::uint64_t seed = 1;
        std::string out, format = "csv";
    };
    std::map<std::string, Sub> subs;
    CLI::App* limit_app = nullptr;
    for (const auto& [name, flags] : flag_table()) {
        CLI::App* parent = &app;
        std::string leaf = name;
        if (name.rfind("limit ", 0) == 0) {
            parent = limit_app;
            leaf = name.substr(6);
        }
        Sub& s = subs[name];
        s.app = parent->add_subcommand(leaf, describe(name));
        if (name == "limit") {
            limit_app = s.app;
            limit_app->require_subcommand(0, 1);
            limit_app->fallthrough();
        }
        for (const auto& f : flags) {
            s.values[f.name] = f.def;
            s.app->add_option("--" + f.name, s.values[f.name], f.help)->capture_default_str();
        }
        if (uses_seed(name)) s.app->add_option("--seed", s.seed, "master seed")->capture_default_str();
        s.app->add_option("--out", s.out, "output file (default stdout)");
        s.app->add_option("--format", s.format, "csv or json")->capture_default_str();
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg;
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw ValidationError("cannot read " + config_file);
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = parse_config(ss.str());
        } else {
            std::string chosen;
            for (auto& [name, s] : subs)
                if (s.app->parsed() && (chosen.empty() || name.size() > chosen.size())) chosen = name;
            if (chosen.empty()) {
                std::cerr << app.help();
                return 1;
            }
            Sub& s = subs[chosen];
            cfg.subcommand = chosen;
            cfg.params = s.values;
            cfg.master_seed = uses_seed(chosen) ? s.seed : 0;
            cfg.output = s.out;
            cfg.format = s.format;
        }
        if (threads == 0) threads = default_threads();

        bool ok = true;
        if (cfg.output.empty()) {
            try {
                execute(cfg, threads, std::cout);
            } catch (const AccuracyNotMet&) {
                ok = false;
            }
        } else {
            std::ofstream f(cfg.output);
            if (!f) throw ValidationError("cannot write " + cfg.output);
            try {
                execute(cfg, threads, f);
            } catch (const AccuracyNotMet&) {
                ok = false;
            }
            std::ofstream side(cfg.output + ".config.json");
            side << serialize(cfg) << '\n';
        }
        if (!ok) {
            std::cerr << "pscat: accuracy target not met\n";
            return 2;
        }
        return 0;
    } catch (const AccuracyError& e) {
        std::cerr << "pscat: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "pscat: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "pscat: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "pscat: " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, const char* const* argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace pscat::cli

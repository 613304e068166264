#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elci/el.hpp"
#include "elci/errors.hpp"
#include "elci/functionals.hpp"
#include "elci/influence.hpp"
#include "elci/mc.hpp"
#include "elci/sample.hpp"
#include "elci/scaled_el.hpp"
#include "elci/scenario.hpp"
#include "elci/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

int thread_cap() {
    if (const char* env = std::getenv("ELCI_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

std::string interval_warnings(const elci::IntervalResult& ci) {
    std::vector<std::string> w;
    if (ci.experimental) w.push_back("experimental");
    if (ci.lower_diag.at_feasibility_boundary) w.push_back("lower-at-hull");
    if (ci.upper_diag.at_feasibility_boundary) w.push_back("upper-at-hull");
    if (ci.lower_diag.non_monotone || ci.upper_diag.non_monotone)
        w.push_back("non-monotone-profile");
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += w[i];
    }
    return out;
}

nlohmann::json interval_json(const elci::IntervalResult& ci) {
    return {
        {"method", elci::method_name(ci.method)},
        {"lower", ci.lower},
        {"upper", ci.upper},
        {"theta_hat", ci.theta_hat},
        {"alpha", ci.alpha},
        {"warnings", interval_warnings(ci)},
        {"lower_diag",
         {{"iterations", ci.lower_diag.iterations},
          {"l_value", ci.lower_diag.l_value},
          {"at_feasibility_boundary", ci.lower_diag.at_feasibility_boundary},
          {"non_monotone", ci.lower_diag.non_monotone}}},
        {"upper_diag",
         {{"iterations", ci.upper_diag.iterations},
          {"l_value", ci.upper_diag.l_value},
          {"at_feasibility_boundary", ci.upper_diag.at_feasibility_boundary},
          {"non_monotone", ci.upper_diag.non_monotone}}},
    };
}

struct CiOptions {
    std::string file;
    std::string functional = "mean";
    double alpha = 0.05;
    std::string method = "el";
    std::string format = "tsv";
    std::string diagnostics_path;
    std::string time_col = "time";
    std::string event_col = "event";
    std::string delimiter = ",";
};

int run_ci(const CiOptions& opt) {
    if (!(opt.alpha > 0.0 && opt.alpha <= 0.5)) {
        std::cerr << "elci: alpha must lie in (0, 0.5]\n";
        return kExitValidation;
    }
    elci::CsvConfig csv;
    csv.time_column = opt.time_col;
    csv.event_column = opt.event_col;
    csv.delimiter = opt.delimiter.empty() ? ',' : opt.delimiter[0];

    const elci::CensoredSample sample = elci::ingest_csv(opt.file, csv);
    const elci::FunctionalSpec f = elci::parse_functional(opt.functional);

    std::vector<elci::IntervalResult> results;
    if (opt.method == "el" || opt.method == "both") {
        results.push_back(elci::confidence_interval(sample, f, opt.alpha));
    }
    if (opt.method == "scaled" || opt.method == "both") {
        results.push_back(elci::scaled_interval(sample, f, opt.alpha));
    }
    if (results.empty()) {
        std::cerr << "elci: --method must be el, scaled or both\n";
        return kExitValidation;
    }

    if (opt.format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& ci : results) out.push_back(interval_json(ci));
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& ci : results) {
            std::cout << elci::method_name(ci.method) << '\t' << num(ci.lower)
                      << '\t' << num(ci.upper) << '\t' << num(ci.theta_hat)
                      << '\t' << num(ci.alpha) << '\t' << interval_warnings(ci)
                      << '\n';
        }
    }
    for (const auto& ci : results) {
        const std::string w = interval_warnings(ci);
        if (!w.empty()) {
            std::cerr << "elci: " << elci::method_name(ci.method)
                      << " interval warnings: " << w << "\n";
        }
    }
    if (!opt.diagnostics_path.empty()) {
        nlohmann::json diag = nlohmann::json::array();
        for (const auto& ci : results) diag.push_back(interval_json(ci));
        std::ofstream out(opt.diagnostics_path);
        if (!out) {
            std::cerr << "elci: cannot write " << opt.diagnostics_path << "\n";
            return kExitValidation;
        }
        out << diag.dump(2) << "\n";
    }
    return kExitOk;
}

struct SimulateOptions {
    int table = 0;
    std::string scenario_path;
    std::size_t reps = 2000;
    std::uint64_t seed = 42;
    std::string out_path;
    bool serial = false;
};

int run_simulate(const SimulateOptions& opt) {
    if (opt.reps < 100) {
        std::cerr << "elci: simulate needs --reps >= 100\n";
        return kExitValidation;
    }
    const auto policy = opt.serial ? elci::ExecPolicy::serial : elci::ExecPolicy::openmp;
    elci::tables::TableResult result;
    if (!opt.scenario_path.empty()) {
        std::ifstream in(opt.scenario_path);
        if (!in) {
            std::cerr << "elci: cannot open " << opt.scenario_path << "\n";
            return kExitValidation;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        result = elci::tables::run_custom(ss.str(), opt.reps, opt.seed, policy,
                                          thread_cap());
    } else if (opt.table >= 1 && opt.table <= 5) {
        result = elci::tables::run_table(opt.table, opt.reps, opt.seed, policy,
                                         thread_cap());
    } else {
        std::cerr << "elci: need --table 1..5 or --scenario file.json\n";
        return kExitValidation;
    }

    if (opt.out_path.empty()) {
        std::cout << result.tsv;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "elci: cannot write " << opt.out_path << "\n";
            return kExitValidation;
        }
        out << result.tsv;
    }
    std::cerr << result.summary << "\n";
    return kExitOk;
}

struct DiagnoseOptions {
    std::string file;
    std::string functional = "mean";
    double theta = std::nan("");
    std::string format = "tsv";
    std::string time_col = "time";
    std::string event_col = "event";
    std::string delimiter = ",";
};

int run_diagnose(const DiagnoseOptions& opt) {
    elci::CsvConfig csv;
    csv.time_column = opt.time_col;
    csv.event_column = opt.event_col;
    csv.delimiter = opt.delimiter.empty() ? ',' : opt.delimiter[0];
    const elci::CensoredSample sample = elci::ingest_csv(opt.file, csv);
    const elci::FunctionalSpec f = elci::parse_functional(opt.functional);

    const double theta_hat = elci::point_estimate(sample, f);
    const double theta = std::isnan(opt.theta) ? theta_hat : opt.theta;

    const auto w = elci::w_hat(sample, f, theta);
    double l_value;
    nlohmann::json lam_diag;
    try {
        const auto diag = elci::solve_lambda(w.w);
        double l = 0.0;
        for (double wi : w.w) l += std::log1p(diag.lambda * wi);
        l_value = std::max(2.0 * l, 0.0);
        lam_diag = {{"lambda", diag.lambda},
                    {"bracket_lo", diag.bracket_lo},
                    {"bracket_hi", diag.bracket_hi},
                    {"iterations", diag.iterations},
                    {"score_residual", diag.score_residual}};
    } catch (const elci::InfeasibleConstraint&) {
        l_value = std::numeric_limits<double>::infinity();
        lam_diag = {{"infeasible", true}};
    }

    auto var_of = [](const std::vector<double>& x) {
        double mean = 0.0;
        for (double t : x) mean += t;
        mean /= static_cast<double>(x.size());
        double ss = 0.0;
        for (double t : x) ss += (t - mean) * (t - mean);
        return ss / static_cast<double>(x.size() - 1);
    };
    elci::InfluenceKernel kernel(sample);
    const auto v = kernel.weighted_score(f.xi_at(theta_hat));
    const auto w_hat_at = kernel.w_hat(f.xi_at(theta_hat));
    const double jack = elci::jackknife_variance(sample, f);
    const double s_v2 = var_of(v);

    // sigma1^2 of the comparator uses the 1/n normalization
    const double n_d = static_cast<double>(sample.n());
    const double sigma1_sq = s_v2 * (n_d - 1.0) / n_d;

    std::size_t events = sample.event_count();
    nlohmann::json out = {
        {"n", sample.n()},
        {"events", events},
        {"censored_fraction", 1.0 - static_cast<double>(events) / n_d},
        {"functional", f.name()},
        {"theta_hat", theta_hat},
        {"theta", theta},
        {"lambda_diag", lam_diag},
        {"s_W2", var_of(w_hat_at)},
        {"s_V2", s_v2},
        {"jackknife_variance", jack},
        {"r_hat", sigma1_sq / (n_d * jack)},
        {"experimental", f.experimental()},
    };
    if (std::isinf(l_value)) {
        out["l_value"] = "inf";
    } else {
        out["l_value"] = l_value;
    }
    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (auto it = out.begin(); it != out.end(); ++it) {
            if (it->is_object()) continue;
            std::cout << it.key() << '\t';
            if (it->is_number_float()) {
                std::cout << num(it->get<double>());
            } else if (it->is_string()) {
                std::cout << it->get<std::string>();
            } else {
                std::cout << *it;
            }
            std::cout << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Empirical-likelihood confidence intervals for right-censored data"};
    app.require_subcommand(1);

    CiOptions ci_opt;
    auto* ci = app.add_subcommand("ci", "Interval for a functional of a data file");
    ci->add_option("--file", ci_opt.file, "CSV data file")->required();
    ci->add_option("--functional", ci_opt.functional,
                   "mean | moment:k= | survival:y= | mrl:t0= | lb-survival:y= | "
                   "lb-mean | lb-residual-mean | quantile:p=");
    ci->add_option("--alpha", ci_opt.alpha, "miscoverage level, in (0, 0.5]");
    ci->add_option("--method", ci_opt.method, "el | scaled | both");
    ci->add_option("--format", ci_opt.format, "tsv | json");
    ci->add_option("--diagnostics", ci_opt.diagnostics_path,
                   "write per-endpoint diagnostics JSON here");
    ci->add_option("--time-col", ci_opt.time_col, "time column name");
    ci->add_option("--event-col", ci_opt.event_col, "event column name");
    ci->add_option("--delimiter", ci_opt.delimiter, "CSV delimiter");

    SimulateOptions sim_opt;
    auto* sim = app.add_subcommand("simulate", "Reproduce a coverage study table");
    sim->add_option("--table", sim_opt.table, "built-in table id, 1..5");
    sim->add_option("--scenario", sim_opt.scenario_path, "custom scenario JSON file");
    sim->add_option("--reps", sim_opt.reps, "replications (>= 100)");
    sim->add_option("--seed", sim_opt.seed, "master seed");
    sim->add_option("--out", sim_opt.out_path, "output TSV path (default stdout)");
    sim->add_flag("--serial", sim_opt.serial, "use the serial reference engine");

    DiagnoseOptions diag_opt;
    auto* diag = app.add_subcommand("diagnose", "EL diagnostics for a data file");
    diag->add_option("--file", diag_opt.file, "CSV data file")->required();
    diag->add_option("--functional", diag_opt.functional, "functional descriptor");
    diag->add_option("--theta", diag_opt.theta, "evaluate at this theta (default: theta-hat)");
    diag->add_option("--format", diag_opt.format, "tsv | json");
    diag->add_option("--time-col", diag_opt.time_col, "time column name");
    diag->add_option("--event-col", diag_opt.event_col, "event column name");
    diag->add_option("--delimiter", diag_opt.delimiter, "CSV delimiter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (ci->parsed()) return run_ci(ci_opt);
        if (sim->parsed()) return run_simulate(sim_opt);
        if (diag->parsed()) return run_diagnose(diag_opt);
    } catch (const elci::ValidationError& e) {
        std::cerr << "elci: " << e.what() << "\n";
        return kExitValidation;
    } catch (const elci::DegenerateSample& e) {
        std::cerr << "elci: " << e.what() << "\n";
        return kExitValidation;
    } catch (const elci::Error& e) {
        std::cerr << "elci: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}

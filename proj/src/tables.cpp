#include "elci/tables.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "elci/errors.hpp"

namespace elci {
namespace tables {

namespace {

constexpr std::size_t kSizes[4] = {20, 40, 60, 80};
constexpr double kThresholdProbs[4] = {0.90, 0.70, 0.50, 0.30};

// Published coverage proportions, theta0 = E Y, order: per censoring block
// (20% then 30%), per level (0.90 then 0.95), per n (20,40,60,80), columns
// Uniform I2, Uniform I1, Weibull I2, Weibull I1.
constexpr double kTable1[2][2][4][4] = {
    {{{0.876, 0.881, 0.871, 0.871},
      {0.895, 0.897, 0.889, 0.890},
      {0.897, 0.897, 0.893, 0.893},
      {0.897, 0.898, 0.896, 0.896}},
     {{0.928, 0.935, 0.922, 0.924},
      {0.946, 0.949, 0.939, 0.941},
      {0.947, 0.948, 0.945, 0.946},
      {0.947, 0.947, 0.947, 0.948}}},
    {{{0.841, 0.861, 0.867, 0.869},
      {0.885, 0.890, 0.890, 0.891},
      {0.888, 0.892, 0.890, 0.891},
      {0.897, 0.900, 0.893, 0.894}},
     {{0.897, 0.916, 0.916, 0.924},
      {0.934, 0.941, 0.939, 0.943},
      {0.941, 0.946, 0.944, 0.946},
      {0.945, 0.947, 0.945, 0.947}}}};

// Published average widths, same layout as kTable1.
constexpr double kTable2[2][2][4][4] = {
    {{{0.217, 0.218, 0.092, 0.091},
      {0.157, 0.157, 0.066, 0.065},
      {0.129, 0.129, 0.054, 0.053},
      {0.112, 0.112, 0.046, 0.046}},
     {{0.258, 0.259, 0.110, 0.109},
      {0.187, 0.187, 0.079, 0.078},
      {0.154, 0.154, 0.064, 0.064},
      {0.133, 0.133, 0.056, 0.055}}},
    {{{0.220, 0.227, 0.097, 0.096},
      {0.162, 0.164, 0.069, 0.069},
      {0.134, 0.134, 0.057, 0.057},
      {0.116, 0.116, 0.049, 0.049}},
     {{0.260, 0.270, 0.116, 0.116},
      {0.192, 0.196, 0.083, 0.083},
      {0.159, 0.160, 0.068, 0.068},
      {0.138, 0.139, 0.059, 0.059}}}};

// Published sample variances (s_W^2, s_V^2), per censoring block, per n,
// columns Uniform s_W^2, Uniform s_V^2, Weibull s_W^2, Weibull s_V^2.
constexpr double kTable3[2][4][4] = {
    {{0.0935, 0.1121, 0.0157, 0.0163},
     {0.0938, 0.1115, 0.0157, 0.0162},
     {0.0937, 0.1107, 0.0157, 0.0161},
     {0.0934, 0.1100, 0.0158, 0.0162}},
    {{0.1005, 0.1386, 0.0175, 0.0185},
     {0.1013, 0.1401, 0.0176, 0.0184},
     {0.1016, 0.1402, 0.0176, 0.0183},
     {0.1012, 0.1393, 0.0176, 0.0183}}};

// Published mean-residual-life coverage and width, tables 4 (20% censoring)
// and 5 (30%), level 0.90. Layout: per n, per method (I2 then I1), coverage
// for P(Y>=t0) = 0.90,...,0.30 then widths in the same order.
constexpr double kTable45[2][4][2][8] = {
    {{{0.878, 0.851, 0.795, 0.659, 0.074, 0.062, 0.054, 0.044},
      {0.881, 0.863, 0.820, 0.701, 0.074, 0.062, 0.056, 0.048}},
     {{0.889, 0.878, 0.859, 0.800, 0.053, 0.046, 0.042, 0.039},
      {0.891, 0.884, 0.874, 0.833, 0.053, 0.046, 0.043, 0.041}},
     {{0.897, 0.892, 0.877, 0.839, 0.044, 0.037, 0.035, 0.034},
      {0.898, 0.897, 0.888, 0.863, 0.044, 0.038, 0.035, 0.035}},
     {{0.895, 0.888, 0.884, 0.853, 0.038, 0.033, 0.031, 0.030},
      {0.896, 0.892, 0.892, 0.871, 0.038, 0.033, 0.031, 0.031}}},
    {{{0.864, 0.833, 0.760, 0.605, 0.079, 0.065, 0.055, 0.043},
      {0.872, 0.851, 0.793, 0.659, 0.079, 0.065, 0.058, 0.048}},
     {{0.887, 0.872, 0.846, 0.777, 0.057, 0.048, 0.045, 0.041},
      {0.891, 0.882, 0.867, 0.818, 0.057, 0.049, 0.046, 0.043}},
     {{0.892, 0.888, 0.870, 0.822, 0.046, 0.040, 0.037, 0.036},
      {0.895, 0.895, 0.884, 0.851, 0.046, 0.040, 0.038, 0.037}},
     {{0.892, 0.888, 0.878, 0.845, 0.040, 0.035, 0.033, 0.032},
      {0.895, 0.895, 0.887, 0.869, 0.040, 0.035, 0.033, 0.033}}}};

std::string fmt(double v, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

DistributionSpec uniform_lifetime() { return DistributionSpec::uniform(0.0, 1.0); }
DistributionSpec weibull_lifetime() { return DistributionSpec::weibull(1.0, 10.0); }

// The four scenario-I sampling setups, indexed by censoring block (0: 20%,
// 1: the second column, c = 1.3 / Exp(2.7)) and family (0: uniform, 1: weibull).
DistributionSpec censor_for(int block, int family) {
    if (family == 0) {
        return DistributionSpec::uniform(0.0, block == 0 ? 2.5 : 1.3);
    }
    return DistributionSpec::exponential(block == 0 ? 4.3 : 2.7);
}

struct Deviation {
    double max_dev = 0.0;
    std::size_t cells = 0;
    void add(double computed, double published) {
        max_dev = std::max(max_dev, std::fabs(computed - published));
        ++cells;
    }
};

const CoverageRow& find_row(const CoverageReport& rep, const std::string& label,
                            std::size_t n, double alpha, Method m) {
    for (const auto& r : rep.rows) {
        if (r.scenario == label && r.n == n && r.alpha == alpha && r.method == m) {
            return r;
        }
    }
    throw Error("internal: study row missing");
}

TableResult coverage_or_width_table(int table_id, std::size_t reps,
                                    std::uint64_t seed, ExecPolicy policy,
                                    int max_threads) {
    const bool widths = table_id == 2;
    std::vector<ScenarioSpec> scenarios;
    std::array<std::array<double, 2>, 2> censor_frac{};
    for (int block = 0; block < 2; ++block) {
        for (int family = 0; family < 2; ++family) {
            const auto life = family == 0 ? uniform_lifetime() : weibull_lifetime();
            const auto cens = censor_for(block, family);
            for (std::size_t n : kSizes) {
                scenarios.push_back(make_scenario(
                    life, cens, n, FunctionalSpec::mean(),
                    life.label() + "/" + cens.label()));
            }
            censor_frac[static_cast<std::size_t>(block)][static_cast<std::size_t>(family)] =
                censoring_proportion(scenarios.back());
        }
    }
    const std::vector<double> alphas = {0.10, 0.05};
    const std::vector<Method> methods = {Method::scaled_el, Method::el_chi2};
    const CoverageReport rep =
        run_coverage_study(scenarios, alphas, methods, reps, seed, policy, max_threads);

    std::ostringstream out;
    out << "scenario\tcensor_frac\tlevel\tn\tmethod\t"
        << (widths ? "width" : "coverage") << "\treps\tseed\tfailures\n";
    Deviation dev;
    for (int block = 0; block < 2; ++block) {
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            for (std::size_t ni = 0; ni < 4; ++ni) {
                for (int family = 0; family < 2; ++family) {
                    const auto life = family == 0 ? uniform_lifetime() : weibull_lifetime();
                    const auto cens = censor_for(block, family);
                    const std::string label = life.label() + "/" + cens.label();
                    for (std::size_t m = 0; m < methods.size(); ++m) {
                        const auto& row =
                            find_row(rep, label, kSizes[ni], alphas[a], methods[m]);
                        const double value = widths ? row.avg_width : row.coverage;
                        const double published =
                            (widths ? kTable2 : kTable1)[block][a][ni][2 * family + m];
                        dev.add(value, published);
                        out << label << '\t'
                            << fmt(censor_frac[static_cast<std::size_t>(block)]
                                              [static_cast<std::size_t>(family)])
                            << '\t' << fmt(1.0 - alphas[a], 2) << '\t' << kSizes[ni]
                            << '\t' << method_name(methods[m]) << '\t' << fmt(value)
                            << '\t' << row.reps << '\t' << seed << '\t'
                            << row.failures << '\n';
                    }
                }
            }
        }
    }
    TableResult res;
    res.tsv = out.str();
    res.max_deviation = dev.max_dev;
    res.cells = dev.cells;
    std::ostringstream sum;
    sum << "table " << table_id << ": max |"
        << (widths ? "width" : "coverage") << " - published| = "
        << fmt(dev.max_dev) << " over " << dev.cells << " cells (reps=" << reps
        << ")";
    res.summary = sum.str();
    return res;
}

TableResult variance_table(std::size_t reps, std::uint64_t seed,
                           ExecPolicy policy, int max_threads) {
    std::ostringstream out;
    out << "scenario\tcensor_frac\tn\ts_W2\ts_V2\treps\tseed\tfailures\n";
    Deviation dev;
    for (int block = 0; block < 2; ++block) {
        for (std::size_t ni = 0; ni < 4; ++ni) {
            for (int family = 0; family < 2; ++family) {
                const auto life = family == 0 ? uniform_lifetime() : weibull_lifetime();
                const auto cens = censor_for(block, family);
                const auto spec = make_scenario(life, cens, kSizes[ni],
                                                FunctionalSpec::mean(),
                                                life.label() + "/" + cens.label());
                const auto cmp =
                    variance_comparison(spec, reps, seed, policy, max_threads);
                dev.add(cmp.s_w2, kTable3[block][ni][2 * family]);
                dev.add(cmp.s_v2, kTable3[block][ni][2 * family + 1]);
                out << spec.label << '\t' << fmt(censoring_proportion(spec)) << '\t'
                    << kSizes[ni] << '\t' << fmt(cmp.s_w2) << '\t' << fmt(cmp.s_v2)
                    << '\t' << cmp.reps << '\t' << seed << '\t' << cmp.failures
                    << '\n';
            }
        }
    }
    TableResult res;
    res.tsv = out.str();
    res.max_deviation = dev.max_dev;
    res.cells = dev.cells;
    std::ostringstream sum;
    sum << "table 3: max |s^2 - published| = " << fmt(dev.max_dev) << " over "
        << dev.cells << " cells (reps=" << reps << ")";
    res.summary = sum.str();
    return res;
}

TableResult mrl_table(int table_id, std::size_t reps, std::uint64_t seed,
                      ExecPolicy policy, int max_threads) {
    const int block = table_id == 4 ? 0 : 1;
    const auto life = weibull_lifetime();
    const auto cens = DistributionSpec::exponential(block == 0 ? 4.3 : 2.7);

    std::vector<ScenarioSpec> scenarios;
    std::vector<double> thresholds;
    for (double p : kThresholdProbs) {
        const double t0 = mrl_threshold(life, p);
        thresholds.push_back(t0);
        for (std::size_t n : kSizes) {
            std::ostringstream label;
            label << "mrl p=" << fmt(p, 2);
            scenarios.push_back(make_scenario(
                life, cens, n, FunctionalSpec::mean_residual_life(t0), label.str()));
        }
    }
    const std::vector<double> alphas = {0.10};
    const std::vector<Method> methods = {Method::scaled_el, Method::el_chi2};
    const CoverageReport rep =
        run_coverage_study(scenarios, alphas, methods, reps, seed, policy, max_threads);

    std::ostringstream out;
    out << "p_ge_t0\tt0\tn\tmethod\tcoverage\twidth\treps\tseed\tfailures\n";
    Deviation dev;
    for (std::size_t ni = 0; ni < 4; ++ni) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
            for (std::size_t pi = 0; pi < 4; ++pi) {
                std::ostringstream label;
                label << "mrl p=" << fmt(kThresholdProbs[pi], 2);
                const auto& row =
                    find_row(rep, label.str(), kSizes[ni], 0.10, methods[m]);
                dev.add(row.coverage, kTable45[block][ni][m][pi]);
                dev.add(row.avg_width, kTable45[block][ni][m][pi + 4]);
                out << fmt(kThresholdProbs[pi], 2) << '\t' << fmt(thresholds[pi], 5)
                    << '\t' << kSizes[ni] << '\t' << method_name(methods[m]) << '\t'
                    << fmt(row.coverage) << '\t' << fmt(row.avg_width) << '\t'
                    << row.reps << '\t' << seed << '\t' << row.failures << '\n';
            }
        }
    }
    TableResult res;
    res.tsv = out.str();
    res.max_deviation = dev.max_dev;
    res.cells = dev.cells;
    std::ostringstream sum;
    sum << "table " << table_id << ": max |value - published| = "
        << fmt(dev.max_dev) << " over " << dev.cells
        << " cells (reps=" << reps << ")";
    res.summary = sum.str();
    return res;
}

}  // namespace

TableResult run_table(int table_id, std::size_t reps, std::uint64_t seed,
                      ExecPolicy policy, int max_threads) {
    switch (table_id) {
        case 1:
        case 2:
            return coverage_or_width_table(table_id, reps, seed, policy, max_threads);
        case 3:
            return variance_table(reps, seed, policy, max_threads);
        case 4:
        case 5:
            return mrl_table(table_id, reps, seed, policy, max_threads);
        default:
            throw ValidationError("table id must be 1..5");
    }
}

namespace {

DistributionSpec dist_from_json(const nlohmann::json& j) {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "uniform") {
        return DistributionSpec::uniform(j.value("a", 0.0), j.at("b").get<double>());
    }
    if (fam == "weibull") {
        return DistributionSpec::weibull(j.at("scale").get<double>(),
                                         j.at("shape").get<double>());
    }
    if (fam == "exponential") {
        return DistributionSpec::exponential(j.at("mean").get<double>());
    }
    throw ValidationError("unknown distribution family: " + fam);
}

}  // namespace

TableResult run_custom(const std::string& json_text, std::size_t reps,
                       std::uint64_t seed, ExecPolicy policy, int max_threads) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("scenario JSON: ") + e.what());
    }
    try {
        const auto life = dist_from_json(j.at("lifetime"));
        const auto cens = dist_from_json(j.at("censoring"));
        const auto functional =
            parse_functional(j.at("functional").get<std::string>());
        std::vector<double> alphas = j.value("alphas", std::vector<double>{0.05});
        std::vector<Method> methods;
        for (const auto& name :
             j.value("methods", std::vector<std::string>{"el"})) {
            if (name == "el") {
                methods.push_back(Method::el_chi2);
            } else if (name == "scaled") {
                methods.push_back(Method::scaled_el);
            } else {
                throw ValidationError("unknown method: " + name);
            }
        }
        std::vector<ScenarioSpec> scenarios;
        for (const auto nj : j.at("n")) {
            const std::size_t n = nj.get<std::size_t>();
            const std::string label =
                j.value("label", life.label() + "/" + cens.label());
            scenarios.push_back(
                j.contains("theta0")
                    ? make_scenario(life, cens, n, functional,
                                    j["theta0"].get<double>(), label)
                    : make_scenario(life, cens, n, functional, label));
        }
        const CoverageReport rep = run_coverage_study(scenarios, alphas, methods,
                                                      reps, seed, policy, max_threads);
        std::ostringstream out;
        out << "scenario\tn\tlevel\tmethod\tcoverage\twidth\treps\tseed\tfailures\n";
        for (const auto& row : rep.rows) {
            out << row.scenario << '\t' << row.n << '\t' << fmt(1.0 - row.alpha, 2)
                << '\t' << method_name(row.method) << '\t' << fmt(row.coverage)
                << '\t' << fmt(row.avg_width) << '\t' << row.reps << '\t' << seed
                << '\t' << row.failures << '\n';
        }
        TableResult res;
        res.tsv = out.str();
        res.cells = rep.rows.size();
        res.summary = "custom scenario: " + std::to_string(rep.rows.size()) +
                      " rows (no published reference)";
        return res;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("scenario JSON: ") + e.what());
    }
}

}  // namespace tables
}  // namespace elci

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "favprop/stats.hpp"
#include "favprop/thresholds.hpp"
#include "manifest.hpp"
#include "table.hpp"

namespace favprop::cli {

namespace {

using nlohmann::ordered_json;
namespace th = favprop::thresholds;

struct CheckResult {
    std::string file;
    std::string check;
    bool pass = false;
    std::string detail;
};

struct LoadedRun {
    std::string path;
    std::string command;
    ordered_json parameters = ordered_json::object();
    Table main;
};

LoadedRun load_run(const std::string& path) {
    LoadedRun run;
    run.path = path;
    if (path.ends_with(".json")) {
        const ordered_json doc = ordered_json::parse(read_text_file(path));
        if (doc.value("tool", "") != "favprop")
            throw std::runtime_error("not a favprop output document");
        run.command = doc.at("command").get<std::string>();
        if (doc.contains("parameters")) run.parameters = doc.at("parameters");
        ordered_json table;
        table["columns"] = doc.at("columns");
        table["rows"] = doc.at("rows");
        run.main = Table::from_json(table);
    } else {
        run.main = Table::from_csv(read_text_file(path));
        const RunManifest manifest = read_manifest(manifest_path_for(path));
        run.command = manifest.command;
        run.parameters = manifest.parameters;
    }
    return run;
}

double param_number(const ordered_json& params, const char* key, double fallback) {
    if (!params.contains(key)) return fallback;
    const auto& v = params.at(key);
    return v.is_number() ? v.get<double>() : fallback;
}

std::string param_string(const ordered_json& params, const char* key) {
    return params.contains(key) && params.at(key).is_string()
               ? params.at(key).get<std::string>()
               : std::string();
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile(values, 0.5);
}

void check_capacity(const LoadedRun& run, std::vector<CheckResult>& results) {
    const auto cap = run.main.numeric_column("capacity_per_terminal");
    const auto had = run.main.numeric_column("hadamard_per_terminal");
    const auto jen = run.main.numeric_column("jensen_per_terminal");
    const auto del = run.main.numeric_column("delta_c");

    CheckResult chain{run.path, "capacity <= hadamard <= jensen on every row", true, ""};
    for (std::size_t i = 0; i < cap.size(); ++i)
        if (cap[i] > had[i] + th::kChainSlack || had[i] > jen[i] + th::kChainSlack) {
            chain.pass = false;
            chain.detail = "violated at row " + std::to_string(i);
            break;
        }
    results.push_back(chain);

    CheckResult consistent{run.path, "delta_c matches (hadamard - capacity)/capacity", true,
                           ""};
    for (std::size_t i = 0; i < cap.size(); ++i) {
        const double expected = (had[i] - cap[i]) / cap[i];
        if (std::abs(del[i] - expected) > 1e-9) {
            consistent.pass = false;
            consistent.detail = "mismatch at row " + std::to_string(i);
            break;
        }
    }
    results.push_back(consistent);

    const double m = param_number(run.parameters, "M", 0);
    const double k = param_number(run.parameters, "K", 0);
    const double rho = param_number(run.parameters, "rho", 0);
    const std::string model = param_string(run.parameters, "model");
    if (m == 100 && k == 10 && rho == 1.0 && cap.size() >= 5000) {
        std::vector<double> sorted_del = del;
        std::sort(sorted_del.begin(), sorted_del.end());
        const double med = quantile(sorted_del, 0.5);
        results.push_back({run.path, "median delta_c below threshold", med <= th::kMedianDeltaCMax,
                           "median " + format_real(med)});
        if (model == "urlos") {
            const double q90 = quantile(sorted_del, 0.9);
            results.push_back({run.path, "delta_c 90th percentile below threshold",
                               q90 <= th::kUrlosDeltaCq90Max, "q90 " + format_real(q90)});
        }
        if (model == "rayleigh") {
            const double gap = 1.0 - median_of(cap) / median_of(had);
            results.push_back({run.path, "median capacity within 3% of the Hadamard bound",
                               std::abs(gap) <= th::kCapacityVsHadamardMedianRelGap,
                               "relative gap " + format_real(gap)});
        }
    }
}

void check_singular(const LoadedRun& run, std::vector<CheckResult>& results) {
    const auto ranks = run.main.numeric_column("rank");
    const auto values = run.main.numeric_column("value");
    const double vmax = *std::max_element(values.begin(), values.end());

    CheckResult nonneg{run.path, "eigenvalues are nonnegative", true, ""};
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < -1e-9 * vmax) {
            nonneg.pass = false;
            nonneg.detail = "negative value at row " + std::to_string(i);
            break;
        }
    results.push_back(nonneg);

    const double m = param_number(run.parameters, "M", 0);
    const double k = param_number(run.parameters, "K", 0);
    const std::string model = param_string(run.parameters, "model");
    if (k < 5) return;

    std::vector<double> rank1, rank5;
    std::vector<std::vector<double>> by_rank(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto r = static_cast<std::size_t>(ranks[i]);
        if (r >= 1 && r <= by_rank.size()) by_rank[r - 1].push_back(values[i]);
    }
    if (m == 100 && k == 10 && by_rank[0].size() >= 5000) {
        std::sort(by_rank[0].begin(), by_rank[0].end());
        std::sort(by_rank[4].begin(), by_rank[4].end());
        if (model == "urlos") {
            const double q10 = quantile(by_rank[0], 0.10);
            const double med5 = quantile(by_rank[4], 0.50);
            results.push_back({run.path,
                               "smallest eigenvalue collapses in the lower tail",
                               q10 < th::kUrlosRank1Q10VsRank5Median * med5,
                               "rank-1 q10 " + format_real(q10) + " vs rank-5 median " +
                                   format_real(med5)});
        }
        if (model == "rayleigh") {
            double lo = 0.0, hi = 0.0;
            for (auto& pool : by_rank) {
                std::sort(pool.begin(), pool.end());
                const double med = quantile(pool, 0.5);
                lo = lo == 0.0 ? med : std::min(lo, med);
                hi = std::max(hi, med);
            }
            results.push_back({run.path, "per-rank medians stay within one decade",
                               hi <= th::kRayleighRankMedianSpread * lo,
                               "medians span " + format_real(lo) + " .. " + format_real(hi)});
        }
    }
}

void check_drop(const LoadedRun& run, std::vector<CheckResult>& results) {
    const auto p_exact = run.main.numeric_column("p_exact");
    double total = 0.0;
    bool nonneg = true;
    for (double p : p_exact) {
        total += p;
        nonneg = nonneg && p >= 0.0;
    }
    results.push_back({run.path, "exact pmf sums to one",
                       nonneg && std::abs(total - 1.0) <= 1e-9,
                       "sum " + format_real(total)});

    const double m = param_number(run.parameters, "M", 0);
    const double k = param_number(run.parameters, "K", 0);
    if (m == 100 && k == 10 && p_exact.size() > 3)
        results.push_back({run.path, "P(drop 3 of 10) below 1%",
                           p_exact[3] < th::kDrop3Of10Max, "p " + format_real(p_exact[3])});
    if (m == 200 && k == 20 && p_exact.size() > 4)
        results.push_back({run.path, "P(drop 4 of 20) within the accepted band",
                           p_exact[4] <= th::kDrop4Of20Max, "p " + format_real(p_exact[4])});

    const double mc_trials = param_number(run.parameters, "mc_trials", 0);
    if (mc_trials >= 1e6 &&
        std::find(run.main.columns.begin(), run.main.columns.end(), "p_mc") !=
            run.main.columns.end()) {
        const auto p_mc = run.main.numeric_column("p_mc");
        double tv = 0.0;
        for (std::size_t n = 0; n < p_mc.size(); ++n) tv += std::abs(p_mc[n] - p_exact[n]);
        tv /= 2.0;
        results.push_back({run.path, "simulation overlay within total variation bound",
                           tv < th::kDropTvMax, "tv " + format_real(tv)});
    }
}

void check_variance(const LoadedRun& run, std::vector<CheckResult>& results) {
    const auto ratio_ip = run.main.numeric_column("ratio_ip");
    const auto ratio_ipsq = run.main.numeric_column("ratio_ipsq");
    const auto ms = run.main.numeric_column("M");
    const std::string model = param_string(run.parameters, "model");
    const double trials = param_number(run.parameters, "trials", 0);

    const bool pinned = trials >= 1e5 && (model == "rayleigh" || model == "urlos");
    const double ip_band = th::kVarIpBand;
    const double ipsq_band =
        model == "urlos" ? th::kUrlosVarIpsqBand : th::kRayleighVarIpsqBand;

    CheckResult ip_check{run.path, "inner-product variance ratios near one", true, ""};
    CheckResult ipsq_check{run.path, "squared-product variance ratios near one", true, ""};
    for (std::size_t i = 0; i < ratio_ip.size(); ++i) {
        const double lo = pinned ? 1.0 - ip_band : 0.1;
        const double hi = pinned ? 1.0 + ip_band : 10.0;
        if (ratio_ip[i] < lo || ratio_ip[i] > hi) {
            ip_check.pass = false;
            ip_check.detail = "M=" + format_real(ms[i]) + " ratio " + format_real(ratio_ip[i]);
        }
        // the M = 1 UR-LoS row legitimately has a zero predictor
        if (std::isnan(ratio_ipsq[i])) continue;
        const double lo2 = pinned ? 1.0 - ipsq_band : 0.1;
        const double hi2 = pinned ? 1.0 + ipsq_band : 10.0;
        if (ratio_ipsq[i] < lo2 || ratio_ipsq[i] > hi2) {
            ipsq_check.pass = false;
            ipsq_check.detail =
                "M=" + format_real(ms[i]) + " ratio " + format_real(ratio_ipsq[i]);
        }
    }
    results.push_back(ip_check);
    results.push_back(ipsq_check);
}

}  // namespace

int run_report(const ReportArgs& args) {
    if (args.inputs.empty()) throw UsageError("report: no input files given");
    if (args.format != "text" && args.format != "json")
        throw UsageError("report: format must be text or json");

    std::vector<CheckResult> results;
    std::vector<std::string> unreadable;
    for (const std::string& path : args.inputs) {
        LoadedRun run;
        try {
            run = load_run(path);
        } catch (const std::exception& e) {
            unreadable.push_back(path);
            results.push_back({path, "input is readable and identified", false, e.what()});
            continue;
        }
        try {
            if (run.command == "capacity-cdf")
                check_capacity(run, results);
            else if (run.command == "singular-cdf")
                check_singular(run, results);
            else if (run.command == "drop-prob")
                check_drop(run, results);
            else if (run.command == "variance-check")
                check_variance(run, results);
            else
                results.push_back({path, "input is a recognized run kind", false,
                                   "command '" + run.command + "'"});
        } catch (const std::exception& e) {
            results.push_back({path, "input columns are complete", false, e.what()});
        }
    }

    const bool all_pass =
        std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });

    std::ostringstream text;
    if (args.format == "text") {
        for (const CheckResult& r : results) {
            text << (r.pass ? "PASS" : "FAIL") << "  " << r.file << "  " << r.check;
            if (!r.detail.empty()) text << "  (" << r.detail << ")";
            text << "\n";
        }
        text << (all_pass ? "PASS" : "FAIL") << "  " << results.size() << " checks on "
             << args.inputs.size() << " files";
        if (!unreadable.empty()) {
            text << "; unreadable:";
            for (const std::string& f : unreadable) text << " " << f;
        }
        text << "\n";
    } else {
        ordered_json doc;
        doc["tool"] = "favprop";
        doc["pass"] = all_pass;
        ordered_json checks = ordered_json::array();
        for (const CheckResult& r : results) {
            ordered_json c;
            c["file"] = r.file;
            c["check"] = r.check;
            c["pass"] = r.pass;
            c["detail"] = r.detail;
            checks.push_back(std::move(c));
        }
        doc["checks"] = std::move(checks);
        doc["unreadable"] = unreadable;
        text << doc.dump(2) << "\n";
    }

    if (args.out.empty())
        std::cout << text.str();
    else
        write_text_file(args.out, text.str());
    return all_pass ? 0 : 1;
}

}  // namespace favprop::cli

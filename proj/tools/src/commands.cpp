#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

#include "favprop/montecarlo.hpp"
#include "favprop/occupancy.hpp"
#include "favprop/version.hpp"
#include "manifest.hpp"
#include "table.hpp"

namespace favprop::cli {

namespace {

using nlohmann::ordered_json;

ChannelModel parse_model(const std::string& name) {
    if (name == "rayleigh") return ChannelModel::Rayleigh;
    if (name == "urlos") return ChannelModel::UrLos;
    throw UsageError("unknown model '" + name + "' (expected rayleigh or urlos)");
}

void require_format(const std::string& format) {
    if (format != "csv" && format != "json")
        throw UsageError("unknown format '" + format + "' (expected csv or json)");
}

std::string summary_path_for(const std::string& out) {
    const std::filesystem::path p(out);
    std::filesystem::path derived = p;
    derived.replace_extension();
    derived += ".summary";
    derived += p.extension();
    return derived.string();
}

Table summary_table_of_pools(const std::vector<std::pair<std::string, std::vector<double>>>&
                                 named_pools) {
    Table summary;
    summary.columns = {"metric", "count", "mean", "variance",
                       "q01",    "q10",   "q50",  "q90",     "q99"};
    for (const auto& [name, pool] : named_pools) {
        std::vector<double> sorted = pool;
        std::sort(sorted.begin(), sorted.end());
        const Summary s = summarize(sorted);
        summary.rows.push_back({name, std::to_string(s.count), format_real(s.mean),
                                format_real(s.variance), format_real(s.q01),
                                format_real(s.q10), format_real(s.q50), format_real(s.q90),
                                format_real(s.q99)});
    }
    return summary;
}

// Write the data files plus the manifest sidecar; returns the list of data
// file paths (manifest excluded).
std::vector<std::string> emit_output(const std::string& command,
                                     const ordered_json& parameters, const Table& main,
                                     const std::optional<Table>& summary,
                                     const ordered_json& extra_summary,
                                     const std::string& format, const std::string& out,
                                     double duration_seconds) {
    std::vector<std::string> outputs;
    if (format == "csv") {
        write_text_file(out, main.to_csv());
        outputs.push_back(out);
        if (summary) {
            const std::string spath = summary_path_for(out);
            write_text_file(spath, summary->to_csv());
            outputs.push_back(spath);
        }
    } else {
        ordered_json doc;
        doc["tool"] = "favprop";
        doc["version"] = std::string(kVersion);
        doc["command"] = command;
        doc["parameters"] = parameters;
        const ordered_json main_json = main.to_json();
        doc["columns"] = main_json.at("columns");
        doc["rows"] = main_json.at("rows");
        ordered_json summary_json = ordered_json::object();
        if (!extra_summary.is_null()) summary_json = extra_summary;
        if (summary) summary_json["table"] = summary->to_json();
        doc["summary"] = std::move(summary_json);
        write_text_file(out, doc.dump(2) + "\n");
        outputs.push_back(out);
    }

    RunManifest manifest;
    manifest.command = command;
    manifest.parameters = parameters;
    manifest.tool_version = std::string(kVersion);
    manifest.duration_seconds = duration_seconds;
    manifest.outputs = outputs;
    write_manifest(manifest, manifest_path_for(out));
    return outputs;
}

EnsembleConfig make_ensemble_config(const EnsembleCommandArgs& args) {
    if (args.num_antennas == 0 || args.num_terminals == 0)
        throw UsageError("--M and --K must be positive (set them or use --preset)");
    if (args.trials == 0) throw UsageError("--trials must be positive");
    require_format(args.format);

    EnsembleConfig cfg;
    const ChannelModel model = parse_model(args.model);
    cfg.model = model == ChannelModel::Rayleigh ? ChannelModelSpec::rayleigh()
                                                : ChannelModelSpec::ur_los(args.spacing);
    cfg.num_antennas = args.num_antennas;
    cfg.num_terminals = args.num_terminals;
    cfg.rho = args.rho;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.threads = args.threads;
    return cfg;
}

ordered_json ensemble_parameters(const EnsembleCommandArgs& args, const std::string& out) {
    ordered_json params;
    params["model"] = args.model;
    params["M"] = args.num_antennas;
    params["K"] = args.num_terminals;
    params["rho"] = args.rho;
    params["trials"] = args.trials;
    params["seed"] = args.seed;
    params["spacing"] = args.spacing;
    params["threads"] = args.threads;
    params["format"] = args.format;
    params["out"] = out;
    return params;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::size_t> parse_m_list(const std::string& text) {
    std::vector<std::size_t> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string token = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (token.empty()) continue;
        try {
            std::size_t idx = 0;
            const unsigned long long value = std::stoull(token, &idx);
            if (idx != token.size() || value == 0) throw std::invalid_argument(token);
            values.push_back(static_cast<std::size_t>(value));
        } catch (const std::exception&) {
            throw UsageError("--M-list: '" + token + "' is not a positive integer");
        }
    }
    if (values.empty()) throw UsageError("--M-list must name at least one antenna count");
    return values;
}

}  // namespace

std::string resolve_output_path(const std::string& out, const std::string& default_name) {
    const std::filesystem::path path(out.empty() ? default_name : out);
    if (path.is_absolute() || path.has_parent_path()) return path.string();
    if (const char* dir = std::getenv("FAVPROP_OUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / path).string();
    return path.string();
}

void apply_preset(const std::string& preset, std::size_t& num_antennas,
                  std::size_t& num_terminals, bool antennas_set, bool terminals_set) {
    if (preset.empty()) return;
    std::size_t m = 0;
    std::size_t k = 0;
    if (preset == "100x10") {
        m = 100;
        k = 10;
    } else if (preset == "200x20") {
        m = 200;
        k = 20;
    } else {
        throw UsageError("unknown preset '" + preset + "' (expected 100x10 or 200x20)");
    }
    if (!antennas_set) num_antennas = m;
    if (!terminals_set) num_terminals = k;
}

int run_singular_cdf(const EnsembleCommandArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    EnsembleConfig cfg = make_ensemble_config(args);
    cfg.collect.spectrum = true;

    const EnsembleResult result = run_ensemble(cfg);
    const std::size_t k = cfg.num_terminals;

    Table main;
    main.columns = {"trial", "rank", "value"};
    main.rows.reserve(cfg.trials * k);
    for (std::size_t t = 0; t < cfg.trials; ++t)
        for (std::size_t rank = 0; rank < k; ++rank)
            main.rows.push_back({std::to_string(t), std::to_string(rank + 1),
                                 format_real(result.spectrum[t * k + rank])});

    Table summary;
    summary.columns = {"rank", "count", "mean", "q01", "q10", "q50", "q90", "q99"};
    std::vector<double> per_rank(cfg.trials);
    for (std::size_t rank = 0; rank < k; ++rank) {
        for (std::size_t t = 0; t < cfg.trials; ++t)
            per_rank[t] = result.spectrum[t * k + rank];
        std::sort(per_rank.begin(), per_rank.end());
        const Summary s = summarize(per_rank);
        summary.rows.push_back({std::to_string(rank + 1), std::to_string(s.count),
                                format_real(s.mean), format_real(s.q01), format_real(s.q10),
                                format_real(s.q50), format_real(s.q90), format_real(s.q99)});
    }

    const std::string out = resolve_output_path(args.out, "singular_cdf." + args.format);
    emit_output("singular-cdf", ensemble_parameters(args, out), main, summary, {},
                args.format, out, seconds_since(start));
    return 0;
}

int run_capacity_cdf(const EnsembleCommandArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    EnsembleConfig cfg = make_ensemble_config(args);
    cfg.collect.capacity = true;
    cfg.collect.delta_c = true;

    const EnsembleResult result = run_ensemble(cfg);
    const double per_terminal = 1.0 / static_cast<double>(cfg.num_terminals);

    Table main;
    main.columns = {"trial", "capacity_per_terminal", "hadamard_per_terminal",
                    "jensen_per_terminal", "delta_c"};
    std::vector<double> cap, had, jen, del;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        if (std::isnan(result.delta_c[t])) continue;  // tallied in the manifest
        cap.push_back(result.capacity[t] * per_terminal);
        had.push_back(result.hadamard[t] * per_terminal);
        jen.push_back(result.jensen[t] * per_terminal);
        del.push_back(result.delta_c[t]);
        main.rows.push_back({std::to_string(t), format_real(cap.back()),
                             format_real(had.back()), format_real(jen.back()),
                             format_real(del.back())});
    }

    const Table summary = summary_table_of_pools({{"capacity_per_terminal", cap},
                                                  {"hadamard_per_terminal", had},
                                                  {"jensen_per_terminal", jen},
                                                  {"delta_c", del}});

    ordered_json extra;
    extra["error_trials"] = result.errors.size();

    const std::string out = resolve_output_path(args.out, "capacity_cdf." + args.format);
    ordered_json params = ensemble_parameters(args, out);
    params["error_trials"] = result.errors.size();
    emit_output("capacity-cdf", params, main, summary, extra, args.format, out,
                seconds_since(start));
    return 0;
}

int run_drop_prob(const DropArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    require_format(args.format);
    if (args.num_beams == 0 || args.num_terminals == 0)
        throw UsageError("--M and --K must be positive (set them or use --preset)");
    if (args.num_terminals > args.num_beams)
        throw UsageError("--K must not exceed --M: every terminal needs a beam");

    const DropDistribution dist = drop_pmf(args.num_beams, args.num_terminals);
    std::vector<double> mc;
    if (args.mc_trials > 0)
        mc = simulate_drop(args.num_beams, args.num_terminals, args.mc_trials, args.seed,
                           args.threads);

    Table main;
    main.columns = {"n", "p_exact"};
    if (!mc.empty()) main.columns.push_back("p_mc");
    for (std::size_t n = 0; n < dist.pmf.size(); ++n) {
        std::vector<std::string> row{std::to_string(n), decimal_string(dist.pmf[n], 12)};
        if (!mc.empty()) row.push_back(format_real(mc[n]));
        main.rows.push_back(std::move(row));
    }

    Table summary;
    summary.columns = {"key", "value"};
    summary.rows.push_back({"M", std::to_string(args.num_beams)});
    summary.rows.push_back({"K", std::to_string(args.num_terminals)});
    summary.rows.push_back({"mean_exact", decimal_string(dist.mean, 12)});
    ordered_json extra;
    extra["mean"] = dist.mean_real();
    extra["mean_decimal12"] = decimal_string(dist.mean, 12);
    if (!mc.empty()) {
        double tv = 0.0;
        const std::vector<double> exact = dist.pmf_real();
        double mc_mean = 0.0;
        for (std::size_t n = 0; n < mc.size(); ++n) {
            tv += std::abs(mc[n] - exact[n]);
            mc_mean += static_cast<double>(n) * mc[n];
        }
        tv /= 2.0;
        summary.rows.push_back({"mc_trials", std::to_string(args.mc_trials)});
        summary.rows.push_back({"mc_mean", format_real(mc_mean)});
        summary.rows.push_back({"tv_exact_mc", format_real(tv)});
        extra["mc_trials"] = args.mc_trials;
        extra["mc_mean"] = mc_mean;
        extra["tv_exact_mc"] = tv;
    }

    const std::string out = resolve_output_path(args.out, "drop_prob." + args.format);
    ordered_json params;
    params["M"] = args.num_beams;
    params["K"] = args.num_terminals;
    params["mc_trials"] = args.mc_trials;
    params["seed"] = args.seed;
    params["threads"] = args.threads;
    params["format"] = args.format;
    params["out"] = out;
    emit_output("drop-prob", params, main, summary, extra, args.format, out,
                seconds_since(start));
    return 0;
}

int run_variance_check(const VarianceArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    require_format(args.format);
    const ChannelModel model = parse_model(args.model);
    if (model == ChannelModel::UrLos && args.spacing != 0.5)
        throw UsageError("the UR-LoS variance predictors are only valid at --spacing 0.5");

    std::vector<std::size_t> antenna_counts = parse_m_list(args.m_list);
    std::vector<std::size_t> unique_counts;
    for (std::size_t m : antenna_counts) {
        if (std::find(unique_counts.begin(), unique_counts.end(), m) != unique_counts.end())
            std::cerr << "warning: duplicate M=" << m << " in --M-list ignored\n";
        else
            unique_counts.push_back(m);
    }

    const std::vector<VarianceRow> rows =
        variance_study(model, unique_counts, args.trials, args.seed, args.threads);

    Table main;
    main.columns = {"M",
                    "var_ip_sample",
                    "var_ip_predicted",
                    "var_ipsq_sample",
                    "var_ipsq_predicted",
                    "ratio_ip",
                    "ratio_ipsq"};
    for (const VarianceRow& row : rows)
        main.rows.push_back({std::to_string(row.num_antennas),
                             format_real(row.var_ip_sample),
                             format_real(row.var_ip_predicted),
                             format_real(row.var_ipsq_sample),
                             format_real(row.var_ipsq_predicted),
                             format_real(row.ratio_ip), format_real(row.ratio_ipsq)});

    const std::string out = resolve_output_path(args.out, "variance_check." + args.format);
    ordered_json params;
    params["model"] = args.model;
    ordered_json m_json = ordered_json::array();
    for (std::size_t m : unique_counts) m_json.push_back(m);
    params["M_list"] = m_json;
    params["trials"] = args.trials;
    params["seed"] = args.seed;
    params["spacing"] = args.spacing;
    params["threads"] = args.threads;
    params["format"] = args.format;
    params["out"] = out;
    emit_output("variance-check", params, main, std::nullopt, {}, args.format, out,
                seconds_since(start));
    return 0;
}

int run_rerun(const std::string& manifest_path) {
    const RunManifest manifest = read_manifest(manifest_path);
    const ordered_json& p = manifest.parameters;

    if (manifest.command == "singular-cdf" || manifest.command == "capacity-cdf") {
        EnsembleCommandArgs args;
        args.model = p.at("model").get<std::string>();
        args.num_antennas = p.at("M").get<std::size_t>();
        args.num_terminals = p.at("K").get<std::size_t>();
        args.rho = p.at("rho").get<double>();
        args.trials = p.at("trials").get<std::size_t>();
        args.seed = p.at("seed").get<std::uint64_t>();
        args.spacing = p.at("spacing").get<double>();
        args.threads = p.at("threads").get<unsigned>();
        args.format = p.at("format").get<std::string>();
        args.out = p.at("out").get<std::string>();
        return manifest.command == "singular-cdf" ? run_singular_cdf(args)
                                                  : run_capacity_cdf(args);
    }
    if (manifest.command == "drop-prob") {
        DropArgs args;
        args.num_beams = p.at("M").get<std::size_t>();
        args.num_terminals = p.at("K").get<std::size_t>();
        args.mc_trials = p.at("mc_trials").get<std::size_t>();
        args.seed = p.at("seed").get<std::uint64_t>();
        args.threads = p.at("threads").get<unsigned>();
        args.format = p.at("format").get<std::string>();
        args.out = p.at("out").get<std::string>();
        return run_drop_prob(args);
    }
    if (manifest.command == "variance-check") {
        VarianceArgs args;
        args.model = p.at("model").get<std::string>();
        std::string m_list;
        for (const auto& m : p.at("M_list")) {
            if (!m_list.empty()) m_list += ',';
            m_list += std::to_string(m.get<std::size_t>());
        }
        args.m_list = m_list;
        args.trials = p.at("trials").get<std::size_t>();
        args.seed = p.at("seed").get<std::uint64_t>();
        args.spacing = p.at("spacing").get<double>();
        args.threads = p.at("threads").get<unsigned>();
        args.format = p.at("format").get<std::string>();
        args.out = p.at("out").get<std::string>();
        return run_variance_check(args);
    }
    throw UsageError("manifest names an unknown command '" + manifest.command + "'");
}

}  // namespace favprop::cli

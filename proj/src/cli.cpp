#include "diamond/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include <CLI11.hpp>

#include "diamond/analysis.hpp"
#include "diamond/avgpower.hpp"
#include "diamond/gdof.hpp"
#include "diamond/properties.hpp"
#include "diamond/report_io.hpp"

namespace diamond {

namespace {

std::string fmt(double x) { return format_real(x); }

std::string schedule_text(const Schedule& t) {
    return "(" + fmt(t.t1) + ", " + fmt(t.t2) + ", " + fmt(t.t3) + ", " + fmt(t.t4) + ")";
}

void print_scheme(std::ostream& out, const std::string& tag, const SchemeResult& s) {
    out << std::left << std::setw(18) << tag << fmt(s.rate) << "  t=" << schedule_text(s.schedule);
    if (const auto* b = std::get_if<BroadcastSplit>(&s.split)) {
        out << "  eta=" << fmt(b->eta) << " u=" << fmt(b->u) << " v=" << fmt(b->v);
    } else if (const auto* m = std::get_if<MacSplit>(&s.split)) {
        out << "  R1=" << fmt(m->R1) << " R2=" << fmt(m->R2);
    }
    if (!s.case_label.empty()) out << "  [" << s.case_label << "]";
    out << '\n';
}

void print_report(std::ostream& out, const RateReport& r) {
    auto line = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(18) << k << v << '\n'; };
    const auto& c = r.caps;
    line("gains", fmt(r.gains.g01) + " " + fmt(r.gains.g02) + " " + fmt(r.gains.g13) + " " + fmt(r.gains.g23));
    line("C01 C02 C13 C23", fmt(c.C01) + " " + fmt(c.C02) + " " + fmt(c.C13) + " " + fmt(c.C23));
    line("C012 C123 CMAC", fmt(c.C012) + " " + fmt(c.C123) + " " + fmt(c.CMAC));
    line("Delta", fmt(c.Delta) + " (" + to_string(classify_delta(c)) + ")");
    line("Gamma", fmt(c.Gamma) + " (" + to_string(classify_gamma(c)) + ")");
    line("GammaPrime", fmt(c.GammaPrime) + " (" + to_string(classify_gamma_prime(c)) + ")");
    line("delta", fmt(c.delta));
    line("region", "R" + std::to_string(r.region.index) + " " + r.region.label());
    print_scheme(out, "MDF", r.mdf);
    if (r.mdf_bc) print_scheme(out, "MDF-BC", *r.mdf_bc);
    if (r.mdf_mac) print_scheme(out, "MDF-MAC", *r.mdf_mac);
    line("scheme", to_string(r.achievable.scheme));
    line("achievable", fmt(r.achievable.rate));
    line("cut-set optimum", fmt(r.lp_optimum));
    line("upper bound", fmt(r.upper.value) + " " + to_string(r.upper.id));
    line("gap", fmt(r.measured_gap) + " (" + to_string(r.gap_symbol) + " = " + fmt(r.gap_formula_value) + ")");
    line("gap guarantee", fmt(r.gap_guarantee));
    line("certificate", r.certificate.passed ? "passed" : "FAILED");
    for (const auto& f : r.certificate.failures) line("", f);
}

int cmd_analyze(const ChannelGains& raw, bool db, bool json, std::ostream& out, std::ostream& err) {
    ChannelGains g = raw;
    if (db) {
        for (double* x : {&g.g01, &g.g02, &g.g13, &g.g23}) *x = std::pow(10.0, *x / 10.0);
    }
    try {
        g.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const RateReport r = analyze(g);
    if (json) {
        out << to_json(r).dump(2) << '\n';
    } else {
        print_report(out, r);
    }
    const auto problems = check_report(r);
    for (const auto& p : problems) err << "violation: " << p << '\n';
    return problems.empty() ? exit_ok : exit_violation;
}

void print_summary(std::ostream& out, const SweepSummary& s) {
    out << "channels    " << s.count << '\n';
    out << "max gap     " << fmt(s.max_gap) << '\n';
    out << "max delta   " << fmt(s.max_delta) << '\n';
    out << "violations  " << s.violations << '\n';
    out << "region  count  max_gap  max_gap_minus_guarantee\n";
    for (int i = 0; i < region_count; ++i) {
        out << "R" << std::left << std::setw(6) << (i + 1) << std::setw(7) << s.occupancy[i];
        if (s.occupancy[i] > 0) out << fmt(s.max_gap_by_region[i]) << "  " << fmt(s.max_excess_by_region[i]);
        out << '\n';
    }
    for (const auto& m : s.violation_messages) out << "violation: " << m << '\n';
}

int cmd_sweep(const SweepSpec& spec, const std::string& path, bool json, std::ostream& out, std::ostream& err) {
    if (spec.count < 1) {
        err << "error: --count must be at least 1\n";
        return exit_usage;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot write " << path << '\n';
        return exit_usage;
    }
    file << csv_header() << '\n';
    SweepSummary s;
    try {
        s = sweep(spec, [&](std::size_t, const RateReport& r) { file << csv_row(r) << '\n'; });
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    file.close();
    if (!file) {
        err << "error: failed writing " << path << '\n';
        return exit_usage;
    }
    if (json) {
        out << to_json(s).dump(2) << '\n';
    } else {
        print_summary(out, s);
    }
    return s.violations == 0 ? exit_ok : exit_violation;
}

int cmd_verify(const VerifyOptions& o, bool json, std::ostream& out) {
    const VerifyResult r = run_properties(o);
    if (json) {
        nlohmann::json j;
        j["passed"] = r.passed();
        j["max_delta"] = r.max_delta;
        j["rows"] = nlohmann::json::array();
        for (const auto& row : r.rows) {
            j["rows"].push_back({{"name", row.name},
                                 {"checked", row.checked},
                                 {"violations", row.violations},
                                 {"worst_margin", row.worst_margin},
                                 {"first_failure", row.first_failure}});
        }
        out << j.dump(2) << '\n';
    } else {
        out << std::left << std::setw(58) << "property" << std::setw(9) << "checked" << std::setw(11) << "violations"
            << "worst margin\n";
        for (const auto& row : r.rows) {
            out << std::setw(58) << row.name << std::setw(9) << row.checked << std::setw(11) << row.violations
                << fmt(row.worst_margin) << '\n';
            if (!row.first_failure.empty()) out << "  first failure: " << row.first_failure << '\n';
        }
        out << "max delta " << fmt(r.max_delta) << " (limit " << fmt(max_coherent_excess()) << ")\n";
        out << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
    return r.passed() ? exit_ok : exit_violation;
}

int cmd_gdof(const GdofExponents& a, double pmax, bool json, std::ostream& out, std::ostream& err) {
    GdofTable t;
    std::vector<GdofSample> rows;
    try {
        t = gdof_closed_forms(a);
        if (!(pmax >= 1e2)) throw std::invalid_argument("--pmax must be at least 100");
        std::vector<double> grid;
        for (double p = 1e2; p < pmax * (1 - 1e-12); p *= 10.0) grid.push_back(p);
        grid.push_back(pmax);
        rows = gdof_numeric(a, grid);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const std::string scheme = to_string(t.scheme) + std::to_string(t.scheme_branch);
    if (json) {
        nlohmann::json j;
        j["alphas"] = {a.a01, a.a02, a.a13, a.a23};
        j["up"] = t.up;
        j["mdf"] = t.mdf;
        j["mdf_bc"] = t.bc;
        j["mdf_mac"] = t.mac;
        j["delta_alpha"] = t.delta_alpha;
        j["mdf_optimal"] = t.mdf_optimal;
        j["upper"] = {{"index", t.upper_index}, {"value", t.upper}};
        j["achievable"] = {{"scheme", scheme}, {"value", t.achievable}};
        j["mdf_applicable"] = {{"index", t.mdf_branch}, {"value", t.mdf_value}};
        j["numeric"] = nlohmann::json::array();
        for (const auto& r : rows) {
            j["numeric"].push_back({{"P", r.P}, {"achievable", r.achievable_ratio}, {"upper", r.upper_ratio}, {"mdf", r.mdf_ratio}});
        }
        out << j.dump(2) << '\n';
        return exit_ok;
    }
    auto list = [&](const std::string& k, const auto& v) {
        out << std::left << std::setw(12) << k;
        for (double x : v) out << ' ' << fmt(x);
        out << '\n';
    };
    list("up1..4", t.up);
    list("MDF1..4", t.mdf);
    list("MDF-BC1,2", t.bc);
    list("MDF-MAC1,2", t.mac);
    out << "delta_alpha " << fmt(t.delta_alpha) << (t.mdf_optimal ? "  (degenerate: MDF reaches the bound)" : "") << '\n';
    out << "upper       up" << t.upper_index << " = " << fmt(t.upper) << '\n';
    out << "achievable  " << scheme << " = " << fmt(t.achievable) << '\n';
    out << "MDF         MDF" << t.mdf_branch << " = " << fmt(t.mdf_value) << '\n';
    out << "P  achievable/(0.5 log2 P)  upper/(0.5 log2 P)  MDF/(0.5 log2 P)\n";
    for (const auto& r : rows) {
        out << fmt(r.P) << "  " << fmt(r.achievable_ratio) << "  " << fmt(r.upper_ratio) << "  " << fmt(r.mdf_ratio) << '\n';
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Half-duplex diamond relay channel: rates, bounds and gap certificates", "diamond"};
    app.require_subcommand(1);

    ChannelGains gains;
    bool db = false;
    bool json = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Report rates, bounds and gap for one channel");
    analyze_cmd->add_option("--g01", gains.g01, "source to relay 1 gain")->required();
    analyze_cmd->add_option("--g02", gains.g02, "source to relay 2 gain")->required();
    analyze_cmd->add_option("--g13", gains.g13, "relay 1 to destination gain")->required();
    analyze_cmd->add_option("--g23", gains.g23, "relay 2 to destination gain")->required();
    analyze_cmd->add_flag("--db", db, "gains are given in dB, g = 10^(dB/10)");
    analyze_cmd->add_flag("--json", json, "structured output");

    SweepSpec spec;
    std::string path;
    long long count = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Analyze random channels and write a CSV");
    sweep_cmd->add_option("--count", count, "number of channels")->required();
    sweep_cmd->add_option("--seed", spec.seed, "random seed");
    sweep_cmd->add_option("--out", path, "CSV output path")->required();
    sweep_cmd->add_option("--gmin", spec.gain_min, "smallest gain")->capture_default_str();
    sweep_cmd->add_option("--gmax", spec.gain_max, "largest gain")->capture_default_str();
    sweep_cmd->add_option("--workers", spec.workers, "worker threads")->check(CLI::Range(1u, 256u));
    sweep_cmd->add_flag("--json", json, "structured summary");

    VerifyOptions vopt;
    long long vcount = static_cast<long long>(vopt.count);
    auto* verify_cmd = app.add_subcommand("verify", "Check every bound and inequality on random channels");
    verify_cmd->add_option("--count", vcount, "number of channels")->capture_default_str();
    verify_cmd->add_option("--seed", vopt.seed, "random seed");
    verify_cmd->add_option("--gmin", vopt.gain_min, "smallest gain");
    verify_cmd->add_option("--gmax", vopt.gain_max, "largest gain");
    verify_cmd->add_flag("--avg-power", vopt.avg_power, "also check the average-power slack on --count channels");
    verify_cmd->add_option("--resolution", vopt.schedule_resolution, "average-power grid resolution")
        ->check(CLI::Range(8, 64));
    verify_cmd->add_flag("--json", json, "structured output");
    verify_cmd->add_flag("--canary-flip-delta", vopt.flip_delta_sign)->group("");

    GdofExponents alphas;
    double pmax = 1e12;
    auto* gdof_cmd = app.add_subcommand("gdof", "Generalized degrees of freedom, closed form and numeric");
    gdof_cmd->add_option("--a01", alphas.a01)->required();
    gdof_cmd->add_option("--a02", alphas.a02)->required();
    gdof_cmd->add_option("--a13", alphas.a13)->required();
    gdof_cmd->add_option("--a23", alphas.a23)->required();
    gdof_cmd->add_option("--pmax", pmax, "largest P of the numeric grid")->capture_default_str();
    gdof_cmd->add_flag("--json", json, "structured output");

    std::vector<std::string> argv_store{"diamond"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*analyze_cmd) return cmd_analyze(gains, db, json, out, err);
    if (*sweep_cmd) {
        if (count < 1) {
            err << "error: --count must be at least 1\n";
            return exit_usage;
        }
        spec.count = static_cast<std::size_t>(count);
        return cmd_sweep(spec, path, json, out, err);
    }
    if (*verify_cmd) {
        if (vcount < 1) {
            err << "error: --count must be at least 1\n";
            return exit_usage;
        }
        vopt.count = static_cast<std::size_t>(vcount);
        vopt.avg_power_count = vopt.count;
        vopt.power_resolution = vopt.schedule_resolution;
        return cmd_verify(vopt, json, out);
    }
    if (*gdof_cmd) return cmd_gdof(alphas, pmax, json, out, err);
    return exit_usage;
}

}  // namespace diamond

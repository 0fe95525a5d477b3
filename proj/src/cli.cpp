#include "fconc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fconc/concentration_probe.hpp"
#include "fconc/errors.hpp"
#include "fconc/f_distribution.hpp"
#include "fconc/reference_table.hpp"
#include "fconc/report_io.hpp"
#include "fconc/verification_oracle.hpp"

namespace fconc::cli {

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<std::int64_t> d1_max;
    std::optional<std::int64_t> d2_max;
    std::optional<unsigned> workers;

    double kappa = 0.0;
    double kappa_from = 0.0;
    double kappa_to = 0.0;
    int steps = 0;
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    double a_max = 1000.0;
    double a_tail = 1e4;

    std::string profile = "quick";
    std::uint64_t seed = SuiteOptions{}.seed;
    double tolerance = 0.0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FileConfig resolve_config(const Options& o) {
    FileConfig fc;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw UsageError("cannot open config file '" + o.config_path + "'");
        try {
            fc = read_config(in, fc);
        } catch (const std::runtime_error& e) {
            throw UsageError(o.config_path + ": " + e.what());
        }
    }
    if (o.d1_max) fc.grid.d1_max = *o.d1_max;
    if (o.d2_max) fc.grid.d2_max = *o.d2_max;
    if (o.workers) fc.grid.workers = *o.workers;
    try {
        fc.eval.validate();
        fc.grid.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return fc;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += sep;
        s += v[i];
    }
    return s;
}

void emit_records(std::ostream& os, const std::string& format,
                  const std::vector<OutputRecord>& records) {
    if (format == "json") {
        os << to_json(records);
    } else {
        write_csv(os, records);
    }
}

// Writes `body` to --out when given, else to `out`.
void deliver(const Options& o, std::ostream& out, const std::string& body) {
    if (o.out_path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + o.out_path + "'");
    f << body;
    if (!f) throw std::runtime_error("write to '" + o.out_path + "' failed");
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err) {
    const FileConfig fc = resolve_config(o);
    const auto a_grid = default_a_grid(o.a_max, o.a_tail);
    std::vector<OutputRecord> records;
    std::ostringstream text;
    text << "kappa      inf_P(ours)  d1    d2    inf_P(ref)   d1    d2    |diff|    status\n";
    int mismatches = 0;
    for (std::size_t i = 0; i < kReferenceTable.size(); ++i) {
        const ReferenceRow& row = kReferenceTable[i];
        const ProbeResult r = infimum(Kappa(row.kappa), fc.grid, a_grid, fc.eval);
        const bool inconsistent = contradicts_kappa_monotonicity(kReferenceTable, i);
        std::vector<std::string> extra;
        if (inconsistent) extra.emplace_back(flag::paper_row_inconsistent);
        records.push_back(OutputRecord::from(r, extra));

        const double diff = std::abs(r.grid_min - row.value);
        const bool match = diff <= kReferenceTolerance && r.argmin_d1 == row.d1 &&
                           r.argmin_d2 == row.d2;
        std::string status = match ? "match" : "MISMATCH";
        if (inconsistent) {
            status = "reference row inconsistent with monotonicity in kappa";
        } else if (!match) {
            ++mismatches;
        }
        char line[256];
        std::snprintf(line, sizeof line, "%-10s %-12s %-5lld %-5lld %-12s %-5lld %-5lld %-9s %s\n",
                      format15(row.kappa).substr(0, 10).c_str(), fixed(r.grid_min, 6).c_str(),
                      static_cast<long long>(r.argmin_d1), static_cast<long long>(r.argmin_d2),
                      fixed(row.value, 6).c_str(), static_cast<long long>(row.d1),
                      static_cast<long long>(row.d2), sci(diff).c_str(), status.c_str());
        text << line;
    }

    if (o.format == "csv" || o.format == "json") {
        std::ostringstream body;
        emit_records(body, o.format, records);
        deliver(o, out, body.str());
    } else {
        deliver(o, out, text.str());
    }
    if (mismatches > 0) {
        err << "table: " << mismatches << " row(s) differ from the reference values\n";
        return kCheckFailed;
    }
    return kSuccess;
}

int cmd_inf(const Options& o, std::ostream& out, std::ostream& err) {
    if (!(o.kappa > 0.0) || !std::isfinite(o.kappa)) {
        throw UsageError("--kappa must be positive");
    }
    const FileConfig fc = resolve_config(o);
    const auto a_grid = default_a_grid(o.a_max, o.a_tail);
    const Kappa k(o.kappa);

    ProbeResult r;
    std::optional<ConjectureReport> conj;
    if (o.kappa > 1.0) {
        conj = conjecture_probe(k, fc.grid, a_grid, fc.eval);
        r = conj->probe;
    } else {
        r = infimum(k, fc.grid, a_grid, fc.eval);
    }
    const std::vector<OutputRecord> records{OutputRecord::from(r)};

    std::ostringstream body;
    if (o.format == "csv" || o.format == "json") {
        emit_records(body, o.format, records);
    } else {
        body << std::setprecision(15);
        body << "kappa              " << r.kappa << "\n"
             << "verdict            " << describe(r.exact) << "\n"
             << "grid               d1 <= " << r.grid.d1_max << ", 3 <= d2 <= " << r.grid.d2_max
             << "\n"
             << "grid minimum       " << r.grid_min << " at (d1=" << r.argmin_d1
             << ", d2=" << r.argmin_d2 << ")\n"
             << "limit-curve min    " << r.limit_min << " at a=" << r.limit_argmin_a << "\n"
             << "combined estimate  " << r.combined_inf_estimate << "\n";
        if (conj) body << "margin above 1/2   " << conj->margin << "\n";
        body << "flags              " << join(records.front().flags, ";") << "\n";
    }
    deliver(o, out, body.str());

    if (conj && !conj->holds()) {
        err << "!!! COUNTEREXAMPLE: a value <= 1/2 was found for kappa = " << o.kappa
            << ", contradicting the lower bound P >= 1/2 for kappa > 1\n";
        if (conj->grid_counterexample) {
            err << "!!!   grid cell d1=" << conj->grid_counterexample->d1
                << " d2=" << conj->grid_counterexample->d2 << " value "
                << std::setprecision(17) << conj->grid_counterexample->value << "\n";
        }
        if (conj->limit_counterexample_a) {
            err << "!!!   limit curve at a=" << *conj->limit_counterexample_a << "\n";
        }
        return kCheckFailed;
    }
    return kSuccess;
}

int cmd_prob(const Options& o, std::ostream& out, std::ostream&) {
    if (o.d2 <= 2) {
        throw UsageError("--d2 must exceed 2: the mean d2/(d2-2) does not exist for d2 <= 2");
    }
    if (o.d1 < 1) throw UsageError("--d1 must be at least 1");
    if (!(o.kappa > 0.0) || !std::isfinite(o.kappa)) throw UsageError("--kappa must be positive");
    const FileConfig fc = resolve_config(o);
    const FParams p(o.d1, o.d2);
    const ShapePair s(p);
    const Kappa k(o.kappa);
    const double q = threshold(s, k);
    const double prob = prob_leq_kappa_mean(s, k, fc.eval);

    std::ostringstream body;
    if (o.format == "json") {
        nlohmann::ordered_json j{{"d1", p.d1()},   {"d2", p.d2()}, {"kappa", o.kappa},
                                 {"a", s.a()},     {"b", s.b()},   {"threshold", q},
                                 {"mean", mean(p)}, {"probability", prob}};
        body << j.dump(2) << "\n";
    } else {
        body << std::setprecision(17) << "probability " << prob << "\n"
             << "threshold   " << q << "\n"
             << "shape       a=" << s.a() << " b=" << s.b() << "\n"
             << "mean        " << mean(p) << "\n";
    }
    deliver(o, out, body.str());
    return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.steps < 2) throw UsageError("--steps must be at least 2");
    if (!(o.kappa_from > 0.0) || !(o.kappa_to > o.kappa_from) || !std::isfinite(o.kappa_to)) {
        throw UsageError("kappa range must satisfy 0 < --kappa-from < --kappa-to");
    }
    const FileConfig fc = resolve_config(o);
    const auto a_grid = default_a_grid(o.a_max, o.a_tail);
    std::vector<OutputRecord> records;
    for (int i = 0; i < o.steps; ++i) {
        const double kv =
            i + 1 == o.steps ? o.kappa_to
                             : o.kappa_from + (o.kappa_to - o.kappa_from) * i / (o.steps - 1);
        records.push_back(OutputRecord::from(infimum(Kappa(kv), fc.grid, a_grid, fc.eval)));
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].inf_value < records[i - 1].inf_value) {
            err << "sweep: grid minimum decreased between kappa=" << records[i - 1].kappa
                << " and kappa=" << records[i].kappa << "; refusing to write output\n";
            return kCheckFailed;
        }
    }
    std::ostringstream body;
    emit_records(body, o.format == "json" ? "json" : "csv", records);
    deliver(o, out, body.str());
    return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const FileConfig fc = resolve_config(o);
    SuiteOptions so;
    so.profile = o.profile == "full" ? Profile::full : Profile::quick;
    so.seed = o.seed;
    so.tolerance_override = o.tolerance;
    const VerificationReport rep = run_verification(so, fc.eval);

    std::ostringstream body;
    if (o.format == "json") {
        body << to_json(rep);
    } else {
        body << "profile " << rep.profile << ", seed " << rep.seed << "\n";
        for (const auto& c : rep.checks) {
            char line[256];
            std::snprintf(line, sizeof line, "%-4s %-28s n=%-6lld max_residual=%-10s tol=%s",
                          c.observational ? "obs" : (c.passed ? "PASS" : "FAIL"), c.name.c_str(),
                          static_cast<long long>(c.samples), sci(c.max_residual).c_str(),
                          sci(c.tolerance).c_str());
            body << line;
            if (!c.detail.empty()) body << "  (" << c.detail << ")";
            body << "\n";
        }
        body << "overall " << (rep.overall() ? "PASS" : "FAIL") << "\n";
    }
    deliver(o, out, body.str());
    if (const CheckResult* f = rep.first_failure()) {
        err << "verify: check '" << f->name << "' failed";
        if (!f->detail.empty()) err << ": " << f->detail;
        err << "\n";
        return kCheckFailed;
    }
    return kSuccess;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"F-distribution concentration probe: P(X <= kappa E[X]) and its infimum"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--config", o.config_path, "key=value file overriding numerical defaults");
    app.add_option("--out", o.out_path, "write output to this file");
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--d1-max", o.d1_max, "grid cap for d1");
    app.add_option("--d2-max", o.d2_max, "grid cap for d2");
    app.add_option("--workers", o.workers, "scan threads (0 = all cores)");

    auto* table = app.add_subcommand("table", "reproduce the reference table of grid minima");
    auto* inf = app.add_subcommand("inf", "infimum report for one kappa");
    auto* prob = app.add_subcommand("prob", "P(X <= kappa E[X]) for one (d1, d2)");
    auto* sweep = app.add_subcommand("sweep", "infimum reports over a kappa range");
    auto* verify = app.add_subcommand("verify", "run the identity and monotonicity checks");

    for (auto* sub : {table, inf, sweep}) {
        sub->add_option("--a-max", o.a_max, "end of the dense a grid (step 1/2)");
        sub->add_option("--a-tail", o.a_tail, "end of the log-spaced a tail");
    }
    inf->add_option("--kappa", o.kappa, "multiplier on the mean")->required();
    prob->add_option("--d1", o.d1, "numerator degrees of freedom")->required();
    prob->add_option("--d2", o.d2, "denominator degrees of freedom (> 2)")->required();
    prob->add_option("--kappa", o.kappa, "multiplier on the mean")->required();
    sweep->add_option("--kappa-from", o.kappa_from)->required();
    sweep->add_option("--kappa-to", o.kappa_to)->required();
    sweep->add_option("--steps", o.steps)->required();
    verify->add_option("--profile", o.profile)->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", o.seed, "sampling seed");
    verify->add_option("--tolerance", o.tolerance, "override every residual tolerance");

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*table) return cmd_table(o, out, err);
        if (*inf) return cmd_inf(o, out, err);
        if (*prob) return cmd_prob(o, out, err);
        if (*sweep) return cmd_sweep(o, out, err);
        return cmd_verify(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << "\n";
        return kConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
}

}  // namespace fconc::cli

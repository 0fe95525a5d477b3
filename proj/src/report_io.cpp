#include "fconc/report_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fconc {

namespace flag {
bool is_known(std::string_view f) {
    static constexpr std::array known{paper_row_inconsistent, infimum_zero, infimum_half,
                                      limit_below_grid, argmin_at_cap};
    for (const auto k : known) {
        if (k == f) return true;
    }
    return false;
}
}  // namespace flag

std::string format15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

double round15(double v) { return std::strtod(format15(v).c_str(), nullptr); }

OutputRecord OutputRecord::from(const ProbeResult& r, std::vector<std::string> extra_flags) {
    OutputRecord rec;
    rec.kappa = round15(r.kappa);
    rec.inf_value = round15(r.grid_min);
    rec.d1 = r.argmin_d1;
    rec.d2 = r.argmin_d2;
    rec.limit_min = round15(r.limit_min);
    rec.limit_argmin_a = round15(r.limit_argmin_a);
    if (r.exact == ExactInfimum::zero_not_attained) rec.flags.emplace_back(flag::infimum_zero);
    if (r.exact == ExactInfimum::half_not_attained) rec.flags.emplace_back(flag::infimum_half);
    if (r.limit_argmin_a > 0.0 && r.limit_min < r.grid_min) {
        rec.flags.emplace_back(flag::limit_below_grid);
    }
    if (r.argmin_d1 == r.grid.d1_max || r.argmin_d2 == r.grid.d2_max) {
        rec.flags.emplace_back(flag::argmin_at_cap);
    }
    for (auto& f : extra_flags) rec.flags.push_back(std::move(f));
    return rec;
}

void write_csv(std::ostream& os, std::span<const OutputRecord> records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << format15(r.kappa) << ',' << format15(r.inf_value) << ',' << r.d1 << ',' << r.d2
           << ',' << format15(r.limit_min) << ',' << format15(r.limit_argmin_a) << ',';
        for (std::size_t i = 0; i < r.flags.size(); ++i) {
            if (i > 0) os << ';';
            os << r.flags[i];
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const char* field) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::runtime_error(std::string("invalid number for ") + field + ": '" + s + "'");
    }
    return v;
}

std::int64_t parse_int(const std::string& s, const char* field) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error(std::string("invalid integer for ") + field + ": '" + s + "'");
    }
    return v;
}

std::vector<std::string> parse_flags(const std::string& field) {
    std::vector<std::string> flags;
    if (field.empty()) return flags;
    for (auto& f : split(field, ';')) {
        if (!flag::is_known(f)) throw std::runtime_error("unknown flag '" + f + "'");
        flags.push_back(std::move(f));
    }
    return flags;
}

}  // namespace

std::vector<OutputRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw std::runtime_error("CSV: missing or unexpected header");
    }
    std::vector<OutputRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 7) throw std::runtime_error("CSV: expected 7 columns in '" + line + "'");
        OutputRecord r;
        r.kappa = parse_double(cols[0], "kappa");
        r.inf_value = parse_double(cols[1], "inf_value");
        r.d1 = parse_int(cols[2], "d1");
        r.d2 = parse_int(cols[3], "d2");
        r.limit_min = parse_double(cols[4], "limit_min");
        r.limit_argmin_a = parse_double(cols[5], "limit_argmin_a");
        r.flags = parse_flags(cols[6]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string to_json(std::span<const OutputRecord> records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        arr.push_back({{"kappa", r.kappa},
                       {"inf_value", r.inf_value},
                       {"d1", r.d1},
                       {"d2", r.d2},
                       {"limit_min", r.limit_min},
                       {"limit_argmin_a", r.limit_argmin_a},
                       {"flags", r.flags}});
    }
    return arr.dump(2) + "\n";
}

std::vector<OutputRecord> records_from_json(std::string_view text) {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::runtime_error("JSON: expected an array of records");
    std::vector<OutputRecord> out;
    for (const auto& j : arr) {
        OutputRecord r;
        r.kappa = j.at("kappa").get<double>();
        r.inf_value = j.at("inf_value").get<double>();
        r.d1 = j.at("d1").get<std::int64_t>();
        r.d2 = j.at("d2").get<std::int64_t>();
        r.limit_min = j.at("limit_min").get<double>();
        r.limit_argmin_a = j.at("limit_argmin_a").get<double>();
        for (const auto& f : j.at("flags")) {
            auto s = f.get<std::string>();
            if (!flag::is_known(s)) throw std::runtime_error("unknown flag '" + s + "'");
            r.flags.push_back(std::move(s));
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["profile"] = report.profile;
    j["seed"] = report.seed;
    j["overall"] = report.overall();
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"samples", c.samples},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed},
                          {"observational", c.observational},
                          {"detail", c.detail}});
    }
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

FileConfig read_config(std::istream& is, FileConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        try {
            if (key == "cf_tolerance") {
                base.eval.cf_tolerance = parse_double(value, "cf_tolerance");
            } else if (key == "cf_max_iter") {
                base.eval.cf_max_iter = parse_int(value, "cf_max_iter");
            } else if (key == "quad_tolerance") {
                base.eval.quad_tolerance = parse_double(value, "quad_tolerance");
            } else if (key == "quad_max_level") {
                base.eval.quad_max_level = static_cast<int>(parse_int(value, "quad_max_level"));
            } else if (key == "d1_max") {
                base.grid.d1_max = parse_int(value, "d1_max");
            } else if (key == "d2_max") {
                base.grid.d2_max = parse_int(value, "d2_max");
            } else if (key == "workers") {
                base.grid.workers = static_cast<unsigned>(parse_int(value, "workers"));
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

}  // namespace fconc

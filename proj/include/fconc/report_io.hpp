#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fconc/concentration_probe.hpp"
#include "fconc/config.hpp"
#include "fconc/verification_oracle.hpp"

namespace fconc {

/// Closed set of record flags.
namespace flag {
inline constexpr std::string_view paper_row_inconsistent = "paper-row-inconsistent";
inline constexpr std::string_view infimum_zero = "infimum-zero-not-attained";
inline constexpr std::string_view infimum_half = "infimum-half-not-attained";
inline constexpr std::string_view limit_below_grid = "limit-curve-below-grid";
inline constexpr std::string_view argmin_at_cap = "argmin-at-grid-cap";

bool is_known(std::string_view f);
}  // namespace flag

/// One row of machine-readable output. Real fields are stored rounded to
/// 15 significant digits, so emitting and re-parsing reproduces them exactly.
struct OutputRecord {
    double kappa = 0.0;
    double inf_value = 0.0;  // grid minimum
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    double limit_min = 0.0;
    double limit_argmin_a = 0.0;
    std::vector<std::string> flags;

    static OutputRecord from(const ProbeResult& r, std::vector<std::string> extra_flags = {});

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

/// Rounds to 15 significant digits.
double round15(double v);
/// "%.15g".
std::string format15(double v);

inline constexpr std::string_view kCsvHeader = "kappa,inf_value,d1,d2,limit_min,limit_argmin_a,flags";

/// Header plus one line per record, LF endings; flags joined with ';'.
void write_csv(std::ostream& os, std::span<const OutputRecord> records);
/// Throws std::runtime_error on a malformed header, row or flag.
std::vector<OutputRecord> read_csv(std::istream& is);

std::string to_json(std::span<const OutputRecord> records);
std::vector<OutputRecord> records_from_json(std::string_view text);

std::string to_json(const VerificationReport& report);

/// Optional `key = value` file overriding EvalConfig and grid defaults.
/// Blank lines and lines starting with '#' are ignored.
struct FileConfig {
    EvalConfig eval;
    GridSpec grid;
};

/// Applies the entries of `is` on top of `base`. Unknown keys and
/// unparsable values throw std::runtime_error naming the line.
FileConfig read_config(std::istream& is, FileConfig base = {});

}  // namespace fconc

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace disruptkit {

inline constexpr const char* kVersion = "0.1.0";

// Dense paper index assigned at graph build time; contiguous in [0, n_papers).
using PaperId = std::uint32_t;
inline constexpr PaperId kNoPaper = std::numeric_limits<PaperId>::max();

struct YearRange {
    int lo = 0;
    int hi = 0;
    bool contains(int y) const { return y >= lo && y <= hi; }
    bool operator==(const YearRange&) const = default;
};

// Whether a paper published in the focal paper's own year counts as subsequent.
enum class SubsequentRule { Geq, Gt };

enum class ScoreVariant { Raw, Standardized };

enum class Pivot { Disruption, Impact };

inline const char* to_string(SubsequentRule r) { return r == SubsequentRule::Geq ? "geq" : "gt"; }
inline const char* to_string(ScoreVariant v) { return v == ScoreVariant::Raw ? "raw" : "dz"; }
inline const char* to_string(Pivot p) { return p == Pivot::Disruption ? "disruption" : "impact"; }

// Undefined scores and correlations travel as quiet NaN.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
inline bool is_defined(double v) { return !std::isnan(v); }

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CacheFormatError : DataError {
    using DataError::DataError;
};

struct PrerequisiteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationError : DataError {
    using DataError::DataError;
};

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitMissingPrerequisite = 3;
inline constexpr int kExitDataError = 4;

}  // namespace disruptkit

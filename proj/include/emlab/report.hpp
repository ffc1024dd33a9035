#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "emlab/spectra.hpp"

namespace emlab {

// One named value inside a report section.  Doubles render with 17
// significant digits; non-finite doubles render as quoted strings so the
// output stays valid JSON.
struct ReportValue {
    enum class Kind { Int, Real, Text, Flag };
    Kind kind = Kind::Int;
    int64_t i = 0;
    double d = 0.0;
    std::string s;
    bool b = false;

    static ReportValue of_int(int64_t v);
    static ReportValue of_real(double v);
    static ReportValue of_text(std::string v);
    static ReportValue of_flag(bool v);
};

// A single verified statement: measured names the entry of the measured
// section the claim is judged against, bound is the threshold it was judged
// against, satisfied the outcome.  Claims marked not applicable are excluded
// from the verdict but stay visible in the output.
struct Claim {
    std::string name;
    std::string measured;
    double bound = 0.0;
    bool satisfied = false;
    bool applicable = true;
    std::string note;
};

// Verification record of one construction run: effective parameters, every
// measured quantity, and the claims judged on them.  The verdict is the
// conjunction of the applicable claims.  Rendering is deterministic: fixed
// key order, fixed float format, wall clock always last.
class Report {
public:
    void set_construction(std::string kind) { construction_ = std::move(kind); }
    void set_seed(uint64_t seed) { seed_ = seed; }
    void set_wall_clock(double sec) { wall_clock_sec_ = sec; }

    void param_int(const std::string& name, int64_t v);
    void param_real(const std::string& name, double v);
    void param_text(const std::string& name, const std::string& v);
    void param_flag(const std::string& name, bool v);
    void measured_int(const std::string& name, int64_t v);
    void measured_real(const std::string& name, double v);
    void measured_flag(const std::string& name, bool v);
    void tolerance(const std::string& name, double v);

    // measured_key must already exist in the measured section; a claim about
    // an unrecorded quantity is a bug, not a report.
    void add_claim(const std::string& name, const std::string& measured_key, double bound,
                   bool satisfied, const std::string& note = "");
    void add_claim_na(const std::string& name, const std::string& note);

    bool verdict() const;
    const std::vector<Claim>& claims() const { return claims_; }
    const Claim* find_claim(const std::string& name) const;
    bool has_measured(const std::string& name) const;

    std::string to_json() const;
    std::string to_csv() const;
    std::string render(const std::string& format) const; // "json" or "csv"

private:
    std::string construction_;
    std::vector<std::pair<std::string, ReportValue>> params_;
    std::vector<std::pair<std::string, ReportValue>> measured_;
    std::vector<std::pair<std::string, ReportValue>> tolerances_;
    std::vector<Claim> claims_;
    uint64_t seed_ = 0;
    double wall_clock_sec_ = 0.0;
};

// 17-significant-digit decimal rendering; "inf", "-inf", "nan" for
// non-finite values.
std::string real17(double v);

// Spectrum artifacts: one line per eigenvalue, descending, index first.
std::string spectrum_csv(const Spectrum& s);
std::string spectrum_json(const Spectrum& s);

// Drops the wall-clock field from a rendered report (JSON or CSV) so two
// runs can be compared byte for byte.
std::string strip_wall_clock(const std::string& rendered);

} // namespace emlab

#include "emlab/report.hpp"

#include <cmath>
#include <cstdio>

#include "emlab/errors.hpp"

namespace emlab {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

// JSON token for a double: bare number when finite, quoted text otherwise.
std::string json_real(double v) {
    if (std::isfinite(v)) return real17(v);
    return "\"" + real17(v) + "\"";
}

std::string json_value(const ReportValue& v) {
    switch (v.kind) {
    case ReportValue::Kind::Int: return std::to_string(v.i);
    case ReportValue::Kind::Real: return json_real(v.d);
    case ReportValue::Kind::Text: return "\"" + json_escape(v.s) + "\"";
    case ReportValue::Kind::Flag: return v.b ? "true" : "false";
    }
    return "null";
}

std::string csv_value(const ReportValue& v) {
    switch (v.kind) {
    case ReportValue::Kind::Int: return std::to_string(v.i);
    case ReportValue::Kind::Real: return real17(v.d);
    case ReportValue::Kind::Text: return v.s;
    case ReportValue::Kind::Flag: return v.b ? "true" : "false";
    }
    return "";
}

void json_section(std::string& out, const char* name,
                  const std::vector<std::pair<std::string, ReportValue>>& entries) {
    out += "  \"";
    out += name;
    out += "\": {";
    for (size_t k = 0; k < entries.size(); ++k) {
        if (k > 0) out += ",";
        out += "\n    \"" + json_escape(entries[k].first) + "\": " + json_value(entries[k].second);
    }
    if (!entries.empty()) out += "\n  ";
    out += "}";
}

void csv_section(std::string& out, const char* prefix,
                 const std::vector<std::pair<std::string, ReportValue>>& entries) {
    for (const auto& [name, v] : entries)
        out += std::string(prefix) + "." + name + "," + csv_value(v) + "\n";
}

} // namespace

ReportValue ReportValue::of_int(int64_t v) {
    ReportValue r;
    r.kind = Kind::Int;
    r.i = v;
    return r;
}

ReportValue ReportValue::of_real(double v) {
    ReportValue r;
    r.kind = Kind::Real;
    r.d = v;
    return r;
}

ReportValue ReportValue::of_text(std::string v) {
    ReportValue r;
    r.kind = Kind::Text;
    r.s = std::move(v);
    return r;
}

ReportValue ReportValue::of_flag(bool v) {
    ReportValue r;
    r.kind = Kind::Flag;
    r.b = v;
    return r;
}

std::string real17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Report::param_int(const std::string& name, int64_t v) {
    params_.emplace_back(name, ReportValue::of_int(v));
}
void Report::param_real(const std::string& name, double v) {
    params_.emplace_back(name, ReportValue::of_real(v));
}
void Report::param_text(const std::string& name, const std::string& v) {
    params_.emplace_back(name, ReportValue::of_text(v));
}
void Report::param_flag(const std::string& name, bool v) {
    params_.emplace_back(name, ReportValue::of_flag(v));
}
void Report::measured_int(const std::string& name, int64_t v) {
    measured_.emplace_back(name, ReportValue::of_int(v));
}
void Report::measured_real(const std::string& name, double v) {
    measured_.emplace_back(name, ReportValue::of_real(v));
}
void Report::measured_flag(const std::string& name, bool v) {
    measured_.emplace_back(name, ReportValue::of_flag(v));
}
void Report::tolerance(const std::string& name, double v) {
    tolerances_.emplace_back(name, ReportValue::of_real(v));
}

bool Report::has_measured(const std::string& name) const {
    for (const auto& [k, v] : measured_)
        if (k == name) return true;
    return false;
}

void Report::add_claim(const std::string& name, const std::string& measured_key, double bound,
                       bool satisfied, const std::string& note) {
    if (!has_measured(measured_key))
        throw Error("claim '" + name + "' references unmeasured quantity '" + measured_key + "'");
    claims_.push_back({name, measured_key, bound, satisfied, true, note});
}

void Report::add_claim_na(const std::string& name, const std::string& note) {
    claims_.push_back({name, "", 0.0, false, false, note});
}

bool Report::verdict() const {
    for (const auto& c : claims_)
        if (c.applicable && !c.satisfied) return false;
    return true;
}

const Claim* Report::find_claim(const std::string& name) const {
    for (const auto& c : claims_)
        if (c.name == name) return &c;
    return nullptr;
}

std::string Report::to_json() const {
    std::string out = "{\n";
    out += "  \"schema\": \"emlab/1\",\n";
    out += "  \"construction\": \"" + json_escape(construction_) + "\",\n";
    json_section(out, "params", params_);
    out += ",\n";
    json_section(out, "measured", measured_);
    out += ",\n";
    out += "  \"claims\": {";
    for (size_t k = 0; k < claims_.size(); ++k) {
        const Claim& c = claims_[k];
        if (k > 0) out += ",";
        out += "\n    \"" + json_escape(c.name) + "\": {\"measured\": \"" +
               json_escape(c.measured) + "\", \"bound\": " + json_real(c.bound) +
               ", \"satisfied\": " + (c.satisfied ? "true" : "false") +
               ", \"applicable\": " + (c.applicable ? "true" : "false") + ", \"note\": \"" +
               json_escape(c.note) + "\"}";
    }
    if (!claims_.empty()) out += "\n  ";
    out += "},\n";
    json_section(out, "tolerances", tolerances_);
    out += ",\n";
    out += "  \"seed\": " + std::to_string(seed_) + ",\n";
    out += "  \"verdict\": \"" + std::string(verdict() ? "PASS" : "FAIL") + "\",\n";
    out += "  \"wall_clock_sec\": " + json_real(wall_clock_sec_) + "\n";
    out += "}\n";
    return out;
}

std::string Report::to_csv() const {
    std::string out;
    out += "schema,emlab/1\n";
    out += "construction," + construction_ + "\n";
    csv_section(out, "param", params_);
    csv_section(out, "measured", measured_);
    for (const auto& c : claims_) {
        const std::string p = "claim." + c.name;
        out += p + ".measured," + c.measured + "\n";
        out += p + ".bound," + real17(c.bound) + "\n";
        out += p + ".satisfied," + (c.satisfied ? "true" : "false") + "\n";
        out += p + ".applicable," + (c.applicable ? "true" : "false") + "\n";
        if (!c.note.empty()) out += p + ".note," + c.note + "\n";
    }
    csv_section(out, "tolerance", tolerances_);
    out += "seed," + std::to_string(seed_) + "\n";
    out += std::string("verdict,") + (verdict() ? "PASS" : "FAIL") + "\n";
    out += "wall_clock_sec," + real17(wall_clock_sec_) + "\n";
    return out;
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json();
    if (format == "csv") return to_csv();
    throw DomainError("unknown report format '" + format + "'");
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "index,value\n";
    for (size_t k = 0; k < s.values.size(); ++k)
        out += std::to_string(k) + "," + real17(s.values[k]) + "\n";
    return out;
}

std::string spectrum_json(const Spectrum& s) {
    std::string out = "{\n  \"schema\": \"emlab/1\",\n  \"values\": [";
    for (size_t k = 0; k < s.values.size(); ++k) {
        if (k > 0) out += ", ";
        out += json_real(s.values[k]);
    }
    out += "]\n}\n";
    return out;
}

std::string strip_wall_clock(const std::string& rendered) {
    const std::string json_key = ",\n  \"wall_clock_sec\":";
    size_t pos = rendered.rfind(json_key);
    if (pos != std::string::npos) return rendered.substr(0, pos) + "\n}\n";
    const std::string csv_key = "\nwall_clock_sec,";
    pos = rendered.rfind(csv_key);
    if (pos != std::string::npos) return rendered.substr(0, pos + 1);
    return rendered;
}

} // namespace emlab

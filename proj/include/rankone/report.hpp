#pragma once

// Structured experiment output: a fixed-schema CSV (17 significant digits)
// plus a JSON summary with per-criterion pass/fail.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rankone {

inline std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Criterion {
    std::string name;
    double value = 0;
    double threshold = 0;
    std::string cmp = "<=";  // "<=", ">=", ">"
    bool pass = false;
};

struct TrendFit {
    std::string label;  // e.g. "value^2 ~ t (derived expectation)"
    double slope = 0;
    double correlation = 0;
};

struct ReportRow {
    std::string label;  // optional leading text cell
    std::vector<double> vals;
};

struct CocycleReport {
    std::string experiment;
    std::string group;
    int n = 0;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;
    std::vector<Criterion> criteria;
    std::vector<TrendFit> fits;
    std::vector<std::string> notes;
    double runtime_seconds = 0;
    nlohmann::json config = nlohmann::json::object();

    void add_row(std::vector<double> vals) { rows.push_back({"", std::move(vals)}); }
    void add_row(std::string label, std::vector<double> vals) {
        rows.push_back({std::move(label), std::move(vals)});
    }

    Criterion& check(const std::string& name, double value, double threshold, const std::string& cmp) {
        bool ok = cmp == "<="   ? value <= threshold
                  : cmp == ">=" ? value >= threshold
                  : cmp == ">"  ? value > threshold
                  : cmp == "<"  ? value < threshold
                                : throw std::invalid_argument("Criterion: bad comparator " + cmp);
        criteria.push_back({name, value, threshold, cmp, ok});
        return criteria.back();
    }

    bool pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }

    std::string csv() const {
        std::string out;
        bool labeled = !rows.empty() && !rows.front().label.empty();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& r : rows) {
            std::string line;
            if (labeled) line += r.label;
            for (std::size_t i = 0; i < r.vals.size(); ++i) {
                if (i || labeled) line += ',';
                line += format17(r.vals[i]);
            }
            out += line;
            out += '\n';
        }
        return out;
    }

    nlohmann::json summary() const {
        nlohmann::json j;
        j["experiment"] = experiment;
        j["group"] = group;
        j["n"] = n;
        j["config"] = config;
        j["pass"] = pass();
        j["runtime_seconds"] = runtime_seconds;
        j["criteria"] = nlohmann::json::array();
        for (const auto& c : criteria)
            j["criteria"].push_back({{"name", c.name},
                                     {"value", c.value},
                                     {"threshold", c.threshold},
                                     {"cmp", c.cmp},
                                     {"pass", c.pass}});
        if (!fits.empty()) {
            j["fits"] = nlohmann::json::array();
            for (const auto& f : fits)
                j["fits"].push_back({{"label", f.label}, {"slope", f.slope}, {"correlation", f.correlation}});
        }
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

/// Least-squares fit value ~ slope * g(x) through the origin plus the Pearson
/// correlation between value and g(x).
inline TrendFit fit_trend(const std::string& label, const std::vector<double>& gx,
                          const std::vector<double>& value) {
    TrendFit f;
    f.label = label;
    double sgg = 0, sgv = 0;
    double mg = 0, mv = 0;
    const std::size_t n = gx.size();
    for (std::size_t i = 0; i < n; ++i) {
        sgg += gx[i] * gx[i];
        sgv += gx[i] * value[i];
        mg += gx[i];
        mv += value[i];
    }
    f.slope = (sgg > 0) ? sgv / sgg : 0.0;
    if (n >= 2) {
        mg /= double(n);
        mv /= double(n);
        double cgv = 0, cgg = 0, cvv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cgv += (gx[i] - mg) * (value[i] - mv);
            cgg += (gx[i] - mg) * (gx[i] - mg);
            cvv += (value[i] - mv) * (value[i] - mv);
        }
        f.correlation = (cgg > 0 && cvv > 0) ? cgv / std::sqrt(cgg * cvv) : 0.0;
    }
    return f;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

}  // namespace rankone

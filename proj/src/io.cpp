#include "mixprof/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace mixprof {

namespace {

using nlohmann::json;

// RFC-4180 quoting: wrap when the field contains a comma, quote or newline.
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

json record_json(const RunRecord& record) {
    json h;
    h["command"] = record.command;
    h["build_id"] = record.build_id;
    h["mode"] = record.mode;
    if (record.seed) h["seed"] = *record.seed;
    json params = json::object();
    for (const auto& [k, v] : record.params) params[k] = v;
    h["params"] = params;
    return h;
}

std::string record_comment_lines(const RunRecord& record) {
    std::string out;
    out += "# command=" + record.command + "\n";
    out += "# build_id=" + record.build_id + "\n";
    out += "# mode=" + record.mode + "\n";
    if (record.seed) out += "# seed=" + std::to_string(*record.seed) + "\n";
    for (const auto& [k, v] : record.params) out += "# " + k + "=" + v + "\n";
    return out;
}

}  // namespace

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string profile_table_csv(const RunRecord& record, const std::vector<ProfilePoint>& rows) {
    std::string out = record_comment_lines(record);
    out += "c,t,exact_tv,main_term,error_term,limit_value,gap\n";
    for (const ProfilePoint& p : rows) {
        out += csv_quote(format_full(p.c)) + "," + std::to_string(p.t) + "," +
               csv_quote(format_full(p.exact_tv)) + "," + csv_quote(format_full(p.main_term)) +
               "," + csv_quote(format_full(p.error_term)) + "," +
               csv_quote(format_full(p.limit_value)) + "," + csv_quote(format_full(p.gap())) +
               "\n";
    }
    return out;
}

std::string profile_table_json(const RunRecord& record, const std::vector<ProfilePoint>& rows) {
    json doc;
    doc["header"] = record_json(record);
    doc["rows"] = json::array();
    for (const ProfilePoint& p : rows) {
        json r;
        r["c"] = p.c;
        r["t"] = p.t;
        r["exact_tv"] = p.exact_tv;
        r["main_term"] = p.main_term;
        r["error_term"] = p.error_term;
        r["limit_value"] = p.limit_value;
        r["gap"] = p.gap();
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::string histogram_csv(const RunRecord& record, const Histogram& hist,
                          const std::string& footer) {
    std::string out = record_comment_lines(record);
    out += "# rng=" + std::string(kRngAlgorithm) + "\n";
    out += "value,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(hist.counts[i]) + "\n";
    if (!footer.empty()) out += "# " + footer + "\n";
    return out;
}

std::string histogram_json(const RunRecord& record, const Histogram& hist,
                           const std::string& footer) {
    json doc;
    doc["header"] = record_json(record);
    doc["header"]["rng"] = kRngAlgorithm;
    doc["counts"] = hist.counts;
    doc["total"] = hist.total;
    if (!footer.empty()) doc["note"] = footer;
    return doc.dump(2) + "\n";
}

std::string verification_report_json(const std::string& suite,
                                     const std::vector<CheckResult>& results) {
    json doc;
    doc["suite"] = suite;
    doc["results"] = json::array();
    int failures = 0;
    for (const CheckResult& r : results) {
        json row;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        doc["results"].push_back(std::move(row));
        if (!r.pass) ++failures;
    }
    doc["failures"] = failures;
    return doc.dump(2) + "\n";
}

}  // namespace mixprof

#ifndef CONGPART_REPORT_HPP
#define CONGPART_REPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "congpart/verifier.hpp"

/* Rendering of verifier results in the three interchange formats. Structured
 * records keep a fixed field order and print every exact value as a decimal
 * string ("num/den" for rationals), so output is byte-stable and re-parses
 * losslessly. The wall-clock duration is always the last element, so
 * byte-comparisons can drop it. */
namespace congpart::report {

using ordered_json = nlohmann::ordered_json;

inline const char* classification_name(verifier::Classification c) {
    return c == verifier::Classification::known ? "known" : "novel";
}

inline const char* kind_name(verifier::Kind k) {
    return k == verifier::Kind::count_certified ? "count-certified" : "paper-faithful";
}

inline ordered_json params_json(const verifier::CaseParams& p) {
    ordered_json out = ordered_json::object();
    if (p.parts) {
        ordered_json arr = ordered_json::array();
        for (const auto& a : p.parts->parts())
            arr.push_back(a.get_str());
        out["parts"] = arr;
    }
    auto put = [&out](const char* name, const std::optional<Int>& v) {
        if (v)
            out[name] = v->get_str();
    };
    put("d", p.d);
    put("d1", p.d1);
    put("d2", p.d2);
    put("p", p.p);
    put("k", p.k);
    put("n", p.n);
    put("n0", p.n0);
    put("N", p.N);
    put("j", p.j);
    return out;
}

inline ordered_json record_json(const verifier::DiscrepancyRecord& r) {
    ordered_json out;
    out["identity"] = r.identity;
    out["params"] = params_json(r.params);
    out["formula"] = rat_str(r.formula);
    out["oracle"] = r.oracle.get_str();
    out["classification"] = classification_name(r.classification);
    return out;
}

inline std::string record_line(const verifier::DiscrepancyRecord& r) {
    return "discrepancy identity=" + r.identity + " " + r.params.key() +
           " formula=" + rat_str(r.formula) + " oracle=" + r.oracle.get_str() +
           " class=" + classification_name(r.classification);
}

inline std::string join_longs(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string join_strings(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i];
    }
    return s;
}

inline ordered_json config_json(const verifier::SweepConfig& c) {
    ordered_json out;
    out["r_min"] = c.r_min;
    out["r_max"] = c.r_max;
    out["max_part"] = c.max_part;
    out["strict_increase"] = c.strict_increase;
    out["d_values"] = c.d_values;
    out["n_max"] = c.n_max;
    out["j_max"] = c.j_max;
    out["k_values"] = c.k_values;
    out["p_values"] = c.p_values;
    out["identities"] = c.identities;
    out["threads"] = c.threads;
    out["random_cases"] = c.random_cases;
    out["seed"] = c.seed;
    return out;
}

inline ordered_json report_json(const verifier::SweepReport& r) {
    ordered_json out;
    out["config"] = config_json(r.config);
    out["cases"] = r.totals.cases;
    out["matches"] = r.totals.matches;
    out["discrepancies"] = r.totals.cases - r.totals.matches;
    out["known"] = r.totals.known;
    out["novel"] = r.totals.novel;
    ordered_json by = ordered_json::object();
    for (const auto& [name, count] : r.totals.by_identity)
        by[name] = count;
    out["by_identity"] = by;
    out["outcome"] = verifier::outcome_name(r.outcome);
    ordered_json recs = ordered_json::array();
    for (const auto& rec : r.records)
        recs.push_back(record_json(rec));
    out["records"] = recs;
    out["duration_ms"] = r.duration_ms;
    return out;
}

inline std::vector<std::string> report_lines(const verifier::SweepReport& r) {
    const auto& c = r.config;
    std::vector<std::string> lines;
    lines.push_back("config r=" + std::to_string(c.r_min) + ".." + std::to_string(c.r_max) +
                    " max-part=" + std::to_string(c.max_part) +
                    " strict=" + (c.strict_increase ? "1" : "0") + " d=" + join_longs(c.d_values) +
                    " n-max=" + std::to_string(c.n_max) +
                    " j-max=" + (c.j_max < 0 ? "n" : std::to_string(c.j_max)) +
                    " k=" + join_longs(c.k_values) + " p=" + join_longs(c.p_values) +
                    " threads=" + std::to_string(c.threads) +
                    (c.random_cases ? " random=" + std::to_string(c.random_cases) +
                                          " seed=" + std::to_string(c.seed)
                                    : ""));
    lines.push_back("config identities=" + join_strings(c.identities));
    lines.push_back("cases " + std::to_string(r.totals.cases));
    lines.push_back("matches " + std::to_string(r.totals.matches));
    lines.push_back("discrepancies " + std::to_string(r.totals.cases - r.totals.matches));
    lines.push_back("known " + std::to_string(r.totals.known));
    lines.push_back("novel " + std::to_string(r.totals.novel));
    std::string by;
    for (const auto& [name, count] : r.totals.by_identity)
        by += (by.empty() ? "" : " ") + name + "=" + std::to_string(count);
    if (!by.empty())
        lines.push_back("by-identity " + by);
    lines.push_back(std::string("outcome ") + verifier::outcome_name(r.outcome));
    for (const auto& rec : r.records)
        lines.push_back(record_line(rec));
    lines.push_back("duration-ms " + std::to_string(r.duration_ms));
    return lines;
}

inline std::string report_csv(const verifier::SweepReport& r) {
    std::string out = "identity,params,formula,oracle,classification\n";
    for (const auto& rec : r.records)
        out += rec.identity + ",\"" + rec.params.key() + "\"," + rat_str(rec.formula) + "," +
               rec.oracle.get_str() + "," + classification_name(rec.classification) + "\n";
    return out;
}

inline ordered_json check_json(const verifier::CheckResult& res) {
    ordered_json out;
    out["command"] = "verify";
    out["identity"] = res.identity;
    out["kind"] = kind_name(res.kind);
    out["params"] = params_json(res.params);
    out["formula"] = rat_str(res.formula);
    out["oracle"] = res.oracle.get_str();
    out["match"] = res.match;
    if (res.record)
        out["classification"] = classification_name(res.record->classification);
    return out;
}

inline std::vector<std::string> check_lines(const verifier::CheckResult& res) {
    std::vector<std::string> lines;
    lines.push_back("identity " + res.identity);
    lines.push_back(std::string("kind ") + kind_name(res.kind));
    std::string key = res.params.key();
    if (!key.empty())
        lines.push_back("params " + key);
    lines.push_back("formula " + rat_str(res.formula));
    lines.push_back("oracle " + res.oracle.get_str());
    lines.push_back(std::string("match ") + (res.match ? "yes" : "no"));
    if (res.record)
        lines.push_back(std::string("classification ") +
                        classification_name(res.record->classification));
    return lines;
}

inline ordered_json validity_json(const verifier::ValidityTable& t) {
    ordered_json out;
    out["command"] = "verify";
    out["validity"] = ordered_json::object();
    out["validity"]["parts"] = ordered_json::array();
    for (const auto& a : t.a.parts())
        out["validity"]["parts"].push_back(a.get_str());
    out["validity"]["d"] = t.d.value().get_str();
    ordered_json cells = ordered_json::array();
    for (const auto& c : t.cells) {
        ordered_json cell;
        cell["n"] = c.n.get_str();
        cell["j"] = c.j.get_str();
        cell["formula"] = rat_str(c.formula);
        cell["oracle"] = c.oracle.get_str();
        Rat gap = c.formula - Rat(c.oracle);
        cell["status"] = gap == 0 ? "agree" : "overcount";
        if (gap != 0)
            cell["delta"] = rat_str(gap);
        cells.push_back(cell);
    }
    out["validity"]["cells"] = cells;
    return out;
}

inline std::vector<std::string> validity_lines(const verifier::ValidityTable& t) {
    std::vector<std::string> lines;
    lines.push_back("validity parts=" + t.a.str() + " d=" + t.d.value().get_str());
    for (const auto& c : t.cells) {
        Rat gap = c.formula - Rat(c.oracle);
        std::string s = "n=" + c.n.get_str() + " j=" + c.j.get_str() +
                        " formula=" + rat_str(c.formula) + " oracle=" + c.oracle.get_str();
        s += gap == 0 ? " agree" : " overcount delta=" + rat_str(gap);
        lines.push_back(s);
    }
    return lines;
}

}  // namespace congpart::report

#endif

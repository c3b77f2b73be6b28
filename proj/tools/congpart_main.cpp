/* congpart - exact congruence-restricted partition counts, quasi-polynomial
 * closed forms, stable flag-cohomology dimensions, and the cross-verification
 * sweeps. All numeric I/O is decimal; structured-record mode emits one JSON
 * line with a fixed field order and exact values as strings. */

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "congpart/closed_forms.hpp"
#include "congpart/exact.hpp"
#include "congpart/flag_cohomology.hpp"
#include "congpart/oracle.hpp"
#include "congpart/part_seq.hpp"
#include "congpart/report.hpp"
#include "congpart/verifier.hpp"

namespace {

using namespace congpart;
using report::ordered_json;

enum class Format { human, record, csv };

Format parse_format(const std::string& name) {
    if (name == "human" || name == "human-table")
        return Format::human;
    if (name == "record" || name == "structured-record")
        return Format::record;
    if (name == "csv" || name == "comma-separated")
        return Format::csv;
    throw domain_error("unknown format '" + name + "' (human | record | csv)");
}

Int parse_int(const std::string& text, const char* what) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw domain_error(std::string(what) + ": not a decimal integer: '" + text + "'");
    }
}

std::vector<Int> parse_int_list(const std::string& text, const char* what) {
    std::vector<Int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(parse_int(item, what));
    if (out.empty())
        throw domain_error(std::string(what) + ": empty list");
    return out;
}

std::vector<long> parse_long_list(const std::string& text, const char* what) {
    std::vector<long> out;
    for (const Int& v : parse_int_list(text, what)) {
        if (!v.fits_slong_p())
            throw domain_error(std::string(what) + ": value out of range");
        out.push_back(v.get_si());
    }
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

struct Sink {
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.emplace(path);
            if (!*file)
                throw domain_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file ? *file : std::cout; }
    std::optional<std::ofstream> file;
};

ordered_json parts_json(const PartSeq& a) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : a.parts())
        arr.push_back(v.get_str());
    return arr;
}

void emit_lines(std::ostream& os, const std::vector<std::string>& lines) {
    for (const auto& l : lines)
        os << l << "\n";
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void load_sweep_config(const std::string& path, verifier::SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw domain_error("config line without '=': " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "r_min")
            cfg.r_min = std::stoi(value);
        else if (key == "r_max")
            cfg.r_max = std::stoi(value);
        else if (key == "max_part")
            cfg.max_part = std::stol(value);
        else if (key == "strict")
            cfg.strict_increase = value == "1" || value == "true" || value == "yes";
        else if (key == "d_values")
            cfg.d_values = parse_long_list(value, "d_values");
        else if (key == "n_max")
            cfg.n_max = std::stol(value);
        else if (key == "j_max")
            cfg.j_max = std::stol(value);
        else if (key == "k_values")
            cfg.k_values = parse_long_list(value, "k_values");
        else if (key == "p_values")
            cfg.p_values = parse_long_list(value, "p_values");
        else if (key == "identities")
            cfg.identities = split_names(value);
        else if (key == "threads")
            cfg.threads = std::stoi(value);
        else if (key == "random_cases")
            cfg.random_cases = std::stoull(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else
            throw domain_error("unknown config key: " + key);
    }
}

// ---- count -------------------------------------------------------------

struct CountArgs {
    std::string parts, d, n;
    std::string method = "oracle";
};

int run_count(const CountArgs& args, Format fmt, Sink& sink) {
    PartSeq a = PartSeq(parse_int_list(args.parts, "--parts")).sorted();
    Modulus d(parse_int(args.d, "--d"));
    Int n = parse_int(args.n, "--n");
    if (n < 0)
        throw domain_error("count: n must be >= 0");
    auto value_of = [&](const std::string& method) -> Int {
        if (method == "oracle")
            return oracle::congruent_count(a, d, n);
        if (method == "closed")
            return a.size() >= 2 ? closed_forms::congruent_closed(a, d, n)
                                 : oracle::congruent_count(a, d, n);
        if (method == "decomposition")
            return closed_forms::congruent_by_decomposition(a, d, n);
        throw domain_error("count: unknown method '" + method + "'");
    };
    std::ostream& os = sink.stream();
    if (args.method != "all") {
        Int v = value_of(args.method);
        if (fmt == Format::record) {
            ordered_json out;
            out["command"] = "count";
            out["parts"] = parts_json(a);
            out["d"] = d.value().get_str();
            out["n"] = n.get_str();
            out["method"] = args.method;
            out["value"] = v.get_str();
            os << out.dump() << "\n";
        } else if (fmt == Format::csv) {
            os << "method,value\n" << args.method << "," << v.get_str() << "\n";
        } else {
            os << v.get_str() << "\n";
        }
        return 0;
    }
    Int v_oracle = value_of("oracle");
    Int v_closed = value_of("closed");
    Int v_decomp = value_of("decomposition");
    const bool agree = v_oracle == v_closed && v_closed == v_decomp;
    if (fmt == Format::record) {
        ordered_json out;
        out["command"] = "count";
        out["parts"] = parts_json(a);
        out["d"] = d.value().get_str();
        out["n"] = n.get_str();
        out["method"] = "all";
        out["oracle"] = v_oracle.get_str();
        out["closed"] = v_closed.get_str();
        out["decomposition"] = v_decomp.get_str();
        out["agree"] = agree;
        os << out.dump() << "\n";
    } else if (fmt == Format::csv) {
        os << "method,value\n";
        os << "oracle," << v_oracle.get_str() << "\n";
        os << "closed," << v_closed.get_str() << "\n";
        os << "decomposition," << v_decomp.get_str() << "\n";
        os << "agree," << (agree ? "yes" : "no") << "\n";
    } else {
        os << "oracle         " << v_oracle.get_str() << "\n";
        os << "closed         " << v_closed.get_str() << "\n";
        os << "decomposition  " << v_decomp.get_str() << "\n";
        os << "agree          " << (agree ? "yes" : "no") << "\n";
    }
    return agree ? 0 : 3;
}

// ---- polypart ----------------------------------------------------------

struct PolypartArgs {
    std::string parts, d, n;
    bool plain = false;
    bool unreduced = false;
};

int run_polypart(const PolypartArgs& args, Format fmt, Sink& sink) {
    PartSeq a = PartSeq(parse_int_list(args.parts, "--parts")).sorted();
    Modulus d(parse_int(args.d, "--d"));
    Int n = parse_int(args.n, "--n");
    Rat value = args.plain ? closed_forms::polynomial_part(a, n)
                           : closed_forms::congruent_poly_part(a, d, n);
    std::optional<std::string> raw;
    if (args.unreduced) {
        auto [num, den] = args.plain ? closed_forms::polynomial_part_unreduced(a, n)
                                     : closed_forms::congruent_poly_part_unreduced(a, d, n);
        raw = num.get_str() + "/" + den.get_str();
    }
    std::ostream& os = sink.stream();
    if (fmt == Format::record) {
        ordered_json out;
        out["command"] = "polypart";
        out["parts"] = parts_json(a);
        out["d"] = d.value().get_str();
        out["n"] = n.get_str();
        out["plain"] = args.plain;
        out["value"] = rat_str(value);
        if (raw)
            out["unreduced"] = *raw;
        os << out.dump() << "\n";
    } else if (fmt == Format::csv) {
        os << "field,value\nvalue," << rat_str(value) << "\n";
        if (raw)
            os << "unreduced," << *raw << "\n";
    } else {
        os << rat_str(value) << "\n";
        if (raw)
            os << "unreduced " << *raw << "\n";
    }
    return 0;
}

// ---- cohomology ----------------------------------------------------------

struct CohomArgs {
    std::string p, n;
    std::string mode = "profile";
    std::string method = "enumeration";
};

int run_cohomology(const CohomArgs& args, Format fmt, Sink& sink) {
    flag::CharPrime p(parse_int(args.p, "--p"));
    Int n = parse_int(args.n, "--n");
    flag::Method method;
    if (args.method == "enumeration")
        method = flag::Method::enumeration;
    else if (args.method == "closed-form" || args.method == "closed")
        method = flag::Method::closed_form;
    else
        throw domain_error("cohomology: unknown method '" + args.method + "'");
    std::ostream& os = sink.stream();

    if (args.mode == "total") {
        Int total = flag::h_total(p, n, method);
        if (fmt == Format::record) {
            ordered_json out;
            out["command"] = "cohomology";
            out["p"] = p.value().get_str();
            out["n"] = n.get_str();
            out["mode"] = "total";
            out["method"] = flag::method_name(method);
            out["value"] = total.get_str();
            os << out.dump() << "\n";
        } else if (fmt == Format::csv) {
            os << "field,value\ntotal," << total.get_str() << "\n";
        } else {
            os << total.get_str() << "\n";
        }
        return 0;
    }
    if (args.mode == "poincare") {
        auto coeffs = flag::poincare_polynomial(p, n);
        std::string poly = flag::poincare_str(coeffs);
        if (fmt == Format::record) {
            ordered_json out;
            out["command"] = "cohomology";
            out["p"] = p.value().get_str();
            out["n"] = n.get_str();
            out["mode"] = "poincare";
            out["method"] = "enumeration";
            out["poincare"] = poly;
            ordered_json cj = ordered_json::array();
            for (const auto& c : coeffs)
                cj.push_back(c.get_str());
            out["coeffs"] = cj;
            os << out.dump() << "\n";
        } else if (fmt == Format::csv) {
            os << "j,coeff\n";
            for (std::size_t j = 0; j < coeffs.size(); ++j)
                os << j << "," << coeffs[j].get_str() << "\n";
        } else {
            os << poly << "\n";
        }
        return 0;
    }
    if (args.mode != "profile")
        throw domain_error("cohomology: unknown mode '" + args.mode + "'");
    flag::CohomProfile prof = flag::stable_profile(p, n, method);
    Int total = 0;
    for (const auto& [j, v] : prof.h)
        total += v;
    if (fmt == Format::record) {
        ordered_json out;
        out["command"] = "cohomology";
        out["p"] = prof.p.get_str();
        out["n"] = prof.n.get_str();
        out["mode"] = "profile";
        out["method"] = flag::method_name(prof.method);
        out["k"] = prof.k;
        ordered_json h = ordered_json::object();
        for (const auto& [j, v] : prof.h)
            h[j.get_str()] = v.get_str();
        out["h"] = h;
        out["total"] = total.get_str();
        if (!prof.note.empty())
            out["note"] = prof.note;
        os << out.dump() << "\n";
    } else if (fmt == Format::csv) {
        os << "j,h\n";
        for (const auto& [j, v] : prof.h)
            os << j.get_str() << "," << v.get_str() << "\n";
    } else {
        os << "p       " << prof.p.get_str() << "\n";
        os << "n       " << prof.n.get_str() << "\n";
        os << "k       " << prof.k << "\n";
        os << "method  " << flag::method_name(prof.method) << "\n";
        for (const auto& [j, v] : prof.h)
            os << "h[" << j.get_str() << "]  " << v.get_str() << "\n";
        os << "total   " << total.get_str() << "\n";
        if (!prof.note.empty())
            os << "note    " << prof.note << "\n";
    }
    return 0;
}

// ---- series --------------------------------------------------------------

struct SeriesArgs {
    std::string parts, d, N;
};

int run_series(const SeriesArgs& args, Format fmt, Sink& sink) {
    PartSeq a = PartSeq(parse_int_list(args.parts, "--parts")).sorted();
    Modulus d(parse_int(args.d, "--d"));
    Int N = parse_int(args.N, "--N");
    auto coeffs = oracle::series_coeffs(a, d, N);
    std::ostream& os = sink.stream();
    if (fmt == Format::record) {
        ordered_json out;
        out["command"] = "series";
        out["parts"] = parts_json(a);
        out["d"] = d.value().get_str();
        out["N"] = N.get_str();
        ordered_json cj = ordered_json::array();
        for (const auto& c : coeffs)
            cj.push_back(c.get_str());
        out["coeffs"] = cj;
        os << out.dump() << "\n";
    } else if (fmt == Format::csv) {
        os << "m,coeff\n";
        for (std::size_t m = 0; m < coeffs.size(); ++m)
            os << m << "," << coeffs[m].get_str() << "\n";
    } else {
        for (const auto& c : coeffs)
            os << c.get_str() << "\n";
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string identity;  // single-case mode when nonempty
    std::string parts, d, d1, d2, p, k, n, n0, N, j;
    bool validity = false;
    std::string n_max;
    std::string config_path;
    // sweep grid overrides (applied only when the flag was passed)
    long r_min = 0, r_max = 0, max_part = 0, sweep_n_max = -1, j_max = -2;
    bool no_strict = false;
    std::string d_list, k_list, p_list, identity_list;
    int threads = 0;
    long random_cases = -1, seed = -1;
};

verifier::CaseParams collect_params(const VerifyArgs& args) {
    verifier::CaseParams ps;
    if (!args.parts.empty())
        ps.parts = PartSeq(parse_int_list(args.parts, "--parts"));
    auto put = [](std::optional<Int>& slot, const std::string& text, const char* what) {
        if (!text.empty())
            slot = parse_int(text, what);
    };
    put(ps.d, args.d, "--d");
    put(ps.d1, args.d1, "--d1");
    put(ps.d2, args.d2, "--d2");
    put(ps.p, args.p, "--p");
    put(ps.k, args.k, "--k");
    put(ps.n, args.n, "--n");
    put(ps.n0, args.n0, "--n0");
    put(ps.N, args.N, "--N");
    put(ps.j, args.j, "--j");
    return ps;
}

int run_verify(const VerifyArgs& args, Format fmt, Sink& sink) {
    std::ostream& os = sink.stream();

    if (!args.identity.empty()) {
        // weighted identities privilege a_1: unsorted parts are rejected by the
        // closed forms' strict-increase precondition rather than reordered here.
        verifier::CheckResult res = verifier::check_identity(args.identity, collect_params(args));
        if (fmt == Format::record) {
            os << report::check_json(res).dump() << "\n";
        } else if (fmt == Format::csv) {
            os << "identity,params,formula,oracle,match,classification\n";
            os << res.identity << ",\"" << res.params.key() << "\"," << rat_str(res.formula) << ","
               << res.oracle.get_str() << "," << (res.match ? "yes" : "no") << ","
               << (res.record ? report::classification_name(res.record->classification) : "")
               << "\n";
        } else {
            emit_lines(os, report::check_lines(res));
        }
        if (res.match)
            return 0;
        if (res.kind == verifier::Kind::count_certified)
            return 5;
        return res.record->classification == verifier::Classification::known ? 0 : 4;
    }

    if (args.validity) {
        if (args.parts.empty() || args.d.empty())
            throw domain_error("verify --validity needs --parts and --d");
        PartSeq a(parse_int_list(args.parts, "--parts"));
        Modulus d(parse_int(args.d, "--d"));
        Int n_max = args.n_max.empty() ? Int(20) : parse_int(args.n_max, "--n-max");
        auto table = verifier::validity_map(a, d, n_max);
        if (fmt == Format::record) {
            os << report::validity_json(table).dump() << "\n";
        } else if (fmt == Format::csv) {
            os << "n,j,formula,oracle,status\n";
            for (const auto& c : table.cells) {
                Rat gap = c.formula - Rat(c.oracle);
                os << c.n.get_str() << "," << c.j.get_str() << "," << rat_str(c.formula) << ","
                   << c.oracle.get_str() << "," << (gap == 0 ? "agree" : "overcount") << "\n";
            }
        } else {
            emit_lines(os, report::validity_lines(table));
        }
        return 0;
    }

    verifier::SweepConfig cfg;
    if (!args.config_path.empty())
        load_sweep_config(args.config_path, cfg);
    if (args.r_min > 0)
        cfg.r_min = static_cast<int>(args.r_min);
    if (args.r_max > 0)
        cfg.r_max = static_cast<int>(args.r_max);
    if (args.max_part > 0)
        cfg.max_part = args.max_part;
    if (args.sweep_n_max >= 0)
        cfg.n_max = args.sweep_n_max;
    if (args.j_max >= -1)
        cfg.j_max = args.j_max;
    if (args.no_strict)
        cfg.strict_increase = false;
    if (!args.d_list.empty())
        cfg.d_values = parse_long_list(args.d_list, "--d-list");
    if (!args.k_list.empty())
        cfg.k_values = parse_long_list(args.k_list, "--k-list");
    if (!args.p_list.empty())
        cfg.p_values = parse_long_list(args.p_list, "--p-list");
    if (!args.identity_list.empty())
        cfg.identities = split_names(args.identity_list);
    if (args.threads > 0)
        cfg.threads = args.threads;
    if (args.random_cases >= 0)
        cfg.random_cases = static_cast<std::uint64_t>(args.random_cases);
    if (args.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(args.seed);

    verifier::SweepReport rep = verifier::sweep(cfg);
    if (fmt == Format::record)
        os << report::report_json(rep).dump() << "\n";
    else if (fmt == Format::csv)
        os << report::report_csv(rep);
    else
        emit_lines(os, report::report_lines(rep));
    switch (rep.outcome) {
        case verifier::Outcome::all_match:
        case verifier::Outcome::known_only:
            return 0;
        case verifier::Outcome::novel_found:
            return 4;
        default:
            return 5;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "congpart: exact congruence-restricted partition counts p_{a,d}(n), their closed forms\n"
        "and polynomial parts, weighted counts, stable flag-cohomology dimensions, and a\n"
        "verification harness that cross-checks every closed form against the enumerative\n"
        "oracle (identity ids: thm1.1, thm2.3, prop2.2, cor2.4, prop2.6, thm2.7, ...)."};
    app.require_subcommand(1);
    app.fallthrough(true);  // accept --format/--out after the subcommand too

    std::string format_name;
    std::string out_path;
    const char* env = std::getenv("CONGPART_FORMAT");
    app.add_option("--format", format_name,
                   "output format: human | record | csv (default from CONGPART_FORMAT, else "
                   "human)")
        ->capture_default_str();
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    CountArgs count_args;
    auto* count = app.add_subcommand(
        "count", "p_{a,d}(n): solutions of sum a_i x_i = n with x_i >= 0, x_i = 0,1 (mod d)");
    count->add_option("--parts", count_args.parts, "comma-separated parts a_1,...,a_r")
        ->required();
    count->add_option("--d", count_args.d, "congruence modulus d >= 2")->required();
    count->add_option("--n", count_args.n, "target n >= 0")->required();
    count->add_option("--method", count_args.method,
                      "oracle (series DP) | closed (thm2.3 box formula) | decomposition "
                      "(prop2.2 subset sum) | all (each plus an agreement verdict)");

    PolypartArgs poly_args;
    auto* polypart =
        app.add_subcommand("polypart", "polynomial part P_{a,d}(n) in exact lowest terms");
    polypart->add_option("--parts", poly_args.parts, "comma-separated parts")->required();
    polypart->add_option("--d", poly_args.d, "congruence modulus d >= 2")->required();
    polypart->add_option("--n", poly_args.n, "evaluation point (any integer)")->required();
    polypart->add_flag("--plain", poly_args.plain,
                       "evaluate the unrestricted polynomial part P_a(n) (thm1.2 box) instead");
    polypart->add_flag("--unreduced", poly_args.unreduced,
                       "also echo the unreduced box-sum fraction (e.g. 168/81 for 56/27)");

    CohomArgs cohom_args;
    auto* cohom = app.add_subcommand(
        "cohomology", "stable cohomology dimensions h^j_st(-n,n) on flag varieties, char p");
    cohom->add_option("--p", cohom_args.p, "characteristic, a prime")->required();
    cohom->add_option("--n", cohom_args.n, "weight parameter n >= 0")->required();
    cohom->add_option("--mode", cohom_args.mode, "profile | total | poincare");
    cohom->add_option("--method", cohom_args.method,
                      "enumeration (ground truth) | closed-form (thm3.1/thm3.3 formulas; may "
                      "overcount, caveat annotated)");

    SeriesArgs series_args;
    auto* series =
        app.add_subcommand("series", "generating-function coefficients of p_{a,d} up to z^N");
    series->add_option("--parts", series_args.parts, "comma-separated parts")->required();
    series->add_option("--d", series_args.d, "congruence modulus d >= 2")->required();
    series->add_option("--N", series_args.N, "truncation order N >= 0")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "cross-check closed forms against the oracle (single case or grid sweep)");
    verify->add_option("--identity", verify_args.identity,
                       "single-case check of one registered identity");
    verify->add_option("--case", verify_args.identity,
                       "alias of --identity (named formula case)");
    verify->add_option("--parts", verify_args.parts,
                       "parts for the case (weighted identities require a strict increase)");
    verify->add_option("--d", verify_args.d, "modulus d");
    verify->add_option("--d1", verify_args.d1, "first modulus (divisibility)");
    verify->add_option("--d2", verify_args.d2, "second modulus (divisibility)");
    verify->add_option("--p", verify_args.p, "characteristic (cohomology identities)");
    verify->add_option("--k", verify_args.k, "d-ary exponent k");
    verify->add_option("--n", verify_args.n, "target n");
    verify->add_option("--n0", verify_args.n0, "base point of the quasi-period difference");
    verify->add_option("--N", verify_args.N, "series truncation order");
    verify->add_option("--j", verify_args.j, "weight j");
    verify->add_flag("--validity", verify_args.validity,
                     "map the empirical validity region of the weighted closed form");
    verify->add_option("--n-max", verify_args.n_max, "row bound for --validity");
    verify->add_option("--config", verify_args.config_path,
                       "sweep config file (key = value lines)");
    auto* o_rmin = verify->add_option("--r-min", verify_args.r_min, "minimum sequence length");
    auto* o_rmax = verify->add_option("--r-max", verify_args.r_max, "maximum sequence length");
    verify->add_option("--max-part", verify_args.max_part, "largest part in the sweep grid");
    verify->add_option("--sweep-n-max", verify_args.sweep_n_max, "sweep n bound");
    verify->add_option("--j-max", verify_args.j_max, "sweep j bound (-1: up to n)");
    verify->add_flag("--no-strict", verify_args.no_strict,
                     "allow repeated parts in the sweep grid");
    verify->add_option("--d-list", verify_args.d_list, "sweep moduli, comma-separated");
    verify->add_option("--k-list", verify_args.k_list, "sweep d-ary exponents");
    verify->add_option("--p-list", verify_args.p_list, "sweep characteristics");
    verify->add_option("--identities", verify_args.identity_list,
                       "identities to sweep, comma-separated (default: the count-certified set)");
    verify->add_option("--threads", verify_args.threads, "degree of parallelism");
    verify->add_option("--random", verify_args.random_cases,
                       "supplementary seeded random cases beyond the grid");
    verify->add_option("--seed", verify_args.seed, "seed for --random (default 1)");
    (void)o_rmin;
    (void)o_rmax;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Format fmt = Format::human;
        if (!format_name.empty())
            fmt = parse_format(format_name);
        else if (env && *env)
            fmt = parse_format(env);
        Sink sink(out_path);
        if (count->parsed())
            return run_count(count_args, fmt, sink);
        if (polypart->parsed())
            return run_polypart(poly_args, fmt, sink);
        if (cohom->parsed())
            return run_cohomology(cohom_args, fmt, sink);
        if (series->parsed())
            return run_series(series_args, fmt, sink);
        if (verify->parsed())
            return run_verify(verify_args, fmt, sink);
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 5;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

// Command-line front end: analyze code files, run verification sweeps,
// emit gallery codes, run the classification census.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 usage/parse error,
// 3 budget exceeded, 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qoac/qoac.hpp"

namespace {

using namespace qoac;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

std::vector<unsigned> parse_q_list(const std::string& s) {
    std::vector<unsigned> qs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        qs.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    if (qs.empty()) throw CLI::ValidationError("--q", "empty field-order list");
    return qs;
}

/// "1,0;0,1" -> subspace spanned by those rows; also "full" and "zero".
Subspace parse_subspace(const FieldPtr& f, const std::string& spec, int ambient) {
    if (spec == "full") return Subspace::full(f, ambient);
    if (spec == "zero") return Subspace::zero(f, ambient);
    std::vector<GFVec> rows;
    std::stringstream ss(spec);
    std::string rowtok;
    while (std::getline(ss, rowtok, ';')) {
        GFVec row;
        std::stringstream rs(rowtok);
        std::string cell;
        while (std::getline(rs, cell, ',')) row.push_back(static_cast<GFElem>(std::stoul(cell)));
        if (static_cast<int>(row.size()) != ambient)
            throw std::invalid_argument("subspace row length != ambient dimension");
        for (GFElem x : row)
            if (x >= f->q()) throw std::invalid_argument("subspace entry out of field range");
        rows.push_back(std::move(row));
    }
    return Subspace::span(f, ambient, std::move(rows));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

const char* status_name(VerifyRow::Status s) {
    switch (s) {
        case VerifyRow::Status::Match: return "MATCH";
        case VerifyRow::Status::Mismatch: return "MISMATCH";
        default: return "SKIPPED";
    }
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string table_to_csv(const VerifyTable& t) {
    std::ostringstream os;
    os << "status,point,closed,oracle,note\n";
    for (const auto& r : t.rows)
        os << status_name(r.status) << "," << csv_quote(r.point) << "," << csv_quote(r.closed)
           << "," << csv_quote(r.oracle) << "," << csv_quote(r.note) << "\n";
    return os.str();
}

OrderedJson table_to_json(const VerifyTable& t) {
    OrderedJson j;
    j["check"] = t.check;
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : t.rows) {
        OrderedJson rj;
        rj["status"] = status_name(r.status);
        rj["point"] = r.point;
        rj["closed"] = r.closed;
        rj["oracle"] = r.oracle;
        if (!r.note.empty()) rj["note"] = r.note;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["summary"] = {{"match", t.matches()}, {"mismatch", t.mismatches()}, {"skipped", t.skipped()}};
    return j;
}

struct CapFlags {
    std::uint64_t codewords = kDefaultCodewordCap;
    std::uint64_t subspaces = kDefaultSubspaceCap;
    std::uint64_t group = kDefaultGroupCap;
};

void add_cap_flags(CLI::App* cmd, CapFlags& caps) {
    cmd->add_option("--cap-codewords", caps.codewords,
                    "Budget for codeword enumeration (default 2^24)");
    cmd->add_option("--cap-subspaces", caps.subspaces,
                    "Budget for subspace enumeration (default 2^24)");
    cmd->add_option("--cap-group", caps.group,
                    "Budget for isometry-pair searches (default 1e8)");
}

struct FieldFlags {
    unsigned q = 2;
    unsigned p = 0;
    unsigned e = 1;
    std::vector<unsigned> modulus;
};

void add_field_flags(CLI::App* cmd, FieldFlags& ff) {
    cmd->add_option("--q", ff.q, "Field order (prime power, default 2)");
    cmd->add_option("--p", ff.p, "Characteristic (alternative to --q)");
    cmd->add_option("--e", ff.e, "Extension degree (with --p)");
    cmd->add_option("--modulus", ff.modulus, "Modulus coefficients c0..ce (with --p/--e)");
}

FieldPtr build_field(const FieldFlags& ff) {
    if (ff.p != 0) return make_field(ff.p, ff.e, ff.modulus);
    return field_of_order(ff.q);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& path, const std::string& out, const CapFlags& caps,
                const std::vector<std::string>& rho_col_specs,
                const std::vector<std::string>& rho_row_specs) {
    Code C = read_code_file(path);
    OrderedJson j;
    j["input"] = path;
    j["field"] = field_to_json(*C.field());
    j["n"] = C.nrows();
    j["m"] = C.ncols();
    j["report"] = report_to_json(make_report(C, caps.codewords));
    j["rank_distribution"] = rank_distribution_to_json(rank_distribution_oracle(C, caps.codewords));
    if (C.dim() > 0)
        j["weights"] = weights_to_json(generalized_weights_oracle(C, caps.subspaces));
    OrderedJson rhos = OrderedJson::array();
    for (const auto& spec : rho_col_specs) {
        Subspace J = parse_subspace(C.field(), spec, C.nrows());
        OrderedJson rj = rational_to_json(rho_col(C, J));
        rj["side"] = "col";
        rj["subspace"] = subspace_to_json(J);
        rhos.push_back(std::move(rj));
    }
    for (const auto& spec : rho_row_specs) {
        Subspace K = parse_subspace(C.field(), spec, C.ncols());
        OrderedJson rj = rational_to_json(rho_row(C, K));
        rj["side"] = "row";
        rj["subspace"] = subspace_to_json(K);
        rhos.push_back(std::move(rj));
    }
    if (!rhos.empty()) j["rho"] = std::move(rhos);
    write_text(out, dump_canonical(j));
    return kExitOk;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& check, const VerifyConfig& cfg, const std::string& format,
               const std::string& out) {
    VerifyTable table = run_verification(check, cfg);
    for (const auto& r : table.rows) {
        std::cout << status_name(r.status) << "  " << r.point;
        if (!r.closed.empty()) std::cout << "  closed=" << r.closed;
        if (!r.oracle.empty()) std::cout << "  oracle=" << r.oracle;
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
    }
    std::cout << table.check << ": " << table.matches() << " match, " << table.mismatches()
              << " mismatch, " << table.skipped() << " skipped\n";
    if (!out.empty()) {
        if (format == "csv")
            write_text(out, table_to_csv(table));
        else
            write_text(out, dump_canonical(table_to_json(table)));
    }
    return table.ok() ? kExitOk : kExitMismatch;
}

// ----------------------------------------------------------------- census

int cmd_census(const FieldPtr& f, int n, int m, int dim, const CapFlags& caps,
               const std::string& out) {
    AuditOptions opts;
    opts.subspace_cap = caps.subspaces;
    opts.codeword_cap = caps.codewords;
    opts.group_cap = caps.group;
    AuditReport rep = audit_dually_qoac_classification(f, n, m, dim, opts);
    std::cout << "census q=" << rep.q << " n=" << n << " m=" << m << " dim=" << dim << ": scanned "
              << rep.scanned << ", dually qOAC " << rep.dually_qoac_found << "\n";
    for (const auto& [letter, count] : rep.by_form)
        std::cout << "  form " << letter << ": " << count << "\n";
    if (!rep.ok())
        std::cout << "  UNCLASSIFIED: " << rep.unclassified.size() << " (see report)\n";
    if (!out.empty()) write_text(out, dump_canonical(audit_to_json(rep)));
    return rep.ok() ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- gallery

int cmd_gallery(const FieldPtr& f, const std::string& name, const std::vector<int>& positional,
                std::map<std::string, int> params, const CapFlags& caps, const std::string& out) {
    std::string full_name = name;
    FieldPtr field = f;
    if (name == "cshk" && positional.size() == 6) {
        // positional form: q n m s h k
        field = field_of_order(static_cast<unsigned>(positional[0]));
        params["n"] = positional[1];
        params["m"] = positional[2];
        params["s"] = positional[3];
        params["h"] = positional[4];
        params["k"] = positional[5];
    } else if (name == "thm2.5") {
        throw std::invalid_argument("gallery thm2.5 needs a form letter: thm2.5 a|b|c|d");
    }
    Code C = gallery(field, full_name, params, caps.codewords);
    if (out.empty() || out == "-")
        std::cout << dump_canonical(code_to_json(C));
    else
        write_code_file(out, C);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for rank-metric codes over small finite fields:\n"
                 "code analysis, quasi-optimal-anticode predicates, invariants by closed\n"
                 "formula and by brute-force oracle, and cross-verification sweeps."};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Analyze a JSON code file");
    std::string an_path, an_out;
    CapFlags an_caps;
    std::vector<std::string> an_rho_col, an_rho_row;
    analyze->add_option("file", an_path, "JSON code file")->required();
    analyze->add_option("--out", an_out, "Report path (default stdout)");
    analyze->add_option("--rho-col", an_rho_col,
                        "Column-side subspace (rows 'a,b;c,d', or full/zero); repeatable");
    analyze->add_option("--rho-row", an_rho_row, "Row-side subspace; repeatable");
    add_cap_flags(analyze, an_caps);

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Run a verification sweep (thm4.2, thm3.3, thm5.4, axioms, prop2.4, "
                  "prop2.11, thm2.5-audit)");
    std::string v_check, v_q = "2", v_format = "json", v_out;
    VerifyConfig v_cfg;
    CapFlags v_caps;
    bool v_sampled = false;
    verify->add_option("check", v_check, "Check identifier")->required();
    verify->add_option("--q", v_q, "Comma-separated field orders (default 2)");
    verify->add_option("--n-min", v_cfg.n_min, "Smallest row count (default 1)");
    verify->add_option("--n-max", v_cfg.n_max, "Largest row count (default 3)");
    verify->add_option("--m-min", v_cfg.m_min, "Smallest column count (default 1)");
    verify->add_option("--m-max", v_cfg.m_max, "Largest column count (default 3)");
    verify->add_option("--s-max", v_cfg.s_max, "Upper bound on s (default: the shape)");
    verify->add_option("--h-max", v_cfg.h_max, "Upper bound on h (default: the shape)");
    verify->add_option("--k-max", v_cfg.k_max, "Upper bound on k (default: the shape)");
    verify->add_option("--dim", v_cfg.dim, "Code dimension (thm2.5-audit only)");
    verify->add_option("--threads", v_cfg.threads, "Worker threads (default 1)");
    verify->add_option("--seed", v_cfg.seed, "Seed for sampled axiom mode (default 1)");
    verify->add_option("--samples", v_cfg.samples, "Sample count for sampled axiom mode");
    verify->add_flag("--sampled", v_sampled, "Sampled instead of exhaustive axiom mode");
    verify->add_option("--format", v_format, "Output format: json or csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", v_out, "Write the table to this path");
    add_cap_flags(verify, v_caps);

    // census
    auto* census = app.add_subcommand("census", "Classification census of dually "
                                                "quasi-optimal anticodes at one (n, m, dim)");
    int c_n = 2, c_m = 2, c_dim = 3;
    std::string c_out;
    FieldFlags c_field;
    CapFlags c_caps;
    census->add_option("n", c_n, "Rows")->required();
    census->add_option("m", c_m, "Columns")->required();
    census->add_option("dim", c_dim, "Code dimension")->required();
    census->add_option("--out", c_out, "Report path");
    add_field_flags(census, c_field);
    add_cap_flags(census, c_caps);

    // gallery
    auto* gal = app.add_subcommand("gallery", "Write a named construction as a code file");
    std::string g_name, g_out;
    std::vector<std::string> g_positional;
    FieldFlags g_field;
    CapFlags g_caps;
    int g_n = -1, g_m = -1, g_alpha = -1, g_rho = -1, g_k = -1, g_s = -1, g_h = -1;
    gal->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    gal->add_option("name", g_name,
                    "cshk | example-2.3 | thm2.5 | example-2.7 | example-2.8")->required();
    gal->add_option("params", g_positional, "Positional parameters (cshk: q n m s h k; thm2.5: form letter)");
    gal->add_option("--n", g_n, "Rows");
    gal->add_option("--m", g_m, "Columns");
    gal->add_option("--alpha", g_alpha, "alpha parameter");
    gal->add_option("--rho", g_rho, "rho parameter");
    gal->add_option("--k", g_k, "k parameter");
    gal->add_option("--s", g_s, "s parameter");
    gal->add_option("--h", g_h, "h parameter");
    gal->add_option("--out", g_out, "Output path (default stdout)");
    add_field_flags(gal, g_field);
    add_cap_flags(gal, g_caps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(an_path, an_out, an_caps, an_rho_col, an_rho_row);
        if (*verify) {
            v_cfg.qs = parse_q_list(v_q);
            if (v_caps.codewords == 0 || v_caps.subspaces == 0 || v_caps.group == 0)
                throw std::invalid_argument("caps must be positive");
            if (v_cfg.n_min > v_cfg.n_max || v_cfg.m_min > v_cfg.m_max || v_cfg.n_min < 1)
                throw std::invalid_argument("empty shape range");
            v_cfg.codeword_cap = v_caps.codewords;
            v_cfg.subspace_cap = v_caps.subspaces;
            v_cfg.group_cap = v_caps.group;
            v_cfg.exhaustive = !v_sampled;
            if (v_check == "thm2.5-audit" && v_cfg.dim < 0)
                throw std::invalid_argument("verify thm2.5-audit: --dim is required "
                                            "(uses --n-max/--m-max as the shape)");
            return cmd_verify(v_check, v_cfg, v_format, v_out);
        }
        if (*census) return cmd_census(build_field(c_field), c_n, c_m, c_dim, c_caps, c_out);
        if (*gal) {
            std::map<std::string, int> params;
            if (g_n >= 0) params["n"] = g_n;
            if (g_m >= 0) params["m"] = g_m;
            if (g_alpha >= 0) params["alpha"] = g_alpha;
            if (g_rho >= 0) params["rho"] = g_rho;
            if (g_k >= 0) params["k"] = g_k;
            if (g_s >= 0) params["s"] = g_s;
            if (g_h >= 0) params["h"] = g_h;
            std::string name = g_name;
            std::vector<int> positional;
            if (g_name == "thm2.5") {
                if (g_positional.size() != 1 || g_positional[0].size() != 1)
                    throw std::invalid_argument("gallery thm2.5 needs a single form letter a-d");
                name = "thm2.5-" + g_positional[0];
            } else {
                for (const auto& s : g_positional) positional.push_back(std::stoi(s));
            }
            return cmd_gallery(build_field(g_field), name, positional, params, g_caps, g_out);
        }
    } catch (const qoac::CapExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

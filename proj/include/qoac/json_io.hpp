#ifndef QOAC_JSON_IO_HPP
#define QOAC_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qoac/codes.hpp"
#include "qoac/equivalence.hpp"
#include "qoac/invariants.hpp"

namespace qoac {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson field_to_json(const Field& F) {
    OrderedJson j;
    j["p"] = F.p();
    j["e"] = F.e();
    if (F.e() > 1) {
        std::vector<unsigned> mod(F.modulus().begin(), F.modulus().end());
        j["modulus"] = mod;
    }
    return j;
}

inline FieldPtr field_from_json(const nlohmann::json& j) {
    const unsigned p = j.at("p").get<unsigned>();
    const unsigned e = j.value("e", 1u);
    std::vector<unsigned> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<unsigned>>();
    return make_field(p, e, modulus);
}

inline OrderedJson matrix_to_json(const Mat& M) {
    OrderedJson rows = OrderedJson::array();
    for (int i = 0; i < M.nrows(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (int j = 0; j < M.ncols(); ++j) row.push_back(unsigned(M.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat matrix_from_json(const FieldPtr& f, const nlohmann::json& j, int n, int m) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw std::invalid_argument("matrix: expected " + std::to_string(n) + " rows");
    Mat M(f, n, m);
    for (int i = 0; i < n; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw std::invalid_argument("matrix: expected " + std::to_string(m) + " columns");
        for (int c = 0; c < m; ++c) {
            const long long v = row.at(c).get<long long>();
            if (v < 0 || v >= static_cast<long long>(f->q()))
                throw std::invalid_argument("matrix: entry out of field range");
            M.set(i, c, static_cast<GFElem>(v));
        }
    }
    return M;
}

/// Canonical code serialization: the RREF basis in pivot order.
inline OrderedJson code_to_json(const Code& C) {
    OrderedJson j;
    j["field"] = field_to_json(*C.field());
    j["n"] = C.nrows();
    j["m"] = C.ncols();
    OrderedJson basis = OrderedJson::array();
    for (int i = 0; i < C.dim(); ++i) basis.push_back(matrix_to_json(C.basis_mat(i)));
    j["basis"] = std::move(basis);
    return j;
}

inline Code code_from_json(const nlohmann::json& j) {
    FieldPtr f = field_from_json(j.at("field"));
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    if (n < 0 || m < 0) throw std::invalid_argument("code: negative shape");
    std::vector<Mat> mats;
    for (const auto& mj : j.at("basis")) mats.push_back(matrix_from_json(f, mj, n, m));
    return Code::from_matrices(f, n, m, mats);
}

inline std::string dump_canonical(const OrderedJson& j) { return j.dump(2) + "\n"; }

inline void write_code_file(const std::string& path, const Code& C) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << dump_canonical(code_to_json(C));
}

inline Code read_code_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    return code_from_json(j);
}

inline OrderedJson report_to_json(const CodeReport& R) {
    OrderedJson j;
    j["dim"] = R.dim;
    j["maxrk"] = R.maxrk;
    if (R.min_dist) j["min_dist"] = *R.min_dist;
    j["is_optimal_anticode"] = R.is_optimal_anticode;
    j["is_qoac"] = R.is_qoac;
    j["is_dually_qoac"] = R.is_dually_qoac;
    if (R.singleton_slack) j["singleton_slack"] = *R.singleton_slack;
    j["anticode_slack"] = R.anticode_slack;
    return j;
}

inline OrderedJson weights_to_json(const WeightProfile& W) {
    OrderedJson arr = OrderedJson::array();
    for (int v : W.a) arr.push_back(v);
    return arr;
}

/// Big counts serialize as decimal strings.
inline OrderedJson rank_distribution_to_json(const RankDistribution& R) {
    OrderedJson arr = OrderedJson::array();
    for (const BigInt& v : R.counts) arr.push_back(v.str());
    return arr;
}

inline OrderedJson rational_to_json(const Rational& r) {
    OrderedJson j;
    j["num"] = boost::multiprecision::numerator(r).str();
    j["den"] = boost::multiprecision::denominator(r).str();
    return j;
}

inline OrderedJson subspace_to_json(const Subspace& S) {
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : S.basis()) {
        OrderedJson row = OrderedJson::array();
        for (GFElem x : r) row.push_back(unsigned(x));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Subspace subspace_from_json(const FieldPtr& f, const nlohmann::json& j, int ambient) {
    std::vector<GFVec> rows;
    for (const auto& rj : j) {
        if (static_cast<int>(rj.size()) != ambient)
            throw std::invalid_argument("subspace: row length != ambient");
        GFVec row;
        for (const auto& x : rj) {
            const long long v = x.get<long long>();
            if (v < 0 || v >= static_cast<long long>(f->q()))
                throw std::invalid_argument("subspace: entry out of field range");
            row.push_back(static_cast<GFElem>(v));
        }
        rows.push_back(std::move(row));
    }
    return Subspace::span(f, ambient, std::move(rows));
}

inline OrderedJson isometry_to_json(const Isometry& iso) {
    OrderedJson j;
    j["row_transform"] = matrix_to_json(iso.row_transform);
    j["col_transform"] = matrix_to_json(iso.col_transform);
    j["transpose"] = iso.transpose;
    return j;
}

inline OrderedJson audit_to_json(const AuditReport& rep) {
    OrderedJson j;
    j["q"] = rep.q;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["dim"] = rep.dim;
    j["scanned"] = rep.scanned;
    j["dually_qoac_found"] = rep.dually_qoac_found;
    OrderedJson byform = OrderedJson::object();
    for (const auto& [letter, count] : rep.by_form) byform[std::string(1, letter)] = count;
    j["by_form"] = std::move(byform);
    OrderedJson classified = OrderedJson::array();
    for (const auto& e : rep.classified) {
        OrderedJson ej;
        ej["code"] = code_to_json(e.code);
        ej["form"] = std::string(1, e.matched_form);
        ej["witness"] = isometry_to_json(e.witness);
        classified.push_back(std::move(ej));
    }
    j["classified"] = std::move(classified);
    OrderedJson un = OrderedJson::array();
    for (const auto& c : rep.unclassified) un.push_back(code_to_json(c));
    j["unclassified"] = std::move(un);
    j["ok"] = rep.ok();
    return j;
}

}  // namespace qoac

#endif  // QOAC_JSON_IO_HPP

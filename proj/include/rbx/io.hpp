#pragma once

// Structure files: a JSON format for Lie algebras, representations,
// (relative) Rota-Baxter operators, r-matrices and graded blocks.
// Rationals are serialized as strings "p/q" (integers may omit "/1");
// basis indices are 1-based in files and 0-based in memory. Emission
// is key-sorted and value-normalized, so emit(parse(f)) is stable.

#include "rbx/bialgebra.hpp"
#include "rbx/linfty.hpp"
#include "rbx/structures.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rbx {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline Scalar scalar_from(const Json& j, const std::string& where) {
    if (j.is_string()) {
        auto v = parse_rational(j.get<std::string>());
        if (!v) throw ParseError(where + ": not a rational: '" + j.get<std::string>() + "'");
        return *v;
    }
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    throw ParseError(where + ": expected a rational string");
}

inline Json scalar_to(const Scalar& s) { return to_string(s); }

inline Matrix matrix_from(const Json& j, int rows, int cols, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw ParseError(where + ": row " + std::to_string(r + 1) + " needs " +
                             std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m.set(r, c, scalar_from(j[r][c],
                                    where + "[" + std::to_string(r + 1) + "][" +
                                        std::to_string(c + 1) + "]"));
    }
    return m;
}

inline Json matrix_to(const Matrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_to(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

/// "[i,j]" -> (i-1, j-1).
inline std::pair<int, int> bracket_key(const std::string& key, int dim) {
    auto fail = [&] { throw ParseError("bracket key '" + key + "' is not \"[i,j]\""); };
    if (key.size() < 5 || key.front() != '[' || key.back() != ']') fail();
    auto comma = key.find(',');
    if (comma == std::string::npos) fail();
    int i = 0, j = 0;
    try {
        i = std::stoi(key.substr(1, comma - 1));
        j = std::stoi(key.substr(comma + 1, key.size() - comma - 2));
    } catch (const std::exception&) {
        fail();
    }
    if (i < 1 || i > dim || j < 1 || j > dim)
        throw ParseError("bracket key '" + key + "' is out of range 1.." + std::to_string(dim));
    if (i == j) throw ParseError("bracket key '" + key + "': [x,x] entries must be absent");
    return {i - 1, j - 1};
}

inline IndexList indices_from(const Json& j, int dim, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an index array");
    IndexList out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError(where + ": indices must be integers");
        int v = e.get<int>();
        if (v < 1 || v > dim) throw ParseError(where + ": index out of range 1.." + std::to_string(dim));
        out.push_back(v - 1);
    }
    return out;
}

}  // namespace io_detail

struct GradedBlock {
    GradedSpace space;                  // the algebra side
    int weight_bound = 2;
    std::optional<GradedMap> brackets;  // Sym flavor, degree +1
    std::optional<GradedSpace> rep_space;
    std::optional<GradedRep> rep;
    // operator entries on V-indices (the ambient map is built on demand)
    std::vector<std::tuple<IndexList, int, Scalar>> op_entries;
    bool has_operator = false;
    std::optional<GradedMap> prelie;  // SymTensor flavor on `space`
};

struct StructureFile {
    int format = 1;
    std::string name;
    std::string description;
    std::optional<LieAlgebra> alg;
    std::vector<std::string> basis;
    std::optional<Representation> rep;
    std::vector<std::string> rep_basis;
    std::optional<Matrix> op_matrix;
    bool op_relative = true;
    std::optional<Polyvector> rmatrix;
    std::optional<GradedBlock> graded;

    RelativeRBO relative_op() const {
        if (!alg || !op_matrix || !op_relative || !rep)
            throw ParseError("structure has no relative operator (rep + operator required)");
        return RelativeRBO(*rep, *op_matrix);
    }
    RBO rota_baxter_op() const {
        if (!alg || !op_matrix || op_relative)
            throw ParseError("structure has no Rota-Baxter operator");
        return RBO(*alg, *op_matrix);
    }
};

inline StructureFile parse_structure(const Json& j) {
    using namespace io_detail;
    StructureFile f;
    if (!j.is_object()) throw ParseError("structure file must be a JSON object");
    if (j.contains("format")) f.format = j["format"].get<int>();
    if (f.format != 1) throw ParseError("unsupported format version");
    if (j.contains("field") && j["field"].get<std::string>() != "rational")
        throw ParseError("only the \"rational\" field is supported");
    if (j.contains("name")) f.name = j["name"].get<std::string>();
    if (j.contains("description")) f.description = j["description"].get<std::string>();

    if (j.contains("dim")) {
        int dim = j["dim"].get<int>();
        if (dim < 0) throw ParseError("dim must be nonnegative");
        LieAlgebra g(dim);
        if (j.contains("basis")) {
            f.basis = j["basis"].get<std::vector<std::string>>();
            if (static_cast<int>(f.basis.size()) != dim)
                throw ParseError("basis labels disagree with dim");
        }
        if (j.contains("bracket")) {
            // antisymmetry is normalized on load: both orders may appear
            // but must be consistent
            std::map<std::pair<int, int>, SparseVec> table;
            for (const auto& [key, val] : j["bracket"].items()) {
                auto [a, b] = bracket_key(key, dim);
                SparseVec v;
                for (const auto& [ks, cv] : val.items()) {
                    int k = 0;
                    try {
                        k = std::stoi(ks);
                    } catch (const std::exception&) {
                        throw ParseError("bracket target '" + ks + "' is not an index");
                    }
                    if (k < 1 || k > dim) throw ParseError("bracket target out of range");
                    Scalar c = scalar_from(cv, "bracket[" + key + "]");
                    if (c != 0) v[k - 1] = c;
                }
                table[{a, b}] = v;
            }
            for (const auto& [ij, v] : table) {
                auto rev = table.find({ij.second, ij.first});
                if (rev != table.end()) {
                    SparseVec sum = v;
                    for (const auto& [k, c] : rev->second) sv_add(sum, k, c);
                    if (!sum.empty())
                        throw ParseError("bracket table is not antisymmetric at [" +
                                         std::to_string(ij.first + 1) + "," +
                                         std::to_string(ij.second + 1) + "]");
                }
                if (ij.first < ij.second) g.set_bracket(ij.first, ij.second, v);
            }
        }
        f.alg = g;
    }

    if (j.contains("rep")) {
        if (!f.alg) throw ParseError("rep requires an algebra");
        const Json& r = j["rep"];
        int dv = r.at("dim").get<int>();
        if (r.contains("basis")) {
            f.rep_basis = r["basis"].get<std::vector<std::string>>();
            if (static_cast<int>(f.rep_basis.size()) != dv)
                throw ParseError("rep basis labels disagree with rep dim");
        }
        const Json& mats = r.at("matrices");
        if (static_cast<int>(mats.size()) != f.alg->dim())
            throw ParseError("rep needs one matrix per algebra basis vector");
        std::vector<Matrix> rho;
        for (int i = 0; i < f.alg->dim(); ++i)
            rho.push_back(matrix_from(mats[i], dv, dv, "rep.matrices[" + std::to_string(i + 1) + "]"));
        f.rep = Representation(*f.alg, rho);
    }

    if (j.contains("operator")) {
        if (!f.alg) throw ParseError("operator requires an algebra");
        const Json& op = j["operator"];
        std::string kind = op.contains("kind") ? op["kind"].get<std::string>() : "relative";
        if (kind == "relative") {
            if (!f.rep) throw ParseError("relative operator requires a rep");
            f.op_relative = true;
            f.op_matrix = matrix_from(op.at("matrix"), f.alg->dim(), f.rep->dim_v(),
                                      "operator.matrix");
        } else if (kind == "rota-baxter") {
            f.op_relative = false;
            f.op_matrix = matrix_from(op.at("matrix"), f.alg->dim(), f.alg->dim(),
                                      "operator.matrix");
        } else {
            throw ParseError("operator.kind must be \"relative\" or \"rota-baxter\"");
        }
    }

    if (j.contains("rmatrix")) {
        if (!f.alg) throw ParseError("rmatrix requires an algebra");
        Polyvector r(f.alg->dim(), 2);
        for (const auto& term : j["rmatrix"]) {
            IndexList idx = indices_from(term.at("indices"), f.alg->dim(), "rmatrix.indices");
            if (idx.size() != 2) throw ParseError("rmatrix entries must have two indices");
            r.add(idx, scalar_from(term.at("coeff"), "rmatrix.coeff"));
        }
        f.rmatrix = r;
    }

    if (j.contains("graded")) {
        const Json& gj = j["graded"];
        GradedBlock b;
        b.space.degree_of = gj.at("degrees").get<std::vector<int>>();
        if (gj.contains("weight_bound")) b.weight_bound = gj["weight_bound"].get<int>();
        int dim = b.space.dim();
        if (gj.contains("brackets")) {
            GradedMap l(b.space, GradedMap::Flavor::Sym, 1);
            for (const auto& e : gj["brackets"]) {
                IndexList args = indices_from(e.at("args"), dim, "graded.brackets.args");
                int out = e.at("out").get<int>() - 1;
                if (out < 0 || out >= dim) throw ParseError("graded.brackets.out out of range");
                l.add_term(args, out, scalar_from(e.at("coeff"), "graded.brackets.coeff"));
            }
            b.brackets = l;
        }
        if (gj.contains("rep")) {
            const Json& rj = gj["rep"];
            GradedSpace vs;
            vs.degree_of = rj.at("degrees").get<std::vector<int>>();
            GradedRep rep;
            rep.gspace = b.space;
            rep.vspace = vs;
            rep.weight_bound = b.weight_bound;
            for (const auto& e : rj.at("entries")) {
                IndexList gargs = indices_from(e.at("args"), dim, "graded.rep.args");
                int vin = e.at("v").get<int>() - 1;
                int out = e.at("out").get<int>() - 1;
                if (vin < 0 || vin >= vs.dim() || out < 0 || out >= vs.dim())
                    throw ParseError("graded.rep index out of range");
                rep.add_term(gargs, vin, out, scalar_from(e.at("coeff"), "graded.rep.coeff"));
            }
            b.rep_space = vs;
            b.rep = rep;
        }
        if (gj.contains("operator")) {
            if (!b.rep_space) throw ParseError("graded operator requires a graded rep");
            for (const auto& e : gj["operator"]) {
                IndexList vargs =
                    indices_from(e.at("args"), b.rep_space->dim(), "graded.operator.args");
                int out = e.at("out").get<int>() - 1;
                if (out < 0 || out >= dim) throw ParseError("graded.operator.out out of range");
                b.op_entries.push_back(
                    {vargs, out, io_detail::scalar_from(e.at("coeff"), "graded.operator.coeff")});
            }
            b.has_operator = true;
        }
        if (gj.contains("prelie")) {
            GradedMap p(b.space, GradedMap::Flavor::SymTensor, 1);
            for (const auto& e : gj["prelie"]) {
                IndexList args = indices_from(e.at("args"), dim, "graded.prelie.args");
                int last = e.at("last").get<int>() - 1;
                int out = e.at("out").get<int>() - 1;
                if (last < 0 || last >= dim || out < 0 || out >= dim)
                    throw ParseError("graded.prelie index out of range");
                p.add_term_tensor(args, last, out,
                                  scalar_from(e.at("coeff"), "graded.prelie.coeff"));
            }
            b.prelie = p;
        }
        f.graded = std::move(b);
    }
    return f;
}

inline StructureFile parse_structure_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    return parse_structure(j);
}

inline Json emit_structure(const StructureFile& f) {
    using namespace io_detail;
    Json j;
    j["format"] = 1;
    j["field"] = "rational";
    if (!f.name.empty()) j["name"] = f.name;
    if (!f.description.empty()) j["description"] = f.description;
    if (f.alg) {
        j["dim"] = f.alg->dim();
        if (!f.basis.empty()) j["basis"] = f.basis;
        Json table = Json::object();
        for (int i = 0; i < f.alg->dim(); ++i)
            for (int k = i + 1; k < f.alg->dim(); ++k) {
                const SparseVec& v = f.alg->bracket(i, k);
                if (v.empty()) continue;
                Json entry = Json::object();
                for (const auto& [t, c] : v) entry[std::to_string(t + 1)] = scalar_to(c);
                table["[" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "]"] = entry;
            }
        if (!table.empty()) j["bracket"] = table;
    }
    if (f.rep) {
        Json r;
        r["dim"] = f.rep->dim_v();
        if (!f.rep_basis.empty()) r["basis"] = f.rep_basis;
        Json mats = Json::array();
        for (int i = 0; i < f.alg->dim(); ++i) mats.push_back(matrix_to(f.rep->rho(i)));
        r["matrices"] = mats;
        j["rep"] = r;
    }
    if (f.op_matrix) {
        Json op;
        op["kind"] = f.op_relative ? "relative" : "rota-baxter";
        op["matrix"] = matrix_to(*f.op_matrix);
        j["operator"] = op;
    }
    if (f.rmatrix) {
        Json terms = Json::array();
        for (const auto& [idx, c] : f.rmatrix->coeff) {
            Json t;
            t["indices"] = Json::array({idx[0] + 1, idx[1] + 1});
            t["coeff"] = scalar_to(c);
            terms.push_back(t);
        }
        j["rmatrix"] = terms;
    }
    if (f.graded) {
        const GradedBlock& b = *f.graded;
        Json g;
        g["degrees"] = b.space.degree_of;
        g["weight_bound"] = b.weight_bound;
        auto dump_sym = [&](const GradedMap& m) {
            Json list = Json::array();
            for (const auto& [k, dist] : m.terms())
                for (const auto& [o, c] : dist) {
                    Json e;
                    Json args = Json::array();
                    for (int a : k) args.push_back(a + 1);
                    e["args"] = args;
                    e["out"] = o + 1;
                    e["coeff"] = scalar_to(c);
                    list.push_back(e);
                }
            return list;
        };
        if (b.brackets) g["brackets"] = dump_sym(*b.brackets);
        if (b.rep) {
            Json r;
            r["degrees"] = b.rep_space->degree_of;
            Json entries = Json::array();
            for (const auto& [key, dist] : b.rep->comp) {
                const auto& [gargs, vin] = key;
                for (const auto& [o, c] : dist) {
                    Json e;
                    Json args = Json::array();
                    for (int a : gargs) args.push_back(a + 1);
                    e["args"] = args;
                    e["v"] = vin + 1;
                    e["out"] = o + 1;
                    e["coeff"] = scalar_to(c);
                    entries.push_back(e);
                }
            }
            r["entries"] = entries;
            g["rep"] = r;
        }
        if (b.has_operator) {
            Json list = Json::array();
            for (const auto& [vargs, out, c] : b.op_entries) {
                Json e;
                Json args = Json::array();
                for (int a : vargs) args.push_back(a + 1);
                e["args"] = args;
                e["out"] = out + 1;
                e["coeff"] = scalar_to(c);
                list.push_back(e);
            }
            g["operator"] = list;
        }
        if (b.prelie) {
            Json list = Json::array();
            for (const auto& [k, dist] : b.prelie->terms()) {
                IndexList sym(k.begin(), k.end() - 1);
                for (const auto& [o, c] : dist) {
                    Json e;
                    Json args = Json::array();
                    for (int a : sym) args.push_back(a + 1);
                    e["args"] = args;
                    e["last"] = k.back() + 1;
                    e["out"] = o + 1;
                    e["coeff"] = scalar_to(c);
                    list.push_back(e);
                }
            }
            g["prelie"] = list;
        }
        j["graded"] = g;
    }
    return j;
}

}  // namespace rbx

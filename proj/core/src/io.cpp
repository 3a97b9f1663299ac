#include "dgper/io.hpp"

#include <set>

#include <json.hpp>

namespace dgper {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorCode::ParseError, "document is not valid JSON");
    return doc;
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, path + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(ErrorCode::ParseError, path + ": unknown key '" + it.key() + "'");
}

const ordered_json& require_key(const ordered_json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::ParseError, path + ": missing key '" + key + "'");
    return *it;
}

std::string require_string(const ordered_json& v, const std::string& path) {
    if (!v.is_string()) throw Error(ErrorCode::ParseError, path + ": expected a string");
    return v.get<std::string>();
}

long long require_int(const ordered_json& v, const std::string& path) {
    if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, path + ": expected an integer");
    return v.get<long long>();
}

TermList parse_terms(const ordered_json& arr, const GradedAlgebra* alg_partial,
                     const std::map<std::string, BasisId>& names, const Field& field, const std::string& path) {
    (void)alg_partial;
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, path + ": expected an array of terms");
    TermList out;
    int idx = 0;
    for (const ordered_json& t : arr) {
        std::string tpath = path + ".terms[" + std::to_string(idx++) + "]";
        reject_unknown_keys(t, {"basis", "coeff"}, tpath);
        std::string bname = require_string(require_key(t, "basis", tpath), tpath + ".basis");
        auto it = names.find(bname);
        if (it == names.end())
            throw Error(ErrorCode::ValidationError, tpath + ": unknown basis element '" + bname + "'");
        Scalar c = Scalar::parse(field, require_string(require_key(t, "coeff", tpath), tpath + ".coeff"));
        if (c.is_zero()) continue;
        out.push_back({it->second, c});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

ordered_json emit_terms(const GradedAlgebra& alg, const TermList& terms) {
    ordered_json arr = ordered_json::array();
    for (const auto& [b, c] : terms) {
        ordered_json t;
        t["basis"] = alg.basis_elem(b).name;
        t["coeff"] = c.str();
        arr.push_back(std::move(t));
    }
    return arr;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace

AlgebraPtr parse_algebra(const std::string& text) {
    ordered_json doc = parse_json(text);
    reject_unknown_keys(doc, {"field", "vertices", "degree_cap", "basis", "products", "derivation"}, "algebra");

    GradedAlgebraData data;
    data.field = Field::parse(require_string(require_key(doc, "field", "algebra"), "algebra.field"));
    const ordered_json& verts = require_key(doc, "vertices", "algebra");
    if (!verts.is_array()) throw Error(ErrorCode::ParseError, "algebra.vertices: expected an array");
    for (const ordered_json& v : verts) data.vertices.push_back(require_string(v, "algebra.vertices[]"));
    data.degree_cap = static_cast<int>(require_int(require_key(doc, "degree_cap", "algebra"), "algebra.degree_cap"));

    std::map<std::string, VertexId> vnames;
    for (std::size_t i = 0; i < data.vertices.size(); ++i) vnames[data.vertices[i]] = static_cast<VertexId>(i);

    const ordered_json& basis = require_key(doc, "basis", "algebra");
    if (!basis.is_array()) throw Error(ErrorCode::ParseError, "algebra.basis: expected an array");
    std::map<std::string, BasisId> bnames;
    int idx = 0;
    for (const ordered_json& b : basis) {
        std::string path = "algebra.basis[" + std::to_string(idx) + "]";
        reject_unknown_keys(b, {"name", "degree", "left", "right"}, path);
        BasisElem be;
        be.name = require_string(require_key(b, "name", path), path + ".name");
        be.degree = static_cast<int>(require_int(require_key(b, "degree", path), path + ".degree"));
        std::string lname = require_string(require_key(b, "left", path), path + ".left");
        std::string rname = require_string(require_key(b, "right", path), path + ".right");
        auto lit = vnames.find(lname);
        auto rit = vnames.find(rname);
        if (lit == vnames.end() || rit == vnames.end())
            throw Error(ErrorCode::VertexMismatch, path + ": unknown vertex");
        be.left = lit->second;
        be.right = rit->second;
        bnames[be.name] = static_cast<BasisId>(idx);
        data.basis.push_back(std::move(be));
        ++idx;
    }

    const ordered_json& products = require_key(doc, "products", "algebra");
    if (!products.is_array()) throw Error(ErrorCode::ParseError, "algebra.products: expected an array");
    idx = 0;
    for (const ordered_json& p : products) {
        std::string path = "algebra.products[" + std::to_string(idx++) + "]";
        reject_unknown_keys(p, {"left", "right", "terms"}, path);
        std::string lname = require_string(require_key(p, "left", path), path + ".left");
        std::string rname = require_string(require_key(p, "right", path), path + ".right");
        auto lit = bnames.find(lname);
        auto rit = bnames.find(rname);
        if (lit == bnames.end() || rit == bnames.end())
            throw Error(ErrorCode::ValidationError, path + ": unknown basis element");
        data.products[{lit->second, rit->second}] =
            parse_terms(require_key(p, "terms", path), nullptr, bnames, data.field, path);
    }

    if (doc.contains("derivation")) {
        const ordered_json& der = doc["derivation"];
        if (!der.is_array()) throw Error(ErrorCode::ParseError, "algebra.derivation: expected an array");
        std::map<BasisId, TermList> table;
        idx = 0;
        for (const ordered_json& d : der) {
            std::string path = "algebra.derivation[" + std::to_string(idx++) + "]";
            reject_unknown_keys(d, {"basis", "terms"}, path);
            std::string bname = require_string(require_key(d, "basis", path), path + ".basis");
            auto it = bnames.find(bname);
            if (it == bnames.end()) throw Error(ErrorCode::ValidationError, path + ": unknown basis element");
            table[it->second] = parse_terms(require_key(d, "terms", path), nullptr, bnames, data.field, path);
        }
        data.derivation = std::move(table);
    }

    return GradedAlgebra::validate(std::move(data));
}

std::string emit_algebra(const GradedAlgebra& alg) {
    ordered_json doc;
    doc["field"] = alg.field().str();
    doc["vertices"] = alg.vertices();
    doc["degree_cap"] = alg.degree_cap();
    ordered_json basis = ordered_json::array();
    for (const BasisElem& b : alg.basis()) {
        ordered_json e;
        e["name"] = b.name;
        e["degree"] = b.degree;
        e["left"] = alg.vertex_name(b.left);
        e["right"] = alg.vertex_name(b.right);
        basis.push_back(std::move(e));
    }
    doc["basis"] = std::move(basis);
    ordered_json products = ordered_json::array();
    for (const auto& [pos, terms] : alg.products()) {
        ordered_json p;
        p["left"] = alg.basis_elem(pos.first).name;
        p["right"] = alg.basis_elem(pos.second).name;
        p["terms"] = emit_terms(alg, terms);
        products.push_back(std::move(p));
    }
    doc["products"] = std::move(products);
    if (alg.has_derivation()) {
        ordered_json der = ordered_json::array();
        for (const auto& [b, terms] : *alg.derivation_table()) {
            ordered_json d;
            d["basis"] = alg.basis_elem(b).name;
            d["terms"] = emit_terms(alg, terms);
            der.push_back(std::move(d));
        }
        doc["derivation"] = std::move(der);
    }
    return dump(doc);
}

namespace {

ElementMatrix parse_entry_matrix(const ordered_json& arr, const GradedAlgebra& alg,
                                 const std::vector<DgGenerator>& rows, const std::vector<DgGenerator>& cols,
                                 int degree, const std::string& path) {
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, path + ": expected an array");
    std::map<std::string, BasisId> bnames;
    for (int b = 0; b < alg.basis_count(); ++b) bnames[alg.basis_elem(b).name] = b;
    ElementMatrix out;
    int idx = 0;
    for (const ordered_json& e : arr) {
        std::string epath = path + "[" + std::to_string(idx++) + "]";
        reject_unknown_keys(e, {"row", "col", "terms"}, epath);
        int row = static_cast<int>(require_int(require_key(e, "row", epath), epath + ".row"));
        int col = static_cast<int>(require_int(require_key(e, "col", epath), epath + ".col"));
        if (row < 0 || row >= static_cast<int>(rows.size()) || col < 0 || col >= static_cast<int>(cols.size()))
            throw Error(ErrorCode::ValidationError, epath + ": entry outside the generator range");
        TermList terms = parse_terms(require_key(e, "terms", epath), nullptr, bnames, alg.field(), epath);
        if (terms.empty()) continue;
        int want = rows[static_cast<std::size_t>(row)].shift - cols[static_cast<std::size_t>(col)].shift + degree;
        if (want < 0)
            throw Error(ErrorCode::DegreeMismatch, epath + ": entry would need negative degree " + std::to_string(want));
        VertexId lv = rows[static_cast<std::size_t>(row)].vertex;
        VertexId rv = cols[static_cast<std::size_t>(col)].vertex;
        AlgebraElement elt = alg.zero_element(want, lv, rv);
        for (const auto& [b, c] : terms) {
            const BasisElem& be = alg.basis_elem(b);
            if (be.degree != want)
                throw Error(ErrorCode::DegreeMismatch, epath + ": term '" + be.name + "' has degree " +
                                                           std::to_string(be.degree) + ", the slot needs " +
                                                           std::to_string(want));
            if (be.left != lv || be.right != rv)
                throw Error(ErrorCode::VertexMismatch, epath + ": term '" + be.name + "' does not join the vertices '" +
                                                           alg.vertex_name(lv) + "' and '" + alg.vertex_name(rv) + "'");
            elt.set_coeff(b, c);
        }
        out.insert_or_assign({row, col}, std::move(elt));
    }
    return out;
}

ordered_json emit_entry_matrix(const GradedAlgebra& alg, const ElementMatrix& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& [pos, elt] : entries) {
        if (elt.is_zero()) continue;
        ordered_json e;
        e["row"] = pos.first;
        e["col"] = pos.second;
        e["terms"] = emit_terms(alg, elt.terms());
        arr.push_back(std::move(e));
    }
    return arr;
}

std::vector<DgGenerator> parse_generators(const ordered_json& arr, const GradedAlgebra& alg, const std::string& path) {
    if (!arr.is_array()) throw Error(ErrorCode::ParseError, path + ": expected an array");
    std::vector<DgGenerator> out;
    int idx = 0;
    for (const ordered_json& g : arr) {
        std::string gpath = path + "[" + std::to_string(idx++) + "]";
        reject_unknown_keys(g, {"shift", "vertex"}, gpath);
        DgGenerator gen;
        gen.shift = static_cast<int>(require_int(require_key(g, "shift", gpath), gpath + ".shift"));
        std::string vname = require_string(require_key(g, "vertex", gpath), gpath + ".vertex");
        std::optional<VertexId> v = alg.vertex_id(vname);
        if (!v) throw Error(ErrorCode::VertexMismatch, gpath + ": unknown vertex '" + vname + "'");
        gen.vertex = *v;
        out.push_back(gen);
    }
    return out;
}

} // namespace

std::string module_algebra_ref(const std::string& text) {
    ordered_json doc = parse_json(text);
    return require_string(require_key(doc, "algebra_ref", "module"), "module.algebra_ref");
}

ModuleDocument parse_module(const std::string& text, const AlgebraPtr& alg) {
    ordered_json doc = parse_json(text);
    reject_unknown_keys(doc, {"algebra_ref", "generators", "differential"}, "module");
    ModuleDocument out;
    out.algebra_ref = require_string(require_key(doc, "algebra_ref", "module"), "module.algebra_ref");
    std::vector<DgGenerator> gens = parse_generators(require_key(doc, "generators", "module"), *alg, "module.generators");
    ElementMatrix diff = parse_entry_matrix(require_key(doc, "differential", "module"), *alg, gens, gens, 1,
                                            "module.differential");
    out.module = DgModule::validate(alg, std::move(gens), std::move(diff));
    return out;
}

std::string emit_module(const DgModule& m, const std::string& algebra_ref) {
    const GradedAlgebra& alg = *m.algebra();
    ordered_json doc;
    doc["algebra_ref"] = algebra_ref;
    ordered_json gens = ordered_json::array();
    for (const DgGenerator& g : m.generators()) {
        ordered_json e;
        e["shift"] = g.shift;
        e["vertex"] = alg.vertex_name(g.vertex);
        gens.push_back(std::move(e));
    }
    doc["generators"] = std::move(gens);
    doc["differential"] = emit_entry_matrix(alg, m.differential());
    return dump(doc);
}

std::string map_source_ref(const std::string& text) {
    ordered_json doc = parse_json(text);
    return require_string(require_key(doc, "source_ref", "map"), "map.source_ref");
}

std::string map_target_ref(const std::string& text) {
    ordered_json doc = parse_json(text);
    return require_string(require_key(doc, "target_ref", "map"), "map.target_ref");
}

MapDocument parse_map(const std::string& text, const DgModule& source, const DgModule& target) {
    ordered_json doc = parse_json(text);
    reject_unknown_keys(doc, {"source_ref", "target_ref", "degree", "entries"}, "map");
    MapDocument out;
    out.source_ref = require_string(require_key(doc, "source_ref", "map"), "map.source_ref");
    out.target_ref = require_string(require_key(doc, "target_ref", "map"), "map.target_ref");
    int degree = static_cast<int>(require_int(require_key(doc, "degree", "map"), "map.degree"));
    ElementMatrix entries = parse_entry_matrix(require_key(doc, "entries", "map"), *source.algebra(),
                                               target.generators(), source.generators(), degree, "map.entries");
    out.map = ChainMap::zero(source, target, degree);
    out.map.entries = std::move(entries);
    return out;
}

std::string emit_map(const ChainMap& f, const std::string& source_ref, const std::string& target_ref) {
    ordered_json doc;
    doc["source_ref"] = source_ref;
    doc["target_ref"] = target_ref;
    doc["degree"] = f.degree;
    doc["entries"] = emit_entry_matrix(*f.source.algebra(), f.entries);
    return dump(doc);
}

std::string sniff_document_kind(const std::string& text) {
    ordered_json doc = parse_json(text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "document is not a JSON object");
    if (doc.contains("basis") && doc.contains("products")) return "algebra";
    if (doc.contains("generators")) return "module";
    if (doc.contains("entries")) return "map";
    throw Error(ErrorCode::ParseError, "cannot tell whether this is an algebra, module or map document");
}

} // namespace dgper

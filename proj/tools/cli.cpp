#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <algorithm>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgper/heart.hpp"
#include "dgper/io.hpp"
#include "dgper/koszul.hpp"

namespace dgper::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Session {
    bool structured = false;
    std::uint64_t seed = 0;
    int cap_override = -1;
    std::map<std::string, AlgebraPtr> algebra_cache; // by canonical path

    std::string read_file(const fs::path& path) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path.string() + "'");
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    AlgebraPtr load_algebra(const fs::path& path) {
        fs::path canon = fs::weakly_canonical(path);
        auto it = algebra_cache.find(canon.string());
        if (it != algebra_cache.end()) return it->second;
        AlgebraPtr alg = parse_algebra(read_file(path));
        algebra_cache[canon.string()] = alg;
        return alg;
    }

    ModuleDocument load_module(const fs::path& path) {
        std::string text = read_file(path);
        std::string ref = module_algebra_ref(text);
        fs::path alg_path = fs::path(ref).is_absolute() ? fs::path(ref) : path.parent_path() / ref;
        AlgebraPtr alg = load_algebra(alg_path);
        return parse_module(text, alg);
    }

    struct LoadedMap {
        MapDocument doc;
        ModuleDocument source_doc;
        ModuleDocument target_doc;
    };

    LoadedMap load_map(const fs::path& path) {
        std::string text = read_file(path);
        std::string sref = map_source_ref(text);
        std::string tref = map_target_ref(text);
        auto resolve = [&](const std::string& r) {
            return fs::path(r).is_absolute() ? fs::path(r) : path.parent_path() / r;
        };
        ModuleDocument source = load_module(resolve(sref));
        ModuleDocument target = load_module(resolve(tref));
        MapDocument doc = parse_map(text, source.module, target.module);
        return LoadedMap{std::move(doc), std::move(source), std::move(target)};
    }
};

ordered_json module_json(const DgModule& m, const std::string& algebra_ref) {
    return ordered_json::parse(emit_module(m, algebra_ref));
}

void print_report(const Session& session, const ordered_json& report, std::ostream& out) {
    if (session.structured) {
        out << report.dump(2) << "\n";
        return;
    }
    // text mode: one line per top-level entry, nested values inline
    for (auto it = report.begin(); it != report.end(); ++it) {
        out << it.key() << ": ";
        if (it->is_string())
            out << it->get<std::string>();
        else
            out << it->dump();
        out << "\n";
    }
}

ordered_json jh_json(const GradedAlgebra& alg, const std::map<VertexId, int>& mult) {
    ordered_json out;
    for (const auto& [v, c] : mult) out[alg.vertex_name(v)] = c;
    return out;
}

int cmd_validate(Session& session, const std::string& file, std::ostream& out) {
    std::string text = session.read_file(file);
    std::string kind = sniff_document_kind(text);
    ordered_json report;
    report["command"] = "validate";
    report["file"] = file;
    report["kind"] = kind;
    if (kind == "algebra") {
        AlgebraPtr alg = parse_algebra(text);
        report["field"] = alg->field().str();
        report["vertices"] = alg->vertex_count();
        report["basis"] = alg->basis_count();
        report["degree_cap"] = alg->degree_cap();
        report["has_derivation"] = alg->has_derivation();
    } else if (kind == "module") {
        ModuleDocument doc = session.load_module(file);
        report["generators"] = doc.module.generator_count();
        report["filt"] = doc.module.is_filt();
        report["flag"] = doc.module.is_flag();
    } else {
        Session::LoadedMap loaded = session.load_map(file);
        report["degree"] = loaded.doc.map.degree;
        report["chain_map"] = is_chain_map(loaded.doc.map);
    }
    report["status"] = "valid";
    print_report(session, report, out);
    return 0;
}

int cmd_info(Session& session, const std::string& file, std::ostream& out) {
    std::string text = session.read_file(file);
    std::string kind = sniff_document_kind(text);
    ordered_json report;
    report["command"] = "info";
    report["file"] = file;
    report["kind"] = kind;
    if (kind == "algebra") {
        AlgebraPtr alg = parse_algebra(text);
        report["field"] = alg->field().str();
        report["vertices"] = alg->vertices();
        report["degree_cap"] = alg->degree_cap();
        ordered_json dims = ordered_json::array();
        for (int d = 0; d <= alg->degree_cap(); ++d) {
            int n = 0;
            for (const BasisElem& b : alg->basis())
                if (b.degree == d) ++n;
            dims.push_back(n);
        }
        report["graded_dims"] = dims;
        report["has_derivation"] = alg->has_derivation();
    } else if (kind == "module") {
        ModuleDocument doc = session.load_module(file);
        report["algebra_ref"] = doc.algebra_ref;
        report["generators"] = doc.module.generator_count();
        report["filt"] = doc.module.is_filt();
        report["flag"] = doc.module.is_flag();
        auto bounds = t_bounds(doc.module);
        if (bounds) {
            report["t_bounds"] = ordered_json::array({bounds->first, bounds->second});
        } else {
            report["t_bounds"] = "zero";
        }
        ReducedComplex red = reduced_module(doc.module);
        report["reduced_h_dim"] = red.total_h_dim;
    } else {
        Session::LoadedMap loaded = session.load_map(file);
        report["source_generators"] = loaded.source_doc.module.generator_count();
        report["target_generators"] = loaded.target_doc.module.generator_count();
        report["degree"] = loaded.doc.map.degree;
        report["entries"] = static_cast<int>(loaded.doc.map.entries.size());
        report["chain_map"] = is_chain_map(loaded.doc.map);
    }
    print_report(session, report, out);
    return 0;
}

int cmd_cone(Session& session, const std::string& map_file, std::ostream& out) {
    Session::LoadedMap loaded = session.load_map(map_file);
    if (loaded.doc.map.degree != 0)
        throw Error(ErrorCode::ValidationError, "cone needs a degree-0 chain map");
    DgModule c = cone(loaded.doc.map);
    ordered_json report;
    report["command"] = "cone";
    report["generators"] = c.generator_count();
    report["filt"] = c.is_filt();
    report["module"] = module_json(c, loaded.target_doc.algebra_ref);
    print_report(session, report, out);
    return 0;
}

int cmd_minimize(Session& session, const std::string& mod_file, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    MinimizationTrace tr = minimize(doc.module);
    ordered_json report;
    report["command"] = "minimize";
    report["eliminations"] = static_cast<int>(tr.log.size());
    report["generators"] = tr.result.generator_count();
    report["minimal"] = true;
    report["module"] = module_json(tr.result, doc.algebra_ref);
    print_report(session, report, out);
    return 0;
}

int cmd_normalize(Session& session, const std::string& mod_file, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    FiltNormalization norm = filt_normalize(doc.module);
    ordered_json report;
    report["command"] = "normalize";
    report["generators"] = norm.result.generator_count();
    ordered_json layers = ordered_json::array();
    for (const auto& block : norm.layers) {
        ordered_json blk = ordered_json::array();
        for (const auto& layer : block) blk.push_back(static_cast<int>(layer.size()));
        layers.push_back(blk);
    }
    report["block_layer_sizes"] = layers;
    report["module"] = module_json(norm.result, doc.algebra_ref);
    print_report(session, report, out);
    return 0;
}

int cmd_truncate(Session& session, const std::string& mod_file, int at, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    if (!doc.module.is_filt())
        throw Error(ErrorCode::NotFiltForm, "truncation needs a Filt module; run normalize first");
    TruncationTriangle tri = truncation_triangle(doc.module, at);
    ordered_json report;
    report["command"] = "truncate";
    report["at"] = at;
    report["lower_generators"] = tri.lower.generator_count();
    report["upper_generators"] = tri.upper.generator_count();
    report["lower"] = module_json(tri.lower, doc.algebra_ref);
    report["upper"] = module_json(tri.upper, doc.algebra_ref);
    print_report(session, report, out);
    return 0;
}

int cmd_hom(Session& session, const std::string& m_file, const std::string& n_file, int degree,
            std::ostream& out) {
    ModuleDocument m = session.load_module(m_file);
    ModuleDocument n = session.load_module(n_file);
    if (!m.module.algebra()->same_as(*n.module.algebra()))
        throw Error(ErrorCode::ValidationError, "hom needs modules over the same algebra");
    std::vector<ChainMap> basis = chain_maps_basis(m.module, n.module, degree);
    ordered_json report;
    report["command"] = "hom";
    report["degree"] = degree;
    report["chain_maps_dim"] = static_cast<int>(basis.size());
    if (degree == 0) report["homotopy_classes_dim"] = hom_homotopy_classes(m.module, n.module).dim;
    print_report(session, report, out);
    return 0;
}

int cmd_heart_map(Session& session, const std::string& which, const std::string& map_file, std::ostream& out) {
    Session::LoadedMap loaded = session.load_map(map_file);
    ordered_json report;
    report["command"] = "heart " + which;
    if (which == "kernel") {
        SubmoduleResult r = heart_kernel(loaded.doc.map);
        report["generators"] = r.module.generator_count();
        report["module"] = module_json(r.module, loaded.source_doc.algebra_ref);
    } else {
        QuotientResult r = heart_cokernel(loaded.doc.map);
        report["generators"] = r.module.generator_count();
        report["module"] = module_json(r.module, loaded.target_doc.algebra_ref);
    }
    print_report(session, report, out);
    return 0;
}

int cmd_heart_module(Session& session, const std::string& which, const std::string& mod_file, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    const GradedAlgebra& alg = *doc.module.algebra();
    ordered_json report;
    report["command"] = "heart " + which;
    if (which == "socle") {
        SocleFiltration soc = socle_filtration(doc.module);
        report["layers"] = static_cast<int>(soc.layer_multiplicities.size());
        ordered_json layers = ordered_json::array();
        for (const auto& mult : soc.layer_multiplicities) layers.push_back(jh_json(alg, mult));
        report["layer_multiplicities"] = layers;
    } else if (which == "jh") {
        report["multiplicities"] = jh_json(alg, jh_multiplicities(doc.module));
        report["length"] = doc.module.generator_count();
    } else { // injective
        report["injective"] = is_injective_heart(doc.module);
    }
    print_report(session, report, out);
    return 0;
}

int cmd_fitting(Session& session, const std::string& mod_file, const std::string& map_file, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    Session::LoadedMap loaded = session.load_map(map_file);
    if (!(loaded.doc.map.source == doc.module) || !(loaded.doc.map.target == doc.module))
        throw Error(ErrorCode::ValidationError, "fitting needs an endomorphism of the given module");
    FittingResult r = fitting(doc.module, loaded.doc.map);
    ordered_json report;
    report["command"] = "fitting";
    report["exponent"] = r.exponent;
    report["kernel_generators"] = r.kernel_part.generator_count();
    report["image_generators"] = r.image_part.generator_count();
    report["kernel_part"] = module_json(r.kernel_part, doc.algebra_ref);
    report["image_part"] = module_json(r.image_part, doc.algebra_ref);
    print_report(session, report, out);
    return 0;
}

int cmd_decompose(Session& session, const std::string& mod_file, std::ostream& out) {
    ModuleDocument doc = session.load_module(mod_file);
    Decomposition dec = krs_decompose(doc.module, session.seed);
    ordered_json report;
    report["command"] = "decompose";
    report["seed"] = session.seed;
    report["summands"] = static_cast<int>(dec.summands.size());
    report["certified"] = dec.certified;
    ordered_json parts = ordered_json::array();
    for (std::size_t i = 0; i < dec.summands.size(); ++i) {
        ordered_json part;
        part["generators"] = dec.summands[i].generator_count();
        std::map<VertexId, int> mult;
        for (const DgGenerator& g : dec.summands[i].generators()) mult[g.vertex] += 1;
        part["jh"] = jh_json(*doc.module.algebra(), mult);
        switch (dec.certificates[i]) {
        case SummandCertificate::Local: part["certificate"] = "local"; break;
        case SummandCertificate::LocalNonSplit: part["certificate"] = "local (non-split)"; break;
        case SummandCertificate::NoSplittingFound: part["certificate"] = "no splitting found"; break;
        }
        part["module"] = module_json(dec.summands[i], doc.algebra_ref);
        parts.push_back(std::move(part));
    }
    report["parts"] = std::move(parts);
    if (dec.certified) {
        // group the summands into isomorphism classes
        std::vector<int> cls(dec.summands.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < dec.summands.size(); ++i) {
            if (cls[i] != -1) continue;
            cls[i] = next;
            for (std::size_t j = i + 1; j < dec.summands.size(); ++j)
                if (cls[j] == -1 && modules_isomorphic(dec.summands[i], dec.summands[j], session.seed)) cls[j] = next;
            ++next;
        }
        report["iso_classes"] = cls;
    }
    print_report(session, report, out);
    return 0;
}

int cmd_koszul(Session& session, const std::string& which, const std::string& alg_file, int length, int cap,
               std::ostream& out) {
    AlgebraPtr alg = session.load_algebra(alg_file);
    if (length < 0) length = 8;
    // the degree window defaults to the length cap (pure resolutions put
    // degree i at step i), clamped to what the algebra actually stores
    if (cap < 0) cap = session.cap_override >= 0 ? session.cap_override : std::min(length, alg->degree_cap());
    ordered_json report;
    report["command"] = "koszul " + which;
    report["length_cap"] = length;
    report["degree_cap"] = cap;

    if (which == "resolve" || which == "check") {
        Resolution res = minimal_resolution(alg, length, cap);
        verify_resolution(res);
        ordered_json terms = ordered_json::array();
        for (const auto& term : res.terms) {
            ordered_json gens = ordered_json::array();
            for (const ResTermGen& g : term) {
                ordered_json e;
                e["vertex"] = alg->vertex_name(g.vertex);
                e["degree"] = g.degree;
                gens.push_back(std::move(e));
            }
            terms.push_back(std::move(gens));
        }
        report["terms"] = std::move(terms);
        report["finite"] = res.finite;
        if (which == "check") {
            KoszulCheck check = is_koszul(res);
            report["koszul"] = check.koszul;
            report["up_to_window_only"] = check.up_to_window_only;
            if (!check.koszul) {
                report["offending_term"] = check.offending_term;
                report["offending_degrees"] = check.offending_degrees;
            }
        }
    } else if (which == "module") {
        Resolution res = minimal_resolution(alg, length, cap);
        DgModule k_mod = koszul_module(res);
        report["generators"] = k_mod.generator_count();
        report["module"] = module_json(k_mod, alg_file);
    } else if (which == "ext") {
        Resolution res = minimal_resolution(alg, length, cap);
        ExtAlgebra ext = ext_algebra(res);
        report["graded_dims"] = ext.graded_dims;
        report["dim"] = ext.algebra.dim();
    } else { // verify
        KoszulDualityReport dual = verify_koszul_duality(alg, length, cap);
        report["resolution_length"] = dual.resolution_length;
        report["ext_dims"] = dual.ext_dims;
        report["end_dims"] = dual.end_dims;
        report["k_injective"] = dual.k_injective;
        report["contains_algebra"] = dual.contains_algebra;
        report["nonnegatively_graded"] = dual.nonnegatively_graded;
        report["isomorphism"] = dual.verified ? "verified" : "failed";
    }
    print_report(session, report, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Session session;
    CLI::App app{"exact engine for perfect dg modules over positively graded dg algebras", "dgper"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_mode = "text";
    app.add_option("--output", output_mode, "text|structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", session.seed, "seed for randomized searches");
    app.add_option("--cap", session.cap_override, "degree window override for resolutions");

    std::string file, file2, map_file;

    CLI::App* validate = app.add_subcommand("validate", "validate an algebra or module file");
    validate->add_option("file", file)->required();

    CLI::App* info = app.add_subcommand("info", "summarize a document");
    info->add_option("file", file)->required();

    CLI::App* cone_cmd = app.add_subcommand("cone", "mapping cone of a chain map");
    cone_cmd->add_option("-f,--map", map_file, "map file")->required();

    CLI::App* minimize_cmd = app.add_subcommand("minimize", "Gaussian elimination to minimal form");
    minimize_cmd->add_option("module", file)->required();

    CLI::App* normalize_cmd = app.add_subcommand("normalize", "sort and triangularize to Filt form");
    normalize_cmd->add_option("module", file)->required();

    int trunc_at = 0;
    CLI::App* truncate_cmd = app.add_subcommand("truncate", "t-structure truncation");
    truncate_cmd->add_option("--at", trunc_at, "truncation degree")->required();
    truncate_cmd->add_option("module", file)->required();

    int hom_degree = 0;
    CLI::App* hom_cmd = app.add_subcommand("hom", "chain map and homotopy class dimensions");
    hom_cmd->add_option("source", file)->required();
    hom_cmd->add_option("target", file2)->required();
    hom_cmd->add_option("--degree", hom_degree, "map degree (default 0)");

    CLI::App* heart_cmd = app.add_subcommand("heart", "abelian operations in the heart");
    CLI::App* hk = heart_cmd->add_subcommand("kernel", "kernel of a heart morphism");
    hk->add_option("-f,--map", map_file)->required();
    CLI::App* hc = heart_cmd->add_subcommand("cokernel", "cokernel of a heart morphism");
    hc->add_option("-f,--map", map_file)->required();
    CLI::App* hs = heart_cmd->add_subcommand("socle", "socle filtration");
    hs->add_option("module", file)->required();
    CLI::App* hj = heart_cmd->add_subcommand("jh", "Jordan-Hoelder multiplicities");
    hj->add_option("module", file)->required();
    CLI::App* hi = heart_cmd->add_subcommand("injective", "injectivity test (H^1 = 0)");
    hi->add_option("module", file)->required();
    heart_cmd->require_subcommand(1);

    CLI::App* fitting_cmd = app.add_subcommand("fitting", "Fitting decomposition along an endomorphism");
    fitting_cmd->add_option("module", file)->required();
    fitting_cmd->add_option("-f,--map", map_file)->required();

    CLI::App* decompose_cmd = app.add_subcommand("decompose", "Krull-Remak-Schmidt decomposition");
    decompose_cmd->add_option("module", file)->required();

    int koszul_length = -1, koszul_cap = -1;
    CLI::App* koszul_cmd = app.add_subcommand("koszul", "resolutions and Koszul duality");
    std::vector<CLI::App*> koszul_subs;
    for (const char* name : {"resolve", "check", "module", "ext", "verify"}) {
        CLI::App* sub = koszul_cmd->add_subcommand(name);
        sub->add_option("algebra", file)->required();
        sub->add_option("--length", koszul_length, "length cap (default 8)");
        sub->add_option("--cap", koszul_cap, "degree window (default: the algebra cap)");
        koszul_subs.push_back(sub);
    }
    koszul_cmd->require_subcommand(1);

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << "\n";
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    session.structured = output_mode == "structured";

    try {
        if (*validate) return cmd_validate(session, file, out);
        if (*info) return cmd_info(session, file, out);
        if (*cone_cmd) return cmd_cone(session, map_file, out);
        if (*minimize_cmd) return cmd_minimize(session, file, out);
        if (*normalize_cmd) return cmd_normalize(session, file, out);
        if (*truncate_cmd) return cmd_truncate(session, file, trunc_at, out);
        if (*hom_cmd) return cmd_hom(session, file, file2, hom_degree, out);
        if (*heart_cmd) {
            if (*hk) return cmd_heart_map(session, "kernel", map_file, out);
            if (*hc) return cmd_heart_map(session, "cokernel", map_file, out);
            if (*hs) return cmd_heart_module(session, "socle", file, out);
            if (*hj) return cmd_heart_module(session, "jh", file, out);
            return cmd_heart_module(session, "injective", file, out);
        }
        if (*fitting_cmd) return cmd_fitting(session, file, map_file, out);
        if (*decompose_cmd) return cmd_decompose(session, file, out);
        if (*koszul_cmd) {
            static const char* names[] = {"resolve", "check", "module", "ext", "verify"};
            for (std::size_t i = 0; i < koszul_subs.size(); ++i)
                if (*koszul_subs[i]) return cmd_koszul(session, names[i], file, koszul_length, koszul_cap, out);
        }
    } catch (const Error& e) {
        if (session.structured) {
            ordered_json report;
            report["status"] = "error";
            report["error"] = e.name();
            report["message"] = e.what();
            err << report.dump(2) << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace dgper::cli

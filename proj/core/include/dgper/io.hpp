#pragma once

#include <string>

#include "dgper/dgmod.hpp"
#include "dgper/hom.hpp"
#include "dgper/quotient.hpp"

namespace dgper {

/// Canonical file formats. Documents are JSON with a fixed key order, entries
/// sorted by (row, col) and coefficients in lowest terms, so that
/// emit(parse(doc)) is byte-identical on canonical documents. Unknown keys
/// are rejected with ParseError.

AlgebraPtr parse_algebra(const std::string& text);
std::string emit_algebra(const GradedAlgebra& alg);

/// Module documents carry an `algebra_ref` path; resolving the path is the
/// caller's business (the CLI resolves relative to the referencing file).
struct ModuleDocument {
    std::string algebra_ref;
    DgModule module;
};

ModuleDocument parse_module(const std::string& text, const AlgebraPtr& alg);
/// Peek at the algebra_ref without an algebra at hand.
std::string module_algebra_ref(const std::string& text);
std::string emit_module(const DgModule& m, const std::string& algebra_ref);

struct MapDocument {
    std::string source_ref;
    std::string target_ref;
    ChainMap map;
};

MapDocument parse_map(const std::string& text, const DgModule& source, const DgModule& target);
std::string map_source_ref(const std::string& text);
std::string map_target_ref(const std::string& text);
std::string emit_map(const ChainMap& f, const std::string& source_ref, const std::string& target_ref);

/// "algebra", "module" or "map", decided by the document's keys.
std::string sniff_document_kind(const std::string& text);

} // namespace dgper

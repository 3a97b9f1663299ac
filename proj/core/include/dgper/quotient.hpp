#pragma once

#include <string>
#include <vector>

#include "dgper/algebra.hpp"

namespace dgper {

struct Arrow {
    std::string name;
    int degree = 1;
    std::string left;
    std::string right;
};

/// One term of a noncommutative polynomial: coeff * (composable arrow path).
/// An empty path denotes the idempotent at a vertex and is not allowed in
/// relations (relations are homogeneous of degree >= 1).
struct RelationTerm {
    Scalar coeff;
    std::vector<std::string> path;
};

using Relation = std::vector<RelationTerm>;

/// Builds the quiver algebra with the given arrows modulo the two-sided ideal
/// generated by the homogeneous relations, degreewise up to degree_cap, by
/// exact linear algebra on path spaces. The surviving basis in each degree is
/// the earliest set of paths in enumeration order (arrows in input order).
AlgebraPtr build_quotient_algebra(const Field& field,
                                  const std::vector<std::string>& vertices,
                                  const std::vector<Arrow>& arrows,
                                  const std::vector<Relation>& relations,
                                  int degree_cap);

} // namespace dgper

#include <doctest.h>

#include "dgper/koszul.hpp"
#include "fixtures.hpp"

using namespace dgper;
using namespace dgper::testing;

namespace {

std::vector<int> term_sizes(const Resolution& r) {
    std::vector<int> out;
    for (const auto& t : r.terms) out.push_back(static_cast<int>(t.size()));
    return out;
}

int binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    int out = 1;
    for (int i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
    return out;
}

} // namespace

TEST_CASE("resolution of k[X]: {-1}A -> A") {
    AlgebraPtr kx = poly_x(Field::rationals(), 4);
    Resolution res = minimal_resolution(kx, 6, 4);
    CHECK(res.finite);
    CHECK(term_sizes(res) == std::vector<int>{1, 1});
    CHECK(res.terms[1][0].degree == 1);
    // the differential is multiplication by X
    REQUIRE(res.diffs[1].size() == 1);
    CHECK(res.diffs[1].at({0, 0}) == kx->basis_element(*kx->basis_id("X")));
    verify_resolution(res);
    CHECK(is_koszul(res).koszul);
}

TEST_CASE("resolution of k[X,Y]: binomial term sizes in pure degrees") {
    // oracle: the minimal resolution of the polynomial ring on m = 2
    // variables has term sizes binomial(2, i); computed independently
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    Resolution res = minimal_resolution(xy, 6, 4);
    CHECK(res.finite);
    REQUIRE(term_sizes(res) == std::vector<int>{binomial(2, 0), binomial(2, 1), binomial(2, 2)});
    for (std::size_t i = 0; i < res.terms.size(); ++i)
        for (const ResTermGen& g : res.terms[i]) CHECK(g.degree == static_cast<int>(i));
    verify_resolution(res);
    CHECK(is_koszul(res).koszul);
}

TEST_CASE("resolution of k[x]/x^3 is impure: P_{-2} generated in degree 3") {
    AlgebraPtr d2 = truncated_poly(Field::rationals(), 2, 5);
    Resolution res = minimal_resolution(d2, 2, 5);
    REQUIRE(res.terms.size() >= 3);
    CHECK(res.terms[1].size() == 1);
    CHECK(res.terms[1][0].degree == 1);
    CHECK(res.terms[2].size() == 1);
    CHECK(res.terms[2][0].degree == 3);
    KoszulCheck check = is_koszul(res);
    CHECK(!check.koszul);
    CHECK(check.offending_term == 2);
    CHECK(check.offending_degrees == std::vector<int>{3});
    verify_resolution(res);
}

TEST_CASE("the semisimple pair resolves in one step") {
    AlgebraPtr ss = semisimple_pair(Field::rationals());
    Resolution res = minimal_resolution(ss, 4, 2);
    CHECK(res.finite);
    CHECK(term_sizes(res) == std::vector<int>{2});
    CHECK(is_koszul(res).koszul);
}

TEST_CASE("nonzero derivation is rejected") {
    AlgebraPtr dga = dg_with_derivation(Field::rationals());
    try {
        minimal_resolution(dga, 3, 3);
        FAIL("expected NonzeroDerivation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonzeroDerivation);
    }
}

TEST_CASE("K(A) for k[X] is the signed two-step module") {
    AlgebraPtr kx = poly_x(Field::rationals(), 4);
    Resolution res = minimal_resolution(kx, 6, 4);
    DgModule k_mod = koszul_module(res);
    CHECK(k_mod.is_flag());
    REQUIRE(k_mod.generator_count() == 2);
    AlgebraElement entry = k_mod.differential().at({0, 1});
    CHECK(entry == -kx->basis_element(*kx->basis_id("X")));
    CHECK(cohomology(k_mod, 0).dim == 1);
    CHECK(cohomology(k_mod, 1).dim == 0);
}

TEST_CASE("K(A) for k[X,Y]: four generators, alternating signs, d^2 = 0") {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    Resolution res = minimal_resolution(xy, 6, 4);
    DgModule k_mod = koszul_module(res); // validate() has already checked d^2 = 0 exactly
    CHECK(k_mod.generator_count() == 4);
    CHECK(k_mod.is_flag());
    int deg1_entries = 0;
    for (const auto& [pos, e] : k_mod.differential()) {
        CHECK(e.degree() == 1);
        ++deg1_entries;
    }
    CHECK(deg1_entries == 4);
    CHECK(cohomology(k_mod, 0).dim == 1);
    CHECK(cohomology(k_mod, 1).dim == 0);
}

TEST_CASE("K(A) for the semisimple pair is the algebra itself") {
    AlgebraPtr ss = semisimple_pair(Field::rationals());
    Resolution res = minimal_resolution(ss, 4, 2);
    DgModule k_mod = koszul_module(res);
    CHECK(k_mod.generator_count() == 2);
    CHECK(k_mod.differential().empty());
}

TEST_CASE("koszul_module refuses impure or cut-off resolutions") {
    AlgebraPtr d2 = truncated_poly(Field::rationals(), 2, 5);
    Resolution impure = minimal_resolution(d2, 2, 5);
    CHECK_THROWS_AS(koszul_module(impure), Error);

    // k[x]/x^2 resolves periodically: the window cuts it off
    AlgebraPtr dual = truncated_poly(Field::rationals(), 1, 6);
    Resolution cut = minimal_resolution(dual, 3, 6);
    CHECK(!cut.finite);
    CHECK(is_koszul(cut).koszul); // Koszul as far as computed
    CHECK(is_koszul(cut).up_to_window_only);
    try {
        koszul_module(cut);
        FAIL("expected InfiniteResolution");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfiniteResolution);
    }
}

TEST_CASE("E(A) for k[X] is the dual numbers") {
    AlgebraPtr kx = poly_x(Field::rationals(), 4);
    Resolution res = minimal_resolution(kx, 6, 4);
    ExtAlgebra ext = ext_algebra(res);
    CHECK(ext.graded_dims == std::vector<int>{1, 1});
    CHECK(ext.algebra.dim() == 2);
    // the degree-1 generator squares to zero
    int eps = -1;
    for (std::size_t i = 0; i < ext.degree_of_basis.size(); ++i)
        if (ext.degree_of_basis[i] == 1) eps = static_cast<int>(i);
    REQUIRE(eps >= 0);
    FdaElement sq = ext.algebra.multiply(ext.algebra.basis_vec(eps), ext.algebra.basis_vec(eps));
    CHECK(ext.algebra.is_zero_elem(sq));
}

TEST_CASE("E(A) for k[X,Y] is the exterior algebra on two generators") {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    Resolution res = minimal_resolution(xy, 6, 4);
    ExtAlgebra ext = ext_algebra(res);
    CHECK(ext.graded_dims == std::vector<int>{1, 2, 1});
    std::vector<int> deg1;
    for (std::size_t i = 0; i < ext.degree_of_basis.size(); ++i)
        if (ext.degree_of_basis[i] == 1) deg1.push_back(static_cast<int>(i));
    REQUIRE(deg1.size() == 2);
    FdaElement u = ext.algebra.basis_vec(deg1[0]);
    FdaElement v = ext.algebra.basis_vec(deg1[1]);
    // squares vanish, the two generators anticommute and do not commute
    CHECK(ext.algebra.is_zero_elem(ext.algebra.multiply(u, u)));
    CHECK(ext.algebra.is_zero_elem(ext.algebra.multiply(v, v)));
    FdaElement uv = ext.algebra.multiply(u, v);
    FdaElement vu = ext.algebra.multiply(v, u);
    CHECK(!ext.algebra.is_zero_elem(uv));
    CHECK(uv == ext.algebra.scale(vu, -Scalar::one(Field::prime(7))));
}

TEST_CASE("E(A) for the semisimple pair is A^0") {
    AlgebraPtr ss = semisimple_pair(Field::rationals());
    Resolution res = minimal_resolution(ss, 4, 2);
    ExtAlgebra ext = ext_algebra(res);
    CHECK(ext.graded_dims == std::vector<int>{2});
    CHECK(ext.algebra.dim() == 2);
}

TEST_CASE("Koszul duality verifies for k[X] over both fields") {
    for (const Field& k : {Field::rationals(), Field::prime(7)}) {
        AlgebraPtr kx = poly_x(k, 4);
        KoszulDualityReport report = verify_koszul_duality(kx, 6, 4);
        CHECK(report.verified);
        CHECK(report.ext_dims == std::vector<int>{1, 1});
        CHECK(report.end_dims == std::vector<int>{1, 1});
        CHECK(report.k_injective);
        CHECK(report.contains_algebra);
        CHECK(report.nonnegatively_graded);
        // the endomorphisms of K are the upper triangular pairs (λ μ; 0 λ)
        std::vector<ChainMap> endos = chain_maps_basis(report.koszul_mod, report.koszul_mod, 0);
        CHECK(endos.size() == 2);
        for (const ChainMap& f : endos) {
            Mat bar = f.scalar_part();
            CHECK(bar.at(1, 0).is_zero());
            CHECK(bar.at(0, 0) == bar.at(1, 1));
        }
    }
}

TEST_CASE("Koszul duality verifies for k[X,Y] over F7") {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    KoszulDualityReport report = verify_koszul_duality(xy, 6, 4);
    CHECK(report.verified);
    CHECK(report.ext_dims == std::vector<int>{1, 2, 1});
    CHECK(report.end_dims == std::vector<int>{1, 2, 1});
}

TEST_CASE("Koszul duality verifies for the semisimple pair") {
    AlgebraPtr ss = semisimple_pair(Field::rationals());
    KoszulDualityReport report = verify_koszul_duality(ss, 4, 2);
    CHECK(report.verified);
    CHECK(report.ext_dims == std::vector<int>{2});
    CHECK(report.end_dims == std::vector<int>{2});
}

TEST_CASE("duality verification refuses non-Koszul input") {
    AlgebraPtr d2 = truncated_poly(Field::rationals(), 2, 5);
    try {
        verify_koszul_duality(d2, 3, 5);
        FAIL("expected NotKoszul");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotKoszul);
    }
}

TEST_CASE("socle layers of K(A) match the resolution terms for k[X,Y]") {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    Resolution res = minimal_resolution(xy, 6, 4);
    DgModule k_mod = koszul_module(res);
    SocleFiltration soc = socle_filtration(k_mod);
    REQUIRE(soc.layer_multiplicities.size() == res.terms.size());
    for (std::size_t i = 0; i < res.terms.size(); ++i) {
        int expected = static_cast<int>(res.terms[i].size());
        int got = 0;
        for (const auto& [v, c] : soc.layer_multiplicities[i]) got += c;
        CHECK(got == expected);
    }
}

TEST_CASE("resolution degree window cannot exceed the algebra cap") {
    AlgebraPtr kx = poly_x(Field::rationals(), 3);
    try {
        minimal_resolution(kx, 4, 5);
        FAIL("expected DegreeCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeCapExceeded);
    }
}

TEST_CASE("a dead stored tail blocks premature finiteness claims") {
    // k[x]/x^3 with window 2: the second syzygy appears in degree 3, which the
    // window cannot see; the resolution must not be reported finite
    AlgebraPtr d2 = truncated_poly(Field::rationals(), 2, 3);
    Resolution cut = minimal_resolution(d2, 4, 2);
    CHECK(cut.terms.size() == 2); // P_0, P_{-1} found, P_{-2} invisible
    CHECK(!cut.finite);

    // with window 5 the next terms appear in degrees 3 and 4
    AlgebraPtr d2w = truncated_poly(Field::rationals(), 2, 5);
    Resolution wide = minimal_resolution(d2w, 3, 5);
    REQUIRE(wide.terms.size() == 4);
    CHECK(wide.terms[2][0].degree == 3);
    CHECK(wide.terms[3][0].degree == 4);
    CHECK(!wide.finite); // periodic, cut off by the length cap
}

TEST_CASE("Koszul duality for the path algebra of a two-vertex quiver") {
    // hereditary, so the resolution has length one and stays pure; the dual
    // carries the opposite arrow
    AlgebraPtr a2 = rad2(Field::prime(7), 3);
    Resolution res = minimal_resolution(a2, 6, 3);
    REQUIRE(res.finite);
    REQUIRE(res.terms.size() == 2);
    CHECK(res.terms[0].size() == 2);
    CHECK(res.terms[1].size() == 1);
    CHECK(res.terms[1][0].degree == 1);
    CHECK(is_koszul(res).koszul);
    ExtAlgebra ext = ext_algebra(res);
    CHECK(ext.graded_dims == std::vector<int>{2, 1});
    KoszulDualityReport report = verify_koszul_duality(a2, 6, 3);
    CHECK(report.verified);
    CHECK(report.end_dims == std::vector<int>{2, 1});
}

TEST_CASE("Koszul duality for a three-vertex quiver with a zero relation") {
    // u -a-> v -b-> w with b a = 0: quadratic monomial, second syzygy at
    // degree 2 over the last vertex
    Field k = Field::prime(7);
    Relation zero_comp;
    zero_comp.push_back(RelationTerm{Scalar::one(k), {"a", "b"}});
    AlgebraPtr a3 = build_quotient_algebra(k, {"u", "v", "w"},
                                           {Arrow{"a", 1, "u", "v"}, Arrow{"b", 1, "v", "w"}}, {zero_comp}, 3);
    Resolution res = minimal_resolution(a3, 6, 3);
    REQUIRE(res.finite);
    REQUIRE(res.terms.size() == 3);
    CHECK(res.terms[0].size() == 3);
    CHECK(res.terms[1].size() == 2);
    CHECK(res.terms[2].size() == 1);
    CHECK(is_koszul(res).koszul);
    ExtAlgebra ext = ext_algebra(res);
    CHECK(ext.graded_dims == std::vector<int>{3, 2, 1});
    // degree-1 classes compose into the degree-2 class in one order only
    std::vector<int> deg1, deg2;
    for (std::size_t i = 0; i < ext.degree_of_basis.size(); ++i) {
        if (ext.degree_of_basis[i] == 1) deg1.push_back(static_cast<int>(i));
        if (ext.degree_of_basis[i] == 2) deg2.push_back(static_cast<int>(i));
    }
    REQUIRE(deg1.size() == 2);
    REQUIRE(deg2.size() == 1);
    FdaElement p1 = ext.algebra.multiply(ext.algebra.basis_vec(deg1[0]), ext.algebra.basis_vec(deg1[1]));
    FdaElement p2 = ext.algebra.multiply(ext.algebra.basis_vec(deg1[1]), ext.algebra.basis_vec(deg1[0]));
    CHECK(ext.algebra.is_zero_elem(p1) != ext.algebra.is_zero_elem(p2));
    KoszulDualityReport report = verify_koszul_duality(a3, 6, 3);
    CHECK(report.verified);
    // the heart-side module K(A) mixes all three vertices
    std::map<VertexId, int> jh = jh_multiplicities(report.koszul_mod);
    CHECK(jh.size() == 3);
}

TEST_CASE("Koszul duality across random acyclic monomial quadratic algebras") {
    // quadratic monomial quotients of acyclic quiver algebras are Koszul with
    // finite resolutions, so the whole pipeline must verify on every draw
    std::mt19937_64 rng(4096);
    Field k = Field::prime(7);
    int verified = 0;
    for (int trial = 0; trial < 12; ++trial) {
        int nv = 3 + static_cast<int>(rng() % 2);
        std::vector<std::string> vertices;
        for (int v = 0; v < nv; ++v) vertices.push_back("v" + std::to_string(v));
        std::vector<Arrow> arrows;
        for (int u = 0; u < nv; ++u)
            for (int w = u + 1; w < nv; ++w) {
                if (rng() % 3 == 0) continue; // drop some arrows
                arrows.push_back(Arrow{"a" + std::to_string(u) + std::to_string(w), 1,
                                       vertices[static_cast<std::size_t>(u)],
                                       vertices[static_cast<std::size_t>(w)]});
            }
        if (arrows.empty()) continue;
        std::vector<Relation> rels;
        for (const Arrow& first : arrows)
            for (const Arrow& second : arrows) {
                if (first.right != second.left) continue;
                if (rng() % 2 == 0) continue; // kill about half the composites
                Relation r;
                r.push_back(RelationTerm{Scalar::one(k), {first.name, second.name}});
                rels.push_back(std::move(r));
            }
        AlgebraPtr alg = build_quotient_algebra(k, vertices, arrows, rels, nv);
        KoszulDualityReport report = verify_koszul_duality(alg, nv + 1, nv);
        CHECK(report.verified);
        // E(A) in degree 1 is spanned by the arrows
        int arrow_count = static_cast<int>(arrows.size());
        REQUIRE(report.ext_dims.size() >= 1);
        CHECK(report.ext_dims[0] == nv);
        if (report.ext_dims.size() >= 2) CHECK(report.ext_dims[1] == arrow_count);
        ++verified;
    }
    CHECK(verified >= 10);
}

TEST_CASE("Koszul duality for the Kronecker quiver and rational symmetric algebras") {
    // doubled arrow between two vertices
    Field k = Field::prime(7);
    AlgebraPtr kron = build_quotient_algebra(
        k, {"u", "w"}, {Arrow{"a", 1, "u", "w"}, Arrow{"b", 1, "u", "w"}}, {}, 3);
    KoszulDualityReport kr = verify_koszul_duality(kron, 4, 3);
    CHECK(kr.verified);
    CHECK(kr.ext_dims == std::vector<int>{2, 2});

    // two commuting variables over the rationals: denominator growth in the
    // syzygy solves stays exact
    Relation comm;
    comm.push_back(RelationTerm{Scalar::one(Field::rationals()), {"X", "Y"}});
    comm.push_back(RelationTerm{-Scalar::one(Field::rationals()), {"Y", "X"}});
    AlgebraPtr xyq = build_quotient_algebra(Field::rationals(), {"v"},
                                            {Arrow{"X", 1, "v", "v"}, Arrow{"Y", 1, "v", "v"}}, {comm}, 4);
    KoszulDualityReport qr = verify_koszul_duality(xyq, 6, 4);
    CHECK(qr.verified);
    CHECK(qr.ext_dims == std::vector<int>{1, 2, 1});
}

#pragma once

#include "dgper/fda.hpp"

namespace dgper {

/// The heart is computed on dgFlag objects: Filt modules with every shift
/// zero. Degree-0 maps between such modules have scalar entries, so heart
/// morphisms are exactly the scalar matrices satisfying the chain condition,
/// and kernels/cokernels come from exact linear algebra on generator spaces.

bool is_flag_module(const DgModule& m);

struct SubmoduleResult {
    DgModule module;
    ChainMap inclusion; // module -> ambient
};

struct QuotientResult {
    DgModule module;
    ChainMap projection; // ambient -> module
};

/// Kernel of a heart morphism: generators are a reduced-echelon basis of
/// ker f̄, the differential is solved exactly in degree 1.
SubmoduleResult heart_kernel(const ChainMap& f);

/// Image, presented inside the target (reduced-echelon basis of im f̄).
SubmoduleResult heart_image(const ChainMap& f);

/// Cokernel: quotient of the target by im f̄ with the induced differential.
QuotientResult heart_cokernel(const ChainMap& f);

/// 0 = soc_0 ⊂ soc_1 ⊂ ... ⊂ soc_m = M with soc_1 = Z^0(M)A, computed by
/// iterated kernel extraction.
struct SocleFiltration {
    std::vector<DgModule> socles;                   // soc_1, ..., soc_m (= M up to iso)
    std::vector<ChainMap> inclusions;               // soc_i -> M
    std::vector<std::map<VertexId, int>> layer_multiplicities;
    std::vector<std::vector<std::vector<Scalar>>> layer_vectors; // per layer, vectors in M generator coordinates
};

SocleFiltration socle_filtration(const DgModule& m);

/// Jordan-Hoelder multiplicities: the number of generators per vertex.
std::map<VertexId, int> jh_multiplicities(const DgModule& m);

/// Injective in the heart iff H^1(M) = 0.
bool is_injective_heart(const DgModule& m);

/// Hom_♥(N, I) as a left module over End_♥(I), for I injective and
/// containing every simple (NotInjective / MissingSimple otherwise).
struct HeartHomModule {
    EndAlgebra end;                 // End_♥(I)
    int dim = 0;                    // dim Hom(N, I)
    std::vector<ChainMap> hom_basis;
    std::vector<Mat> action;        // per End basis element, its matrix on hom coordinates
};

HeartHomModule heart_hom_module(const DgModule& n, const DgModule& i);

} // namespace dgper

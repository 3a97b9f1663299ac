#pragma once

#include <optional>

#include "dgper/dgmod.hpp"

namespace dgper {

/// Homogeneous degree-t map of graded modules f : M -> N, stored as the
/// matrix (f_{ji}) with f_{ji} in e_{y_j} A^{m_j - l_i + t} e_{x_i}. A chain
/// map additionally satisfies d_N f = (-1)^t f d_M; a homotopy is an
/// arbitrary degree -1 map.
struct ChainMap {
    DgModule source;
    DgModule target;
    int degree = 0;
    ElementMatrix entries;

    static ChainMap zero(const DgModule& source, const DgModule& target, int degree);
    static ChainMap identity(const DgModule& m);

    AlgebraElement entry(int j, int i) const;
    void set_entry(int j, int i, const AlgebraElement& a); // checks the slot

    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap scaled(const Scalar& c) const;
    bool operator==(const ChainMap& o) const;

    /// Scalar generator-level matrix f̄ (entries where m_j = l_i + degree...
    /// i.e. the degree-0 components), rows = target generators.
    Mat scalar_part() const;

    bool is_zero() const { return entries.empty(); }
};

/// g after f (g ∘ f); degrees add.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// d_N f - (-1)^t f d_M, the Hom-complex differential of f.
ChainMap hom_differential(const ChainMap& f);

bool is_chain_map(const ChainMap& f);

/// Flat coordinates of the space of all homogeneous degree-t graded maps
/// M -> N. Throws CapExceeded when a component would live above the cap.
struct HomSpace {
    std::vector<std::tuple<int, int, BasisId>> coords; // (row j, col i, basis)
    std::map<std::tuple<int, int, BasisId>, int> index;
    int dim = 0;
};

HomSpace hom_space(const DgModule& m, const DgModule& n, int t);

std::vector<Scalar> flatten(const HomSpace& space, const ChainMap& f, const Field& k);
ChainMap unflatten(const HomSpace& space, const DgModule& m, const DgModule& n, int t,
                   const std::vector<Scalar>& v);

/// Matrix of the Hom-complex differential from degree-t maps to degree-(t+1)
/// maps in the flat coordinates.
Mat hom_differential_matrix(const DgModule& m, const DgModule& n, int t,
                            const HomSpace& from, const HomSpace& to);

/// Basis of the space of degree-t chain maps M -> N (kernel of the Hom
/// differential), deterministic order.
std::vector<ChainMap> chain_maps_basis(const DgModule& m, const DgModule& n, int t);

/// Hom in the homotopy category: degree-0 chain maps modulo the image of the
/// homotopy operator h -> d_N h + h d_M.
struct HotHom {
    int dim = 0;
    std::vector<ChainMap> representatives;
};

HotHom hom_homotopy_classes(const DgModule& m, const DgModule& n);

/// Solves f - g = d_N h + h d_M exactly; returns the witnessing homotopy.
std::optional<ChainMap> homotopy_between(const ChainMap& f, const ChainMap& g);

inline bool is_homotopic(const ChainMap& f, const ChainMap& g) { return homotopy_between(f, g).has_value(); }

/// For degree-0 maps between Filt modules: f is an isomorphism in dgMod iff
/// the scalar generator matrix f̄ is invertible.
bool is_dgmod_iso(const ChainMap& f);

/// Inverse of a dgMod isomorphism between Filt modules: the entries are
/// solved exactly from f g = id, g f = id.
std::optional<ChainMap> invert_iso(const ChainMap& f);

} // namespace dgper

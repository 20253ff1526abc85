#ifndef QONS_CURRENTS_HPP
#define QONS_CURRENTS_HPP

#include <functional>
#include <map>

#include "qons/onsager.hpp"

namespace qons {

// Images of the Chevalley generators on N sites, built from the two-dimensional
// evaluation representation at the homogeneous point and the iterated coproduct
// (site 1 = rightmost factor).
struct ChevalleyRep {
    int sites = 0;
    Rat q;
    SpMat<Rat> e0, e1, f0, f1, qh0, qh1, qh0_inv, qh1_inv;
    int dim() const { return 1 << sites; }
};

ChevalleyRep build_chevalley(const ModelParams& p, int sites);

struct ChevalleyCheck {
    bool defining = false;  // [h,e],[h,f],[e,f] relations
    bool serre = false;     // both q-Serre relations
    bool central = false;   // q^{h0}q^{h1} central
    bool all() const { return defining && serre && central; }
};
ChevalleyCheck check_chevalley(const ChevalleyRep& rep);

enum class CoidealRegime { qons_right, qons_left, aug_right, aug_left };

// Generator images of the coideal realizations on N sites, obtained by
// iterating the coaction from the scalar seed.
struct CoidealRealization {
    CoidealRegime regime;
    int sites = 0;
    // qons regimes: two generators (w0, w1); augmented: four (k0, k1, z1, zt1)
    std::vector<SpMat<Rat>> gens;
};

CoidealRealization build_coideal(const ModelParams& p, int sites, CoidealRegime regime);

// Entry-by-entry comparison with the matching fundamentals from build_fundamentals.
bool coideal_matches_family(const CoidealRealization& c, const GeneratorFamily& f);

// Coassociativity contract of the coaction on generator images:
// (Delta x id) o delta == (id x delta) o delta at the given site count.
bool check_coaction_coassociativity(const ModelParams& p, int sites, CoidealRegime regime);

// Mode-level current-algebra relations (the generating-function relations
// expanded coefficient-wise in inverse powers of U for both arguments).
struct ModeExpansionReport {
    struct Item {
        std::string relation;  // ec1..ec16 tag
        int a, b;              // coefficient orders
        bool pass;
    };
    std::vector<Item> items;
    bool all_pass() const {
        for (auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};
ModeExpansionReport check_mode_expansion(const GeneratorFamily& f, int kmax);

// Finite checks of the intertwiner component systems: the coaction side
// (pi_zeta x id)[delta(a)] against the displayed component coefficients, and
// the type-I reduction (id x pi_zeta)[Delta(x)] pattern.
struct IntertwinerFiniteReport {
    bool type2_components = false;  // component equations of the regime's type-II system
    bool type1_reduction = false;   // reduction to the coproduct form
    bool prefactor_symmetry = false;
};
IntertwinerFiniteReport check_vertex_intertwining_finite(const ModelParams& p, int sites,
                                                         CoidealRegime regime, ParamRng& rng);

}  // namespace qons

#endif

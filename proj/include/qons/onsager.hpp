#ifndef QONS_ONSAGER_HPP
#define QONS_ONSAGER_HPP

#include <string>
#include <vector>

#include "qons/linalg.hpp"
#include "qons/params.hpp"

namespace qons {

enum class FamilyKind { aq, aq_diag, aq_bar, aq_diag_bar };

inline const char* kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::aq: return "A_q";
        case FamilyKind::aq_diag: return "A_q_diag";
        case FamilyKind::aq_bar: return "A_q_bar";
        case FamilyKind::aq_diag_bar: return "A_q_diag_bar";
    }
    return "?";
}

// The indexed mode families {W_{-k}, W_{k+1}, G_{k+1}, Gt_{k+1}} (or the
// K/Z quadruples for the diagonal kind) on an N-site chain, modes k < depth.
struct GeneratorFamily {
    FamilyKind kind = FamilyKind::aq;
    int sites = 0;
    int depth = 0;
    ModelParams params;
    std::vector<SpMat<Rat>> wm, wp, g, gt;  // index k: W_{-k}, W_{k+1}, G_{k+1}, Gt_{k+1}

    int dim() const { return 1 << sites; }
    const SpMat<Rat>& w0() const { return wm.at(0); }
    const SpMat<Rat>& w1() const { return wp.at(0); }
    bool diag_kind() const { return kind == FamilyKind::aq_diag || kind == FamilyKind::aq_diag_bar; }
    // identity shift that turns Z-modes into (subsKZ)-images of G-modes
    Rat z_shift() const {
        if (!diag_kind()) return Rat(0);
        bool bar = kind == FamilyKind::aq_diag_bar;
        Rat ep = bar ? params.beps_p : params.eps_p;
        Rat em = bar ? params.beps_m : params.eps_m;
        return ep * em * (params.q - params.qinv());
    }
};

// Fundamental generators on N sites (one-site recursions; the depth-0 slice).
GeneratorFamily build_fundamentals(const ModelParams& p, int sites, FamilyKind kind);

// Full family to the given mode depth. Higher modes are constructed by exact
// closure of the algebra relations; the per-level identity freedom is fixed so
// that the finite-chain truncation relations (the Davies-type structure) hold
// with one shared coefficient profile across all four strands.
GeneratorFamily build_family(const ModelParams& p, int sites, int depth, FamilyKind kind);

enum class RelationSet { q_dolan_grady, augmented, aq_full };

struct RelationInstance {
    std::string id;       // e.g. "qOns.1a"
    int k = 0, l = 0;
    bool pass = false;
};
struct RelationReport {
    std::vector<RelationInstance> instances;
    bool all_pass() const {
        for (const auto& r : instances)
            if (!r.pass) return false;
        return true;
    }
};

// Checks the selected defining relations exactly on the family.
RelationReport check_relations(const GeneratorFamily& f, RelationSet set, int kmax);

// One linear truncation relation: coefficients on {leading mode, tail modes}
// plus an inhomogeneous identity term, annihilating a family strand.
struct DaviesRelation {
    std::string strand;          // "W-", "W+", "G", "Gt"
    std::vector<Rat> coeffs;     // c_0..c_N on modes j=0..N of the strand slice
    Rat inhom;                   // coefficient of the identity (0 for G strands)
    bool annihilates = false;
};
struct DaviesReport {
    std::vector<DaviesRelation> relations;
    bool shared_profile = false;  // all strands share the same mode-coefficient profile
    bool degenerate = false;      // family of zero operators
    bool found() const { return !relations.empty(); }
};

// Discovers the truncation relations by exact nullspace computation and
// verifies the four strands share one coefficient profile.
DaviesReport find_linear_relations(const GeneratorFamily& f);

// Mutually commuting hierarchy elements; k = 0..count-1.
//   plain A_q:       I_{2k+1}  (left-boundary weights beps/bk over right family)
//   barred A_q:      Ibar_{2k+1} (right-boundary weights over the barred family)
//   diag kinds:      J_{2k+1} / Jbar_{2k+1}
std::vector<SpMat<Rat>> build_hierarchy(const GeneratorFamily& f, const ModelParams& p, int count);

}  // namespace qons

#endif

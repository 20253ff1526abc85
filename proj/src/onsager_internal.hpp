#ifndef QONS_ONSAGER_INTERNAL_HPP
#define QONS_ONSAGER_INTERNAL_HPP

#include "qons/onsager.hpp"

namespace qons {

// chain of level solutions with recorded slack directions
struct Chain {
    GeneratorFamily fam;
    // slack[level-1][dir][block], blocks = {wm, wp, g, gt} at that level
    std::vector<std::vector<std::vector<SpMat<Rat>>>> slack;
};

Chain build_chain_internal(const ModelParams& p, int sites, int depth, FamilyKind kind,
                           const std::vector<std::vector<Rat>>* alphas);

GeneratorFamily pin_family(const ModelParams& p, int sites, int depth, FamilyKind kind);

// (opbar)/(opdiagbar) one-site recursions, used as an independent cross-check
// of the site-reversal construction of the barred families.
GeneratorFamily build_fundamentals_bar_direct(const ModelParams& p, int sites, FamilyKind kind);

}  // namespace qons

#endif

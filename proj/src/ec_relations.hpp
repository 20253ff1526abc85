#ifndef QONS_EC_RELATIONS_HPP
#define QONS_EC_RELATIONS_HPP

#include <string>
#include <vector>

#include "qons/onsager.hpp"

namespace qons {
namespace ec {

// The current-algebra defining relations, expanded into flat product terms.
// Series ids: 0 = W_+ (modes W_{-k} at exponent k+1), 1 = W_-, 2 = Z_+, 3 = Z_-.
// A term contributes  coef * S[s1][e1] * S[s2][e2]  to the residual at (a,b),
// where e1/e2 are a or b according to v1/v2, shifted by (da, db).
struct Term {
    Rat coef;
    int s1;
    bool v1_is_a;
    int s2;
    bool v2_is_a;
    int da = 0, db = 0;
};
struct Relation {
    std::string tag;
    std::vector<Term> terms;
};

inline std::vector<Relation> relations(const Rat& q) {
    Rat qi = Rat(1) / q;
    Rat qq = q + qi;
    Rat c4 = (q - qi) / (qq * qq * qq);
    Rat q2 = q * q, q2i = qi * qi;
    Rat c5inv = Rat(1) / ((q2 - q2i) * qq * qq);
    Rat qm = q - qi;
    std::vector<Relation> rels;
    auto T = [](Rat c, int s1, bool a1, int s2, bool a2, int da = 0, int db = 0) {
        return Term{std::move(c), s1, a1, s2, a2, da, db};
    };
    for (int s : {0, 1}) {
        rels.push_back({std::string("ec1") + (s ? "-" : "+"),
                        {T(1, s, true, s, false), T(-1, s, false, s, true)}});
    }
    rels.push_back({"ec3",
                    {T(1, 0, true, 1, false), T(-1, 1, false, 0, true), T(1, 1, true, 0, false),
                     T(-1, 0, false, 1, true)}});
    for (int s : {0, 1}) {
        int o = 1 - s;
        int zs = 2 + s, zo = 2 + o;
        std::string sfx = s ? "-" : "+";
        rels.push_back({"ec4" + sfx,
                        {T(1, s, true, o, false, -1, 0), T(-1, o, false, s, true, -1, 0),
                         T(-1, s, true, o, false, 0, -1), T(1, o, false, s, true, 0, -1),
                         T(-c4, zs, true, zo, false), T(c4, zs, false, zo, true)}});
        // ec5: (U(z)-U(x)) inner + (1 - U(z)U(x)) anti
        std::vector<Term> t5;
        auto add_inner = [&](int da, int db, Rat sign) {
            t5.push_back(T(sign, s, true, s, false, da, db));
            t5.push_back(T(-sign, o, true, o, false, da, db));
            t5.push_back(T(sign * c5inv, zs, true, zo, false, da, db));
            t5.push_back(T(-sign * c5inv, zo, false, zs, true, da, db));
        };
        add_inner(-1, 0, Rat(1));
        add_inner(0, -1, Rat(-1));
        t5.push_back(T(1, s, true, o, false));
        t5.push_back(T(-1, s, false, o, true));
        t5.push_back(T(-1, s, true, o, false, -1, -1));
        t5.push_back(T(1, s, false, o, true, -1, -1));
        rels.push_back({"ec5" + sfx, std::move(t5)});
        // ec6
        rels.push_back({"ec6" + sfx,
                        {T(q, zo, false, s, true, -1, 0), T(-qi, s, true, zo, false, -1, 0),
                         T(-q, zo, true, s, false, 0, -1), T(qi, s, false, zo, true, 0, -1),
                         T(-qm, o, true, zo, false), T(qm, o, false, zo, true)}});
        // ec7
        rels.push_back({"ec7" + sfx,
                        {T(q, o, true, zo, false, -1, 0), T(-qi, zo, false, o, true, -1, 0),
                         T(-q, o, false, zo, true, 0, -1), T(qi, zo, true, o, false, 0, -1),
                         T(-qm, s, true, zo, false), T(qm, s, false, zo, true)}});
    }
    for (int e : {0, 1}) {
        for (int s : {0, 1}) {
            int ze = 2 + e;
            rels.push_back({std::string("ec8") + (e ? "-" : "+") + (s ? "-" : "+"),
                            {T(1, ze, true, s, false), T(-1, s, false, ze, true),
                             T(1, s, true, ze, false), T(-1, ze, false, s, true)}});
        }
    }
    for (int s : {0, 1}) {
        int zs = 2 + s;
        rels.push_back({std::string("ec9") + (s ? "-" : "+"),
                        {T(1, zs, true, zs, false), T(-1, zs, false, zs, true)}});
    }
    rels.push_back({"ec16",
                    {T(1, 2, true, 3, false), T(-1, 3, false, 2, true), T(1, 3, true, 2, false),
                     T(-1, 2, false, 3, true)}});
    return rels;
}

// The four mode series of a family under the current homomorphism.
// series[s][e] = coefficient matrix of U^{-e}; index e = 0..depth.
// For the plain kind, Z series carry the constant shifts at e = 0.
struct Series {
    std::vector<std::vector<SpMat<Rat>>> s;  // [4][depth+1]
    int depth;                               // exponents 0..depth exact
};

inline Series family_series(const GeneratorFamily& f) {
    int dim = f.dim();
    const Rat& q = f.params.q;
    Rat qi = f.params.qinv();
    Series out;
    out.depth = f.depth;  // exponents 0..depth, with modes at 1..depth
    auto zero = SpMat<Rat>::zero(dim);
    out.s.assign(4, std::vector<SpMat<Rat>>(f.depth + 1, zero));
    bool diag = f.diag_kind();
    Rat gk = diag ? Rat(1) : f.params.k_m;   // Z+ = (1/k_-) sum G ... for the plain kind
    Rat gkt = diag ? Rat(1) : f.params.k_p;
    if (f.kind == FamilyKind::aq_bar) {      // (replacb): k_pm -> bk_mp
        gk = f.params.bk_p;
        gkt = f.params.bk_m;
    }
    if (!diag) {
        Rat shift_p = (f.kind == FamilyKind::aq ? f.params.k_p : f.params.bk_m) * (q + qi) * (q + qi) / (q - qi);
        Rat shift_m = (f.kind == FamilyKind::aq ? f.params.k_m : f.params.bk_p) * (q + qi) * (q + qi) / (q - qi);
        out.s[2][0] = SpMat<Rat>::identity(dim) * shift_p;
        out.s[3][0] = SpMat<Rat>::identity(dim) * shift_m;
    }
    for (int k = 0; k < f.depth; ++k) {
        out.s[0][k + 1] = f.wm[k];
        out.s[1][k + 1] = f.wp[k];
        out.s[2][k + 1] = f.g[k] * (Rat(1) / gk);
        out.s[3][k + 1] = f.gt[k] * (Rat(1) / gkt);
    }
    return out;
}

}  // namespace ec
}  // namespace qons

#endif

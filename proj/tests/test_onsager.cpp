#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qons/currents.hpp"
#include "onsager_internal.hpp"
#include "qons/onsager.hpp"

using namespace qons;

namespace {
ModelParams fixed_params() {
    ModelParams p;
    p.q = Rat(3, 5);
    p.eps_p = Rat(2, 3);
    p.eps_m = Rat(5, 7);
    p.k_p = Rat(1, 2);
    p.k_m = Rat(4, 3);
    p.beps_p = Rat(3, 4);
    p.beps_m = Rat(7, 5);
    p.bk_p = Rat(2, 7);
    p.bk_m = Rat(5, 6);
    return p;
}
}  // namespace

TEST_CASE("fundamentals_one_site_matches_recursion_seed") {
    auto p = fixed_params();
    auto f = build_fundamentals(p, 1, FamilyKind::aq);
    SpMat<Rat> w0(2, 2);
    w0.set(0, 0, p.eps_p * p.q);
    w0.set(1, 1, p.eps_p / p.q);
    w0.set(0, 1, p.k_p);
    w0.set(1, 0, p.k_m);
    CHECK(f.wm[0] == w0);
    CHECK(f.g[0] == qcomm(p.q, f.wp[0], f.wm[0]));
    CHECK(f.gt[0] == qcomm(p.q, f.wm[0], f.wp[0]));
}

TEST_CASE("footnote_identity_N3") {
    auto p = fixed_params();
    for (auto kind : {FamilyKind::aq, FamilyKind::aq_bar}) {
        auto f = build_fundamentals(p, 3, kind);
        CHECK(f.g[0] == qcomm(p.q, f.wp[0], f.wm[0]));
        CHECK(f.gt[0] == qcomm(p.q, f.wm[0], f.wp[0]));
    }
    for (auto kind : {FamilyKind::aq_diag, FamilyKind::aq_diag_bar}) {
        auto f = build_fundamentals(p, 3, kind);
        CHECK(check_relations(f, RelationSet::augmented, 0).all_pass());
    }
}

TEST_CASE("barred_reversal_equals_direct_recursion") {
    auto p = fixed_params();
    for (int n = 1; n <= 3; ++n) {
        for (auto kind : {FamilyKind::aq_bar, FamilyKind::aq_diag_bar}) {
            auto via_reversal = build_fundamentals(p, n, kind);
            auto direct = build_fundamentals_bar_direct(p, n, kind);
            CHECK(via_reversal.wm[0] == direct.wm[0]);
            CHECK(via_reversal.wp[0] == direct.wp[0]);
            CHECK(via_reversal.g[0] == direct.g[0]);
            CHECK(via_reversal.gt[0] == direct.gt[0]);
        }
    }
}

TEST_CASE("talg_taug_all_regimes") {
    auto p = fixed_params();
    for (int n = 1; n <= 3; ++n) {
        CHECK(check_relations(build_fundamentals(p, n, FamilyKind::aq), RelationSet::q_dolan_grady, 0).all_pass());
        CHECK(check_relations(build_fundamentals(p, n, FamilyKind::aq_bar), RelationSet::q_dolan_grady, 0).all_pass());
        CHECK(check_relations(build_fundamentals(p, n, FamilyKind::aq_diag), RelationSet::augmented, 0).all_pass());
        CHECK(check_relations(build_fundamentals(p, n, FamilyKind::aq_diag_bar), RelationSet::augmented, 0).all_pass());
    }
}

TEST_CASE("degenerate_zero_parameters") {
    ModelParams p = fixed_params();
    p.eps_p = 0;
    p.eps_m = 0;
    p.k_p = 0;
    p.k_m = 0;
    auto f = build_fundamentals(p, 2, FamilyKind::aq_diag);
    CHECK(f.wm[0].is_zero());
    CHECK(check_relations(f, RelationSet::augmented, 0).all_pass());
}

TEST_CASE("aq_requires_offdiagonal_couplings") {
    ModelParams p = fixed_params();
    p.k_p = 0;
    CHECK_THROWS_AS((void)build_fundamentals(p, 1, FamilyKind::aq), domain_error);
}

TEST_CASE("pinned_family_full_relations_N1") {
    auto p = fixed_params();
    auto f = build_family(p, 1, 4, FamilyKind::aq);
    CHECK(check_relations(f, RelationSet::aq_full, 2).all_pass());
    CHECK(check_mode_expansion(f, 2).all_pass());
    auto dav = find_linear_relations(f);
    CHECK(dav.found());
    CHECK(dav.shared_profile);
    for (auto& r : dav.relations) CHECK(r.annihilates);
}

TEST_CASE("pinned_family_full_relations_N2") {
    auto p = fixed_params();
    auto f = build_family(p, 2, 5, FamilyKind::aq);
    CHECK(check_relations(f, RelationSet::aq_full, 3).all_pass());
    CHECK(check_mode_expansion(f, 3).all_pass());
    auto dav = find_linear_relations(f);
    CHECK(dav.found());
    CHECK(dav.shared_profile);
    for (auto& r : dav.relations) CHECK(r.annihilates);
}

TEST_CASE("pinned_family_diag_N1_N2") {
    auto p = fixed_params();
    p.k_p = 0;
    p.k_m = 0;
    for (int n : {1, 2}) {
        auto f = build_family(p, n, n + 3, FamilyKind::aq_diag);
        CHECK(check_relations(f, RelationSet::aq_full, 2).all_pass());
        CHECK(check_mode_expansion(f, 2).all_pass());
        auto dav = find_linear_relations(f);
        CHECK(dav.found());
        CHECK(dav.shared_profile);
        for (auto& r : dav.relations) CHECK(r.annihilates);
    }
}

TEST_CASE("hierarchy_commutes") {
    auto p = fixed_params();
    for (int n : {1, 2, 3}) {
        auto f = build_family(p, n, n, FamilyKind::aq);
        auto h = build_hierarchy(f, p, n);
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = a + 1; b < h.size(); ++b) CHECK(comm(h[a], h[b]).is_zero());
    }
    ModelParams pd = fixed_params();
    pd.k_p = 0;
    pd.k_m = 0;
    for (int n : {1, 2, 3}) {
        auto f = build_family(pd, n, n, FamilyKind::aq_diag);
        auto h = build_hierarchy(f, pd, n);
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = a + 1; b < h.size(); ++b) CHECK(comm(h[a], h[b]).is_zero());
    }
}

TEST_CASE("hierarchy_one_site_diag_matches_display") {
    auto p = fixed_params();
    p.k_p = 0;
    p.k_m = 0;
    auto f = build_family(p, 1, 1, FamilyKind::aq_diag);
    auto h = build_hierarchy(f, p, 1);
    Rat d = p.q * p.q - Rat(1) / (p.q * p.q);
    auto expect = f.wm[0] * p.beps_p + f.wp[0] * p.beps_m +
                  (f.g[0] * p.bk_m + f.gt[0] * p.bk_p) * (Rat(1) / d);
    CHECK(h[0] == expect);
}

TEST_CASE("random_draws_relations_hold") {
    ParamRng rng(20240811u);
    for (int draw = 0; draw < 2; ++draw) {
        auto p = ModelParams::random_generic(rng);
        for (int n : {1, 2}) {
            auto f = build_family(p, n, n + 2, FamilyKind::aq);
            CHECK(check_relations(f, RelationSet::aq_full, n).all_pass());
            CHECK(check_relations(f, RelationSet::q_dolan_grady, 0).all_pass());
        }
    }
}

#ifndef QONS_LATTICE_HPP
#define QONS_LATTICE_HPP

#include <optional>

#include "qons/laurent.hpp"
#include "qons/onsager.hpp"

namespace qons {

using LMat = std::vector<std::vector<LaurentR>>;  // matrix of Laurent polynomials in zeta

// 4x4 R-bar matrix (acting on aux (x) site, basis ++, +-, -+, --).
LMat rbar_matrix(const Rat& q);
// 2x2 boundary matrices
LMat kminus_matrix(const ModelParams& p);
LMat kplus_matrix(const ModelParams& p);
// footnote duality: K_+(zeta) = -K_-^t(-zeta^{-1} q^{-1}) under eps -> beps-swap
bool check_k_duality(const ModelParams& p);

// Transfer matrix of the open chain: the polynomial part (trace of the dressed
// boundary matrix) with the scalar normalization (-1)^N / (z^2+z^-2-q^2-q^-2)^N
// carried symbolically.
struct TransferMatrix {
    int sites = 0;
    ModelParams params;
    std::vector<SpMat<Rat>> coeff;  // coefficient matrices of zeta^e
    int lo = 0;                     // exponent of coeff[0]
    int dim() const { return 1 << sites; }
    SpMat<Rat> eval(const Rat& zeta) const;
    SpMat<Rat> eval_derivative(const Rat& zeta) const;  // d/dzeta of the polynomial part
};

TransferMatrix build_transfer(const ModelParams& p, int sites);

// coefficient-wise commutativity [t(z1), t(z2)] = 0
bool transfer_commutes(const TransferMatrix& t);

// Direct Hamiltonian builder (both boundary terms).
SpMat<Rat> hamiltonian_direct(const ModelParams& p, int sites);

struct HamiltonianExtraction {
    SpMat<Rat> hamiltonian;
    Rat identity_coeff;      // the displayed identity coefficient
    bool t1_scalar = false;  // t(1) proportional to the identity
    bool matches_direct = false;
};
HamiltonianExtraction extract_hamiltonian(const TransferMatrix& t);

struct OnsagerFit {
    bool exact = false;               // zero residual
    std::vector<LaurentR> f_odd;      // F_{2k+1}(zeta), k = 0..N-1
    LaurentR f0{Var::zeta};           // identity coefficient function
    std::vector<LaurentR> f_odd_in_u; // the same functions as polynomials in U
    bool u_polynomial = false;        // every F_{2k+1} is a polynomial in U(zeta)
    bool f0_even = false;
    std::optional<int> bad_power;     // offending zeta power if not exact
};
OnsagerFit fit_onsager_decomposition(const TransferMatrix& t,
                                     const std::vector<SpMat<Rat>>& hierarchy);

// Truncated half-infinite Hamiltonian (bulk couplings 1..N-1 plus the site-1
// boundary term; site 1 is the rightmost factor).
SpMat<Rat> hamiltonian_semi_truncated(const ModelParams& p, int sites);

struct SymmetryLocality {
    bool factorizes = false;   // [H, a] = D (x) I on all but the two leftmost sites
    int support = 0;           // minimal number of leftmost sites supporting the commutator
    SpMat<Rat> edge;           // the leftmost-block factor D (support-sized)
    bool boundary_term_matches = false;  // [h_b, a] equals the displayed site-1 commutator
};
SymmetryLocality boundary_symmetry_residual(const ModelParams& p, int sites, bool diagonal,
                                            int generator_index);

}  // namespace qons

#endif

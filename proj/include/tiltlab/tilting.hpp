#pragma once

#include "tiltlab/orbit.hpp"

#include <memory>
#include <optional>

namespace tiltlab {

class NoSolution : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class NonUniqueSolution : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The two-term complex T: Hom(W, X) -> Hom(W, M1 + M) in degrees -1, 0,
/// handled through graded hom spaces between X, N = M1 + M and Wbar = Y + M.
struct TiltingData {
    std::shared_ptr<TheoremSetup> setup;
    Subrings rings;
    Object X, N, Wbar;
    HomLayout xx, nn, xn, nx, nw, ww, wx1, wx;
    Vec alphabar; // in xn, degree 0: (alpha, 0)
    Vec betabar;  // in nw, degree 0: diag(beta, id)
    Vec wbar;     // in wx (degree 1 only): (w, 0)
    SubspaceBasis u_space; // hatted End(X) inside xx
    // joint linear system of psi, prepared on first use
    std::shared_ptr<const Solver> psi_solver;
    std::size_t psi_nullity = 0;
};

/// Pair (u, v) of graded endomorphisms of X and N.
struct ChainEndo {
    Vec u, v;
};

TiltingData build_tilting(const ExactTriple &t, const QuiverRep &m, const AdmissibleSet &phi);
TiltingData build_tilting(std::shared_ptr<TheoremSetup> setup, Subrings rings);

struct ChainHomSpace {
    int shift = 0;
    std::size_t dim = 0;
    SubspaceBasis cycles;     // for shift 0: compatible pairs (u, v), concatenated
    SubspaceBasis boundaries; // null-homotopic part
    std::optional<Quotient> quotient;
    std::vector<Vec> representatives;
};

ChainHomSpace chain_hom_space(TiltingData &td, int shift);

/// End(T) on homotopy-class representatives, with the chain-level data kept
/// alongside so that Psi can be evaluated on the basis.
struct EndRing {
    AlgebraWithBasis algebra;
    ChainHomSpace space;
    [[nodiscard]] ChainEndo representative(const TiltingData &td, std::size_t k) const;
    /// Coordinates of the class of a compatible pair; throws ClosureFailure if not compatible.
    [[nodiscard]] Vec coordinates(const ChainEndo &e) const;
};

EndRing end_ring_of_tilting(TiltingData &td);
/// Same, on a caller-supplied shift-0 space (e.g. with other representatives).
EndRing end_ring_from_space(TiltingData &td, ChainHomSpace space);

/// h in E(Wbar) with betabar h = v betabar and h wbar = wbar u.
Vec psi_map(TiltingData &td, const ChainEndo &e);

struct PsiReport {
    bool well_defined = false;
    bool bijective = false;
    bool multiplicative = false;
    bool unital = false;
    bool lands_in_lambda2 = false;
    std::string failure;
    Mat matrix; // columns: Psi of the End(T) basis in lambda2 coordinates
};

PsiReport check_psi(TiltingData &td, const EndRing &end);

} // namespace tiltlab

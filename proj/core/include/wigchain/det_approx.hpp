#pragma once

#include "wigchain/chain.hpp"
#include "wigchain/nc_partition.hpp"
#include "wigchain/observable.hpp"
#include "wigchain/types.hpp"

namespace wigchain {

// Deterministic approximation of decorated resolvent chains,
//
//   M(z_1, B_1, ..., B_{k-1}, z_k; J)
//     = sum over pi in NC([k]) of pTr_{K(pi)}(B_1, ..., B_{k-1})
//       * prod_{S in pi} m_o^(J)[S],
//
// with the free cumulants m_o^(J) of the Im-decorated divided
// differences.  Star decorations enter through conjugated spectral
// parameters, transposes do not change M at all.

// Partial trace of an ordered tuple over a partition kappa of [k]
// (0-based elements 0..k-1; matrices has length k-1):
// scalar factors <prod_{j in S} B_j> for each block away from the one
// containing k-1, times the index-ordered product of the B_j in that
// block.  For k = 1 the product is empty and a 1x1 identity stands in
// for I, since no dimension is available.
Matrix partial_trace(const NcPartition& kappa, const std::vector<ObservablePtr>& matrices);

// Size bounds and fluctuation scale attached to a chain.
struct BoundReport {
  double ell;         // min_j eta_j (rho_j + 1{j not Im})
  double ell_hat;     // min_j eta_j rho_j
  double m_bound;     // deterministic-term size bound
  double error_scale; // fluctuation scale of the local law
  bool n_ell_ok;      // N * ell >= 1 hypothesis
};

// The full N x N deterministic approximation of the chain's matrix part
// (closing observable / vectors, when present, are not folded in).
// Guarded to at most 7 spectral slots.
Matrix m_det(const ChainSpec& chain);

// < M_{[1,k]} A_k > for an averaged chain.
cplx m_det_avg(const ChainSpec& chain);

// < x, M_{[1,k+1]} y > for an isotropic chain.
cplx m_det_iso(const ChainSpec& chain);

// Singleton-partition term only: (prod_{Im} Im m_i)(prod m_i) times
// <A_1 ... A_k> or <x, A_1 ... A_k y>.  For traceless observables this
// carries the whole approximation up to terms below the error scale.
cplx leading_term(const ChainSpec& chain);

// ell / ell-hat, the size bound on |<M A_k>| (or the isotropic analog),
// and the local-law error scale for this chain.
BoundReport m_bound(const ChainSpec& chain);

// <|M|^2> of the chain's matrix part.
double m_hs_norm_sq(const ChainSpec& chain);

} // namespace wigchain

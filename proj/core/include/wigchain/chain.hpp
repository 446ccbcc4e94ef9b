#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wigchain/observable.hpp"
#include "wigchain/semicircle.hpp"
#include "wigchain/types.hpp"

namespace wigchain {

// Per-resolvent decoration in a chain G(z1) B1 G(z2) ... The transpose
// variants share the scalar kernel of their plain counterparts and only
// change the eigenbasis side of the evaluation; the star variant is the
// adjoint, i.e. the resolvent at the conjugate parameter.
enum class Decoration : std::uint8_t {
  Plain,          // G
  Imag,           // Im G
  Star,           // G* = G(conj z)
  Transpose,      // G^t
  ImagTranspose,  // (Im G)^t
};

bool is_imag(Decoration d);
bool is_transposed(Decoration d);

// A resolvent chain with p spectral slots and p-1 sandwiched
// observables.  Three usable forms:
//   matrix    : the bare alternating product (no closing, no vectors)
//   averaged  : < chain * closing >            (closing set)
//   isotropic : < x, chain y >                 (vectors set)
struct ChainSpec {
  std::vector<SpectralPoint> points;
  std::vector<Decoration> decorations;
  std::vector<ObservablePtr> observables;
  ObservablePtr closing;                          // averaged form
  std::optional<std::pair<Vector, Vector>> vectors; // isotropic form

  enum class Kind { Matrix, Averaged, Isotropic };
  Kind kind() const;

  std::size_t num_points() const { return points.size(); }
  // Index set of Im-decorated slots as a bitmask (bit i = slot i).
  std::uint32_t imag_mask() const;
  // Spectral points seen by the deterministic approximation: the star
  // decoration conjugates its parameter, everything else passes through.
  std::vector<SpectralPoint> m_points() const;

  static ChainSpec matrix_chain(const std::vector<cplx>& zs,
                                const std::vector<Decoration>& decors,
                                std::vector<ObservablePtr> obs);
  static ChainSpec averaged(const std::vector<cplx>& zs,
                            const std::vector<Decoration>& decors,
                            std::vector<ObservablePtr> obs, ObservablePtr closing);
  static ChainSpec isotropic(const std::vector<cplx>& zs,
                             const std::vector<Decoration>& decors,
                             std::vector<ObservablePtr> obs, Vector x, Vector y);
};

// Checks slot counts, observable dimensions, unit vectors, and that at
// most one of {closing, vectors} is set.
void validate_chain(const ChainSpec& chain);

} // namespace wigchain

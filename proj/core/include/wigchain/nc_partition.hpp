#pragma once

#include <cstdint>
#include <vector>

#include "wigchain/types.hpp"

namespace wigchain {

// Non-crossing partition of {0, ..., k-1} (elements are 0-based in
// code).  Blocks are sorted internally and ordered by their minima.
struct NcPartition {
  int k = 0;
  std::vector<std::vector<int>> blocks;

  // Block index of each element, with blocks numbered in order of first
  // appearance; this is the canonical sort key.
  std::vector<int> membership() const;

  bool operator==(const NcPartition& other) const = default;
};

// True when no a < b < c < d exist with a, c in one block and b, d in
// another.
bool is_noncrossing(const NcPartition& pi);

// Throws unless blocks are disjoint, cover {0..k-1} and are non-crossing.
void validate_partition(const NcPartition& pi);

// All non-crossing partitions of a k-element set in lexicographic
// membership order.  Count is Catalan(k).  Guarded to k <= 12.
std::vector<NcPartition> enumerate_nc(int k);

// Kreweras complement: the coarsest partition of the interleaved barred
// copies whose union with pi is non-crossing on the 2k-cycle, relabeled
// back via i-bar -> i.  Computed as the cycle decomposition of
// alpha_pi^{-1} composed with the long cycle; satisfies
// |pi| + |K(pi)| = k + 1.
NcPartition kreweras(const NcPartition& pi);

// Exact Catalan number, 0 <= n <= 30 (the last value fitting in 64 bits
// with headroom for the recurrence).
std::int64_t catalan(int n);

// Values attached to every nonempty subset of {0..k-1}, keyed by bitmask.
struct CumulantTable {
  int k = 0;
  std::vector<cplx> values; // size 2^k, entry 0 unused

  explicit CumulantTable(int k_) : k(k_), values(std::size_t(1) << k_, cplx(0.0)) {}
  cplx& operator[](std::uint32_t mask) { return values[mask]; }
  cplx operator[](std::uint32_t mask) const { return values[mask]; }
};

// Free-cumulant transform: returns m_o[.] with
//   m[S] = sum over pi in NC(S) of prod_{S' in pi} m_o[S']
// for every nonempty S, computed by recursive subtraction over the NC
// lattice.  Requires k <= 8.
CumulantTable free_cumulants(const CumulantTable& m_table);

// Same transform through the explicit signed formula
//   m_o[S] = m[S] + sum_{pi in NC(S), |pi| >= 2} (-1)^{|pi|-1}
//            (prod_{T in K(pi)} C_{|T|-1}) prod_{U in pi} m[U],
// kept as an independent route for cross-checks.
CumulantTable free_cumulants_catalan(const CumulantTable& m_table);

} // namespace wigchain

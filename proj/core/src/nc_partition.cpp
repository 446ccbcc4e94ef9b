#include "wigchain/nc_partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wigchain {

std::vector<int> NcPartition::membership() const {
  std::vector<int> label(k, -1);
  int next = 0;
  // Blocks are ordered by minimum, so scanning elements 0..k-1 assigns
  // labels in first-appearance order.
  std::vector<int> block_of(k, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int e : blocks[b]) block_of[e] = static_cast<int>(b);
  std::vector<int> relabel(blocks.size(), -1);
  for (int e = 0; e < k; ++e) {
    int b = block_of[e];
    if (relabel[b] < 0) relabel[b] = next++;
    label[e] = relabel[b];
  }
  return label;
}

bool is_noncrossing(const NcPartition& pi) {
  std::vector<int> block_of(pi.k, -1);
  for (std::size_t b = 0; b < pi.blocks.size(); ++b)
    for (int e : pi.blocks[b]) block_of[e] = static_cast<int>(b);
  // Quartic scan; fine at the k <= 12 sizes this code handles.
  for (int a = 0; a < pi.k; ++a)
    for (int b = a + 1; b < pi.k; ++b)
      for (int c = b + 1; c < pi.k; ++c)
        for (int d = c + 1; d < pi.k; ++d)
          if (block_of[a] == block_of[c] && block_of[b] == block_of[d] &&
              block_of[a] != block_of[b])
            return false;
  return true;
}

void validate_partition(const NcPartition& pi) {
  if (pi.k < 1) throw std::invalid_argument("NcPartition: k < 1");
  std::vector<int> seen(pi.k, 0);
  for (const auto& blk : pi.blocks) {
    if (blk.empty()) throw std::invalid_argument("NcPartition: empty block");
    if (!std::is_sorted(blk.begin(), blk.end()))
      throw std::invalid_argument("NcPartition: unsorted block");
    for (int e : blk) {
      if (e < 0 || e >= pi.k) throw std::invalid_argument("NcPartition: element out of range");
      if (seen[e]++) throw std::invalid_argument("NcPartition: duplicate element");
    }
  }
  for (int e = 0; e < pi.k; ++e)
    if (!seen[e]) throw std::invalid_argument("NcPartition: element missing");
  if (!is_noncrossing(pi)) throw std::invalid_argument("NcPartition: crossing blocks");
}

namespace {

// Enumerates non-crossing partitions of the ordered label vector v.
// The block of v[0] is {v[0]} plus any subset of the later labels; the
// gaps between consecutive chosen labels (and the tail after the last)
// must then be partitioned independently, which is exactly the
// non-crossing recursion.
void enumerate_rec(const std::vector<int>& v,
                   std::vector<std::vector<std::vector<int>>>& out) {
  out.clear();
  if (v.empty()) {
    out.push_back({});
    return;
  }
  const int n = static_cast<int>(v.size());
  // Iterate over subsets of positions 1..n-1 joining v[0]'s block.
  for (std::uint32_t pick = 0; pick < (1u << (n - 1)); ++pick) {
    std::vector<int> first_block{v[0]};
    std::vector<std::vector<int>> gaps;
    std::vector<int> cur;
    for (int pos = 1; pos < n; ++pos) {
      if (pick & (1u << (pos - 1))) {
        first_block.push_back(v[pos]);
        gaps.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(v[pos]);
      }
    }
    gaps.push_back(cur);

    // Cartesian product of the gap partitions.
    std::vector<std::vector<std::vector<std::vector<int>>>> gap_parts;
    gap_parts.reserve(gaps.size());
    bool any_empty = false;
    for (const auto& g : gaps) {
      gap_parts.emplace_back();
      enumerate_rec(g, gap_parts.back());
      if (gap_parts.back().empty()) any_empty = true;
    }
    if (any_empty) continue;

    std::vector<std::size_t> idx(gaps.size(), 0);
    while (true) {
      std::vector<std::vector<int>> part{first_block};
      for (std::size_t g = 0; g < gaps.size(); ++g)
        for (const auto& blk : gap_parts[g][idx[g]]) part.push_back(blk);
      out.push_back(std::move(part));
      std::size_t g = 0;
      for (; g < gaps.size(); ++g) {
        if (++idx[g] < gap_parts[g].size()) break;
        idx[g] = 0;
      }
      if (g == gaps.size()) break;
    }
  }
}

NcPartition normalized(int k, std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return NcPartition{k, std::move(blocks)};
}

} // namespace

std::vector<NcPartition> enumerate_nc(int k) {
  if (k < 1 || k > 12) throw std::invalid_argument("enumerate_nc: need 1 <= k <= 12");
  std::vector<int> ground(k);
  std::iota(ground.begin(), ground.end(), 0);
  std::vector<std::vector<std::vector<int>>> raw;
  enumerate_rec(ground, raw);

  std::vector<NcPartition> out;
  out.reserve(raw.size());
  for (auto& blocks : raw) out.push_back(normalized(k, std::move(blocks)));
  std::sort(out.begin(), out.end(), [](const NcPartition& a, const NcPartition& b) {
    return a.membership() < b.membership();
  });
  return out;
}

NcPartition kreweras(const NcPartition& pi) {
  validate_partition(pi);
  const int k = pi.k;
  // alpha maps each element to the next one in its block (cyclically).
  std::vector<int> alpha(k);
  for (const auto& blk : pi.blocks)
    for (std::size_t i = 0; i < blk.size(); ++i)
      alpha[blk[i]] = blk[(i + 1) % blk.size()];
  std::vector<int> alpha_inv(k);
  for (int i = 0; i < k; ++i) alpha_inv[alpha[i]] = i;

  // K(pi) is the cycle structure of alpha^{-1} composed with the long
  // cycle i -> i+1 (mod k).
  std::vector<int> beta(k);
  for (int i = 0; i < k; ++i) beta[i] = alpha_inv[(i + 1) % k];

  std::vector<char> used(k, 0);
  std::vector<std::vector<int>> blocks;
  for (int s = 0; s < k; ++s) {
    if (used[s]) continue;
    std::vector<int> cyc;
    int c = s;
    while (!used[c]) {
      used[c] = 1;
      cyc.push_back(c);
      c = beta[c];
    }
    blocks.push_back(std::move(cyc));
  }
  return normalized(k, std::move(blocks));
}

std::int64_t catalan(int n) {
  if (n < 0 || n > 30) throw std::invalid_argument("catalan: need 0 <= n <= 30");
  static const auto table = [] {
    std::vector<std::int64_t> c(31, 0);
    c[0] = 1;
    for (int m = 0; m < 30; ++m) {
      std::int64_t acc = 0;
      for (int i = 0; i <= m; ++i) acc += c[i] * c[m - i];
      c[m + 1] = acc;
    }
    return c;
  }();
  return table[n];
}

namespace {

// NC partitions of the set encoded by `mask`, expressed with the
// original element labels.
std::vector<NcPartition> nc_of_subset(std::uint32_t mask, int k) {
  std::vector<int> elems;
  for (int i = 0; i < k; ++i)
    if (mask & (1u << i)) elems.push_back(i);
  const int s = static_cast<int>(elems.size());
  std::vector<NcPartition> out;
  for (const auto& pi : enumerate_nc(s)) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(pi.blocks.size());
    for (const auto& blk : pi.blocks) {
      std::vector<int> mapped;
      mapped.reserve(blk.size());
      for (int e : blk) mapped.push_back(elems[e]);
      blocks.push_back(std::move(mapped));
    }
    out.push_back(NcPartition{k, std::move(blocks)});
  }
  return out;
}

std::uint32_t block_mask(const std::vector<int>& blk) {
  std::uint32_t m = 0;
  for (int e : blk) m |= 1u << e;
  return m;
}

void check_table(const CumulantTable& t, const char* who) {
  if (t.k < 1 || t.k > 8) throw std::invalid_argument(std::string(who) + ": need 1 <= k <= 8");
  if (t.values.size() != (std::size_t(1) << t.k))
    throw std::invalid_argument(std::string(who) + ": table size mismatch");
}

} // namespace

CumulantTable free_cumulants(const CumulantTable& m_table) {
  check_table(m_table, "free_cumulants");
  const int k = m_table.k;
  CumulantTable out(k);
  // Process subsets by increasing size; all proper sub-blocks of any
  // non-trivial partition are then already available.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (std::uint32_t mask : masks) {
    cplx acc = m_table[mask];
    for (const auto& pi : nc_of_subset(mask, k)) {
      if (pi.blocks.size() < 2) continue;
      cplx prod = 1.0;
      for (const auto& blk : pi.blocks) prod *= out[block_mask(blk)];
      acc -= prod;
    }
    out[mask] = acc;
  }
  return out;
}

CumulantTable free_cumulants_catalan(const CumulantTable& m_table) {
  check_table(m_table, "free_cumulants_catalan");
  const int k = m_table.k;
  CumulantTable out(k);
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    const int s = static_cast<int>(elems.size());
    cplx acc = 0.0;
    for (const auto& pi : enumerate_nc(s)) {
      double coeff = 1.0;
      if (pi.blocks.size() >= 2) {
        coeff = (pi.blocks.size() % 2 == 0) ? -1.0 : 1.0;
        for (const auto& blk : kreweras(pi).blocks)
          coeff *= static_cast<double>(catalan(static_cast<int>(blk.size()) - 1));
      }
      cplx prod = 1.0;
      for (const auto& blk : pi.blocks) {
        std::uint32_t bm = 0;
        for (int e : blk) bm |= 1u << elems[e];
        prod *= m_table[bm];
      }
      acc += coeff * prod;
    }
    out[mask] = acc;
  }
  return out;
}

} // namespace wigchain

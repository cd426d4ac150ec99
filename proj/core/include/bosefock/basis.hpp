#ifndef BOSEFOCK_BASIS_HPP
#define BOSEFOCK_BASIS_HPP

// Truncated bosonic occupation basis: all multi-indices a = (a_1..a_n) with
// total degree |a| <= cutoff, enumerated in graded lexicographic order
// (level ascending; within a level, first mode descending), e.g. for
// n=2, cutoff=2: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "bosefock/types.hpp"

namespace bosefock {

/// Occupation numbers per mode; the level of a state is the sum of entries.
using OccupationIndex = std::vector<int>;

inline int occupation_level(const OccupationIndex& a) {
  int k = 0;
  for (int v : a) k += v;
  return k;
}

class TruncatedBasis {
public:
  /// Enumerates the basis.  Throws std::invalid_argument for n_modes < 1 or
  /// cutoff < 0, and if the dimension C(n_modes+cutoff, cutoff) would exceed
  /// `capacity` (default 5e6 states).
  TruncatedBasis(int n_modes, int cutoff, std::size_t capacity = 5'000'000);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  int dim() const { return static_cast<int>(states_.size()); }

  const OccupationIndex& state(int i) const { return states_[i]; }
  int level(int i) const { return levels_[i]; }

  /// Rank of an occupation index in basis order; throws std::out_of_range if
  /// the index is not in the basis.  `find` returns -1 instead of throwing.
  int rank(const OccupationIndex& a) const;
  int find(const OccupationIndex& a) const;

  /// First basis position of each level: states with level k occupy ranks
  /// [level_offset(k), level_offset(k+1)).
  int level_offset(int k) const { return offsets_[k]; }
  int level_size(int k) const { return offsets_[k + 1] - offsets_[k]; }

  /// Dimension the pair (n_modes, cutoff) would have, as a checked 64-bit count.
  static std::uint64_t dimension_of(int n_modes, int cutoff);

private:
  int n_modes_;
  int cutoff_;
  std::vector<OccupationIndex> states_;
  std::vector<int> levels_;
  std::vector<int> offsets_;
  std::map<OccupationIndex, int> rank_;
};

} // namespace bosefock

#endif

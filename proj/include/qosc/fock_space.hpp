#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qosc {

/// Occupation numbers (n_1, ..., n_n), one entry per mode.
using MultiIndex = std::vector<int>;

/// Truncated n-mode Fock space with per-mode cutoff M (inclusive).
/// Basis states are multi-indices with 0 <= n_i <= M; the dense index is
/// mixed-radix with mode 1 fastest, so dim = (M+1)^n_modes exactly.
class FockSpace {
 public:
  FockSpace(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  std::int64_t dim() const { return dim_; }

  std::int64_t encode(const MultiIndex& occ) const;
  MultiIndex decode(std::int64_t index) const;

  /// Occupation of `mode` (1-based) in basis state `index`, without
  /// materializing the full multi-index.
  int occupation(std::int64_t index, int mode) const;

  /// Sum of occupations of modes strictly above `mode` (1-based); the
  /// exponent of the q-scaling carried by mode operators.
  int tail_sum(std::int64_t index, int mode) const;

  bool contains(const MultiIndex& occ) const;

  void require_mode(int mode) const {
    if (mode < 1 || mode > n_modes_) {
      throw std::out_of_range("mode index " + std::to_string(mode) + " outside 1.." +
                              std::to_string(n_modes_));
    }
  }

  bool operator==(const FockSpace& other) const {
    return n_modes_ == other.n_modes_ && cutoff_ == other.cutoff_;
  }

 private:
  int n_modes_;
  int cutoff_;
  std::int64_t dim_;
};

/// Subspace at a safe distance from the occupation cutoff: a basis state
/// belongs iff every mode occupation is <= max_occupation. Relation checks
/// restrict to such sectors so that truncation artifacts at the cutoff edge
/// never contaminate an identity residual.
class SafeSector {
 public:
  /// Sector of `space` with per-mode headroom `margin`:
  /// member iff n_i + margin <= cutoff for every mode.
  static SafeSector with_margin(const FockSpace& space, int margin);

  /// Sector with an explicit occupation bound (used when identities are
  /// evaluated on an enlarged space but compared on the declared one).
  static SafeSector with_max_occupation(const FockSpace& space, int max_occupation);

  const FockSpace& space() const { return space_; }
  int max_occupation() const { return max_occupation_; }
  int margin() const { return space_.cutoff() - max_occupation_; }

  bool member(std::int64_t index) const;
  const std::vector<std::int64_t>& members() const { return members_; }
  std::int64_t size() const { return static_cast<std::int64_t>(members_.size()); }

  /// Dense membership mask over the space, for kernel-side row filtering.
  const std::vector<unsigned char>& mask() const { return mask_; }

 private:
  SafeSector(const FockSpace& space, int max_occupation);

  FockSpace space_;
  int max_occupation_;
  std::vector<std::int64_t> members_;
  std::vector<unsigned char> mask_;
};

}  // namespace qosc

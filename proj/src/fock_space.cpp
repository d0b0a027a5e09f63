#include "qosc/fock_space.hpp"

#include <limits>

namespace qosc {

FockSpace::FockSpace(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1) throw std::invalid_argument("FockSpace: n_modes must be >= 1");
  if (cutoff < 1) throw std::invalid_argument("FockSpace: cutoff must be >= 1");
  dim_ = 1;
  const std::int64_t base = cutoff_ + 1;
  for (int i = 0; i < n_modes_; ++i) {
    if (dim_ > std::numeric_limits<std::int64_t>::max() / base / 8) {
      throw std::invalid_argument("FockSpace: dimension (cutoff+1)^n_modes overflows");
    }
    dim_ *= base;
  }
}

std::int64_t FockSpace::encode(const MultiIndex& occ) const {
  if (!contains(occ)) {
    throw std::out_of_range("FockSpace::encode: multi-index outside the truncated basis");
  }
  const std::int64_t base = cutoff_ + 1;
  std::int64_t index = 0;
  for (int i = n_modes_ - 1; i >= 0; --i) index = index * base + occ[static_cast<size_t>(i)];
  return index;
}

MultiIndex FockSpace::decode(std::int64_t index) const {
  if (index < 0 || index >= dim_) {
    throw std::out_of_range("FockSpace::decode: index outside [0, dim)");
  }
  const std::int64_t base = cutoff_ + 1;
  MultiIndex occ(static_cast<size_t>(n_modes_));
  for (int i = 0; i < n_modes_; ++i) {
    occ[static_cast<size_t>(i)] = static_cast<int>(index % base);
    index /= base;
  }
  return occ;
}

int FockSpace::occupation(std::int64_t index, int mode) const {
  require_mode(mode);
  const std::int64_t base = cutoff_ + 1;
  for (int i = 1; i < mode; ++i) index /= base;
  return static_cast<int>(index % base);
}

int FockSpace::tail_sum(std::int64_t index, int mode) const {
  const std::int64_t base = cutoff_ + 1;
  for (int i = 1; i <= mode; ++i) index /= base;
  int sum = 0;
  while (index > 0) {
    sum += static_cast<int>(index % base);
    index /= base;
  }
  return sum;
}

bool FockSpace::contains(const MultiIndex& occ) const {
  if (static_cast<int>(occ.size()) != n_modes_) return false;
  for (int v : occ) {
    if (v < 0 || v > cutoff_) return false;
  }
  return true;
}

SafeSector::SafeSector(const FockSpace& space, int max_occupation)
    : space_(space), max_occupation_(max_occupation) {
  if (max_occupation < 0 || max_occupation > space.cutoff()) {
    throw std::invalid_argument("SafeSector: max_occupation outside [0, cutoff]");
  }
  mask_.assign(static_cast<size_t>(space.dim()), 0);
  const std::int64_t base = space.cutoff() + 1;
  for (std::int64_t idx = 0; idx < space.dim(); ++idx) {
    std::int64_t rest = idx;
    bool ok = true;
    for (int i = 0; i < space.n_modes(); ++i) {
      if (rest % base > max_occupation) {
        ok = false;
        break;
      }
      rest /= base;
    }
    if (ok) {
      mask_[static_cast<size_t>(idx)] = 1;
      members_.push_back(idx);
    }
  }
}

SafeSector SafeSector::with_margin(const FockSpace& space, int margin) {
  if (margin < 0 || margin > space.cutoff()) {
    throw std::invalid_argument("SafeSector: margin outside [0, cutoff]");
  }
  return SafeSector(space, space.cutoff() - margin);
}

SafeSector SafeSector::with_max_occupation(const FockSpace& space, int max_occupation) {
  return SafeSector(space, max_occupation);
}

bool SafeSector::member(std::int64_t index) const {
  return index >= 0 && index < static_cast<std::int64_t>(mask_.size()) &&
         mask_[static_cast<size_t>(index)] != 0;
}

}  // namespace qosc

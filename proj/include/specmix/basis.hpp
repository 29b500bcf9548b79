#pragma once

#include <utility>

namespace specmix {

// Trigonometric tensor-product bases on the unit square.
//
// SineSine:     psi_mn = sin(m pi x) sin(n pi y), m,n >= 1  (vanishes on the
//               boundary; Dirichlet problems)
// CosineCosine: psi_mn = cos(m pi x) cos(n pi y), m,n >= 0  (zero normal
//               derivative; the switching-flow benchmark)
enum class BasisKind { SineSine, CosineCosine };

// Mass weight sigma_m = integral of the squared 1-D basis factor:
// 1 at mode 0 (cosine only), 1/2 otherwise.
double mass_weight(BasisKind basis, int mode);

// Index bookkeeping for a truncated 2-D mode set. Packing is row-major with
// m outer, n inner, starting at min_mode(); this fixed order makes every
// matrix/CSV dump reproducible.
class ModeSpace {
  public:
    ModeSpace(BasisKind basis, int max_mode);

    BasisKind basis() const { return basis_; }
    int max_mode() const { return max_mode_; }
    int min_mode() const { return basis_ == BasisKind::SineSine ? 1 : 0; }
    int modes_per_axis() const { return max_mode_ - min_mode() + 1; }
    int dim() const { return modes_per_axis() * modes_per_axis(); }

    int index(int m, int n) const;
    std::pair<int, int> mode_of(int idx) const;
    double sigma(int mode) const { return mass_weight(basis_, mode); }

    bool operator==(const ModeSpace&) const = default;

  private:
    BasisKind basis_;
    int max_mode_;
};

}  // namespace specmix

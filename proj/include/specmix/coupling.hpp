#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>

namespace specmix {

// Index (m,n,k,l,i,j): equation mode (m,n), velocity mode (k,l), scalar
// mode (i,j). Lexicographic map order doubles as the CSV dump order.
using TensorIndex = std::array<int, 6>;

// Sparse mode-coupling tensors of the sine-basis Galerkin advection term:
//   A^{mn}_{klij} = [int sin(m) sin(k) cos(i)] [int sin(n) cos(l) sin(j)]
//   B^{mn}_{klij} = [int sin(m) cos(k) sin(i)] [int sin(n) sin(l) cos(j)]
// with every 1-D factor a closed-form triple product on [0,1]. Entries below
// the drop threshold are not stored; absent means exactly zero.
class CouplingTensors {
  public:
    static constexpr double kDropThreshold = 1e-14;

    CouplingTensors(int scalar_modes, int velocity_modes)
        : N_(scalar_modes), M_(velocity_modes) {}

    int scalar_modes() const { return N_; }
    int velocity_modes() const { return M_; }

    const std::map<TensorIndex, double>& A() const { return A_; }
    const std::map<TensorIndex, double>& B() const { return B_; }
    std::map<TensorIndex, double>& A() { return A_; }
    std::map<TensorIndex, double>& B() { return B_; }

    double A_at(int m, int n, int k, int l, int i, int j) const;
    double B_at(int m, int n, int k, int l, int i, int j) const;

  private:
    int N_;
    int M_;
    std::map<TensorIndex, double> A_;
    std::map<TensorIndex, double> B_;
};

// Builds all entries for m,n,i,j in [1,N], k,l in [1,M]. Throws
// CapacityExceeded when M^2 N^4 exceeds entry_budget.
CouplingTensors build_coupling_tensors(int scalar_modes, int velocity_modes,
                                       std::size_t entry_budget = std::size_t{1} << 26);

// CSV dump: header m,n,k,l,i,j,A,B; one row per stored entry (union of the
// A and B supports), 17 significant digits, lexicographic row order.
void write_tensors_csv(std::ostream& os, const CouplingTensors& tensors);

}  // namespace specmix

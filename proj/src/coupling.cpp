#include "specmix/coupling.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "specmix/csv.hpp"
#include "specmix/errors.hpp"
#include "specmix/trig.hpp"

namespace specmix {

double CouplingTensors::A_at(int m, int n, int k, int l, int i, int j) const {
    const auto it = A_.find({m, n, k, l, i, j});
    return it == A_.end() ? 0.0 : it->second;
}

double CouplingTensors::B_at(int m, int n, int k, int l, int i, int j) const {
    const auto it = B_.find({m, n, k, l, i, j});
    return it == B_.end() ? 0.0 : it->second;
}

CouplingTensors build_coupling_tensors(int scalar_modes, int velocity_modes,
                                       std::size_t entry_budget) {
    if (scalar_modes < 1 || velocity_modes < 1)
        throw ValidationError("build_coupling_tensors: need N >= 1 and M >= 1");
    const std::size_t combos = static_cast<std::size_t>(velocity_modes) * velocity_modes *
                               static_cast<std::size_t>(scalar_modes) * scalar_modes *
                               static_cast<std::size_t>(scalar_modes) * scalar_modes;
    if (combos > entry_budget)
        throw CapacityExceeded("build_coupling_tensors: M^2 N^4 exceeds the entry budget");

    const int N = scalar_modes;
    const int M = velocity_modes;
    CouplingTensors tensors(N, M);

    // Each entry factors into two 1-D triple products; precompute the four
    // factor families so the six-fold loop only multiplies.
    //   A: X_a(m,k,i) = int sin(m) sin(k) cos(i),  Y_a(n,l,j) = int sin(n) cos(l) sin(j)
    //   B: X_b(m,k,i) = int sin(m) cos(k) sin(i),  Y_b(n,l,j) = int sin(n) sin(l) cos(j)
    const auto at = [&](int s, int v, int c) { return ((s - 1) * M + (v - 1)) * N + (c - 1); };
    std::vector<double> Xa(static_cast<std::size_t>(N) * M * N);
    std::vector<double> Xb(Xa.size());
    for (int m = 1; m <= N; ++m)
        for (int k = 1; k <= M; ++k)
            for (int i = 1; i <= N; ++i) {
                Xa[at(m, k, i)] = integral_triple({Trig::Sin, m}, {Trig::Sin, k}, {Trig::Cos, i});
                Xb[at(m, k, i)] = integral_triple({Trig::Sin, m}, {Trig::Cos, k}, {Trig::Sin, i});
            }

    for (int m = 1; m <= N; ++m)
        for (int n = 1; n <= N; ++n)
            for (int k = 1; k <= M; ++k)
                for (int l = 1; l <= M; ++l)
                    for (int i = 1; i <= N; ++i) {
                        const double xa = Xa[at(m, k, i)];
                        const double xb = Xb[at(m, k, i)];
                        if (xa == 0.0 && xb == 0.0) continue;
                        for (int j = 1; j <= N; ++j) {
                            // Y factors swap the roles of the sin/cos columns.
                            const double ya = Xb[at(n, l, j)];
                            const double yb = Xa[at(n, l, j)];
                            const double a = xa * ya;
                            const double b = xb * yb;
                            if (std::abs(a) > CouplingTensors::kDropThreshold)
                                tensors.A()[{m, n, k, l, i, j}] = a;
                            if (std::abs(b) > CouplingTensors::kDropThreshold)
                                tensors.B()[{m, n, k, l, i, j}] = b;
                        }
                    }
    return tensors;
}

void write_tensors_csv(std::ostream& os, const CouplingTensors& tensors) {
    os << "m,n,k,l,i,j,A,B\n";
    std::set<TensorIndex> keys;
    for (const auto& [key, value] : tensors.A()) keys.insert(key);
    for (const auto& [key, value] : tensors.B()) keys.insert(key);
    for (const auto& key : keys) {
        const auto [m, n, k, l, i, j] = key;
        os << m << ',' << n << ',' << k << ',' << l << ',' << i << ',' << j << ','
           << format_double(tensors.A_at(m, n, k, l, i, j)) << ','
           << format_double(tensors.B_at(m, n, k, l, i, j)) << '\n';
    }
}

}  // namespace specmix

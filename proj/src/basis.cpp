#include "specmix/basis.hpp"

#include <stdexcept>

#include "specmix/errors.hpp"

namespace specmix {

double mass_weight(BasisKind basis, int mode) {
    if (mode < 0) throw ValidationError("mass_weight: negative mode");
    if (basis == BasisKind::SineSine && mode == 0)
        throw BasisMismatch("mass_weight: the sine basis has no mode 0");
    return mode == 0 ? 1.0 : 0.5;
}

ModeSpace::ModeSpace(BasisKind basis, int max_mode) : basis_(basis), max_mode_(max_mode) {
    if (max_mode < min_mode()) throw ValidationError("ModeSpace: max_mode too small");
}

int ModeSpace::index(int m, int n) const {
    const int lo = min_mode();
    if (m < lo || m > max_mode_ || n < lo || n > max_mode_)
        throw ValidationError("ModeSpace::index: mode out of range");
    return (m - lo) * modes_per_axis() + (n - lo);
}

std::pair<int, int> ModeSpace::mode_of(int idx) const {
    if (idx < 0 || idx >= dim()) throw ValidationError("ModeSpace::mode_of: out of range");
    const int lo = min_mode();
    const int per = modes_per_axis();
    return {lo + idx / per, lo + idx % per};
}

}  // namespace specmix

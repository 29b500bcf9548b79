#include "specmix/trig.hpp"

#include <array>
#include <cmath>

namespace specmix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double integral_sin_cos(int k, int m) {
    if (k == m || k == 0) return 0.0;
    // k - k cos(m pi) cos(k pi) = k (1 - (-1)^{k+m}): zero for even k+m.
    if ((k + m) % 2 == 0) return 0.0;
    return 2.0 * k / (kPi * (static_cast<double>(k) * k - static_cast<double>(m) * m));
}

double integral_triple(TrigFactor f1, TrigFactor f2, TrigFactor f3) {
    // Expand each factor into complex exponentials: sin -> s/(2i) e^{i s p pi x},
    // cos -> (1/2) e^{i s p pi x}, s = +-1. A sign combination contributes
    // through I(w) = int_0^1 e^{i w pi x} dx with integer w:
    //   I(0) = 1,  I(odd w) = 2i/(w pi),  I(even w != 0) = 0.
    // Only the real part survives; resonant (w = 0) terms are exact.
    const std::array<TrigFactor, 3> f{f1, f2, f3};
    int num_sin = 0;
    for (const auto& t : f)
        if (t.function == Trig::Sin) ++num_sin;

    // (1/2)^3 (-i)^{num_sin}: real/imag parts of the sign-independent prefactor.
    static constexpr double kRe[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kIm[4] = {0.0, -1.0, 0.0, 1.0};
    const double pre_re = kRe[num_sin] / 8.0;
    const double pre_im = kIm[num_sin] / 8.0;

    double total = 0.0;
    for (int bits = 0; bits < 8; ++bits) {
        int omega = 0;
        int sin_sign = 1;
        for (int t = 0; t < 3; ++t) {
            const int s = (bits >> t) & 1 ? -1 : 1;
            omega += s * f[t].mode;
            if (f[t].function == Trig::Sin) sin_sign *= s;
        }
        double i_re = 0.0;
        double i_im = 0.0;
        if (omega == 0)
            i_re = 1.0;
        else if (omega % 2 != 0)
            i_im = 2.0 / (omega * kPi);
        else
            continue;
        total += sin_sign * (pre_re * i_re - pre_im * i_im);
    }
    return total;
}

}  // namespace specmix

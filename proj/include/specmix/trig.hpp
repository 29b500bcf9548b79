#pragma once

namespace specmix {

enum class Trig { Sin, Cos };

// One factor f(mode * pi * x) of a trigonometric product on [0,1].
struct TrigFactor {
    Trig function;
    int mode;  // >= 0
};

// integral_0^1 sin(k pi x) cos(m pi x) dx, closed form:
// 0 when k = m or k + m even, else 2k / (pi (k^2 - m^2)).
double integral_sin_cos(int k, int m);

// integral_0^1 f1(p1 pi x) f2(p2 pi x) f3(p3 pi x) dx by exact
// product-to-sum expansion. Each of the eight sign combinations contributes
// through the combined frequency w = s1 p1 + s2 p2 + s3 p3; resonant terms
// (w = 0) are the exact branch of the expansion, so no 0/0 can occur.
double integral_triple(TrigFactor f1, TrigFactor f2, TrigFactor f3);

}  // namespace specmix

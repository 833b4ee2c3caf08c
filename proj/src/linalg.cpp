#include "nhsense/linalg.hpp"

namespace nhsense {

Cx2Matrix Cx2Matrix::pow(int n) const {
    if (n < 0) throw std::invalid_argument("matrix power: negative exponent");
    Cx2Matrix acc = identity();
    Cx2Matrix base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Cx2Matrix expm2(const Cx2Matrix& m, Cx scale) {
    if (!m.is_finite() || !finite(scale)) throw std::invalid_argument("expm2: non-finite input");

    const Cx2Matrix s = scale * m;
    const Cx half_tr = 0.5 * s.trace();
    // traceless part A; A^2 = mu^2 I with mu^2 = -det(A)
    const Cx a = s.m00 - half_tr;
    const Cx mu2 = a * a + s.m01 * s.m10;
    const Cx mu = std::sqrt(mu2);

    Cx cosh_mu, sinhc_mu;  // cosh(mu), sinh(mu)/mu
    if (std::abs(mu) < 1e-8) {
        cosh_mu = 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0;
        sinhc_mu = 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0;
    } else {
        cosh_mu = std::cosh(mu);
        sinhc_mu = std::sinh(mu) / mu;
    }

    const Cx pref = std::exp(half_tr);
    return {pref * (cosh_mu + sinhc_mu * a), pref * sinhc_mu * s.m01,
            pref * sinhc_mu * s.m10, pref * (cosh_mu - sinhc_mu * a)};
}

EigenSystem eig2(const Cx2Matrix& m) {
    if (!m.is_finite()) throw std::invalid_argument("eig2: non-finite input");

    const Cx half_tr = 0.5 * m.trace();
    const Cx a = m.m00 - half_tr;
    const Cx disc = std::sqrt(a * a + m.m01 * m.m10);

    EigenSystem sys;
    sys.value0 = half_tr + disc;
    sys.value1 = half_tr - disc;

    auto vector_for = [&m](Cx lambda) -> PureState {
        // Two candidate null vectors of (m - lambda I); pick the larger one.
        const PureState r0{m.m01, lambda - m.m00};
        const PureState r1{lambda - m.m11, m.m10};
        PureState v = (r0.norm2() >= r1.norm2()) ? r0 : r1;
        if (v.norm() < 1e-300) v = {1.0, 0.0};  // scalar matrix: any vector works
        // gauge: leading amplitude fixed to one
        if (std::abs(v.c0) > 1e-12)
            return {1.0, v.c1 / v.c0};
        return {v.c0 / v.c1, 1.0};
    };

    sys.vector0 = vector_for(sys.value0);
    sys.vector1 = vector_for(sys.value1);

    // linear dependence <=> defective (exceptional point)
    const Cx cross = sys.vector0.c0 * sys.vector1.c1 - sys.vector0.c1 * sys.vector1.c0;
    const double scale = sys.vector0.norm() * sys.vector1.norm();
    if (std::abs(cross) <= 1e-10 * scale)
        throw std::domain_error("eig2: defective matrix (at exceptional point)");
    return sys;
}

}  // namespace nhsense

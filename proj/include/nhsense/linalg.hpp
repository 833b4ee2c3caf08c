#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace nhsense {

using Cx = std::complex<double>;

inline bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Unnormalized state over the {|0>=|H>, |1>=|V>} basis. Non-unitary
/// evolution shrinks or grows the norm, so normalization is never assumed.
struct PureState {
    Cx c0{1.0, 0.0};
    Cx c1{0.0, 0.0};

    double norm2() const { return std::norm(c0) + std::norm(c1); }
    double norm() const { return std::sqrt(norm2()); }

    /// Fraction of the (renormalized) population sitting in |0>.
    double population0() const {
        const double n2 = norm2();
        if (n2 <= 0.0) throw std::domain_error("population of a zero state");
        return std::norm(c0) / n2;
    }

    PureState normalized() const {
        const double n = norm();
        if (n < 1e-300) throw std::domain_error("cannot normalize a zero state");
        return {c0 / n, c1 / n};
    }

    bool is_finite() const { return finite(c0) && finite(c1); }
};

inline Cx inner(const PureState& a, const PureState& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

/// |<a|b>|^2 for the normalized rays; 1 means equal up to phase and scale.
inline double fidelity(const PureState& a, const PureState& b) {
    const double na = a.norm2(), nb = b.norm2();
    if (na < 1e-300 || nb < 1e-300) throw std::domain_error("fidelity of a zero state");
    return std::norm(inner(a, b)) / (na * nb);
}

struct Cx2Matrix {
    Cx m00{}, m01{}, m10{}, m11{};

    static Cx2Matrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Cx2Matrix zero() { return {}; }
    static Cx2Matrix pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Cx2Matrix pauli_y() { return {0.0, Cx{0, -1}, Cx{0, 1}, 0.0}; }
    static Cx2Matrix pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }
    static Cx2Matrix diagonal(Cx a, Cx b) { return {a, 0.0, 0.0, b}; }

    Cx trace() const { return m00 + m11; }
    Cx det() const { return m00 * m11 - m01 * m10; }

    Cx2Matrix adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }

    double frobenius_norm() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }

    bool is_finite() const { return finite(m00) && finite(m01) && finite(m10) && finite(m11); }

    bool is_hermitian(double tol = 1e-12) const {
        return std::abs(m01 - std::conj(m10)) <= tol && std::abs(m00.imag()) <= tol &&
               std::abs(m11.imag()) <= tol;
    }

    PureState apply(const PureState& v) const {
        return {m00 * v.c0 + m01 * v.c1, m10 * v.c0 + m11 * v.c1};
    }

    Cx2Matrix operator+(const Cx2Matrix& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    Cx2Matrix operator-(const Cx2Matrix& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    Cx2Matrix operator*(const Cx2Matrix& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    friend Cx2Matrix operator*(Cx s, const Cx2Matrix& m) {
        return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
    }

    /// Integer matrix power by repeated multiplication; n >= 0.
    Cx2Matrix pow(int n) const;
};

/// exp(scale * m) in closed form. Splitting m into its trace part and a
/// traceless remainder A reduces the problem to cosh/sinh of
/// mu = sqrt(-det A); the mu -> 0 limit is taken by series below 1e-8 to
/// avoid cancellation in sinh(mu)/mu.
Cx2Matrix expm2(const Cx2Matrix& m, Cx scale);

struct EigenSystem {
    Cx value0, value1;
    PureState vector0, vector1;  // gauge: c0 = 1 when |c0| > 1e-12, else c1 = 1
};

/// Eigen-decomposition via the characteristic polynomial. Throws
/// std::domain_error when the matrix is defective (eigenvectors linearly
/// dependent within 1e-10): that is an exceptional point, which this
/// sensing scheme explicitly avoids.
EigenSystem eig2(const Cx2Matrix& m);

}  // namespace nhsense

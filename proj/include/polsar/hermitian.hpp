#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "polsar/errors.hpp"

namespace polsar {

using Complex = std::complex<double>;

/// 3x3 complex Hermitian matrix stored as the diagonal plus the upper
/// triangle. The lower triangle is the conjugate of the upper by
/// definition, so the reconstruction M = M*ᵀ holds exactly.
///
/// Construction checks finiteness only; positive definiteness is a
/// property of model parameters and is checked where models are built
/// (see is_positive_definite).
class HermitianMatrix {
public:
    HermitianMatrix() : diag_{1.0, 1.0, 1.0}, upper_{Complex{}, Complex{}, Complex{}} {}

    HermitianMatrix(double d0, double d1, double d2, Complex u01, Complex u02, Complex u12)
        : diag_{d0, d1, d2}, upper_{u01, u02, u12} {
        for (double d : diag_) {
            if (!std::isfinite(d)) throw Error("HermitianMatrix: non-finite diagonal entry");
        }
        for (const Complex& u : upper_) {
            if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
                throw Error("HermitianMatrix: non-finite off-diagonal entry");
        }
    }

    static HermitianMatrix diagonal(double d0, double d1, double d2) {
        return {d0, d1, d2, Complex{}, Complex{}, Complex{}};
    }

    static HermitianMatrix identity() { return diagonal(1.0, 1.0, 1.0); }

    double diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    Complex u01() const { return upper_[0]; }
    Complex u02() const { return upper_[1]; }
    Complex u12() const { return upper_[2]; }

    /// Full entry (i, j), lower triangle by conjugation.
    Complex at(int i, int j) const {
        if (i == j) return Complex{diag_[static_cast<std::size_t>(i)], 0.0};
        if (i > j) return std::conj(at(j, i));
        if (i == 0 && j == 1) return upper_[0];
        if (i == 0 && j == 2) return upper_[1];
        return upper_[2];
    }

    double max_diag() const { return std::max(diag_[0], std::max(diag_[1], diag_[2])); }

    bool operator==(const HermitianMatrix& o) const {
        return diag_ == o.diag_ && upper_ == o.upper_;
    }
    bool operator!=(const HermitianMatrix& o) const { return !(*this == o); }

private:
    std::array<double, 3> diag_;
    std::array<Complex, 3> upper_;
};

/// |M| by cofactor expansion. Real for Hermitian input: the imaginary
/// parts of the mixed term cancel in conjugate pairs.
inline double determinant(const HermitianMatrix& m) {
    const double a = m.diag(0), b = m.diag(1), c = m.diag(2);
    const Complex p = m.u01(), q = m.u02(), r = m.u12();
    return a * b * c + 2.0 * std::real(p * r * std::conj(q)) - a * std::norm(r) -
           b * std::norm(q) - c * std::norm(p);
}

inline bool is_positive_definite(const HermitianMatrix& m) {
    const double m1 = m.diag(0);
    const double m2 = m.diag(0) * m.diag(1) - std::norm(m.u01());
    return m1 > 0.0 && m2 > 0.0 && determinant(m) > 0.0;
}

/// Adjugate-based inverse; Hermitian by construction.
inline HermitianMatrix inverse(const HermitianMatrix& m) {
    const double det = determinant(m);
    const double scale = std::abs(m.max_diag());
    if (std::abs(det) <= 1e-12 * scale * scale * scale)
        throw SingularMatrix("inverse: determinant below tolerance");
    const double a = m.diag(0), b = m.diag(1), c = m.diag(2);
    const Complex p = m.u01(), q = m.u02(), r = m.u12();
    const double i00 = (b * c - std::norm(r)) / det;
    const double i11 = (a * c - std::norm(q)) / det;
    const double i22 = (a * b - std::norm(p)) / det;
    const Complex i01 = (q * std::conj(r) - p * c) / det;
    const Complex i02 = (p * r - q * b) / det;
    const Complex i12 = (q * std::conj(p) - a * r) / det;
    return {i00, i11, i22, i01, i02, i12};
}

/// Re(Tr(A·B)). For Hermitian A, B the trace of the product is real:
/// Tr(AB) = Σᵢ aᵢᵢbᵢᵢ + 2 Re Σ_{i<j} A_ij conj(B_ij).
inline double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    double t = a.diag(0) * b.diag(0) + a.diag(1) * b.diag(1) + a.diag(2) * b.diag(2);
    t += 2.0 * std::real(a.u01() * std::conj(b.u01()) + a.u02() * std::conj(b.u02()) +
                         a.u12() * std::conj(b.u12()));
    return t;
}

/// w·A + (1−w)·B, 0 ≤ w ≤ 1. PD whenever both inputs are.
inline HermitianMatrix convex_combination(const HermitianMatrix& a, const HermitianMatrix& b,
                                          double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error("convex_combination: weight outside [0,1]");
    const double v = 1.0 - w;
    return {w * a.diag(0) + v * b.diag(0), w * a.diag(1) + v * b.diag(1),
            w * a.diag(2) + v * b.diag(2), w * a.u01() + v * b.u01(),
            w * a.u02() + v * b.u02(),     w * a.u12() + v * b.u12()};
}

/// Entrywise sum counting the implicit lower triangle.
inline double frobenius_norm(const HermitianMatrix& m) {
    double s = m.diag(0) * m.diag(0) + m.diag(1) * m.diag(1) + m.diag(2) * m.diag(2);
    s += 2.0 * (std::norm(m.u01()) + std::norm(m.u02()) + std::norm(m.u12()));
    return std::sqrt(s);
}

inline double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
    auto sq = [](Complex z) { return std::norm(z); };
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = a.diag(i) - b.diag(i);
        s += d * d;
    }
    s += 2.0 * (sq(a.u01() - b.u01()) + sq(a.u02() - b.u02()) + sq(a.u12() - b.u12()));
    return std::sqrt(s);
}

}  // namespace polsar

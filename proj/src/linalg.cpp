#include "switchstab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace switchstab {

namespace detail {

double opnorm2x2(double a00, double a01, double a10, double a11) {
    // Largest eigenvalue of the Gram matrix a'a, then sqrt. The larger
    // Gram eigenvalue is a sum of non-negative terms, so no cancellation.
    const double g00 = a00 * a00 + a10 * a10;
    const double g11 = a01 * a01 + a11 * a11;
    const double g01 = a00 * a01 + a10 * a11;
    const double half_diff = 0.5 * (g00 - g11);
    const double root = std::sqrt(half_diff * half_diff + g01 * g01);
    const double lam = 0.5 * (g00 + g11) + root;
    return std::sqrt(std::max(lam, 0.0));
}

double specrad2x2(double a00, double a01, double a10, double a11) {
    const double mean = 0.5 * (a00 + a11);
    const double half_diff = 0.5 * (a00 - a11);
    const double disc = half_diff * half_diff + a01 * a10;
    if (disc >= 0.0) {
        return std::fabs(mean) + std::sqrt(disc);
    }
    // Complex pair: modulus^2 equals the determinant, which is mean^2 - disc.
    return std::sqrt(mean * mean - disc);
}

std::vector<double> jacobi_symmetric_eigenvalues(Mat s) {
    const int n = s.dim();
    const double scale = std::max(s.max_abs(), 1.0);
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += s.at(p, q) * s.at(p, q);
        if (std::sqrt(off) <= 1e-14 * scale) {
            std::vector<double> eig(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = s.at(i, i);
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = s.at(p, q);
                if (apq == 0.0) continue;
                const double app = s.at(p, p);
                const double aqq = s.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double skp = s.at(k, p);
                    const double skq = s.at(k, q);
                    s.at(k, p) = c * skp - sn * skq;
                    s.at(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    const double spk = s.at(p, k);
                    const double sqk = s.at(q, k);
                    s.at(p, k) = c * spk - sn * sqk;
                    s.at(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    throw NotConverged("jacobi_symmetric_eigenvalues: sweep limit reached");
}

} // namespace detail

double operator_norm(const Mat& a) {
    const int n = a.dim();
    const double scale = a.max_abs();
    if (scale == 0.0) return 0.0;
    if (n == 2) {
        const double inv = 1.0 / scale;
        return scale * detail::opnorm2x2(a.at(0, 0) * inv, a.at(0, 1) * inv,
                                         a.at(1, 0) * inv, a.at(1, 1) * inv);
    }
    const Mat b = a.scaled(1.0 / scale);
    const Mat gram = b.transpose() * b;
    const std::vector<double> eig = detail::jacobi_symmetric_eigenvalues(gram);
    return scale * std::sqrt(std::max(eig.back(), 0.0));
}

double spectral_radius(const Mat& a) {
    const int n = a.dim();
    if (n == 1) return std::fabs(a.at(0, 0));
    if (n == 2) {
        const double scale = a.max_abs();
        if (scale == 0.0) return 0.0;
        const double inv = 1.0 / scale;
        return scale * detail::specrad2x2(a.at(0, 0) * inv, a.at(0, 1) * inv,
                                          a.at(1, 0) * inv, a.at(1, 1) * inv);
    }
    // Normalized repeated squaring: b <- (b/|b|)^2 with the scale carried in
    // log space, so b^(2^k) = exp(log_scale) * b_k. The norm-root estimate
    // |a^(2^k)|^(1/2^k) is monotone enough in practice to stop on stability.
    Mat b = a;
    double log_scale = 0.0;
    double prev_estimate = -1.0;
    constexpr int kMaxSquarings = 60;
    // Nilpotent parts vanish exactly once 2^k reaches the dimension; only
    // accept a stabilized estimate after that point.
    int min_squarings = 1;
    while ((1 << min_squarings) < n) ++min_squarings;
    ++min_squarings;
    for (int k = 0; k <= kMaxSquarings; ++k) {
        const double norm = operator_norm(b);
        if (norm == 0.0) return 0.0;
        const double estimate = std::exp((log_scale + std::log(norm)) / std::exp2(k));
        if (k >= min_squarings) {
            const double tol = 1e-9 * std::max(estimate, 1e-300);
            if (std::fabs(estimate - prev_estimate) <= tol) return estimate;
        }
        prev_estimate = estimate;
        if (k == kMaxSquarings) break;
        const Mat unit = b.scaled(1.0 / norm);
        b = unit * unit;
        log_scale = 2.0 * (log_scale + std::log(norm));
    }
    throw NotConverged("spectral_radius: norm-root estimate did not stabilize");
}

} // namespace switchstab

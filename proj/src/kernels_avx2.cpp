// AVX2+FMA variants of the batch 2x2 kernels. This translation unit is
// compiled with -mavx2 -mfma; it must only be reached through the dispatch
// table after the runtime CPU check.

#include "switchstab/kernels.hpp"

#ifdef SWITCHSTAB_BUILD_AVX2

#include <immintrin.h>

#include "switchstab/linalg.hpp"

namespace switchstab {
namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, x);
}

inline double hmax_pd(__m256d x) {
    const __m128d lo = _mm256_castpd256_pd128(x);
    const __m128d hi = _mm256_extractf128_pd(x, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

void mul_left_avx2(const double l[4], const Soa2x2& src, Soa2x2& dst,
                   std::size_t off, std::size_t count) {
    const __m256d l00 = _mm256_set1_pd(l[0]);
    const __m256d l01 = _mm256_set1_pd(l[1]);
    const __m256d l10 = _mm256_set1_pd(l[2]);
    const __m256d l11 = _mm256_set1_pd(l[3]);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(&src.a[i]);
        const __m256d b = _mm256_loadu_pd(&src.b[i]);
        const __m256d c = _mm256_loadu_pd(&src.c[i]);
        const __m256d d = _mm256_loadu_pd(&src.d[i]);
        _mm256_storeu_pd(&dst.a[off + i], _mm256_fmadd_pd(l00, a, _mm256_mul_pd(l01, c)));
        _mm256_storeu_pd(&dst.b[off + i], _mm256_fmadd_pd(l00, b, _mm256_mul_pd(l01, d)));
        _mm256_storeu_pd(&dst.c[off + i], _mm256_fmadd_pd(l10, a, _mm256_mul_pd(l11, c)));
        _mm256_storeu_pd(&dst.d[off + i], _mm256_fmadd_pd(l10, b, _mm256_mul_pd(l11, d)));
    }
    for (; i < count; ++i) {
        const double a = src.a[i], b = src.b[i], c = src.c[i], d = src.d[i];
        dst.a[off + i] = l[0] * a + l[1] * c;
        dst.b[off + i] = l[0] * b + l[1] * d;
        dst.c[off + i] = l[2] * a + l[3] * c;
        dst.d[off + i] = l[2] * b + l[3] * d;
    }
}

void opnorm_avx2(const Soa2x2& src, double* out, std::size_t count) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(&src.a[i]);
        const __m256d b = _mm256_loadu_pd(&src.b[i]);
        const __m256d c = _mm256_loadu_pd(&src.c[i]);
        const __m256d d = _mm256_loadu_pd(&src.d[i]);
        const __m256d g00 = _mm256_fmadd_pd(a, a, _mm256_mul_pd(c, c));
        const __m256d g11 = _mm256_fmadd_pd(b, b, _mm256_mul_pd(d, d));
        const __m256d g01 = _mm256_fmadd_pd(a, b, _mm256_mul_pd(c, d));
        const __m256d hd = _mm256_mul_pd(half, _mm256_sub_pd(g00, g11));
        const __m256d root =
            _mm256_sqrt_pd(_mm256_fmadd_pd(hd, hd, _mm256_mul_pd(g01, g01)));
        const __m256d lam =
            _mm256_add_pd(_mm256_mul_pd(half, _mm256_add_pd(g00, g11)), root);
        _mm256_storeu_pd(&out[i], _mm256_sqrt_pd(_mm256_max_pd(lam, zero)));
    }
    for (; i < count; ++i) {
        out[i] = detail::opnorm2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

void specrad_avx2(const Soa2x2& src, double* out, std::size_t count) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(&src.a[i]);
        const __m256d b = _mm256_loadu_pd(&src.b[i]);
        const __m256d c = _mm256_loadu_pd(&src.c[i]);
        const __m256d d = _mm256_loadu_pd(&src.d[i]);
        const __m256d mean = _mm256_mul_pd(half, _mm256_add_pd(a, d));
        const __m256d hd = _mm256_mul_pd(half, _mm256_sub_pd(a, d));
        const __m256d disc = _mm256_fmadd_pd(hd, hd, _mm256_mul_pd(b, c));
        // Real pair: |mean| + sqrt(disc). Complex pair: sqrt(mean^2 - disc).
        const __m256d real_val = _mm256_add_pd(
            abs_pd(mean), _mm256_sqrt_pd(_mm256_max_pd(disc, zero)));
        const __m256d complex_val = _mm256_sqrt_pd(
            _mm256_max_pd(_mm256_fmsub_pd(mean, mean, disc), zero));
        const __m256d is_real = _mm256_cmp_pd(disc, zero, _CMP_GE_OQ);
        _mm256_storeu_pd(&out[i], _mm256_blendv_pd(complex_val, real_val, is_real));
    }
    for (; i < count; ++i) {
        out[i] = detail::specrad2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

double max_matvec_norm_sq_avx2(const Soa2x2& src, double x0, double x1,
                               std::size_t count) {
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vx1 = _mm256_set1_pd(x1);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(&src.a[i]);
        const __m256d b = _mm256_loadu_pd(&src.b[i]);
        const __m256d c = _mm256_loadu_pd(&src.c[i]);
        const __m256d d = _mm256_loadu_pd(&src.d[i]);
        const __m256d y0 = _mm256_fmadd_pd(a, vx0, _mm256_mul_pd(b, vx1));
        const __m256d y1 = _mm256_fmadd_pd(c, vx0, _mm256_mul_pd(d, vx1));
        const __m256d n2 = _mm256_fmadd_pd(y0, y0, _mm256_mul_pd(y1, y1));
        best = _mm256_max_pd(best, n2);
    }
    double result = hmax_pd(best);
    for (; i < count; ++i) {
        const double y0 = src.a[i] * x0 + src.b[i] * x1;
        const double y1 = src.c[i] * x0 + src.d[i] * x1;
        const double n2 = y0 * y0 + y1 * y1;
        if (n2 > result) result = n2;
    }
    return result;
}

} // namespace

const Kernels* avx2_kernels_impl() {
    static const Kernels k{mul_left_avx2, opnorm_avx2, specrad_avx2,
                           max_matvec_norm_sq_avx2, "avx2"};
    return &k;
}

} // namespace switchstab

#endif // SWITCHSTAB_BUILD_AVX2

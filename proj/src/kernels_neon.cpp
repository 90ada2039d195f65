// NEON variants of the batch 2x2 kernels (aarch64, where NEON is baseline).

#include "switchstab/kernels.hpp"

#ifdef SWITCHSTAB_BUILD_NEON

#include <arm_neon.h>

#include "switchstab/linalg.hpp"

namespace switchstab {
namespace {

void mul_left_neon(const double l[4], const Soa2x2& src, Soa2x2& dst,
                   std::size_t off, std::size_t count) {
    const float64x2_t l00 = vdupq_n_f64(l[0]);
    const float64x2_t l01 = vdupq_n_f64(l[1]);
    const float64x2_t l10 = vdupq_n_f64(l[2]);
    const float64x2_t l11 = vdupq_n_f64(l[3]);
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const float64x2_t a = vld1q_f64(&src.a[i]);
        const float64x2_t b = vld1q_f64(&src.b[i]);
        const float64x2_t c = vld1q_f64(&src.c[i]);
        const float64x2_t d = vld1q_f64(&src.d[i]);
        vst1q_f64(&dst.a[off + i], vfmaq_f64(vmulq_f64(l01, c), l00, a));
        vst1q_f64(&dst.b[off + i], vfmaq_f64(vmulq_f64(l01, d), l00, b));
        vst1q_f64(&dst.c[off + i], vfmaq_f64(vmulq_f64(l11, c), l10, a));
        vst1q_f64(&dst.d[off + i], vfmaq_f64(vmulq_f64(l11, d), l10, b));
    }
    for (; i < count; ++i) {
        const double a = src.a[i], b = src.b[i], c = src.c[i], d = src.d[i];
        dst.a[off + i] = l[0] * a + l[1] * c;
        dst.b[off + i] = l[0] * b + l[1] * d;
        dst.c[off + i] = l[2] * a + l[3] * c;
        dst.d[off + i] = l[2] * b + l[3] * d;
    }
}

void opnorm_neon(const Soa2x2& src, double* out, std::size_t count) {
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const float64x2_t a = vld1q_f64(&src.a[i]);
        const float64x2_t b = vld1q_f64(&src.b[i]);
        const float64x2_t c = vld1q_f64(&src.c[i]);
        const float64x2_t d = vld1q_f64(&src.d[i]);
        const float64x2_t g00 = vfmaq_f64(vmulq_f64(c, c), a, a);
        const float64x2_t g11 = vfmaq_f64(vmulq_f64(d, d), b, b);
        const float64x2_t g01 = vfmaq_f64(vmulq_f64(c, d), a, b);
        const float64x2_t hd = vmulq_f64(half, vsubq_f64(g00, g11));
        const float64x2_t root = vsqrtq_f64(vfmaq_f64(vmulq_f64(g01, g01), hd, hd));
        const float64x2_t lam =
            vaddq_f64(vmulq_f64(half, vaddq_f64(g00, g11)), root);
        vst1q_f64(&out[i], vsqrtq_f64(vmaxq_f64(lam, zero)));
    }
    for (; i < count; ++i) {
        out[i] = detail::opnorm2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

void specrad_neon(const Soa2x2& src, double* out, std::size_t count) {
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const float64x2_t a = vld1q_f64(&src.a[i]);
        const float64x2_t b = vld1q_f64(&src.b[i]);
        const float64x2_t c = vld1q_f64(&src.c[i]);
        const float64x2_t d = vld1q_f64(&src.d[i]);
        const float64x2_t mean = vmulq_f64(half, vaddq_f64(a, d));
        const float64x2_t hd = vmulq_f64(half, vsubq_f64(a, d));
        const float64x2_t disc = vfmaq_f64(vmulq_f64(b, c), hd, hd);
        const float64x2_t real_val =
            vaddq_f64(vabsq_f64(mean), vsqrtq_f64(vmaxq_f64(disc, zero)));
        const float64x2_t complex_val = vsqrtq_f64(
            vmaxq_f64(vsubq_f64(vmulq_f64(mean, mean), disc), zero));
        const uint64x2_t is_real = vcgeq_f64(disc, zero);
        vst1q_f64(&out[i], vbslq_f64(is_real, real_val, complex_val));
    }
    for (; i < count; ++i) {
        out[i] = detail::specrad2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

double max_matvec_norm_sq_neon(const Soa2x2& src, double x0, double x1,
                               std::size_t count) {
    const float64x2_t vx0 = vdupq_n_f64(x0);
    const float64x2_t vx1 = vdupq_n_f64(x1);
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const float64x2_t a = vld1q_f64(&src.a[i]);
        const float64x2_t b = vld1q_f64(&src.b[i]);
        const float64x2_t c = vld1q_f64(&src.c[i]);
        const float64x2_t d = vld1q_f64(&src.d[i]);
        const float64x2_t y0 = vfmaq_f64(vmulq_f64(b, vx1), a, vx0);
        const float64x2_t y1 = vfmaq_f64(vmulq_f64(d, vx1), c, vx0);
        const float64x2_t n2 = vfmaq_f64(vmulq_f64(y1, y1), y0, y0);
        best = vmaxq_f64(best, n2);
    }
    double result = vmaxvq_f64(best);
    for (; i < count; ++i) {
        const double y0 = src.a[i] * x0 + src.b[i] * x1;
        const double y1 = src.c[i] * x0 + src.d[i] * x1;
        const double n2 = y0 * y0 + y1 * y1;
        if (n2 > result) result = n2;
    }
    return result;
}

} // namespace

const Kernels* neon_kernels_impl() {
    static const Kernels k{mul_left_neon, opnorm_neon, specrad_neon,
                           max_matvec_norm_sq_neon, "neon"};
    return &k;
}

} // namespace switchstab

#endif // SWITCHSTAB_BUILD_NEON

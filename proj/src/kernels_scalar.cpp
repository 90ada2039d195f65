#include "switchstab/kernels.hpp"
#include "switchstab/linalg.hpp"

namespace switchstab {
namespace {

void mul_left_scalar(const double l[4], const Soa2x2& src, Soa2x2& dst,
                     std::size_t off, std::size_t count) {
    const double l00 = l[0], l01 = l[1], l10 = l[2], l11 = l[3];
    for (std::size_t i = 0; i < count; ++i) {
        const double a = src.a[i], b = src.b[i], c = src.c[i], d = src.d[i];
        dst.a[off + i] = l00 * a + l01 * c;
        dst.b[off + i] = l00 * b + l01 * d;
        dst.c[off + i] = l10 * a + l11 * c;
        dst.d[off + i] = l10 * b + l11 * d;
    }
}

void opnorm_scalar(const Soa2x2& src, double* out, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = detail::opnorm2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

void specrad_scalar(const Soa2x2& src, double* out, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = detail::specrad2x2(src.a[i], src.b[i], src.c[i], src.d[i]);
    }
}

double max_matvec_norm_sq_scalar(const Soa2x2& src, double x0, double x1,
                                 std::size_t count) {
    double best = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double y0 = src.a[i] * x0 + src.b[i] * x1;
        const double y1 = src.c[i] * x0 + src.d[i] * x1;
        const double n2 = y0 * y0 + y1 * y1;
        if (n2 > best) best = n2;
    }
    return best;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{mul_left_scalar, opnorm_scalar, specrad_scalar,
                           max_matvec_norm_sq_scalar, "scalar"};
    return k;
}

} // namespace switchstab

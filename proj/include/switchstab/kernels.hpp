#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "switchstab/mat.hpp"

namespace switchstab {

/// Structure-of-arrays batch of 2x2 matrices [[a, b], [c, d]]. This is the
/// layout the enumeration and norm-evaluation inner loops run over.
struct Soa2x2 {
    std::vector<double> a, b, c, d;

    std::size_t size() const { return a.size(); }
    void resize(std::size_t n) {
        a.resize(n);
        b.resize(n);
        c.resize(n);
        d.resize(n);
    }
    void clear() {
        a.clear();
        b.clear();
        c.clear();
        d.clear();
    }
    void push_back(const Mat& m) {
        a.push_back(m.at(0, 0));
        b.push_back(m.at(0, 1));
        c.push_back(m.at(1, 0));
        d.push_back(m.at(1, 1));
    }
    Mat mat(std::size_t i) const {
        return Mat::from_flat(2, {a[i], b[i], c[i], d[i]});
    }
};

/// Batch kernels over Soa2x2. All variants of the table compute the same
/// quantities; variants are equivalence-tested against the scalar reference.
struct Kernels {
    /// dst[off+i] = L * src[i] for i in [0, count), with L the fixed 2x2
    /// left factor [l00, l01, l10, l11]. dst must already have room.
    void (*mul_left)(const double l[4], const Soa2x2& src, Soa2x2& dst,
                     std::size_t dst_offset, std::size_t count);

    /// out[i] = largest singular value of src[i].
    void (*opnorm)(const Soa2x2& src, double* out, std::size_t count);

    /// out[i] = spectral radius of src[i].
    void (*specrad)(const Soa2x2& src, double* out, std::size_t count);

    /// max over i of |src[i] * x|^2 for the fixed vector x = [x0, x1].
    /// Returns 0 for an empty batch.
    double (*max_matvec_norm_sq)(const Soa2x2& src, double x0, double x1,
                                 std::size_t count);

    const char* name;
};

/// Scalar reference kernels; always available.
const Kernels& scalar_kernels();

/// AVX2+FMA kernels, or nullptr when unsupported by the build or the CPU.
const Kernels* avx2_kernels();

/// NEON kernels, or nullptr when not built for aarch64.
const Kernels* neon_kernels();

/// Best kernel table for this machine, chosen once at startup. Honors the
/// SWITCHSTAB_KERNEL environment variable ("scalar", "avx2", "neon") when
/// set; falls back to scalar if the requested variant is unavailable.
const Kernels& active_kernels();

/// Names of every kernel table usable on this machine.
std::vector<std::string> available_kernel_names();

} // namespace switchstab

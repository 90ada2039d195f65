#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "switchstab/kernels.hpp"
#include "switchstab/system.hpp"

namespace switchstab {

/// Truncated product-sup norm for a matrix class:
///
///   ||x||_D = max over n = 0..D of q^(-n) * max over length-n products B
///             of |B x|,
///
/// with the Euclidean base norm at level 0. When q dominates the norms of
/// all products the construction is a norm in which every class member is
/// a q-contraction up to the truncation level.
class NormApprox {
public:
    /// Builds level sets 0..depth of deduplicated products. Requires
    /// q in (0, 1]; respects the product budget.
    static NormApprox build(MatrixClass cls, double q, int depth,
                            std::uint64_t budget = 2'000'000);

    /// Picks q automatically from a bounds run at depth ceil(depth/2)
    /// (best upper bound + 1e-6). Fails if that value exceeds 1.
    static NormApprox build_auto_q(MatrixClass cls, int depth,
                                   std::uint64_t budget = 2'000'000);

    double q() const { return q_; }
    int depth() const { return depth_; }
    const MatrixClass& matrix_class() const { return cls_; }
    const std::vector<Mat>& level(int n) const {
        return levels_[static_cast<std::size_t>(n)];
    }
    std::vector<std::size_t> level_sizes() const;

    /// ||x||_D over all stored levels.
    double evaluate(const Vec& x) const;

    /// ||x||_J truncated at level J <= depth.
    double evaluate_truncated(const Vec& x, int max_level) const;

    /// Smallest c with evaluate(x) <= c * |x| over the stored levels:
    /// max over n, B of q^(-n) |B|.
    double bound_constant() const;

private:
    NormApprox(MatrixClass cls, double q, int depth)
        : cls_(std::move(cls)), q_(q), depth_(depth) {}

    MatrixClass cls_;
    double q_;
    int depth_;
    std::vector<std::vector<Mat>> levels_;
    std::vector<Soa2x2> levels2_; // dim==2 mirror for the batch kernels
};

/// Contraction evidence for one class member against the truncated norm.
struct ContractionReport {
    int member = 0;  // 1-based index k
    int samples = 0;
    /// max over samples of ||A_k x||_(D-1) - q ||x||_D. Non-positive (up to
    /// float noise) by construction, for every class and every q.
    double max_truncated_violation = 0.0;
    /// max over samples of ||A_k x||_D - q ||x||_D. Diagnostic only: the
    /// top level has no level above it to absorb the factor, so this goes
    /// positive exactly when depth-D products outgrow q * (depth-(D-1))
    /// products, e.g. on non-contractive classes.
    double max_full_violation = 0.0;
    std::optional<Vec> worst_truncated_x;
    std::optional<Vec> worst_full_x;
};

/// Checks ||A_k x||_(D-1) <= q ||x||_D on every sample (the contract), and
/// records the full-depth difference as a diagnostic.
ContractionReport verify_contraction(const NormApprox& na, int member_k,
                                     const std::vector<Vec>& samples);

/// Default sample set: 1000 fixed-seed unit-sphere points plus the
/// +-standard basis vectors.
std::vector<Vec> contraction_samples(int dim, int count = 1000,
                                     std::uint64_t seed = 0x5eed5eedULL);

} // namespace switchstab

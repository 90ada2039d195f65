#include <doctest.h>

#include <cmath>

#include "switchstab/families.hpp"
#include "switchstab/linalg.hpp"
#include "switchstab/norm_approx.hpp"
#include "switchstab/rng.hpp"

using namespace switchstab;

namespace {

// Independent oracle: re-enumerates every word of each length with
// realize_word and takes the max directly, with no dedup and no batch path.
double reenumerated_norm(const MatrixClass& cls, double q, int depth, const Vec& x) {
    double best = x.norm();
    std::vector<Word> level{Word{}};
    double scale = 1.0;
    for (int n = 1; n <= depth; ++n) {
        scale /= q;
        std::vector<Word> next;
        for (const Word& w : level) {
            for (int k = 1; k <= cls.size(); ++k) {
                Word ext = w;
                ext.indices.push_back(k);
                next.push_back(ext);
            }
        }
        level = std::move(next);
        for (const Word& w : level) {
            best = std::max(best, scale * realize_word(cls, w).apply(x).norm());
        }
    }
    return best;
}

} // namespace

TEST_CASE("scalar classes collapse to the base norm") {
    const std::vector<Vec> samples = contraction_samples(2, 50, 7);

    const NormApprox half = NormApprox::build(
        MatrixClass({Mat::identity(2).scaled(0.5)}), 0.5, 4);
    const NormApprox ident = NormApprox::build(MatrixClass({Mat::identity(2)}), 1.0, 3);
    for (const Vec& x : samples) {
        CHECK(half.evaluate(x) == doctest::Approx(x.norm()).epsilon(1e-13));
        CHECK(ident.evaluate(x) == doctest::Approx(x.norm()).epsilon(1e-13));
    }
    CHECK(half.evaluate(Vec(2)) == 0.0);
}

TEST_CASE("build rejects bad parameters") {
    const MatrixClass cls = family::family_class(0.5);
    CHECK_THROWS_AS(NormApprox::build(cls, 0.0, 3), InvalidInput);
    CHECK_THROWS_AS(NormApprox::build(cls, -0.25, 3), InvalidInput);
    CHECK_THROWS_AS(NormApprox::build(cls, 1.5, 3), InvalidInput);
    // Dedup collapses this family's level sets, so the budget only binds
    // for classes with generic products.
    rng::Engine eng(55);
    Mat a(2), b(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a.at(i, j) = rng::uniform(eng, -1.0, 1.0);
            b.at(i, j) = rng::uniform(eng, -1.0, 1.0);
        }
    CHECK_THROWS_AS(NormApprox::build(MatrixClass({a, b}), 0.9, 25, 1000), BudgetExceeded);
    const NormApprox na = NormApprox::build(cls, 0.9, 2);
    CHECK_THROWS_AS(na.evaluate(Vec::from({1.0, 2.0, 3.0})), InvalidInput);
    CHECK_THROWS_AS(na.evaluate_truncated(Vec::from({1.0, 0.0}), 3), InvalidInput);
}

TEST_CASE("stable family point: sandwich and oracle agreement") {
    const double t2 = family::stable_parameter(2);
    const MatrixClass cls = family::family_class(t2);
    const NormApprox na = NormApprox::build(cls, 0.75, 6);
    const double c_bound = operator_norm(family::projector(3.14159265358979324 / 4.0));
    CHECK(na.bound_constant() <= c_bound + 1e-9);

    const std::vector<Vec> samples = contraction_samples(2, 60, 8);
    for (const Vec& x : samples) {
        const double v = na.evaluate(x);
        CHECK(v >= x.norm() - 1e-12);
        CHECK(v <= c_bound * x.norm() + 1e-10);
        CHECK(v == doctest::Approx(reenumerated_norm(cls, 0.75, 6, x)).epsilon(1e-11));
    }

    const Vec e1 = Vec::from({1.0, 0.0});
    const double val = na.evaluate(e1);
    CHECK(val >= 1.0 - 1e-12);
    CHECK(val <= std::sqrt(2.0) + 1e-12);
}

TEST_CASE("random classes: evaluation matches independent re-enumeration") {
    rng::Engine eng(56);
    for (int rep = 0; rep < 10; ++rep) {
        Mat a(2), b(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a.at(i, j) = rng::uniform(eng, -0.8, 0.8);
                b.at(i, j) = rng::uniform(eng, -0.8, 0.8);
            }
        const MatrixClass cls({a, b});
        const double q = rng::uniform(eng, 0.5, 1.0);
        const NormApprox na = NormApprox::build(cls, q, 5);
        for (int s = 0; s < 10; ++s) {
            const Vec x = rng::unit_vector(eng, 2).scaled(rng::uniform(eng, 0.2, 2.0));
            CHECK(na.evaluate(x) ==
                  doctest::Approx(reenumerated_norm(cls, q, 5, x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("norm axioms hold on random triples") {
    rng::Engine eng(51);
    const MatrixClass cls = family::family_class(family::stable_parameter(3));
    const NormApprox na =
        NormApprox::build(cls, 1.0 - std::pow(0.5, 4.0), 5);
    for (int rep = 0; rep < 200; ++rep) {
        const Vec x = rng::unit_vector(eng, 2).scaled(rng::uniform(eng, 0.1, 3.0));
        const Vec y = rng::unit_vector(eng, 2).scaled(rng::uniform(eng, 0.1, 3.0));
        const double lambda = rng::uniform(eng, -2.5, 2.5);
        const double vx = na.evaluate(x);
        CHECK(std::fabs(na.evaluate(x.scaled(lambda)) - std::fabs(lambda) * vx) <=
              1e-10 * std::max(vx, 1.0));
        CHECK(na.evaluate(x + y) <= vx + na.evaluate(y) + 1e-10);
    }
}

TEST_CASE("evaluation is monotone in depth") {
    const MatrixClass cls = family::family_class(family::stable_parameter(3));
    const double q = 1.0 - std::pow(0.5, 4.0);
    const NormApprox shallow = NormApprox::build(cls, q, 4);
    const NormApprox deep = NormApprox::build(cls, q, 5);
    const std::vector<Vec> samples = contraction_samples(2, 40, 9);
    for (const Vec& x : samples) {
        CHECK(deep.evaluate(x) >= shallow.evaluate(x) - 1e-12);
        CHECK(deep.evaluate_truncated(x, 4) ==
              doctest::Approx(shallow.evaluate(x)).epsilon(1e-12));
    }
}

TEST_CASE("deduplication keeps degenerate level sets small") {
    const MatrixClass cls = family::family_class(family::stable_parameter(3));
    const NormApprox na = NormApprox::build(cls, 0.95, 7);
    const auto sizes = na.level_sizes();
    REQUIRE(sizes.size() == 8);
    CHECK(sizes[0] == 1);
    for (std::size_t n = 0; n < sizes.size(); ++n) {
        CHECK(sizes[n] <= (std::size_t{1} << n));
    }
    // The projector collapses P R^m P products, so deep levels stay thin.
    CHECK(sizes[7] < (std::size_t{1} << 7));

    // A duplicated member must not enlarge the level sets at all.
    const Mat p = family::projector(0.6);
    const NormApprox dup = NormApprox::build(MatrixClass({p, p}), 1.0, 4);
    for (std::size_t s : dup.level_sizes()) CHECK(s == 1);
}

TEST_CASE("truncated contraction holds by construction") {
    const double t3 = family::stable_parameter(3);
    const double mu3 = 1.0 - std::pow(t3, 4.0);
    CHECK(mu3 == doctest::Approx(0.9375).epsilon(1e-15));
    const NormApprox na = NormApprox::build(family::family_class(t3), mu3, 6);
    const std::vector<Vec> samples = contraction_samples(2, 1000, 0x5eed5eedULL);
    for (int k = 1; k <= 2; ++k) {
        const ContractionReport rep = verify_contraction(na, k, samples);
        CHECK(rep.max_truncated_violation <= 1e-10);
        CHECK(rep.samples == static_cast<int>(samples.size()));
    }
    CHECK_THROWS_AS(verify_contraction(na, 0, samples), InvalidInput);
    CHECK_THROWS_AS(verify_contraction(na, 3, samples), InvalidInput);
}

TEST_CASE("non-contractive class still satisfies the truncated form but not the full form") {
    // No q < 1 contraction exists here: the periodic witness grows. The
    // truncated inequality holds anyway; the full-depth diagnostic must
    // catch the growth on some sample.
    const NormApprox na =
        NormApprox::build(family::family_class(family::unstable_parameter(6)), 0.999, 8);
    const std::vector<Vec> samples = contraction_samples(2, 1000, 0x5eed5eedULL);
    double worst_full = -1e300;
    for (int k = 1; k <= 2; ++k) {
        const ContractionReport rep = verify_contraction(na, k, samples);
        CHECK(rep.max_truncated_violation <= 1e-10);
        worst_full = std::max(worst_full, rep.max_full_violation);
    }
    CHECK(worst_full > 0.0);
}

TEST_CASE("automatic q comes from a bounds run") {
    const NormApprox na =
        NormApprox::build_auto_q(MatrixClass({Mat::identity(2).scaled(0.5)}), 6);
    CHECK(na.q() == doctest::Approx(0.5 + 1e-6).epsilon(1e-9));
    // Unstable class: no valid q below 1 exists.
    CHECK_THROWS_AS(
        NormApprox::build_auto_q(family::family_class(family::unstable_parameter(6)), 8),
        InvalidInput);
}

#pragma once

#include <vector>

#include "switchstab/mat.hpp"

namespace switchstab {

/// Ordered finite class {A_1, ..., A_M} of square matrices of a shared
/// dimension N; equivalently a point in R^(M*N^2) when flattened.
class MatrixClass {
public:
    explicit MatrixClass(std::vector<Mat> members);

    /// Rebuilds a class from its flattened coordinates, member-major then
    /// row-major within each member.
    static MatrixClass from_flat(int m, int dim, const std::vector<double>& flat);

    int size() const { return static_cast<int>(members_.size()); } // M
    int dim() const { return dim_; }                               // N
    const Mat& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }
    const std::vector<Mat>& members() const { return members_; }

    /// Flattened coordinates, member-major then row-major.
    std::vector<double> flatten() const;

    MatrixClass scaled(double s) const;

private:
    int dim_;
    std::vector<Mat> members_;
};

/// Finite switching sequence. Indices are 1-based into the class, and
/// indices[k] is the factor applied at step k+1: the realized matrix is
/// members[back] * ... * members[front], rightmost factor acting first.
struct Word {
    std::vector<int> indices;

    std::size_t length() const { return indices.size(); }
};

/// Throws InvalidInput unless every index lies in 1..m.
void validate_word(const Word& w, int m);

/// Ordered product for the word; the empty word realizes the identity.
Mat realize_word(const MatrixClass& cls, const Word& w);

/// Concatenation w1 ++ w2 (w1 applied first).
Word concat(const Word& w1, const Word& w2);

/// Euclidean norms |x(n)| for n = 0..len(w), computed by successive
/// application of the word's factors (never by forming the full product).
std::vector<double> evaluate_trajectory(const MatrixClass& cls, const Word& w,
                                        const Vec& x0);

/// Greatest r such that the word splits into r consecutive blocks, each
/// containing every symbol 1..m. Greedy (close a block as soon as it is
/// complete), which attains the maximum.
int regularity_index(int m, const Word& w);

/// regularity_index of every prefix, profile[k] for the first k symbols
/// (profile[0] = 0). Nondecreasing by construction.
std::vector<int> regularity_profile(int m, const Word& w);

} // namespace switchstab

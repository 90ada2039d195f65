#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "switchstab/errors.hpp"

namespace switchstab {

/// Real vector of small dimension N.
class Vec {
public:
    Vec() = default;
    explicit Vec(int dim) : entries_(static_cast<std::size_t>(check_dim(dim)), 0.0) {}

    /// Builds a vector from entries, rejecting NaN/infinity.
    static Vec from(std::vector<double> entries);

    int dim() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& entries() const { return entries_; }

    /// Euclidean norm |x|.
    double norm() const;

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec scaled(double s) const;

private:
    static int check_dim(int dim);
    std::vector<double> entries_;
};

/// Dense real square matrix of dimension N, row-major. Dimensions are small
/// (2 in most of the analyses here); storage is a flat heap buffer.
class Mat {
public:
    Mat() = default;
    explicit Mat(int dim)
        : dim_(check_dim(dim)),
          entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0) {}

    static Mat identity(int dim);

    /// Builds from rows, rejecting ragged shapes and non-finite entries.
    static Mat from_rows(const std::vector<std::vector<double>>& rows);

    /// Builds from a flat row-major buffer of dim*dim entries.
    static Mat from_flat(int dim, std::vector<double> flat);

    int dim() const { return dim_; }
    double at(int i, int j) const { return entries_[idx(i, j)]; }
    double& at(int i, int j) { return entries_[idx(i, j)]; }
    const std::vector<double>& flat() const { return entries_; }

    Mat transpose() const;
    Mat scaled(double s) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;

    /// Matrix product this * o. Throws InvalidInput on dimension mismatch.
    Mat operator*(const Mat& o) const;

    /// Matrix-vector product this * x.
    Vec apply(const Vec& x) const;

    double max_abs() const;
    double frobenius() const;

private:
    static int check_dim(int dim);
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
               static_cast<std::size_t>(j);
    }
    int dim_ = 0;
    std::vector<double> entries_;
};

/// Largest entrywise |a-b|; dimensions must match.
double max_abs_diff(const Mat& a, const Mat& b);

Mat mat_mul(const Mat& a, const Mat& b);

} // namespace switchstab

#include "switchstab/mat.hpp"

#include <algorithm>
#include <cmath>

namespace switchstab {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string(what) + ": non-finite entry");
    }
}

} // namespace

int Vec::check_dim(int dim) {
    if (dim < 1) throw InvalidInput("Vec: dimension must be >= 1");
    return dim;
}

Vec Vec::from(std::vector<double> entries) {
    if (entries.empty()) throw InvalidInput("Vec: dimension must be >= 1");
    for (double v : entries) require_finite(v, "Vec");
    Vec x;
    x.entries_ = std::move(entries);
    return x;
}

double Vec::norm() const {
    // Scaled two-pass form; keeps accuracy when entries span many decades.
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::fabs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : entries_) {
        const double r = v / m;
        s += r * r;
    }
    return m * std::sqrt(s);
}

Vec Vec::operator+(const Vec& o) const {
    if (dim() != o.dim()) throw InvalidInput("Vec+: dimension mismatch");
    Vec r(dim());
    for (int i = 0; i < dim(); ++i) r[i] = (*this)[i] + o[i];
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    if (dim() != o.dim()) throw InvalidInput("Vec-: dimension mismatch");
    Vec r(dim());
    for (int i = 0; i < dim(); ++i) r[i] = (*this)[i] - o[i];
    return r;
}

Vec Vec::scaled(double s) const {
    Vec r(dim());
    for (int i = 0; i < dim(); ++i) r[i] = (*this)[i] * s;
    return r;
}

int Mat::check_dim(int dim) {
    if (dim < 1) throw InvalidInput("Mat: dimension must be >= 1");
    return dim;
}

Mat Mat::identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
            throw InvalidInput("Mat: rows must form a square array");
        }
        for (int j = 0; j < n; ++j) {
            const double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            require_finite(v, "Mat");
            m.at(i, j) = v;
        }
    }
    return m;
}

Mat Mat::from_flat(int dim, std::vector<double> flat) {
    check_dim(dim);
    if (flat.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        throw InvalidInput("Mat: flat buffer size does not match dimension");
    }
    for (double v : flat) require_finite(v, "Mat");
    Mat m;
    m.dim_ = dim;
    m.entries_ = std::move(flat);
    return m;
}

Mat Mat::transpose() const {
    Mat r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::scaled(double s) const {
    Mat r = *this;
    for (double& v : r.entries_) v *= s;
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (dim_ != o.dim_) throw InvalidInput("Mat+: dimension mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (dim_ != o.dim_) throw InvalidInput("Mat-: dimension mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (dim_ != o.dim_) throw InvalidInput("mat_mul: dimension mismatch");
    Mat r(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    }
    return r;
}

Vec Mat::apply(const Vec& x) const {
    if (dim_ != x.dim()) throw InvalidInput("Mat::apply: dimension mismatch");
    Vec y(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::fabs(v));
    return m;
}

double Mat::frobenius() const {
    double s = 0.0;
    for (double v : entries_) s += v * v;
    return std::sqrt(s);
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.dim() != b.dim()) throw InvalidInput("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.flat().size(); ++i) {
        m = std::max(m, std::fabs(a.flat()[i] - b.flat()[i]));
    }
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) { return a * b; }

} // namespace switchstab

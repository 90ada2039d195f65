#include "switchstab/system.hpp"

#include <string>

namespace switchstab {

MatrixClass::MatrixClass(std::vector<Mat> members) : dim_(0), members_(std::move(members)) {
    if (members_.empty()) throw InvalidInput("MatrixClass: needs at least one member");
    dim_ = members_.front().dim();
    for (const Mat& m : members_) {
        if (m.dim() != dim_) throw InvalidInput("MatrixClass: members must share dimension");
    }
}

MatrixClass MatrixClass::from_flat(int m, int dim, const std::vector<double>& flat) {
    if (m < 1) throw InvalidInput("MatrixClass: M must be >= 1");
    const std::size_t per = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    if (flat.size() != per * static_cast<std::size_t>(m)) {
        throw InvalidInput("MatrixClass: flat buffer size does not match M*N^2");
    }
    std::vector<Mat> members;
    members.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        std::vector<double> chunk(flat.begin() + static_cast<std::ptrdiff_t>(per) * k,
                                  flat.begin() + static_cast<std::ptrdiff_t>(per) * (k + 1));
        members.push_back(Mat::from_flat(dim, std::move(chunk)));
    }
    return MatrixClass(std::move(members));
}

std::vector<double> MatrixClass::flatten() const {
    std::vector<double> out;
    out.reserve(members_.size() * static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_));
    for (const Mat& m : members_) out.insert(out.end(), m.flat().begin(), m.flat().end());
    return out;
}

MatrixClass MatrixClass::scaled(double s) const {
    std::vector<Mat> scaled_members;
    scaled_members.reserve(members_.size());
    for (const Mat& m : members_) scaled_members.push_back(m.scaled(s));
    return MatrixClass(std::move(scaled_members));
}

void validate_word(const Word& w, int m) {
    for (int idx : w.indices) {
        if (idx < 1 || idx > m) {
            throw InvalidInput("Word: index " + std::to_string(idx) + " outside 1.." +
                               std::to_string(m));
        }
    }
}

Mat realize_word(const MatrixClass& cls, const Word& w) {
    validate_word(w, cls.size());
    Mat acc = Mat::identity(cls.dim());
    for (int idx : w.indices) acc = cls[idx - 1] * acc;
    return acc;
}

Word concat(const Word& w1, const Word& w2) {
    Word out = w1;
    out.indices.insert(out.indices.end(), w2.indices.begin(), w2.indices.end());
    return out;
}

std::vector<double> evaluate_trajectory(const MatrixClass& cls, const Word& w,
                                        const Vec& x0) {
    validate_word(w, cls.size());
    if (x0.dim() != cls.dim()) throw InvalidInput("evaluate_trajectory: dimension mismatch");
    std::vector<double> norms;
    norms.reserve(w.length() + 1);
    Vec x = x0;
    norms.push_back(x.norm());
    for (int idx : w.indices) {
        x = cls[idx - 1].apply(x);
        norms.push_back(x.norm());
    }
    return norms;
}

std::vector<int> regularity_profile(int m, const Word& w) {
    if (m < 1) throw InvalidInput("regularity_profile: alphabet size must be >= 1");
    if (m > 64) throw InvalidInput("regularity_profile: alphabet size capped at 64");
    validate_word(w, m);
    const std::uint64_t full =
        (m == 64) ? ~0ull : ((1ull << static_cast<unsigned>(m)) - 1ull);
    std::vector<int> profile;
    profile.reserve(w.length() + 1);
    profile.push_back(0);
    int blocks = 0;
    std::uint64_t seen = 0;
    for (int idx : w.indices) {
        seen |= 1ull << static_cast<unsigned>(idx - 1);
        if (seen == full) {
            ++blocks;
            seen = 0;
        }
        profile.push_back(blocks);
    }
    return profile;
}

int regularity_index(int m, const Word& w) {
    return regularity_profile(m, w).back();
}

} // namespace switchstab

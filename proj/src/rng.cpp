#include "switchstab/rng.hpp"

namespace switchstab {
namespace rng {

std::vector<Vec> sphere_samples_with_axes(int dim, int count, std::uint64_t seed) {
    Engine eng(seed);
    std::vector<Vec> samples;
    samples.reserve(static_cast<std::size_t>(count) + 2 * static_cast<std::size_t>(dim));
    for (int i = 0; i < count; ++i) samples.push_back(unit_vector(eng, dim));
    for (int i = 0; i < dim; ++i) {
        Vec plus(dim);
        plus[i] = 1.0;
        samples.push_back(plus);
        Vec minus(dim);
        minus[i] = -1.0;
        samples.push_back(minus);
    }
    return samples;
}

} // namespace rng
} // namespace switchstab

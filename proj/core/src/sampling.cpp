#include <hiso/sampling.hpp>

#include <cmath>

namespace hiso {

namespace {

// splitmix64: the standard 64-bit mixer, used both to derive per-label
// stream seeds and as the generator itself.
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

SampleStream::SampleStream(std::uint64_t seed, std::string_view label) {
    std::uint64_t mix = seed ^ fnv1a(label);
    // Warm the state through the mixer twice so adjacent seeds decorrelate.
    splitmix64(mix);
    splitmix64(mix);
    state_ = mix;
}

std::uint64_t SampleStream::next_u64() { return splitmix64(state_); }

double SampleStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Complex SampleStream::gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

Eigen::VectorXcd SampleStream::gaussian_vector(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian();
    return v;
}

Eigen::VectorXcd SampleStream::ball_point(int dim, double rmax) {
    Eigen::VectorXcd dir = gaussian_vector(dim);
    const double n = dir.norm();
    if (n == 0.0) return Eigen::VectorXcd::Zero(dim);
    return dir * (uniform(0.0, rmax) / n);
}

Complex SampleStream::disk_point(double rmax) {
    const double r = rmax * uniform();
    const double t = kTwoPi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
}

Complex SampleStream::phase() {
    const double t = kTwoPi * uniform();
    return {std::cos(t), std::sin(t)};
}

Eigen::MatrixXcd random_unitary(int n, SampleStream& stream) {
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = stream.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the draw is a pure function of the stream.
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a == 0.0) ? Complex{1.0, 0.0} : d / a;
    }
    return q;
}

} // namespace hiso

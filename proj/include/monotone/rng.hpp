#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

namespace monotone {

// Deterministic generators. Everything downstream (probes, samplers, jitter)
// must be reproducible from a seed, so we avoid std:: distributions whose
// output is implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0xa0761d6478bd642fULL) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  std::size_t next_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  double gaussian() {
    // Box-Muller, one value per call; cached pair dropped for simplicity.
    double u1 = next_double(), u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::VectorXd gaussian_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian();
    return v;
  }

  // uniform direction on the Euclidean unit sphere
  Eigen::VectorXd sphere_direction(int dim) {
    for (;;) {
      Eigen::VectorXd v = gaussian_vector(dim);
      double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

 private:
  std::uint64_t state_;
};

// Halton low-discrepancy sequence (1-based index), one prime per coordinate.
inline double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

inline Eigen::VectorXd halton_point(std::uint64_t index, int dim) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = halton(index, primes[i % 8]);
  return v;
}

// Low-discrepancy point in the closed Euclidean unit ball. A seed offsets the
// Halton index so distinct seeds give distinct deterministic streams.
inline Eigen::VectorXd halton_ball_point(std::uint64_t index, int dim, std::uint64_t seed) {
  std::uint64_t s = seed;
  std::uint64_t shift = splitmix64(s) % 9973;
  Eigen::VectorXd u = halton_point(index + 1 + shift, dim + 1);
  // first dim coordinates -> direction via inverse normal would be overkill;
  // map cube to ball: direction from centered coordinates, radius from last.
  Eigen::VectorXd dir(dim);
  for (int i = 0; i < dim; ++i) dir[i] = 2.0 * u[i] - 1.0;
  double n = dir.norm();
  if (n < 1e-12) { dir.setZero(); dir[0] = 1.0; n = 1.0; }
  dir /= n;
  double radius = std::pow(u[dim], 1.0 / dim);
  return radius * dir;
}

// Equally spaced directions on the unit circle (2d); includes angle 0.
inline std::vector<Eigen::VectorXd> circle_net(int count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double a = 2.0 * M_PI * static_cast<double>(k) / count;
    Eigen::VectorXd d(2);
    d << std::cos(a), std::sin(a);
    out.push_back(d);
  }
  return out;
}

// Direction net on the sphere in arbitrary dimension. dim 1: {+1,-1};
// dim 2: equally spaced (includes the coordinate axes and diagonals when
// count is a multiple of 8); dim 3: Fibonacci sphere; higher: seeded gaussians.
inline std::vector<Eigen::VectorXd> direction_net(int dim, int count, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (dim == 1) {
    Eigen::VectorXd a(1), b(1);
    a << 1.0; b << -1.0;
    out = {a, b};
  } else if (dim == 2) {
    out = circle_net(count);
  } else if (dim == 3) {
    out.reserve(count);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      double z = 1.0 - 2.0 * (k + 0.5) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = golden * k;
      Eigen::VectorXd d(3);
      d << r * std::cos(a), r * std::sin(a), z;
      out.push_back(d);
    }
    // make sure the coordinate axes are present
    for (int i = 0; i < 3; ++i)
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(3);
        d[i] = s;
        out.push_back(d);
      }
  } else {
    Rng rng(seed ^ 0x5eedULL);
    out.reserve(count);
    for (int k = 0; k < count; ++k) out.push_back(rng.sphere_direction(dim));
    for (int i = 0; i < dim; ++i)
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
        d[i] = s;
        out.push_back(d);
      }
  }
  return out;
}

}  // namespace monotone

#include "tracemono/ensembles.hpp"

#include <cmath>

#include "tracemono/supermap.hpp"

namespace tracemono {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::next_u64() {
  return splitmix64(state_);
}

double Rng::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
  return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform_open();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

Complex Rng::cnormal() {
  constexpr double inv_sqrt2 = 0.7071067811865475244;
  double re = normal();
  double im = normal();
  return Complex(re * inv_sqrt2, im * inv_sqrt2);
}

std::uint64_t SeedPlan::stream_seed(const std::string& suite_id,
                                    const std::string& check_id,
                                    std::uint64_t trial) const {
  std::uint64_t s = master_seed;
  s ^= splitmix64(s) ^ fnv1a(suite_id);
  s ^= splitmix64(s) ^ fnv1a(check_id);
  s ^= splitmix64(s) ^ (trial * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return s;
}

Rng SeedPlan::stream(const std::string& suite_id, const std::string& check_id,
                     std::uint64_t trial) const {
  return Rng(stream_seed(suite_id, check_id, trial));
}

Matrix gen_gaussian(Index n, Index m, Rng& rng) {
  Matrix g(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i)
      g(i, j) = rng.cnormal();
  return g;
}

Matrix gen_unitary(Index n, Rng& rng) {
  Matrix g = gen_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // Fix the phase of R's diagonal so the distribution is basis-covariant.
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix gen_psd(Index n, Rng& rng) {
  Matrix g = gen_gaussian(n, n, rng);
  return symmetrize(g * g.adjoint());
}

PdMatrix gen_pd(Index n, Rng& rng, double floor) {
  if (floor <= 0.0) throw InvalidInput("gen_pd: floor must be positive");
  Matrix m = gen_psd(n, rng) + floor * Matrix::Identity(n, n);
  return PdMatrix(std::move(m), floor);
}

PdMatrix gen_density(Index n, Rng& rng) {
  Matrix m = gen_psd(n, rng) + 1e-4 * Matrix::Identity(n, n);
  double tr = m.trace().real();
  m /= tr;
  return PdMatrix(std::move(m), 1e-4 / tr);
}

Matrix gen_invertible(Index n, Rng& rng, double floor) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix g = gen_gaussian(n, n, rng);
    Eigen::JacobiSVD<Matrix> svd(g);
    if (svd.singularValues()(n - 1) >= floor) return g;
  }
  throw InvalidInput("gen_invertible: could not reach singular value floor");
}

SuperMap gen_channel(Index d_in, Index d_out, int kraus_count, Rng& rng,
                     ChannelFlavor flavor) {
  if (kraus_count < 1) throw InvalidInput("gen_channel: kraus_count must be >= 1");
  if (kraus_count * d_out < d_in)
    throw InvalidInput("gen_channel: kraus_count * d_out < d_in, no isometry exists");
  // Stack Gaussian blocks and normalize so that sum V_k^dagger V_k = 1.
  Matrix g = gen_gaussian(kraus_count * d_out, d_in, rng);
  Matrix s = symmetrize(g.adjoint() * g);
  Matrix s_inv_half = mat_pow(s, -0.5, 1e-12 * std::max(1.0, spectral_norm(s)));
  std::vector<Matrix> ops;
  ops.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k)
    ops.push_back(g.block(k * d_out, 0, d_out, d_in) * s_inv_half);
  SuperMap channel = SuperMap::from_kraus(ops);
  return flavor == ChannelFlavor::TracePreserving ? channel : channel.adjoint();
}

}  // namespace tracemono

#ifndef TRACEMONO_ENSEMBLES_HPP
#define TRACEMONO_ENSEMBLES_HPP

#include <cstdint>
#include <string>

#include "tracemono/matcore.hpp"

namespace tracemono {

// Deterministic stream generator. All randomness in the artifact flows
// through this so that reports are reproducible bit-for-bit across runs and
// platforms; the standard library distributions are implementation-defined
// and deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();     // splitmix64 step
  double uniform();             // [0, 1)
  double uniform_open();        // (0, 1]
  double normal();              // standard normal via Box-Muller
  Complex cnormal();            // complex normal, E|z|^2 = 1

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a(const std::string& s);

// Stream seeds derived from (master_seed, suite id, check id, trial index)
// by hashing and splitmix mixing. Identical inputs give identical instances
// independent of execution order.
struct SeedPlan {
  std::uint64_t master_seed = 0;

  std::uint64_t stream_seed(const std::string& suite_id,
                            const std::string& check_id,
                            std::uint64_t trial) const;
  Rng stream(const std::string& suite_id, const std::string& check_id,
             std::uint64_t trial) const;
};

enum class ChannelFlavor { TracePreserving, UnitalAdjoint };

Matrix gen_gaussian(Index n, Index m, Rng& rng);
Matrix gen_unitary(Index n, Rng& rng);  // QR of a Gaussian matrix
Matrix gen_psd(Index n, Rng& rng);      // G G^dagger
PdMatrix gen_pd(Index n, Rng& rng, double floor);
PdMatrix gen_density(Index n, Rng& rng);  // unit trace, nondegenerate

// Invertible with singular values bounded away from zero.
Matrix gen_invertible(Index n, Rng& rng, double floor = 1e-3);

class SuperMap;
// TracePreserving: random Kraus set with sum V_k^dagger V_k = 1 obtained by
// normalizing a stacked Gaussian isometry. UnitalAdjoint: the adjoint of such
// a channel, which is unital CP.
SuperMap gen_channel(Index d_in, Index d_out, int kraus_count, Rng& rng,
                     ChannelFlavor flavor = ChannelFlavor::TracePreserving);

}  // namespace tracemono

#endif

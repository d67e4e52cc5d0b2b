#pragma once

// Dimensions of the quantum Hilbert spaces H^0(Sym^d, L_M) = Lambda^d H^0(Q (x) K^{1/2})
// and their fermionic basis labels. Integer arithmetic only.

#include <optional>
#include <vector>

#include "vortexq/exact.hpp"

namespace vortexq::hilbert {

struct BundleLedger {
  long deg_q = 0;     ///< k
  long deg_spin = 0;  ///< g - 1
  long deg_m = 0;     ///< k - g + 1
  long deg_qk = 0;    ///< k + g - 1
};

BundleLedger bundle_ledger(long g, long k);

/// h^0(Q (x) K^{1/2}) = k + h1. Throws InvalidJump when h1 > 0 with
/// k > g - 1, or when h1 exceeds the Clifford bound floor((g - 1 - k) / 2) + 1.
long spinor_h0(long g, long k, long h1);

struct DimensionReport {
  long h0 = 0;
  long h1 = 0;
  Integer dim;          ///< C(h0, d)
  Integer generic_dim;  ///< C(k, d)
  bool jumped = false;
};

/// Throws BradlowViolation (k <= d), InvalidJump, InvalidArgument (d < 1).
DimensionReport hilbert_dim(long g, long d, long k, long h1 = 0);

struct JumpStratum {
  bool jumps_possible = false;   ///< k <= g - 1
  bool unique_top_jump = false;  ///< k = g - 1: only Q = K^{1/2} jumps, with h1 = 1
  /// Largest admissible h1 (Clifford bound); 0 when no jumps are possible.
  long max_h1 = 0;
};

JumpStratum jump_stratum(long g, long k);

/// Lexicographic stream of strictly increasing d-tuples from {1..n}.
class WedgeStates {
 public:
  WedgeStates(long n, long d);

  /// Current label, or nullopt when exhausted.
  std::optional<std::vector<long>> next();
  void reset();
  Integer count() const { return binomial(n_, d_); }

 private:
  long n_;
  long d_;
  std::vector<long> cur_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<std::vector<long>> wedge_states(long n, long d);

/// Sign of the permutation sorting `label`; 0 if an index repeats
/// (e_i ^ e_i = 0).
int permutation_sign(const std::vector<long>& label);

}  // namespace vortexq::hilbert

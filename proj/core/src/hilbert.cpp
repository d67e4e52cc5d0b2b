#include "vortexq/hilbert.hpp"

#include <string>

#include "vortexq/error.hpp"

namespace vortexq::hilbert {

BundleLedger bundle_ledger(long g, long k) {
  if (g < 0 || k < 1) throw Error(ErrorKind::InvalidArgument, "need g >= 0 and k >= 1");
  return BundleLedger{k, g - 1, k - g + 1, k + g - 1};
}

JumpStratum jump_stratum(long g, long k) {
  if (g < 0 || k < 1) throw Error(ErrorKind::InvalidArgument, "need g >= 0 and k >= 1");
  JumpStratum s;
  s.jumps_possible = k <= g - 1;
  s.unique_top_jump = k == g - 1;
  // Clifford: h0(D) <= deg D / 2 + 1 for a special divisor, deg D = k + g - 1
  s.max_h1 = s.jumps_possible ? (g - 1 - k) / 2 + 1 : 0;
  return s;
}

long spinor_h0(long g, long k, long h1) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  if (h1 < 0) throw Error(ErrorKind::InvalidArgument, "h1 must be nonnegative");
  const JumpStratum s = jump_stratum(g, k);
  if (h1 > 0 && !s.jumps_possible) {
    throw Error(ErrorKind::InvalidJump, "h1 = " + std::to_string(h1) + " but h1 vanishes for k = " +
                                            std::to_string(k) + " > g - 1 = " + std::to_string(g - 1));
  }
  if (h1 > s.max_h1) {
    throw Error(ErrorKind::InvalidJump, "h1 = " + std::to_string(h1) + " exceeds the Clifford bound " +
                                            std::to_string(s.max_h1));
  }
  return k + h1;
}

DimensionReport hilbert_dim(long g, long d, long k, long h1) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "d must be positive");
  if (k <= d) {
    throw Error(ErrorKind::BradlowViolation, "k = " + std::to_string(k) + " must exceed d = " + std::to_string(d));
  }
  DimensionReport r;
  r.h0 = spinor_h0(g, k, h1);
  r.h1 = h1;
  r.dim = binomial(r.h0, d);
  r.generic_dim = binomial(k, d);
  r.jumped = h1 > 0;
  return r;
}

WedgeStates::WedgeStates(long n, long d) : n_(n), d_(d) {
  if (d < 1 || n < d) throw Error(ErrorKind::InvalidArgument, "need n >= d >= 1");
}

void WedgeStates::reset() {
  started_ = false;
  done_ = false;
  cur_.clear();
}

std::optional<std::vector<long>> WedgeStates::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    cur_.resize(static_cast<std::size_t>(d_));
    for (long i = 0; i < d_; ++i) cur_[static_cast<std::size_t>(i)] = i + 1;
    return cur_;
  }
  long i = d_ - 1;
  while (i >= 0 && cur_[static_cast<std::size_t>(i)] == n_ - d_ + i + 1) --i;
  if (i < 0) {
    done_ = true;
    return std::nullopt;
  }
  ++cur_[static_cast<std::size_t>(i)];
  for (long j = i + 1; j < d_; ++j) cur_[static_cast<std::size_t>(j)] = cur_[static_cast<std::size_t>(j - 1)] + 1;
  return cur_;
}

std::vector<std::vector<long>> wedge_states(long n, long d) {
  WedgeStates s(n, d);
  std::vector<std::vector<long>> out;
  while (auto label = s.next()) out.push_back(std::move(*label));
  return out;
}

int permutation_sign(const std::vector<long>& label) {
  int inversions = 0;
  for (std::size_t i = 0; i < label.size(); ++i) {
    for (std::size_t j = i + 1; j < label.size(); ++j) {
      if (label[i] == label[j]) return 0;
      if (label[i] > label[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace vortexq::hilbert

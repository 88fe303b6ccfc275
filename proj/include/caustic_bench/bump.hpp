#pragma once

// The smooth bump pair (rho, beta) behind every dyadic cutoff:
//   rho: even, == 1 on [-1,1], == 0 outside [-2,2], values in [0,1];
//   beta(t) = rho(t) - rho(2t) for t > 0, == 0 for t <= 0, support [1/2, 2].
// rho is built from the normalized mollifier exp(-1/(1-s^2)) integrated with
// 10-point Gauss-Legendre panels; the cumulative table is precomputed once
// and immutable, so evaluation is deterministic and cheap.

namespace caustics {

class BumpPair {
 public:
  BumpPair();

  double rho(double t) const;
  double beta(double t) const;

 private:
  double smooth_step(double u) const;  // 0 at u<=-1, 1 at u>=1, C-infinity
};

BumpPair make_bump_pair();

// |sum_{+-} sum_{j=0..j_max} beta(+-2^{-j} t / 2) + rho(|t|) - 1|.
// Zero (to roundoff) whenever |t| <= 2^{j_max}.
double partition_residual(const BumpPair& bumps, double t, int j_max);

}  // namespace caustics

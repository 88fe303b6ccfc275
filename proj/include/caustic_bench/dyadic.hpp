#pragma once

// Dyadic (lambda, sigma) piece bookkeeping: lambda = 2^l frequency bands,
// sigma = 2^{-j} caustic-distance shells for 1 <= j < j0(lambda), and one
// "tilde" piece per lambda at sigma0(lambda) = 2^{-j0} covering the
// near-caustic zone, j0 = floor(l * m / (m+2)).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace caustics {

struct DyadicIndex {
  int l = 1;        // lambda = 2^l
  int j = 0;        // sigma = 2^{-j}; for tilde pieces this is j0(lambda)
  bool tilde = false;
  int sign = +1;    // +1 or -1; tilde pieces carry +1 by convention

  double lambda() const { return std::ldexp(1.0, l); }
  double sigma() const { return std::ldexp(1.0, -j); }
  // "l=<int>,j=<int|tilde>,s=<+|->"
  std::string str() const;
};

struct Sigma0 {
  int j0;
  double sigma0;  // 2^{-j0}
};

// j0 = floor(l * m / (m+2)) for lambda = 2^l.  Requires lambda a power of two
// >= 2 and m >= 1.
Sigma0 sigma0(std::uint64_t lambda, int m);

// Complete, duplicate-free piece list for all lambda = 2^l <= lambda_max in
// lexicographic (l, j, sign) order with sign + before -; one tilde piece per
// lambda closes each block.
std::vector<DyadicIndex> enumerate_pieces(std::uint64_t lambda_max, int m);

}  // namespace caustics

#include "caustic_bench/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace caustics {

std::string DyadicIndex::str() const {
  std::string out = "l=" + std::to_string(l) + ",j=";
  out += tilde ? "tilde" : std::to_string(j);
  out += ",s=";
  out += sign >= 0 ? "+" : "-";
  return out;
}

namespace {

int log2_exact(std::uint64_t v, const char* what) {
  if (v < 2 || (v & (v - 1)) != 0) {
    throw std::domain_error(std::string(what) + " must be a power of two >= 2");
  }
  int l = 0;
  while (v > 1) {
    v >>= 1;
    ++l;
  }
  return l;
}

}  // namespace

Sigma0 sigma0(std::uint64_t lambda, int m) {
  if (m < 1) throw std::domain_error("sigma0 needs m >= 1");
  int l = log2_exact(lambda, "lambda");
  int j0 = (l * m) / (m + 2);
  return {j0, std::ldexp(1.0, -j0)};
}

std::vector<DyadicIndex> enumerate_pieces(std::uint64_t lambda_max, int m) {
  int l_max = log2_exact(lambda_max, "lambda_max");
  if (m < 1) throw std::domain_error("enumerate_pieces needs m >= 1");
  std::vector<DyadicIndex> out;
  for (int l = 1; l <= l_max; ++l) {
    int j0 = (l * m) / (m + 2);
    for (int j = 1; j < j0; ++j) {
      out.push_back({l, j, false, +1});
      out.push_back({l, j, false, -1});
    }
    out.push_back({l, j0, true, +1});
  }
  return out;
}

}  // namespace caustics

#include "caustic_bench/bump.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace caustics {

namespace {

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 10> kGL10Nodes = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr std::array<double, 10> kGL10Weights = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

double mollifier(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double gl10(double a, double b, double (*f)(double)) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 10; ++i) acc += kGL10Weights[i] * f(mid + half * kGL10Nodes[i]);
  return acc * half;
}

constexpr int kTableIntervals = 512;

struct MollifierTable {
  double normalization;                 // 1 / integral of the raw mollifier
  std::vector<double> cumulative;       // raw integral from -1 to node k
  MollifierTable() {
    cumulative.resize(kTableIntervals + 1, 0.0);
    double h = 2.0 / kTableIntervals;
    for (int k = 0; k < kTableIntervals; ++k) {
      double a = -1.0 + k * h;
      cumulative[k + 1] = cumulative[k] + gl10(a, a + h, &mollifier);
    }
    normalization = 1.0 / cumulative[kTableIntervals];
  }
};

const MollifierTable& table() {
  static const MollifierTable t;
  return t;
}

}  // namespace

BumpPair::BumpPair() { (void)table(); }

double BumpPair::smooth_step(double u) const {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const MollifierTable& t = table();
  double h = 2.0 / kTableIntervals;
  int k = static_cast<int>((u + 1.0) / h);
  if (k >= kTableIntervals) k = kTableIntervals - 1;
  double a = -1.0 + k * h;
  double raw = t.cumulative[k] + gl10(a, u, &mollifier);
  return raw * t.normalization;
}

double BumpPair::rho(double t) const {
  double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return 1.0 - smooth_step(2.0 * a - 3.0);
}

double BumpPair::beta(double t) const {
  if (t <= 0.0) return 0.0;
  return rho(t) - rho(2.0 * t);
}

BumpPair make_bump_pair() { return BumpPair(); }

double partition_residual(const BumpPair& bumps, double t, int j_max) {
  double sum = bumps.rho(std::abs(t));
  double scale = 0.5;  // 2^{-j} t / 2 at j = 0
  for (int j = 0; j <= j_max; ++j) {
    sum += bumps.beta(scale * t) + bumps.beta(-scale * t);
    scale *= 0.5;
  }
  return std::abs(sum - 1.0);
}

}  // namespace caustics

#include "vortex/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

std::complex<double> theta3(std::complex<double> v) {
  // Terms decay like exp(-pi m^2 + 2 pi m |Im v|); |Im v| stays O(1) for the
  // arguments used here, so a fixed truncation reaches double precision.
  constexpr int kMaxM = 12;
  std::complex<double> sum = 1.0;
  for (int m = 1; m <= kMaxM; ++m) {
    const double w = std::exp(-kPi * m * m);
    const std::complex<double> ex(0.0, kTwoPi * m);
    sum += w * (std::exp(ex * v) + std::exp(-ex * v));
  }
  return sum;
}

Section theta_section(const TorusGeometry& g, int d, const Divisor& div) {
  int total = 0;
  for (const auto& p : div) total += p.multiplicity;
  if (total != d) {
    throw std::invalid_argument("theta_section: divisor degree " + std::to_string(total) +
                                " != bundle degree " + std::to_string(d));
  }
  const double l = g.side;
  double im_sum = 0.0;
  for (const auto& p : div) im_sum += p.multiplicity * p.y;
  const double a = kTwoPi * im_sum / (l * l) - kPi * d / l;

  Section out(g.sites());
  double max_abs = 0.0;
  for (int s = 0; s < g.sites(); ++s) {
    const std::complex<double> z(g.x_of(s), g.y_of(s));
    std::complex<double> val = 1.0;
    for (const auto& p : div) {
      const std::complex<double> zp(p.x, p.y);
      std::complex<double> factor = theta_c((z - zp) / l);
      std::complex<double> pow = 1.0;
      for (int m = 0; m < p.multiplicity; ++m) pow *= factor;
      val *= pow;
    }
    const double y = z.imag();
    out[s] = val * std::exp(-kPi * d * (y / l) * (y / l) + a * y);
    max_abs = std::max(max_abs, std::abs(out[s]));
  }
  if (max_abs > 0.0) out /= max_abs;
  return out;
}

double torus_distance(const TorusGeometry& g, double x0, double y0, double x1, double y1) {
  const double l = g.side;
  double dx = std::abs(x0 - x1);
  double dy = std::abs(y0 - y1);
  dx = std::min(dx, l - dx);
  dy = std::min(dy, l - dy);
  return std::hypot(dx, dy);
}

}  // namespace vortex

#include "crackimg/specfun.hpp"

#include <stdexcept>

namespace crackimg {

double quadrature_oracle_psf(double r, double omega1, double omegaK, int panels) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("radius must be nonnegative");
  }
  if (!(omega1 > 0.0) || !(omega1 <= omegaK)) {
    throw std::invalid_argument("band must satisfy 0 < omega1 <= omegaK");
  }
  if (panels < 2 || panels % 2 != 0) {
    throw std::invalid_argument("Simpson panel count must be even and at least 2");
  }
  if (omega1 == omegaK) return 0.0;

  const auto integrand = [r](double omega) {
    const double j0 = bessel_j0(omega * r);
    return omega * j0 * j0;
  };
  const double h = (omegaK - omega1) / static_cast<double>(panels);
  double sum = integrand(omega1) + integrand(omegaK);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(omega1 + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

}  // namespace crackimg

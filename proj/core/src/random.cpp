#include "gramframe/random.hpp"

#include <cmath>
#include <numbers>

namespace gramframe {

double NormalSampler::operator()() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = gen_.uniform();
  const double u2 = gen_.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

}  // namespace gramframe

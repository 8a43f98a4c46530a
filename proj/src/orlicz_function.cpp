#include "orlicz/orlicz_function.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

// exp() overflows beyond this argument.
const double kMaxExpArgument = std::log(std::numeric_limits<double>::max());

}  // namespace

OrliczFunction OrliczFunction::exponential(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw InvalidArgument("exponential Orlicz function needs alpha > 0");
  }
  return {Kind::ExponentialAlpha, alpha};
}

OrliczFunction OrliczFunction::power(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw InvalidArgument("power Orlicz function needs p >= 1");
  }
  return {Kind::Power, p};
}

OrliczFunction OrliczFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("psi must look like exp:ALPHA or power:P, got '" +
                          std::string(spec) + "'");
  }
  const auto family = spec.substr(0, colon);
  const auto number = spec.substr(colon + 1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || ptr != number.data() + number.size()) {
    throw InvalidArgument("cannot parse psi shape '" + std::string(number) + "'");
  }
  if (family == "exp") return exponential(value);
  if (family == "power") return power(value);
  throw InvalidArgument("unknown psi family '" + std::string(family) + "'");
}

double OrliczFunction::eval(double x) const noexcept {
  if (x <= 0.0) return 0.0;
  const double t = std::pow(x, shape_);
  if (kind_ == Kind::Power) return t;
  if (t > kMaxExpArgument) return kSaturated;
  return std::expm1(t);
}

double OrliczFunction::derivative(double x) const noexcept {
  if (x < 0.0) x = 0.0;
  if (kind_ == Kind::Power) {
    return shape_ == 1.0 ? 1.0 : shape_ * std::pow(x, shape_ - 1.0);
  }
  if (x == 0.0) {
    if (shape_ == 1.0) return 1.0;
    return shape_ > 1.0 ? 0.0 : kSaturated;
  }
  const double t = std::pow(x, shape_);
  const double log_value = std::log(shape_) + (shape_ - 1.0) * std::log(x) + t;
  if (log_value > kMaxExpArgument) return kSaturated;
  return std::exp(log_value);
}

double OrliczFunction::inverse(double y) const noexcept {
  if (y <= 0.0) return 0.0;
  if (std::isinf(y)) return kSaturated;
  if (kind_ == Kind::Power) return std::pow(y, 1.0 / shape_);
  return std::pow(std::log1p(y), 1.0 / shape_);
}

double OrliczFunction::log_eval(double x) const noexcept {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (kind_ == Kind::Power) return shape_ * std::log(x);
  // log(e^t − 1) = t + log(1 − e^{−t})
  const double t = std::pow(x, shape_);
  return t + std::log(-std::expm1(-t));
}

double OrliczFunction::log_derivative(double x) const noexcept {
  if (x <= 0.0) return std::log(derivative(0.0));
  const double base = std::log(shape_) + (shape_ - 1.0) * std::log(x);
  if (kind_ == Kind::Power) return base;
  return base + std::pow(x, shape_);
}

std::string OrliczFunction::to_string() const {
  std::ostringstream os;
  os << (kind_ == Kind::Power ? "power:" : "exp:") << shape_;
  return os.str();
}

}  // namespace orlicz

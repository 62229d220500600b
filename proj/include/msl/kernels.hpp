#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "msl/common.hpp"
#include "msl/rng.hpp"

namespace msl {

enum class KernelFamily { Epanechnikov, Triweight, Gaussian };

namespace detail {

inline double epanechnikov_pdf(double u) {
  return (u <= -1.0 || u >= 1.0) ? 0.0 : 0.75 * (1.0 - u * u);
}

inline double epanechnikov_cdf(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return (3.0 * u - u * u * u + 2.0) / 4.0;
}

// closed-form inverse of the Epanechnikov CDF (trigonometric cubic root)
inline double epanechnikov_quantile(double p) {
  return 2.0 * std::sin(std::asin(2.0 * p - 1.0) / 3.0);
}

inline double triweight_pdf(double u) {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  const double t = 1.0 - u * u;
  return (35.0 / 32.0) * t * t * t;
}

inline double triweight_cdf(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double u3 = u * u * u, u5 = u3 * u * u, u7 = u5 * u * u;
  return (35.0 / 32.0) * (u - u3 + 0.6 * u5 - u7 / 7.0 + 16.0 / 35.0);
}

inline double gaussian_pdf(double u) {
  return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
}

inline double gaussian_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

// Simpson check that the univariate kernel is a symmetric density; run once
// per family at first construction.
template <typename Pdf>
inline void check_kernel_density(Pdf pdf, double support, double tol) {
  const int segments = 4000;  // even
  const double a = -support, b = support;
  const double h = (b - a) / segments;
  double sum = pdf(a) + pdf(b);
  for (int i = 1; i < segments; ++i) {
    const double x = a + h * i;
    sum += pdf(x) * ((i % 2 == 0) ? 2.0 : 4.0);
    if (std::abs(pdf(x) - pdf(-x)) > 1e-12) {
      fail(ErrorCode::InvalidArgument, "kernel is not symmetric");
    }
  }
  const double integral = sum * h / 3.0;
  require(std::abs(integral - 1.0) <= tol, ErrorCode::InvalidArgument,
          "kernel does not integrate to 1: got " + std::to_string(integral));
}

}  // namespace detail

//! Product kernel: d independent copies of one univariate symmetric density.
//! Epanechnikov and Triweight have compact support [-1, 1] per coordinate;
//! the Gaussian kernel is available but flagged as non-conforming to the
//! compact-support requirement the theory assumes.
class Kernel {
public:
  explicit Kernel(KernelFamily family) : family_(family) { verify_once(family); }

  KernelFamily family() const { return family_; }

  bool compact_support() const { return family_ != KernelFamily::Gaussian; }
  bool condition_conforming() const { return compact_support(); }

  const char* name() const {
    switch (family_) {
      case KernelFamily::Epanechnikov: return "epanechnikov";
      case KernelFamily::Triweight: return "triweight";
      case KernelFamily::Gaussian: return "gaussian";
    }
    return "?";
  }

  static Kernel from_name(const std::string& s) {
    if (s == "epanechnikov") return Kernel(KernelFamily::Epanechnikov);
    if (s == "triweight") return Kernel(KernelFamily::Triweight);
    if (s == "gaussian") return Kernel(KernelFamily::Gaussian);
    fail(ErrorCode::InvalidArgument, "unknown kernel '" + s + "'");
  }

  double pdf1(double u) const {
    switch (family_) {
      case KernelFamily::Epanechnikov: return detail::epanechnikov_pdf(u);
      case KernelFamily::Triweight: return detail::triweight_pdf(u);
      case KernelFamily::Gaussian: return detail::gaussian_pdf(u);
    }
    return 0.0;
  }

  double cdf1(double u) const {
    switch (family_) {
      case KernelFamily::Epanechnikov: return detail::epanechnikov_cdf(u);
      case KernelFamily::Triweight: return detail::triweight_cdf(u);
      case KernelFamily::Gaussian: return detail::gaussian_cdf(u);
    }
    return 0.0;
  }

  //! One exact draw from the univariate kernel.
  double sample1(Rng& rng) const {
    switch (family_) {
      case KernelFamily::Epanechnikov:
        return detail::epanechnikov_quantile(rng.uniform());
      case KernelFamily::Triweight: {
        // Beta(4,4) on [0,1] is the median of 7 uniforms; rescale to [-1,1]
        std::array<double, 7> u;
        for (double& v : u) v = rng.uniform();
        std::nth_element(u.begin(), u.begin() + 3, u.end());
        return 2.0 * u[3] - 1.0;
      }
      case KernelFamily::Gaussian:
        return rng.normal();
    }
    return 0.0;
  }

  double variance1() const {
    switch (family_) {
      case KernelFamily::Epanechnikov: return 1.0 / 5.0;
      case KernelFamily::Triweight: return 1.0 / 9.0;
      case KernelFamily::Gaussian: return 1.0;
    }
    return 0.0;
  }

  // half-width beyond which pdf1 is negligible; used by quadrature helpers
  double support_radius() const { return compact_support() ? 1.0 : 8.5; }

  //! Constant c_K of the normal-reference rule h_j = c_K * sd_j * n^{-1/(d+4)}.
  //! The Gaussian value is (4/(d+2))^{1/(d+4)}; the compact kernels are
  //! rescaled by their canonical-kernel factor so the rule keeps the same
  //! asymptotic smoothing level.
  double reference_constant(int d) const {
    require(d >= 1, ErrorCode::InvalidArgument, "reference_constant: d >= 1");
    const double gauss = std::pow(4.0 / (d + 2), 1.0 / (d + 4));
    switch (family_) {
      case KernelFamily::Gaussian:
        return gauss;
      case KernelFamily::Epanechnikov:
        return gauss * std::pow(30.0 * std::sqrt(M_PI), 0.2);
      case KernelFamily::Triweight:
        return gauss * std::pow((350.0 / 429.0) * 81.0 * 2.0 * std::sqrt(M_PI), 0.2);
    }
    return gauss;
  }

private:
  static void verify_once(KernelFamily family) {
    static const bool epan = (detail::check_kernel_density(detail::epanechnikov_pdf, 1.0, 1e-8), true);
    static const bool tri = (detail::check_kernel_density(detail::triweight_pdf, 1.0, 1e-8), true);
    static const bool gauss = (detail::check_kernel_density(detail::gaussian_pdf, 10.0, 1e-8), true);
    (void)epan; (void)tri; (void)gauss; (void)family;
  }

  KernelFamily family_;
};

}  // namespace msl

#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "zospg/kernel.hpp"
#include "zospg/quadrature.hpp"
#include "zospg/verify.hpp"

using namespace zospg;

TEST_CASE("legendre matches the Boost implementation") {
  for (int m = 0; m <= 12; ++m) {
    for (double r = -1.0; r <= 1.0; r += 0.0625) {
      CHECK(legendre(m, r) == doctest::Approx(boost::math::legendre_p(m, r)).epsilon(1e-13));
    }
  }
}

TEST_CASE("legendre derivative of the normalised polynomial at zero") {
  CHECK(legendre_deriv_at_zero(0) == 0.0);
  CHECK(legendre_deriv_at_zero(1) == doctest::Approx(std::sqrt(3.0)));
  CHECK(legendre_deriv_at_zero(2) == 0.0);
  CHECK(legendre_deriv_at_zero(3) == doctest::Approx(-1.5 * std::sqrt(7.0)));
  CHECK(legendre_deriv_at_zero(4) == 0.0);
  // P5'(0) = 15/8
  CHECK(legendre_deriv_at_zero(5) == doctest::Approx(15.0 / 8.0 * std::sqrt(11.0)));
  // Finite-difference oracle.
  for (int m = 0; m <= 9; ++m) {
    const double h = 1e-6;
    const double fd = std::sqrt(2.0 * m + 1.0) *
                      (boost::math::legendre_p(m, h) - boost::math::legendre_p(m, -h)) / (2 * h);
    CHECK(legendre_deriv_at_zero(m) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("smoothness order is the largest integer strictly below beta") {
  CHECK(smoothness_order(2.0) == 1);
  CHECK(smoothness_order(2.5) == 2);
  CHECK(smoothness_order(3.0) == 2);
  CHECK(smoothness_order(3.5) == 3);
  CHECK(smoothness_order(7.0) == 6);
}

TEST_CASE("kernel moments vanish up to the order, first moment is one") {
  for (double beta : tested_betas()) {
    const KernelSpec k = build_kernel(beta);
    CAPTURE(beta);
    CHECK(k.order() == smoothness_order(beta));
    CHECK(std::abs(kernel_moment(k, 0)) < 1e-12);
    CHECK(std::abs(kernel_moment(k, 1) - 1.0) < 1e-12);
    for (int j = 2; j <= k.order(); ++j) CHECK(std::abs(kernel_moment(k, j)) < 1e-12);
    CHECK(check_kernel_moments(k).passed);
  }
}

TEST_CASE("printed closed forms") {
  const KernelSpec k3 = build_kernel(3.0), k5 = build_kernel(5.0), k7 = build_kernel(7.0);
  for (double r = -1.0; r <= 1.0; r += 0.01) {
    CHECK(k3(r) == doctest::Approx(3.0 * r).epsilon(1e-12));
    CHECK(eval_kernel(k5, r) == doctest::Approx(15.0 * r / 4.0 * (5.0 - 7.0 * r * r)).epsilon(1e-12));
    const double r2 = r * r;
    CHECK(k7(r) == doctest::Approx(105.0 * r / 64.0 * (99 * r2 * r2 - 126 * r2 + 35)).epsilon(1e-12));
  }
}

TEST_CASE("kernel is odd") {
  const KernelSpec k = build_kernel(6.0);
  for (double r = 0.0; r <= 1.0; r += 0.05) CHECK(k(-r) == doctest::Approx(-k(r)));
}

TEST_CASE("kappa against analytic values") {
  // E[(3r)^2] = 3; E[((15r/4)(5 - 7r^2))^2] = 18.75.
  CHECK(build_kernel(3.0).kappa() == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(build_kernel(5.0).kappa() == doctest::Approx(18.75).epsilon(1e-13));
  // kappa_beta for K = 3r: E[3 |r|^{beta+1}] = 3 / (beta + 2).
  CHECK(build_kernel(3.0).kappa_beta() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(build_kernel(2.5).kappa_beta() == doctest::Approx(3.0 / 4.5).epsilon(1e-12));
  CHECK(build_kernel(2.0).kappa_beta() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("kappa_beta against Gauss-Kronrod oracle") {
  using boost::math::quadrature::gauss_kronrod;
  for (double beta : tested_betas()) {
    const KernelSpec k = build_kernel(beta);
    auto integrand = [&](double r) { return std::pow(std::abs(r), beta) * std::abs(k(r)); };
    std::vector<double> cuts{-1.0, 0.0, 1.0};
    for (double root : kernel_positive_roots(k)) {
      cuts.push_back(root);
      cuts.push_back(-root);
    }
    std::sort(cuts.begin(), cuts.end());
    double oracle = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      oracle += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-15);
    }
    oracle *= 0.5;
    CAPTURE(beta);
    CHECK(k.kappa_beta() == doctest::Approx(oracle).epsilon(1e-11));
    const double kappa_oracle =
        0.5 * gauss_kronrod<double, 61>::integrate([&](double r) { return k(r) * k(r); }, -1.0, 1.0,
                                                   15, 1e-15);
    CHECK(k.kappa() == doctest::Approx(kappa_oracle).epsilon(1e-11));
  }
}

TEST_CASE("kernel roots") {
  const auto roots5 = kernel_positive_roots(build_kernel(5.0));
  REQUIRE(roots5.size() == 1);
  CHECK(roots5[0] == doctest::Approx(std::sqrt(5.0 / 7.0)).epsilon(1e-12));
  CHECK(kernel_positive_roots(build_kernel(3.0)).empty());
}

TEST_CASE("kappa_beta bound holds, kappa bound does not for every order") {
  for (double beta : tested_betas()) CHECK(check_kappa_beta_bound(build_kernel(beta)).passed);
  CHECK(check_kappa_bound(build_kernel(3.0)).passed);
  CHECK_FALSE(check_kappa_bound(build_kernel(4.0)).passed);
}

TEST_CASE("corrupted coefficient fails the moment check") {
  const KernelSpec good = build_kernel(5.0);
  std::vector<double> coeffs(good.coefficients().begin(), good.coefficients().end());
  coeffs[3] *= 1.001;
  const KernelSpec bad = KernelSpec::from_coefficients(5.0, coeffs);
  CHECK_FALSE(check_kernel_moments(bad).passed);
}

TEST_CASE("inadmissible beta") {
  CHECK_THROWS_AS(build_kernel(1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel(0.5), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule") {
  for (int p : {1, 2, 5, 12, 30}) {
    const GaussLegendreRule rule = gauss_legendre(p);
    REQUIRE(rule.size() == static_cast<std::size_t>(p));
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Exact for degree 2p - 1.
    const int d = 2 * p - 1;
    const double got = rule.integrate([&](double x) { return std::pow(x, d - 1); });
    const double want = (d - 1) % 2 == 0 ? 2.0 / d : 0.0;
    CHECK(got == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(gauss_legendre(8).integrate([](double x) { return x * x; }, 0.0, 3.0) ==
        doctest::Approx(9.0));
}

TEST_CASE("adaptive integration of a kink") {
  const double v = integrate_adaptive({-1.0, 0.3, 1.0}, [](double x) { return std::abs(x - 0.3); });
  CHECK(v == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7).epsilon(1e-13));
}

#include "quadrature_oracle.hpp"

#include "sacns/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace sacns;

TEST_CASE("gauss_legendre integrates monomials of degree <= 2n-1 exactly") {
  for (int n : {1, 2, 4, 7, 16, 40, 72}) {
    const GaussLegendreRule r = gauss_legendre(n);
    REQUIRE(r.order() == n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(std::abs(wsum - 1.0) <= 1e-13);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += r.weights[i] * std::pow(r.nodes[i], deg);
      CHECK(std::abs(acc - 1.0 / (deg + 1)) <= 1e-13);
    }
  }
}

TEST_CASE("gauss_legendre nodes are increasing, interior, and match Golub-Welsch") {
  for (int n : {3, 12, 40}) {
    const GaussLegendreRule r = gauss_legendre(n);
    const oracle::QuadRule o = oracle::golub_welsch(n);
    for (int i = 0; i < n; ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      CHECK(std::abs(r.nodes[i] - o.nodes[i]) <= 1e-13);
      CHECK(std::abs(r.weights[i] - o.weights[i]) <= 1e-13);
    }
  }
}

TEST_CASE("composite rule: panel count and |x - 1/3| integral") {
  const GaussLegendreRule r = composite_gauss_legendre(8, 6);
  CHECK(r.order() == 48);
  double acc = 0.0;
  for (int i = 0; i < r.order(); ++i) acc += r.weights[i] * std::abs(r.nodes[i] - 1.0 / 3.0);
  // kink on a panel boundary: exact
  CHECK(std::abs(acc - 5.0 / 18.0) <= 1e-14);
}

TEST_CASE("default quadrature order") {
  CHECK(default_quad_order(8) == 40);
  CHECK(default_quad_order(1) == 12);
}

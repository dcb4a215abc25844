#include <doctest.h>

#include <cmath>
#include <complex>

#include "snls/catalog.hpp"
#include "snls/errors.hpp"
#include "snls/stability.hpp"

using namespace snls;
using cd = std::complex<double>;

namespace {

CoefficientSet constant_set(cd c) {
    CoefficientSet cs;
    cs.a = {c, 0.0, 0.0};
    cs.b = {1.0, 0.0};
    cs.k = 1.0;
    return cs;
}

// Case 2 profile at H = 1, B0 = 1 written out directly
cd case2_profile(double x, cd A) {
    const cd I{0.0, 1.0};
    const cd e = 1.0 + A * std::exp(I * std::sqrt(2.0) * x);
    return I / (std::sqrt(2.0) * (1.0 - 2.0 / e));
}

double trapezoid_case2(double a, double b, std::size_t n, cd A) {
    const double h = (b - a) / static_cast<double>(n);
    double s = 0.5 * (std::norm(case2_profile(a, A)) + std::norm(case2_profile(b, A)));
    for (std::size_t i = 1; i < n; ++i) s += std::norm(case2_profile(a + h * static_cast<double>(i), A));
    return 0.5 * h * s;
}

}  // namespace

TEST_CASE("trivial momenta") {
    StabilityConfig cfg;
    CHECK(std::abs(momentum(constant_set(0.0), WaveFrame{1.0}, cfg).Q) == 0.0);
    CHECK(momentum(constant_set(1.0), WaveFrame{1.0}, cfg).Q.real() == doctest::Approx(10.0).epsilon(1e-14));
    cfg.integrand_convention = MomentumConvention::literal_square;
    CHECK(momentum(constant_set(cd{0.0, 1.0}), WaveFrame{1.0}, cfg).Q.real() == doctest::Approx(-10.0).epsilon(1e-14));
}

TEST_CASE("Case 2 momentum matches a fine trapezoid rule") {
    const cd A{2.0};
    const CoefficientSet cs = make_case(2, {1.0, 1.0});
    const ModelParams params{0.0, -1.0, 0.0, 0.0};
    const MomentumResult r = momentum(cs, WaveFrame::from(cs, params, A), StabilityConfig{});
    CHECK(r.excised_fraction == 0.0);
    const double oracle = trapezoid_case2(-10.0, 10.0, 1000000, A);
    CHECK(std::abs(r.Q.real() - oracle) <= 1e-6 * std::abs(oracle));
    CHECK(std::abs(r.Q.imag()) <= 1e-12 * std::abs(oracle));
}

TEST_CASE("doubling the quadrature points leaves pole-free Q unchanged") {
    const CoefficientSet cs = make_case(5, {1.0, 1.0});
    const WaveFrame f = WaveFrame::from(cs, {0.3, -1.0, 0.0, 0.0}, 2.0);
    StabilityConfig cfg;
    cfg.quadrature_points = 128;
    const cd q1 = momentum(cs, f, cfg).Q;
    cfg.quadrature_points = 256;
    const cd q2 = momentum(cs, f, cfg).Q;
    CHECK(std::abs(q1 - q2) <= 1e-8 * std::abs(q2));
}

TEST_CASE("kappa is a pure scale") {
    const CoefficientSet cs = make_case(2, {1.0, 1.0});
    const WaveFrame f = WaveFrame::from(cs, {0.0, -1.0, 0.0, 0.0}, 2.0);
    StabilityConfig cfg;
    const cd q = momentum(cs, f, cfg).Q;
    const cd kappa{1.5, -0.5};
    cfg.kappa = kappa;
    CHECK(std::abs(momentum(cs, f, cfg).Q - std::norm(kappa) * q) <= 1e-12 * std::abs(q) * std::norm(kappa));

    cfg.integrand_convention = MomentumConvention::literal_square;
    cfg.kappa = 1.0;
    const cd ql = momentum(cs, f, cfg).Q;
    cfg.kappa = kappa;
    CHECK(std::abs(momentum(cs, f, cfg).Q - kappa * kappa * ql) <= 1e-12 * std::abs(ql) * std::norm(kappa));
}

TEST_CASE("poles are excised and reported") {
    const CoefficientSet cs = make_case(2, {1.0, 1.0});
    const WaveFrame f = WaveFrame::from(cs, {0.0, -1.0, 0.0, 0.0}, 1.0);
    const MomentumResult r = momentum(cs, f, StabilityConfig{});
    CHECK(r.excised_poles.size() == 9);
    CHECK(r.excised_fraction == doctest::Approx(9 * 2e-3 / 20.0));
    CHECK(std::isfinite(r.Q.real()));

    StabilityConfig wide;
    wide.pole_epsilon = 0.2;
    CHECK_THROWS_AS(momentum(cs, f, wide), UnreliableQuadratureError);
}

TEST_CASE("central derivative of a synthetic family") {
    const DerivativeResult d = central_derivative([](double l) { return cd{l * l}; }, 1.0, 1e-4);
    CHECK(std::abs(d.value - 2.0) <= 1e-6);
    CHECK(d.relative_disagreement <= 0.05);
    CHECK(std::abs(central_derivative([](double) { return cd{3.0}; }, 0.5, 1e-3).value) == 0.0);
    CHECK_THROWS_AS(central_derivative([](double l) { return cd{std::sin(3e4 * l)}; }, 0.5, 1e-4),
                    StepSizeError);
}

TEST_CASE("Case 2 family along upsilon") {
    CaseFamily fam{2, CaseParams{1.0, 1.0}, ModelParams{0.0, -1.0, 0.0, 0.0}, LambdaTarget::upsilon};
    CHECK(fam.lambda0() == -1.0);
    CHECK(fam.at(-1.0).first.k == make_case(2, {1.0, 1.0}).k);
    const StabilityReport r = momentum_derivative(fam, 2.0, StabilityConfig{});
    CHECK(std::isfinite(r.Q.real()));
    CHECK(std::isfinite(r.dQ.real()));
    CHECK(r.richardson_disagreement <= 0.05);
    CHECK(r.expected_sign == "positive (claimed stable)");
    CHECK((r.verdict == "stable" || r.verdict == "unstable" || r.verdict == "inconclusive"));

    CaseFamily by_h{2, CaseParams{1.0, 1.0}, ModelParams{1.0, 0.0, 0.0, 0.0}, LambdaTarget::H};
    CHECK(by_h.lambda0() == 1.0);
    CHECK(by_h.at(2.0).second.upsilon == doctest::Approx(-1.0));
}

TEST_CASE("verdicts") {
    CHECK(stability_verdict(1.0) == Verdict::stable);
    CHECK(stability_verdict(-1.0) == Verdict::unstable);
    CHECK(stability_verdict(1e-12) == Verdict::inconclusive);
    CHECK(to_string(Verdict::stable) == "stable");
}

TEST_CASE("config parsing and validation") {
    CHECK(parse_lambda_target("upsilon") == LambdaTarget::upsilon);
    CHECK(parse_lambda_target("H") == LambdaTarget::H);
    CHECK(parse_convention("modulus") == MomentumConvention::modulus_squared);
    CHECK(parse_convention("literal_square") == MomentumConvention::literal_square);
    CHECK_THROWS(parse_convention("square"));
    StabilityConfig cfg;
    cfg.quadrature_points = 32;
    CHECK_THROWS(cfg.validate());
    cfg = StabilityConfig{};
    cfg.a = 1.0;
    cfg.b = -1.0;
    CHECK_THROWS(cfg.validate());
}

#include "symm/errors.hpp"
#include "symm/fourier.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace symm;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> grid_samples(int m, auto&& f) {
    std::vector<Complex> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        out[j] = f(2 * kPi * j / m);
    }
    return out;
}

FourierVector random_vector(std::mt19937_64& rng, int M, double decay) {
    std::normal_distribution<double> normal;
    FourierVector v(M);
    for (int k = -M; k <= M; ++k) {
        v[k] = Complex(normal(rng), normal(rng)) * std::pow(1.0 + k * k, -decay / 2);
    }
    return v;
}

}  // namespace

TEST_CASE("samples_to_coeffs recovers pure modes") {
    const auto s = grid_samples(16, [](double t) { return std::polar(1.0, 3 * t); });
    const auto v = samples_to_coeffs(s, 4);
    for (int k = -4; k <= 4; ++k) {
        CHECK(std::abs(v[k] - (k == 3 ? 1.0 : 0.0)) < 1e-14);
    }

    const std::vector<Complex> one{1.0};
    CHECK(std::abs(samples_to_coeffs(one, 0)[0] - 1.0) < 1e-15);

    const auto cosine = samples_to_coeffs(grid_samples(8, [](double t) { return Complex(2 * std::cos(t)); }), 2);
    CHECK(std::abs(cosine[1] - 1.0) < 1e-15);
    CHECK(std::abs(cosine[-1] - 1.0) < 1e-15);
    CHECK(std::abs(cosine[0]) < 1e-15);
    CHECK(cosine.is_real());

    CHECK_THROWS_AS(samples_to_coeffs(std::vector<Complex>(8), 4), AliasingError);
}

TEST_CASE("eval_fourier") {
    CHECK(std::abs(eval_fourier(FourierVector::mode(0), 0.37) - 1.0) < 1e-15);
    FourierVector two(1);
    two[1] = 1.0;
    two[-1] = 1.0;
    CHECK(std::abs(eval_fourier(two, 0.0) - 2.0) < 1e-15);

    const auto v = samples_to_coeffs(grid_samples(16, [](double t) { return std::polar(1.0, 2 * t); }), 5);
    CHECK(std::abs(eval_fourier(v, 0.7) - std::polar(1.0, 1.4)) < 1e-13);
}

TEST_CASE("sobolev norms and inner products") {
    CHECK(sobolev_norm(FourierVector::mode(1), SobolevIndex(1.0)) == doctest::Approx(std::sqrt(2.0)));
    for (double r : {-2.0, -0.5, 0.0, 3.0}) {
        CHECK(sobolev_norm(FourierVector::mode(0), SobolevIndex(r)) == doctest::Approx(1.0));
    }
    CHECK(sobolev_norm(FourierVector::mode(2), SobolevIndex(-1.0)) == doctest::Approx(1.0 / std::sqrt(5.0)));

    CHECK(std::abs(sobolev_inner(FourierVector::mode(1), FourierVector::mode(1), SobolevIndex(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(sobolev_inner(FourierVector::mode(1), FourierVector::mode(2), SobolevIndex(1.5))) < 1e-15);
    CHECK(std::abs(sobolev_inner(FourierVector::mode(1, 2.0), FourierVector::mode(1), SobolevIndex(1.0)) - 4.0) <
          1e-15);
    CHECK_THROWS_AS(SobolevIndex(std::nan("")), DomainError);
}

TEST_CASE("project") {
    FourierVector v(5);
    for (int k = -5; k <= 5; ++k) v[k] = 1.0;
    const auto p = project(v, 2);
    for (int k = -5; k <= 5; ++k) {
        CHECK(p[k] == Complex(std::abs(k) <= 2 ? 1.0 : 0.0));
    }
    const auto same = project(v, 9);
    for (int k = -5; k <= 5; ++k) CHECK(same[k] == v[k]);
    CHECK_THROWS_AS(project(v, -1), DomainError);

    FourierVector w(64);
    for (int k = -64; k <= 64; ++k) w[k] = 1.0 / (1.0 + k * k);
    CHECK(sobolev_norm(w - project(w, 4), SobolevIndex(0.0)) <= sobolev_norm(w, SobolevIndex(2.0)) / 16.0);
}

TEST_CASE("projection bound ||v - P_n v||_s <= n^{s-r} ||v||_r") {
    std::mt19937_64 rng(42);
    const std::pair<double, double> pairs[] = {{1, 0}, {2, 0}, {0, -1}, {1, -1}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = random_vector(rng, 128, 3.0);
        for (const auto& [r, s] : pairs) {
            for (int n : {2, 4, 8, 16}) {
                const double lhs = sobolev_norm(v - project(v, n), SobolevIndex(s));
                const double rhs = std::pow(n, -(r - s)) * sobolev_norm(v, SobolevIndex(r));
                CHECK(lhs <= rhs);
            }
        }
    }
}

TEST_CASE("inverse inequality on X_n with constant sqrt(2)^{|r-s|}") {
    std::mt19937_64 rng(5);
    const double r = 0.0;
    const double s = -0.5;
    const double bound = std::pow(std::sqrt(2.0), std::abs(r - s));
    for (int n = 4; n <= 256; n *= 2) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto psi = random_vector(rng, n, 0.0);
            const double ratio = sobolev_norm(psi, SobolevIndex(r)) /
                                 (std::pow(n, r - s) * sobolev_norm(psi, SobolevIndex(s)));
            CHECK(ratio <= bound);
        }
        // Top mode saturates the ratio.
        const double top = sobolev_norm(FourierVector::mode(n), SobolevIndex(r)) /
                           (std::pow(n, r - s) * sobolev_norm(FourierVector::mode(n), SobolevIndex(s)));
        CHECK(top <= bound);
    }
}

TEST_CASE("grid round trip and L2 pairing") {
    std::mt19937_64 rng(9);
    for (int M : {0, 3, 17}) {
        const auto v = random_vector(rng, M, 0.0);
        for (int m : {2 * M + 1, 2 * M + 8}) {
            const auto samples = eval_on_grid(v, m);
            const auto back = samples_to_coeffs(samples, M);
            const auto again = eval_on_grid(back, m);
            for (int j = 0; j < m; ++j) {
                CHECK(std::abs(again[j] - samples[j]) < 1e-12);
            }
        }
        // (1/2pi) int x conj(y) by the trapezoidal rule, exact for trig polynomials.
        const auto w = random_vector(rng, M, 0.0);
        const int m = 4 * M + 4;
        const auto xs = eval_on_grid(v, m);
        const auto ys = eval_on_grid(w, m);
        Complex quad{};
        for (int j = 0; j < m; ++j) quad += xs[j] * std::conj(ys[j]);
        quad /= static_cast<double>(m);
        CHECK(std::abs(quad - sobolev_inner(v, w, SobolevIndex(0.0))) < 1e-12);
    }
}

TEST_CASE("FourierVector invariants") {
    CHECK_THROWS_AS(FourierVector(2, std::vector<Complex>(4)), DomainError);
    CHECK_THROWS_AS(FourierVector(-1), DomainError);
    FourierVector v(2);
    v[1] = {1.0, 2.0};
    CHECK_FALSE(v.is_real());
    v[-1] = {1.0, -2.0};
    CHECK(v.is_real());
    const auto bigger = v.resized(4);
    CHECK(bigger.size() == 9);
    CHECK(bigger[1] == v[1]);
    CHECK(bigger.coeff(7) == Complex{});
    const auto sum = FourierVector::mode(3) + v;
    CHECK(sum.max_index() == 3);
    CHECK(sum[3] == Complex(1.0));
}

#include "symm/fourier.hpp"

#include "symm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace symm {

namespace {

// e^{-2 pi i q / m} for q = 0..m-1, exact at the quarter points.
std::vector<Complex> twiddles(int m) {
    std::vector<Complex> w(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) {
        const double angle = -2.0 * std::numbers::pi * q / m;
        w[q] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

double sobolev_weight(int k, double r) {
    return std::pow(1.0 + static_cast<double>(k) * k, r);
}

}  // namespace

SobolevIndex::SobolevIndex(double order) : r(order) {
    if (!std::isfinite(order)) {
        throw DomainError("Sobolev index must be finite");
    }
}

FourierVector::FourierVector(int max_index)
    : max_index_(max_index), coeffs_(static_cast<std::size_t>(2 * std::max(max_index, 0) + 1)) {
    if (max_index < 0) {
        throw DomainError("FourierVector max_index must be >= 0");
    }
}

FourierVector::FourierVector(int max_index, std::vector<Complex> coeffs)
    : max_index_(max_index), coeffs_(std::move(coeffs)) {
    if (max_index < 0) {
        throw DomainError("FourierVector max_index must be >= 0");
    }
    if (coeffs_.size() != static_cast<std::size_t>(2 * max_index + 1)) {
        throw DomainError("FourierVector needs exactly 2M+1 coefficients, got " +
                          std::to_string(coeffs_.size()) + " for M = " +
                          std::to_string(max_index));
    }
}

FourierVector FourierVector::mode(int k, Complex value, int max_index) {
    FourierVector v(std::max(std::abs(k), max_index));
    v[k] = value;
    return v;
}

FourierVector FourierVector::from_eigen(const Eigen::VectorXcd& v) {
    if (v.size() % 2 == 0) {
        throw DomainError("coefficient vector must have odd length 2M+1");
    }
    const int m = static_cast<int>(v.size() - 1) / 2;
    return FourierVector(m, std::vector<Complex>(v.data(), v.data() + v.size()));
}

Complex FourierVector::coeff(int k) const noexcept {
    return std::abs(k) <= max_index_ ? (*this)[k] : Complex{};
}

FourierVector FourierVector::resized(int max_index) const {
    FourierVector out(max_index);
    const int common = std::min(max_index, max_index_);
    for (int k = -common; k <= common; ++k) {
        out[k] = (*this)[k];
    }
    return out;
}

Eigen::VectorXcd FourierVector::to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size()));
}

bool FourierVector::is_real(double tol) const {
    for (int k = 0; k <= max_index_; ++k) {
        if (std::abs((*this)[-k] - std::conj((*this)[k])) > tol) {
            return false;
        }
    }
    return true;
}

FourierVector& FourierVector::operator+=(const FourierVector& other) {
    if (other.max_index_ > max_index_) {
        *this = resized(other.max_index_);
    }
    for (int k = -other.max_index_; k <= other.max_index_; ++k) {
        (*this)[k] += other[k];
    }
    return *this;
}

FourierVector& FourierVector::operator-=(const FourierVector& other) {
    if (other.max_index_ > max_index_) {
        *this = resized(other.max_index_);
    }
    for (int k = -other.max_index_; k <= other.max_index_; ++k) {
        (*this)[k] -= other[k];
    }
    return *this;
}

FourierVector& FourierVector::operator*=(Complex scale) {
    for (auto& c : coeffs_) {
        c *= scale;
    }
    return *this;
}

FourierVector samples_to_coeffs(std::span<const Complex> samples, int max_index) {
    const int m = static_cast<int>(samples.size());
    if (max_index < 0) {
        throw DomainError("max_index must be >= 0");
    }
    if (m < 2 * max_index + 1) {
        throw AliasingError("samples_to_coeffs needs m >= 2M+1 samples (m = " + std::to_string(m) +
                            ", M = " + std::to_string(max_index) + ")");
    }
    const auto w = twiddles(m);
    FourierVector out(max_index);
    for (int k = -max_index; k <= max_index; ++k) {
        const long long kk = ((k % m) + m) % m;
        Complex acc{};
        for (int j = 0; j < m; ++j) {
            acc += samples[j] * w[static_cast<std::size_t>((kk * j) % m)];
        }
        out[k] = acc / static_cast<double>(m);
    }
    return out;
}

Complex eval_fourier(const FourierVector& v, double t) {
    Complex acc{};
    for (int k = -v.max_index(); k <= v.max_index(); ++k) {
        acc += v[k] * std::polar(1.0, k * t);
    }
    return acc;
}

std::vector<Complex> eval_on_grid(const FourierVector& v, int m) {
    if (m <= 0) {
        throw DomainError("grid size must be positive");
    }
    const auto w = twiddles(m);
    std::vector<Complex> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        Complex acc{};
        for (int k = -v.max_index(); k <= v.max_index(); ++k) {
            // e^{ik t_j} = conj(w[(k j) mod m])
            const long long q = ((static_cast<long long>(k) * j) % m + m) % m;
            acc += v[k] * std::conj(w[static_cast<std::size_t>(q)]);
        }
        out[j] = acc;
    }
    return out;
}

double sobolev_norm(const FourierVector& v, SobolevIndex r) {
    double acc = 0.0;
    for (int k = -v.max_index(); k <= v.max_index(); ++k) {
        acc += sobolev_weight(k, r.r) * std::norm(v[k]);
    }
    return std::sqrt(acc);
}

Complex sobolev_inner(const FourierVector& x, const FourierVector& y, SobolevIndex r) {
    const int common = std::min(x.max_index(), y.max_index());
    Complex acc{};
    for (int k = -common; k <= common; ++k) {
        acc += sobolev_weight(k, r.r) * x[k] * std::conj(y[k]);
    }
    return acc;
}

FourierVector project(const FourierVector& v, int n) {
    if (n < 0) {
        throw DomainError("projection degree n must be >= 0");
    }
    FourierVector out = v;
    for (int k = n + 1; k <= v.max_index(); ++k) {
        out[k] = 0.0;
        out[-k] = 0.0;
    }
    return out;
}

}  // namespace symm

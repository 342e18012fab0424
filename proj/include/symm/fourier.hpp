#pragma once

#include <Eigen/Core>

#include <complex>
#include <span>
#include <vector>

namespace symm {

using Complex = std::complex<double>;

/// Order r of the periodic Sobolev space H^r(0, 2pi); may be negative.
struct SobolevIndex {
    explicit SobolevIndex(double order);
    double r;
};

/// Trigonometric coefficients a_k of sum_k a_k e^{ikt}, dense over -M..M.
///
/// The pairing is (1/2pi) int x conj(y), so {e^{ikt}} is orthonormal and the
/// H^0 norm is the plain l2 norm of the coefficients.
class FourierVector {
public:
    FourierVector() : FourierVector(0) {}
    explicit FourierVector(int max_index);
    FourierVector(int max_index, std::vector<Complex> coeffs);

    /// Single mode `value * e^{ikt}` stored in a window of size max(|k|, max_index).
    static FourierVector mode(int k, Complex value = 1.0, int max_index = 0);
    static FourierVector from_eigen(const Eigen::VectorXcd& v);

    int max_index() const noexcept { return max_index_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Coefficient of e^{ikt}; |k| must not exceed max_index.
    Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k + max_index_)]; }
    const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k + max_index_)]; }

    /// Coefficient of e^{ikt}, zero outside the stored window.
    Complex coeff(int k) const noexcept;

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }

    /// Copy zero-padded or truncated to a new window.
    FourierVector resized(int max_index) const;
    Eigen::VectorXcd to_eigen() const;

    /// a_{-k} == conj(a_k) to `tol`, i.e. the function is real-valued.
    bool is_real(double tol = 1e-12) const;

    FourierVector& operator+=(const FourierVector& other);
    FourierVector& operator-=(const FourierVector& other);
    FourierVector& operator*=(Complex scale);

    friend FourierVector operator+(FourierVector a, const FourierVector& b) { return a += b; }
    friend FourierVector operator-(FourierVector a, const FourierVector& b) { return a -= b; }
    friend FourierVector operator*(Complex s, FourierVector a) { return a *= s; }

private:
    int max_index_;
    std::vector<Complex> coeffs_;
};

/// Discrete Fourier coefficients a_k = (1/m) sum_j x_j e^{-ik t_j} on t_j = 2 pi j / m.
/// Throws AliasingError when m < 2M+1.
FourierVector samples_to_coeffs(std::span<const Complex> samples, int max_index);

Complex eval_fourier(const FourierVector& v, double t);

/// Samples of v on the uniform grid of size m.
std::vector<Complex> eval_on_grid(const FourierVector& v, int m);

double sobolev_norm(const FourierVector& v, SobolevIndex r);

/// sum_k (1+k^2)^r a_k conj(b_k); the shorter vector is zero-padded.
Complex sobolev_inner(const FourierVector& x, const FourierVector& y, SobolevIndex r);

/// Orthogonal projection P_n: zero every coefficient with |k| > n (window kept).
FourierVector project(const FourierVector& v, int n);

}  // namespace symm

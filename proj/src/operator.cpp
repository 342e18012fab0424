#include "symm/operator.hpp"

#include "symm/errors.hpp"
#include "symm/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

namespace symm {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; execution on new arrays is.
std::mutex& planner_mutex() {
    static std::mutex mutex;
    return mutex;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

template <class T>
struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
        if (data == nullptr) {
            throw std::bad_alloc();
        }
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    T* data;
};

Plan make_r2c_plan(int m) {
    FftwBuffer<double> in(static_cast<std::size_t>(m));
    FftwBuffer<fftw_complex> out(static_cast<std::size_t>(m / 2 + 1));
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_r2c_1d(m, in.data, out.data, FFTW_ESTIMATE | FFTW_UNALIGNED));
}

Plan make_c2c_plan(int m) {
    FftwBuffer<fftw_complex> in(static_cast<std::size_t>(m));
    FftwBuffer<fftw_complex> out(static_cast<std::size_t>(m));
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_1d(m, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED));
}

void check_orders(int M, int m) {
    if (M < 0) {
        throw DomainError("ambient order M must be >= 0");
    }
    if (m < 2 * (2 * M + 1)) {
        throw AliasingError("quadrature size m = " + std::to_string(m) +
                            " violates the anti-aliasing rule m >= 2(2M+1) = " +
                            std::to_string(2 * (2 * M + 1)));
    }
}

}  // namespace

FourierVector k0_apply(const FourierVector& v) {
    FourierVector out = v;
    for (int k = -v.max_index(); k <= v.max_index(); ++k) {
        out[k] *= k0_eigenvalue(k);
    }
    return out;
}

FourierVector SmoothPart::column(int k) const {
    if (std::abs(k) > M) {
        throw TruncationError("column index exceeds M");
    }
    return FourierVector::from_eigen(matrix.col(k + M));
}

int default_ambient_order(int n) {
    return std::max(4 * n, 64);
}

int default_quadrature_size(int M) {
    return 4 * (2 * M + 1);
}

SmoothPart assemble_smooth_part(const BoundaryCurve& curve, int M, int m) {
    check_orders(M, m);
    const int size = 2 * M + 1;

    std::vector<Point2> points(static_cast<std::size_t>(m));
    std::vector<double> diagonal(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        points[i] = curve.eval(t, 0);
        diagonal[i] = smooth_kernel_diagonal_derivatives(curve, t).k_diag;
    }
    // 4 sin^2(pi d / m) depends only on the index offset d = l - i.
    std::vector<double> sine2(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
        const double two_sin = 2.0 * std::sin(kPi * d / m);
        sine2[d] = two_sin * two_sin;
    }
    const double switch2 = kDiagonalSwitchThreshold * kDiagonalSwitchThreshold;

    // rows[k * m + i] = sum_l k(t_i, s_l) e^{i k s_l}, k = 0..M, column-major in k.
    std::vector<Complex> rows(static_cast<std::size_t>(M + 1) * m);
    {
        const Plan plan = make_r2c_plan(m);
        parallel_for(0, m, [&](int i) {
            std::vector<double> row(static_cast<std::size_t>(m));
            std::vector<Complex> spectrum(static_cast<std::size_t>(m / 2 + 1));
            const double t = 2.0 * kPi * i / m;
            for (int l = 0; l < m; ++l) {
                const int d = (l - i + m) % m;
                if (d == 0) {
                    row[l] = diagonal[i];
                } else if (sine2[d] < switch2) {
                    row[l] = smooth_kernel(curve, t, 2.0 * kPi * l / m);
                } else {
                    row[l] = detail::kernel_from_squares((points[i] - points[l]).squaredNorm(), sine2[d]);
                }
            }
            fftw_execute_dft_r2c(plan.get(), row.data(), reinterpret_cast<fftw_complex*>(spectrum.data()));
            for (int k = 0; k <= M; ++k) {
                rows[static_cast<std::size_t>(k) * m + i] = std::conj(spectrum[k]);
            }
        });
    }

    SmoothPart out;
    out.M = M;
    out.m = m;
    out.matrix = Eigen::MatrixXcd::Zero(size, size);
    const double weight = 2.0 * kPi / (static_cast<double>(m) * m);
    {
        const Plan plan = make_c2c_plan(m);
        parallel_for(0, M + 1, [&](int k) {
            std::vector<Complex> transformed(static_cast<std::size_t>(m));
            auto* column = reinterpret_cast<fftw_complex*>(rows.data() + static_cast<std::size_t>(k) * m);
            fftw_execute_dft(plan.get(), column, reinterpret_cast<fftw_complex*>(transformed.data()));
            for (int j = -M; j <= M; ++j) {
                const Complex value = weight * transformed[static_cast<std::size_t>((j + m) % m)];
                out.matrix(j + M, k + M) = value;
                if (k > 0) {
                    // Real kernel: C e^{-iks} = conj(C e^{iks}).
                    out.matrix(-j + M, -k + M) = std::conj(value);
                }
            }
        });
    }
    // C applied to a real constant is real.
    for (int j = 0; j <= M; ++j) {
        const Complex avg = 0.5 * (out.matrix(j + M, M) + std::conj(out.matrix(-j + M, M)));
        out.matrix(j + M, M) = avg;
        out.matrix(-j + M, M) = std::conj(avg);
    }

    const int half = M / 2;
    for (int k = -M; k <= M; ++k) {
        double tail = 0.0;
        double total = 0.0;
        for (int j = -M; j <= M; ++j) {
            const double mass = std::norm(out.matrix(j + M, k + M));
            total += mass;
            if (std::abs(j) > half) {
                tail += mass;
            }
        }
        // Mass of the full K column: the K0 eigenvalue dominates the diagonal entry.
        const double k_col = total + k0_eigenvalue(k) * k0_eigenvalue(k) +
                             2.0 * k0_eigenvalue(k) * out.matrix(k + M, k + M).real();
        if (k_col > 0.0) {
            out.max_tail_fraction = std::max(out.max_tail_fraction, tail / k_col);
        }
    }
    return out;
}

OperatorAssembly::OperatorAssembly(BoundaryCurve curve, SmoothPart smooth)
    : curve_(std::move(curve)),
      M_(smooth.M),
      m_(smooth.m),
      max_tail_fraction_(smooth.max_tail_fraction),
      matrix_(std::move(smooth.matrix)) {
    for (int k = -M_; k <= M_; ++k) {
        matrix_(k + M_, k + M_) += k0_eigenvalue(k);
    }
}

FourierVector OperatorAssembly::column(int k) const {
    if (std::abs(k) > M_) {
        throw TruncationError("column index " + std::to_string(k) + " exceeds M = " + std::to_string(M_));
    }
    return FourierVector::from_eigen(matrix_.col(k + M_));
}

Eigen::MatrixXcd OperatorAssembly::trial_columns(int n) const {
    if (n < 0 || n > M_) {
        throw TruncationError("trial degree n = " + std::to_string(n) + " outside 0..M");
    }
    return matrix_.middleCols(M_ - n, 2 * n + 1);
}

Eigen::MatrixXcd OperatorAssembly::galerkin_block(int n) const {
    if (n < 0 || n > M_) {
        throw TruncationError("Galerkin degree n = " + std::to_string(n) + " outside 0..M");
    }
    return matrix_.block(M_ - n, M_ - n, 2 * n + 1, 2 * n + 1);
}

OperatorAssembly assemble_operator(const BoundaryCurve& curve, int M, int m) {
    return OperatorAssembly(curve, assemble_smooth_part(curve, M, m));
}

OperatorAssembly assemble_operator(const BoundaryCurve& curve, int M) {
    return assemble_operator(curve, M, default_quadrature_size(M));
}

FourierVector apply_K(const OperatorAssembly& assembly, const FourierVector& v) {
    if (v.max_index() > assembly.M()) {
        throw TruncationError("apply_K: vector order " + std::to_string(v.max_index()) +
                              " exceeds assembly order M = " + std::to_string(assembly.M()));
    }
    const int n = v.max_index();
    const Eigen::VectorXcd image = assembly.trial_columns(n) * v.to_eigen();
    return FourierVector::from_eigen(image);
}

}  // namespace symm

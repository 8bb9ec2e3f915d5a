#pragma once

// Aperiodic 2D convolution of an M x M complex grid with a kernel given on integer offsets,
// via zero padding to a 7-smooth size >= 2M - 1 and FFTW.

#include <fftw3.h>

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "aclab/core/types.hpp"

namespace aclab {

inline int smooth_size_at_least(int n) {
    for (int p = std::max(n, 1);; ++p) {
        int r = p;
        for (int f : {2, 3, 5, 7})
            while (r % f == 0) r /= f;
        if (r == 1) return p;
    }
}

/// FFTW's planner is not thread-safe; plan creation and destruction go through this lock.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

inline void destroy_plan_locked(fftw_plan p) {
    const std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
}

/// out(i, j) = sum_{i', j'} kernel(i - i', j - j') f(i', j'); grids are row-major with index j * M + i.
class Convolver2D {
public:
    Convolver2D(int m, const std::function<cplx(int, int)>& kernel) : m_(m), p_(smooth_size_at_least(2 * m - 1)) {
        const std::size_t size = static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_);
        kernel_hat_.reset(fftw_alloc_complex(size));
        Buffer work(fftw_alloc_complex(size));
        // FFTW_ESTIMATE leaves the arrays untouched while planning.
        {
            const std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            forward_ = std::shared_ptr<fftw_plan_s>(
                fftw_plan_dft_2d(p_, p_, work.get(), work.get(), FFTW_FORWARD, FFTW_ESTIMATE), destroy_plan_locked);
            backward_ = std::shared_ptr<fftw_plan_s>(
                fftw_plan_dft_2d(p_, p_, work.get(), work.get(), FFTW_BACKWARD, FFTW_ESTIMATE), destroy_plan_locked);
        }
        fftw_complex* k = kernel_hat_.get();
        std::fill(reinterpret_cast<double*>(k), reinterpret_cast<double*>(k) + 2 * size, 0.0);
        for (int dj = -(m - 1); dj <= m - 1; ++dj) {
            for (int di = -(m - 1); di <= m - 1; ++di) {
                const cplx v = kernel(di, dj);
                const std::size_t idx = static_cast<std::size_t>((dj + p_) % p_) * p_ + static_cast<std::size_t>((di + p_) % p_);
                k[idx][0] = v.real();
                k[idx][1] = v.imag();
            }
        }
        fftw_execute_dft(forward_.get(), k, k);
    }

    int size() const { return m_; }
    int padded_size() const { return p_; }

    std::vector<cplx> apply(const std::vector<cplx>& f) const {
        const std::size_t size = static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_);
        Buffer work(fftw_alloc_complex(size));
        fftw_complex* w = work.get();
        std::fill(reinterpret_cast<double*>(w), reinterpret_cast<double*>(w) + 2 * size, 0.0);
        for (int j = 0; j < m_; ++j) {
            for (int i = 0; i < m_; ++i) {
                const cplx v = f[static_cast<std::size_t>(j) * m_ + i];
                w[static_cast<std::size_t>(j) * p_ + i][0] = v.real();
                w[static_cast<std::size_t>(j) * p_ + i][1] = v.imag();
            }
        }
        fftw_execute_dft(forward_.get(), w, w);
        const fftw_complex* k = kernel_hat_.get();
        for (std::size_t s = 0; s < size; ++s) {
            const double re = w[s][0] * k[s][0] - w[s][1] * k[s][1];
            const double im = w[s][0] * k[s][1] + w[s][1] * k[s][0];
            w[s][0] = re;
            w[s][1] = im;
        }
        fftw_execute_dft(backward_.get(), w, w);
        const double scale = 1.0 / static_cast<double>(size);
        std::vector<cplx> out(static_cast<std::size_t>(m_) * m_);
        for (int j = 0; j < m_; ++j)
            for (int i = 0; i < m_; ++i) {
                const auto& c = w[static_cast<std::size_t>(j) * p_ + i];
                out[static_cast<std::size_t>(j) * m_ + i] = cplx(c[0], c[1]) * scale;
            }
        return out;
    }

private:
    struct FftwFree {
        void operator()(fftw_complex* p) const { fftw_free(p); }
    };
    using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

    int m_;
    int p_;
    Buffer kernel_hat_;
    std::shared_ptr<fftw_plan_s> forward_, backward_;
};

}  // namespace aclab

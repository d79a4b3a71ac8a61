#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

#include "tacton/error.hpp"
#include "tacton/synthesis.hpp"

namespace tacton {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

class RealForwardPlan {
public:
    RealForwardPlan(int n, double* in, fftw_complex* out) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    }
    ~RealForwardPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    RealForwardPlan(const RealForwardPlan&) = delete;
    RealForwardPlan& operator=(const RealForwardPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

Spectrum spectrum(const Waveform& w) {
    const std::size_t n = w.samples.size();
    if (n == 0) throw Error(Errc::EmptyWaveform, "samples", "EmptyWaveform: nothing to transform");

    const std::size_t bins = n / 2 + 1;
    std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
    std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));
    RealForwardPlan plan(static_cast<int>(n), in.get(), out.get());
    std::copy(w.samples.begin(), w.samples.end(), in.get());
    plan.execute();

    Spectrum s;
    s.frequencies.resize(bins);
    s.magnitudes.resize(bins);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
        s.magnitudes[k] = (unpaired ? 1.0 : 2.0) * inv_n * std::hypot(re, im);
        s.frequencies[k] = static_cast<double>(k) * w.sample_rate * inv_n;
    }
    return s;
}

}  // namespace tacton

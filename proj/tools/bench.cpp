// Times the OpenMP kernels against their serial reference twins.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fgarch/basis.hpp"
#include "fgarch/model.hpp"
#include "fgarch/preset.hpp"
#include "fgarch/reference.hpp"

using namespace fgarch;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    const SimPreset preset = default_sim_preset();
    const FGarchSpec spec = build_spec(preset);

    {
        const SimResult sim = simulate(spec, preset.innovation, 500, 100);
        double s = 0, p = 0;
        Kernel2D ks, kp;
        s = time_ms([&] { ks = ref::covariance_kernel(sim.y); });
        p = time_ms([&] { kp = covariance_kernel(sim.y); });
        report("covariance_kernel n=500", s, p);
        std::printf("  max |diff| = %.3e\n", (ks.values - kp.values).cwiseAbs().maxCoeff());
    }
    {
        const std::int64_t reps = 20000;
        MCEstimate es, ep;
        const double s = time_ms([&] { es = ref::lyapunov_l2(spec, preset.innovation, reps); });
        const double p = time_ms([&] { ep = lyapunov_l2(spec, preset.innovation, reps); });
        report("lyapunov_l2 reps=20000", s, p);
        std::printf("  |mean diff| = %.3e\n", std::abs(es.mean - ep.mean));
    }
    {
        const std::int64_t reps = 20000;
        MCEstimate es, ep;
        const double s =
            time_ms([&] { es = ref::moment_norm(spec, preset.innovation, 1.0, reps, NormKind::hs); });
        const double p =
            time_ms([&] { ep = moment_norm(spec, preset.innovation, 1.0, reps, NormKind::hs); });
        report("moment_norm reps=20000", s, p);
        std::printf("  |mean diff| = %.3e\n", std::abs(es.mean - ep.mean));
    }
    {
        const std::vector<int> ells{1, 4, 16};
        std::vector<CouplingRow> rs, rp;
        const double s =
            time_ms([&] { rs = ref::coupling_decay(spec, preset.innovation, ells, 40, 48); });
        const double p =
            time_ms([&] { rp = coupling_decay(spec, preset.innovation, ells, 40, 48); });
        report("coupling_decay reps=40", s, p);
        double dmax = 0;
        for (std::size_t i = 0; i < rs.size(); ++i)
            dmax = std::max(dmax, std::abs(rs[i].mean - rp[i].mean));
        std::printf("  max |mean diff| = %.3e\n", dmax);
    }
    return 0;
}

// Serial reference kernels vs their OpenMP counterparts. Prints wall time and
// checks that both produce identical output.

#include "sdic/mc_oracle.hpp"
#include "sdic/sweep.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_cells(const std::vector<sdic::SweepCell>& x, const std::vector<sdic::SweepCell>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].verdict != y[i].verdict || x[i].margins != y[i].margins || x[i].rates != y[i].rates) return false;
    }
    return true;
}

} // namespace

int main() {
    sdic::apply_thread_cap_from_env();
    std::printf("threads: %d\n", omp_get_max_threads());

    Eigen::VectorXd var(6);
    var << 2.0, 2.0, 1.0, 0.5, 1.0, 1.0;
    Eigen::MatrixXd s_ser, s_par;
    const double t_ser = seconds([&] { s_ser = sdic::sample_basis_covariance(var, 1'000'000, 7, sdic::Exec::Serial); });
    const double t_par =
        seconds([&] { s_par = sdic::sample_basis_covariance(var, 1'000'000, 7, sdic::Exec::Parallel); });
    std::printf("mc sampling  n=1e6 dim=6  serial %.3fs  parallel %.3fs  speedup %.2f  identical %s\n", t_ser, t_par,
                t_ser / t_par, s_ser == s_par ? "yes" : "NO");

    sdic::SweepGrid grid;
    grid.check = sdic::CheckKind::VsZic;
    grid.axes = {sdic::parse_axis("a:1.5:6:200"), sdic::parse_axis("d:0:1:100")};
    grid.fixed.p1 = 2.0;
    grid.fixed.p2 = 2.0;
    grid.fixed.q1 = 1.0;
    grid.fixed.q2 = 1.0;
    std::vector<sdic::SweepCell> c_ser, c_par;
    const double w_ser = seconds([&] { c_ser = sdic::run_sweep(grid, sdic::Exec::Serial); });
    const double w_par = seconds([&] { c_par = sdic::run_sweep(grid, sdic::Exec::Parallel); });
    std::printf("sweep vs-zic 200x100      serial %.3fs  parallel %.3fs  speedup %.2f  identical %s\n", w_ser, w_par,
                w_ser / w_par, same_cells(c_ser, c_par) ? "yes" : "NO");
    return 0;
}

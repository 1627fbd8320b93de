#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trimat/grouplab.hpp"
#include "trimat/tensor3.hpp"

using namespace trimat;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        double dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        if (dt < best) best = dt;
    }
    return best;
}

void row(const std::string& op, const std::string& field, std::size_t n,
         std::size_t p, double serial_s, double parallel_s, bool same) {
    std::cout << std::left << std::setw(10) << op << std::setw(12) << field
              << std::right << std::setw(5) << n << std::setw(6) << p
              << std::setw(12) << std::fixed << std::setprecision(2)
              << serial_s * 1e3 << std::setw(12) << parallel_s * 1e3
              << std::setw(9) << std::setprecision(2)
              << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "x  "
              << (same ? "identical" : "MISMATCH") << '\n';
}

void bench_odot(const FieldSpec& spec, std::size_t n, std::size_t p) {
    Matrix3 a = sample_matrix3(n, p, spec, 11);
    Matrix3 b = sample_matrix3(n, p, spec, 12);
    Matrix3 rs = serial::odot(a, b);
    Matrix3 rp = odot(a, b);
    double ts = time_best_of(3, [&] { rs = serial::odot(a, b); });
    double tp = time_best_of(3, [&] { rp = odot(a, b); });
    row("odot", spec.str(), n, p, ts, tp, identical(rs, rp));
}

void bench_det3(const FieldSpec& spec, std::size_t n, std::size_t p) {
    Matrix3 a = sample_matrix3(n, p, spec, 21);
    MultiScalar rs = serial::det3(a);
    MultiScalar rp = det3(a);
    double ts = time_best_of(3, [&] { rs = serial::det3(a); });
    double tp = time_best_of(3, [&] { rp = det3(a); });
    row("det3", spec.str(), n, p, ts, tp, identical(rs, rp));
}

void bench_adjugate3(const FieldSpec& spec, std::size_t n, std::size_t p) {
    Matrix3 a = sample_matrix3(n, p, spec, 31);
    Matrix3 rs = serial::adjugate3(a);
    Matrix3 rp = adjugate3(a);
    double ts = time_best_of(3, [&] { rs = serial::adjugate3(a); });
    double tp = time_best_of(3, [&] { rp = adjugate3(a); });
    row("adjugate3", spec.str(), n, p, ts, tp, identical(rs, rp));
}

void bench_inverse3(const FieldSpec& spec, std::size_t n, std::size_t p) {
    Matrix3 a = sample_gl(n, p, spec, 41);
    Matrix3 rs = serial::inverse3(a);
    Matrix3 rp = inverse3(a);
    double ts = time_best_of(3, [&] { rs = serial::inverse3(a); });
    double tp = time_best_of(3, [&] { rp = inverse3(a); });
    row("inverse3", spec.str(), n, p, ts, tp, identical(rs, rp));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n\n";
#endif
    std::cout << std::left << std::setw(10) << "op" << std::setw(12) << "field"
              << std::right << std::setw(5) << "n" << std::setw(6) << "p"
              << std::setw(12) << "serial ms" << std::setw(12) << "parallel ms"
              << std::setw(10) << "speedup" << "  result\n";

    FieldSpec f7 = FieldSpec::gf(7);
    FieldSpec fl = FieldSpec::floating();
    FieldSpec ra = FieldSpec::rationals();

    bench_odot(f7, 32, 64);
    bench_odot(fl, 32, 64);
    bench_odot(ra, 16, 32);
    bench_det3(f7, 16, 256);
    bench_det3(fl, 16, 256);
    bench_adjugate3(f7, 8, 64);
    bench_adjugate3(fl, 8, 64);
    bench_inverse3(f7, 16, 64);
    bench_inverse3(fl, 16, 64);
    return 0;
}

// Copyright 2026 The rholab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Compares the serial reference kernels with the OpenMP kernels and checks
// that both produce identical bytes while timing them.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rholab/kernels.hpp"
#include "rholab/rng.hpp"

using namespace rholab;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian_complex();
    }
    return m;
}

double time_best_of(int repeats, const std::function<void()>& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed < best) best = elapsed;
    }
    return best;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        if (a.data()[i] != b.data()[i]) return false;
    }
    return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-22s %10s %10s %8s %8s\n", "kernel", "serial ms", "omp ms", "speedup", "equal");

    for (const int n : {64, 128, 256, 384}) {
        const ComplexMatrix a = random_matrix(n, n, 1000 + static_cast<std::uint64_t>(n));
        const ComplexMatrix b = random_matrix(n, n, 2000 + static_cast<std::uint64_t>(n));

        ComplexMatrix serial_out(1, 1), omp_out(1, 1);
        const double ts = time_best_of(3, [&] { serial_out = kernels::serial::matmul(a, b); });
        const double tp = time_best_of(3, [&] { omp_out = kernels::matmul(a, b); });
        std::printf("matmul %4dx%-4d       %10.2f %10.2f %7.2fx %8s\n", n, n, ts, tp, ts / tp,
                    bitwise_equal(serial_out, omp_out) ? "yes" : "NO");
    }

    for (const int n : {32, 48, 64}) {
        const ComplexMatrix a = random_matrix(n, n, 3000 + static_cast<std::uint64_t>(n));
        const ComplexMatrix b = random_matrix(n, n, 4000 + static_cast<std::uint64_t>(n));
        ComplexMatrix serial_out(1, 1), omp_out(1, 1);
        const double ts =
            time_best_of(3, [&] { serial_out = kernels::serial::tensor_product(a, b); });
        const double tp = time_best_of(3, [&] { omp_out = kernels::tensor_product(a, b); });
        std::printf("tensor %4dx%-4d       %10.2f %10.2f %7.2fx %8s\n", n, n, ts, tp, ts / tp,
                    bitwise_equal(serial_out, omp_out) ? "yes" : "NO");
    }

    for (const int da : {16, 32, 64}) {
        const int db = 48;
        const ComplexMatrix m = random_matrix(da * db, da * db, 5000 + static_cast<std::uint64_t>(da));
        ComplexMatrix serial_out(1, 1), omp_out(1, 1);
        const double ts = time_best_of(
            3, [&] { serial_out = kernels::serial::partial_trace(m, da, db, Factor::first); });
        const double tp =
            time_best_of(3, [&] { omp_out = kernels::partial_trace(m, da, db, Factor::first); });
        std::printf("ptrace %4dx%-4d joint %10.2f %10.2f %7.2fx %8s\n", da, db, ts, tp, ts / tp,
                    bitwise_equal(serial_out, omp_out) ? "yes" : "NO");
    }

    return 0;
}

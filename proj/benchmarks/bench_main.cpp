/*
 * Copyright 2026 the qcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "qcr/closedform.hpp"
#include "qcr/measures.hpp"
#include "qcr/molecules.hpp"

namespace {

const qcr::states::PseudoharmonicParams kToy{3.5, 0.5, 1.0, 1.0};

void BM_RegularizedLowerGamma(benchmark::State& state) {
    double s = 2.414214;
    double x = 0.0;
    for (auto _ : state) {
        x += 0.001;
        if (x > 30.0) x = 0.001;
        benchmark::DoNotOptimize(qcr::specfun::regularized_lower_gamma(s, x));
    }
}
BENCHMARK(BM_RegularizedLowerGamma);

void BM_Lauricella(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::vector<int> degrees(6, n);
    std::vector<double> params(6, 1.41);
    std::vector<double> args(6, 1.0 / 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qcr::specfun::lauricella_a_coeff_log(0, 3.24, 0.0, degrees, params, args));
    }
}
BENCHMARK(BM_Lauricella)->Arg(1)->Arg(2)->Arg(4);

void BM_EntropicMomentQuadrature(benchmark::State& state) {
    auto rho = qcr::states::rho_pho(kToy, {1, 1, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qcr::measures::entropic_moment(rho, qcr::measures::Order(2.0)).value);
    }
}
BENCHMARK(BM_EntropicMomentQuadrature);

void BM_RenyiPhoClosed(benchmark::State& state) {
    auto co = qcr::molecules::to_params(
        qcr::molecules::find(qcr::molecules::builtin_table(), "CO"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qcr::closedform::renyi_pho_closed(co, {1, 1, 0}, 2).value);
    }
}
BENCHMARK(BM_RenyiPhoClosed);

void BM_RenyiIsoClosed(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qcr::closedform::renyi_iso_closed(kToy, {0, 0, 0}, 2.5, 2).value);
    }
}
BENCHMARK(BM_RenyiIsoClosed);

} // namespace

BENCHMARK_MAIN();

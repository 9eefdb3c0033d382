#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "husimi/cbessel.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/grid.hpp"
#include "husimi/quadrature.hpp"
#include "husimi/residue.hpp"
#include "husimi/scenario.hpp"
#include "husimi/slitforms.hpp"

namespace {

husimi::PhysicalScenario rb87() {
  husimi::PhysicalScenario s;
  s.mass = 86.9091805 * husimi::kAtomicMassUnitKg;
  s.sigma = 30e-6;
  s.x0 = -0.15e-3;
  s.v0 = 3e-3;
  s.t = 0.1;
  return s;
}

husimi::TimeGrating rb87_double_slit() {
  husimi::TimeGrating g;
  husimi::ApodizationBarrier a;
  a.n = 2;
  a.nu = 36537.0;
  a.t_op = 0.045;
  g.slits.push_back(a);
  a.t_op = 0.055;
  g.slits.push_back(a);
  return g;
}

husimi::PhysicalScenario dimensionless() {
  husimi::PhysicalScenario s;
  s.mass = 1.0;
  s.hbar = 1.0;
  s.sigma = 1.0;
  s.x0 = -10.0;
  s.v0 = 1.0;
  s.t = 20.0;
  return s;
}

void BM_PointQuadratureExact(benchmark::State& state) {
  const auto s = rb87();
  const auto g = rb87_double_slit();
  husimi::PhaseSpacePoint p;
  p.x_tilde = 0.15e-3;
  p.v_tilde = 3e-3;
  husimi::QuadratureConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::husimi_amplitude_exact(s, p, g, cfg));
  }
}
BENCHMARK(BM_PointQuadratureExact);

void BM_PointQuadratureFrozen(benchmark::State& state) {
  const auto s = rb87();
  const auto g = rb87_double_slit();
  husimi::PhaseSpacePoint p;
  p.x_tilde = 0.15e-3;
  p.v_tilde = 3e-3;
  husimi::QuadratureConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::f_froz_quadrature(s, p, g, cfg));
  }
}
BENCHMARK(BM_PointQuadratureFrozen);

void BM_PointResidue(benchmark::State& state) {
  const auto s = dimensionless();
  husimi::PhaseSpacePoint p;
  p.x_tilde = 10.0;
  p.v_tilde = 1.0;
  husimi::ApodizationBarrier a;
  a.n = 2;
  a.nu = 5.0;
  a.t_op = 10.0;
  const auto fc = husimi::frozen_constants(s, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::f_froz_analytic(fc, s, p, a, 1e-12));
  }
}
BENCHMARK(BM_PointResidue);

void BM_PointSlitForm(benchmark::State& state) {
  const auto s = rb87();
  husimi::PhaseSpacePoint p;
  p.x_tilde = 0.15e-3;
  p.v_tilde = 3e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::husimi_2slit_structured(s, p, 36537.0, 0.045, 0.055));
  }
}
BENCHMARK(BM_PointSlitForm);

void BM_BesselSequence(benchmark::State& state) {
  const std::complex<double> z{30.0, 20.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::bessel_j_sequence(100, z));
  }
}
BENCHMARK(BM_BesselSequence);

void BM_GridRowSlit(benchmark::State& state) {
  const auto s = rb87();
  const auto g = rb87_double_slit();
  husimi::GridSpec spec;
  spec.x_min = 0.10e-3;
  spec.x_max = 0.20e-3;
  spec.v_min = 3e-3;
  spec.v_max = 3e-3 * 1.01;
  spec.nx = 200;
  spec.nv = 2;
  spec.method = husimi::GridMethod::slit;
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi::compute_grid(s, g, spec, 1));
  }
}
BENCHMARK(BM_GridRowSlit);

}  // namespace

BENCHMARK_MAIN();

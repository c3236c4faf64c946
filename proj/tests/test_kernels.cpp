#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cpcfif/kernels.hpp"
#include "doctest.h"

using namespace cpcfif;

namespace {

struct SweepData {
  std::vector<double> f_old, w, scale, sub, add;
  std::vector<std::int32_t> idx;
  std::size_t n;
};

SweepData random_sweep(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SweepData d;
  d.n = n;
  d.f_old.resize(n + 1);
  d.w.resize(n);
  d.scale.resize(n);
  d.sub.resize(n);
  d.add.resize(n);
  d.idx.resize(n);
  std::uniform_int_distribution<std::int32_t> ix(0, static_cast<int>(n) - 1);
  for (auto& v : d.f_old) v = val(gen);
  for (std::size_t i = 0; i < n; ++i) {
    d.w[i] = unit(gen);
    d.scale[i] = 0.9 * (unit(gen) - 0.5);
    d.sub[i] = val(gen);
    d.add[i] = val(gen);
    d.idx[i] = ix(gen);
  }
  return d;
}

}  // namespace

TEST_CASE("active dispatch reports a known variant") {
  const auto name = kernels::active_name();
  CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}

TEST_CASE("pullback_sweep: SIMD bit-identical to scalar") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active();
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    const SweepData d = random_sweep(n, 1234 + static_cast<std::uint32_t>(n));
    std::vector<double> out_ref(n), out_act(n);
    ref.pullback_sweep(d.f_old.data(), d.idx.data(), d.w.data(),
                       d.scale.data(), d.sub.data(), d.add.data(),
                       out_ref.data(), n);
    act.pullback_sweep(d.f_old.data(), d.idx.data(), d.w.data(),
                       d.scale.data(), d.sub.data(), d.add.data(),
                       out_act.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(out_ref[i] == out_act[i]);
  }
}

TEST_CASE("pullback_sweep: exact at integer weights") {
  // w = 0 and w = 1 must read the nodes exactly
  std::vector<double> f_old = {2.0, -3.0, 7.0};
  std::vector<std::int32_t> idx = {0, 1};
  std::vector<double> w = {0.0, 1.0};
  std::vector<double> scale = {1.0, 1.0}, sub = {0.0, 0.0}, add = {0.0, 0.0};
  std::vector<double> out(2);
  kernels::active().pullback_sweep(f_old.data(), idx.data(), w.data(),
                                   scale.data(), sub.data(), add.data(),
                                   out.data(), 2);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == 7.0);
}

TEST_CASE("curvature kernel: SIMD bit-identical to scalar and correct") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active();
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> val(-4.0, 4.0);
  for (std::size_t n : {1u, 5u, 8u, 513u}) {
    std::vector<double> f1(n), f2(n), k_ref(n), k_act(n);
    for (std::size_t i = 0; i < n; ++i) {
      f1[i] = val(gen);
      f2[i] = val(gen);
    }
    ref.curvature(f1.data(), f2.data(), k_ref.data(), n);
    act.curvature(f1.data(), f2.data(), k_act.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(k_ref[i] == k_act[i]);
      const double expect = f2[i] / std::pow(1.0 + f1[i] * f1[i], 1.5);
      CHECK(k_act[i] == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  // parabola vertex: f' = 0, f'' = 1 -> kappa = 1
  double zero = 0.0, unit_f2 = 1.0, out = 0.0;
  act.curvature(&zero, &unit_f2, &out, 1);
  CHECK(out == 1.0);
}

TEST_CASE("max reductions: SIMD bit-identical to scalar") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active();
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  for (std::size_t n : {1u, 6u, 128u, 1023u}) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = val(gen);
      b[i] = val(gen);
    }
    CHECK(ref.max_abs_diff(a.data(), b.data(), n) ==
          act.max_abs_diff(a.data(), b.data(), n));
    CHECK(ref.max_abs(a.data(), n) == act.max_abs(a.data(), n));
  }
}

TEST_CASE("sum reductions: SIMD within rounding of scalar") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active();
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_real_distribution<double> wgt(0.0, 1.0);
  for (std::size_t n : {2u, 9u, 256u, 8193u}) {
    std::vector<double> a(n), b(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = val(gen);
      b[i] = val(gen);
      w[i] = wgt(gen);
    }
    const double s_ref = ref.sum_sq_diff(a.data(), b.data(), n);
    const double s_act = act.sum_sq_diff(a.data(), b.data(), n);
    CHECK(s_act == doctest::Approx(s_ref).epsilon(1e-13));
    const double ws_ref =
        ref.weighted_sum_sq_diff(w.data(), a.data(), b.data(), n);
    const double ws_act =
        act.weighted_sum_sq_diff(w.data(), a.data(), b.data(), n);
    CHECK(ws_act == doctest::Approx(ws_ref).epsilon(1e-13));
  }
}

TEST_CASE("every compiled SIMD variant matches the scalar reference") {
  const auto run = [](const kernels::Ops& ops) {
    const SweepData d = random_sweep(37, 555);
    std::vector<double> out(d.n), ref(d.n);
    kernels::scalar_ops().pullback_sweep(d.f_old.data(), d.idx.data(),
                                         d.w.data(), d.scale.data(),
                                         d.sub.data(), d.add.data(),
                                         ref.data(), d.n);
    ops.pullback_sweep(d.f_old.data(), d.idx.data(), d.w.data(),
                       d.scale.data(), d.sub.data(), d.add.data(), out.data(),
                       d.n);
    for (std::size_t i = 0; i < d.n; ++i) CHECK(out[i] == ref[i]);
    CHECK(ops.max_abs(d.add.data(), d.n) ==
          kernels::scalar_ops().max_abs(d.add.data(), d.n));
  };
  if (const kernels::Ops* v = kernels::avx2_ops()) run(*v);
  if (const kernels::Ops* v = kernels::neon_ops()) run(*v);
}

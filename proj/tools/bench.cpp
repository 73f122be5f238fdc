#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include "mfl/graph.hpp"
#include "mfl/metric.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
std::int64_t time_us(F&& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

struct Row {
  std::string name;
  std::int64_t serial_us;
  std::int64_t omp_us;
  bool identical;
};

void print(const Row& r) {
  std::cout << std::left << std::setw(34) << r.name << std::right << std::setw(12) << r.serial_us
            << " us" << std::setw(12) << r.omp_us << " us   "
            << (r.identical ? "results identical" : "RESULTS DIFFER") << "\n";
}

}  // namespace

int main() {
  using namespace mfl;
#ifdef _OPENMP
  std::cout << "openmp enabled, max threads " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp not available; omp column runs the serial path\n";
#endif
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(15) << "serial"
            << std::setw(15) << "omp" << "\n";

  bool all_ok = true;
  auto bench_ecc = [&](const std::string& name, const MetricGraph& g) {
    std::vector<std::int64_t> a, b;
    Row r;
    r.name = name;
    r.serial_us = time_us([&] { a = eccentricities(g, Exec::serial); });
    r.omp_us = time_us([&] { b = eccentricities(g, Exec::omp); });
    r.identical = a == b;
    all_ok = all_ok && r.identical;
    print(r);
  };
  auto bench_profile = [&](const std::string& name, const MetricGraph& g,
                           const std::vector<Rat64>& radii) {
    GeometryProfile a, b;
    Row r;
    r.name = name;
    r.serial_us = time_us([&] { a = geometry_profile(g, radii, Exec::serial); });
    r.omp_us = time_us([&] { b = geometry_profile(g, radii, Exec::omp); });
    r.identical = a.entries == b.entries;
    all_ok = all_ok && r.identical;
    print(r);
  };
  auto bench_doubling = [&](const std::string& name, const MetricGraph& g) {
    DoublingReport a, b;
    Row r;
    r.name = name;
    r.serial_us =
        time_us([&] { a = doubling_bounds(g, DoublingStrategy::scan_all_balls, 1'000'000,
                                          Exec::serial); });
    r.omp_us = time_us([&] { b = doubling_bounds(g, DoublingStrategy::scan_all_balls, 1'000'000,
                                                 Exec::omp); });
    r.identical = a.ball_center == b.ball_center && a.ball_radius == b.ball_radius &&
                  a.witness_lower_bound == b.witness_lower_bound &&
                  a.greedy_upper_bound == b.greedy_upper_bound &&
                  a.scanned_balls == b.scanned_balls && a.complete == b.complete;
    all_ok = all_ok && r.identical;
    print(r);
  };

  MetricGraph d5 = generate(Family::diamond, 5);
  MetricGraph d6 = generate(Family::diamond, 6);
  MetricGraph l3 = generate(Family::laakso, 3);
  MetricGraph m2 = generate(Family::m_variant, 2);

  bench_ecc("eccentricities diamond:5", d5);
  bench_ecc("eccentricities diamond:6", d6);
  bench_ecc("eccentricities laakso:3", l3);
  bench_profile("profile diamond:5 (6 radii)", d5,
                {{1, 1}, {2, 1}, {4, 1}, {8, 1}, {16, 1}, {32, 1}});
  bench_profile("profile laakso:3 (5 radii)", l3, {{1, 1}, {2, 1}, {8, 1}, {32, 1}, {64, 1}});
  bench_doubling("doubling scan diamond:4", generate(Family::diamond, 4));
  bench_doubling("doubling scan laakso:2", generate(Family::laakso, 2));
  bench_doubling("doubling scan m:2", m2);

  if (!all_ok) {
    std::cerr << "serial and omp kernels disagree\n";
    return 1;
  }
  return 0;
}

#include "rabisig/wavesolver.hpp"

#include <cmath>
#include <stdexcept>

namespace rabisig {

double courant(const GridSpec& spec) {
  if (!(spec.dz > 0.0) || !(spec.dt > 0.0)) throw ConfigError("grid: dz and dt must be positive");
  const double eta = phys::c * spec.dt / spec.dz;
  if (eta > 1.0 + 1e-12) throw ConfigError("grid.eta: Courant number exceeds 1 (unstable)");
  return eta;
}

bool is_magic_step(const GridSpec& spec) { return spec.eta == 1.0; }

WaveGrid::WaveGrid(const GridSpec& s)
    : spec(s),
      prev(s.point_count(), 0.0),
      curr(s.point_count(), 0.0),
      next(s.point_count(), 0.0),
      g(s.point_count(), 0.0) {}

void WaveGrid::rotate() {
  std::swap(prev, curr);
  std::swap(curr, next);
}

namespace {

void check_source(const WaveGrid& w, std::span<const double> s) {
  if (s.size() != w.size()) throw std::invalid_argument("wavesolver: source length does not match grid");
}

}  // namespace

void first_step(WaveGrid& w, std::span<const double> s0) {
  check_source(w, s0);
  if (w.g.size() != w.size() || w.prev.size() != w.size() || w.next.size() != w.size())
    throw std::invalid_argument("first_step: array length mismatch");
  const double eta = w.spec.eta;
  const double e2 = eta * eta;
  const double dt = w.spec.dt;
  const double c2dt2 = phys::c * phys::c * dt * dt;
  const std::size_t n = w.size() - 1;
  const auto& f0 = w.curr;
  for (std::size_t j = 1; j < n; ++j)
    w.next[j] = 0.5 * e2 * (f0[j - 1] + f0[j + 1]) + (1.0 - e2) * f0[j] + dt * w.g[j] + 0.5 * c2dt2 * s0[j];
  w.next[0] = e2 * f0[1] + (1.0 - e2) * f0[0] + (1.0 - eta) * dt * w.g[0];
  w.next[n] = e2 * f0[n - 1] + (1.0 - e2) * f0[n] + (1.0 - eta) * dt * w.g[n];
}

void interior_step(WaveGrid& w, std::span<const double> s, int threads) {
  check_source(w, s);
  const double e2 = w.spec.eta * w.spec.eta;
  const double two_minus = 2.0 * (1.0 - e2);
  const double c2dt2 = phys::c * phys::c * w.spec.dt * w.spec.dt;
  const double* fc = w.curr.data();
  const double* fp = w.prev.data();
  double* fn = w.next.data();
  const auto n = static_cast<std::ptrdiff_t>(w.size()) - 1;
  if (threads > 1) {
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::ptrdiff_t j = 1; j < n; ++j)
      fn[j] = e2 * (fc[j + 1] + fc[j - 1]) + two_minus * fc[j] - fp[j] + c2dt2 * s[j];
  } else {
    for (std::ptrdiff_t j = 1; j < n; ++j)
      fn[j] = e2 * (fc[j + 1] + fc[j - 1]) + two_minus * fc[j] - fp[j] + c2dt2 * s[j];
  }
}

void boundary_step(WaveGrid& w) {
  const double eta = w.spec.eta;
  const double e2 = eta * eta;
  const std::size_t n = w.size() - 1;
  const auto& fc = w.curr;
  const auto& fp = w.prev;
  w.next[0] = (2.0 * e2 * fc[1] + 2.0 * (1.0 - e2) * fc[0] + (eta - 1.0) * fp[0]) / (1.0 + eta);
  w.next[n] = (2.0 * e2 * fc[n - 1] + 2.0 * (1.0 - e2) * fc[n] + (eta - 1.0) * fp[n]) / (1.0 + eta);
}

void periodic_boundary_step(WaveGrid& w, std::span<const double> s) {
  check_source(w, s);
  const double e2 = w.spec.eta * w.spec.eta;
  const double c2dt2 = phys::c * phys::c * w.spec.dt * w.spec.dt;
  const std::size_t n = w.size() - 1;
  const auto& fc = w.curr;
  const auto& fp = w.prev;
  // z_0 and z_N are neighbours, the ring has N + 1 points
  w.next[0] = e2 * (fc[1] + fc[n]) + 2.0 * (1.0 - e2) * fc[0] - fp[0] + c2dt2 * s[0];
  w.next[n] = e2 * (fc[0] + fc[n - 1]) + 2.0 * (1.0 - e2) * fc[n] - fp[n] + c2dt2 * s[n];
}

double discrete_energy(const WaveGrid& w, bool periodic) {
  const double dt = w.spec.dt;
  const double dz = w.spec.dz;
  const double c2 = phys::c * phys::c;
  const std::size_t n = w.size();
  double kinetic = 0.0;
  double potential = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = (w.next[j] - w.curr[j]) / dt;
    kinetic += v * v;
  }
  const std::size_t links = periodic ? n : n - 1;
  for (std::size_t j = 0; j < links; ++j) {
    const std::size_t k = (j + 1) % n;
    potential += c2 * (w.next[k] - w.next[j]) * (w.curr[k] - w.curr[j]) / (dz * dz);
  }
  return kinetic + potential;
}

}  // namespace rabisig

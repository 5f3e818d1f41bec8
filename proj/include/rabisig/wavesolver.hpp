#pragma once

// Explicit three-level solver for -f_zz + f_tt / c^2 = s(z, t) on a uniform
// grid with transparent (one-way) boundaries at both ends.

#include "rabisig/units.hpp"

#include <span>
#include <vector>

namespace rabisig {

/// Courant number c dt / dz. Throws ConfigError if it exceeds 1.
double courant(const GridSpec& spec);

/// True for the dispersion-free configuration eta == 1.
bool is_magic_step(const GridSpec& spec);

struct WaveGrid {
  explicit WaveGrid(const GridSpec& s);

  GridSpec spec;
  std::vector<double> prev;  // t_{i-1}
  std::vector<double> curr;  // t_i
  std::vector<double> next;  // t_{i+1}
  std::vector<double> g;     // initial velocity df/dt at t_0

  std::size_t size() const { return curr.size(); }
  void rotate();
};

/// Fills w.next with the field at t_1 from w.curr (= f at t_0), the initial
/// velocities w.g and the source at t_0, second order in dt.
void first_step(WaveGrid& w, std::span<const double> s0);

/// Interior update j = 1..N-1 into w.next from levels curr and prev.
void interior_step(WaveGrid& w, std::span<const double> s, int threads = 0);

/// Transparent boundary update of w.next at j = 0 and j = N (no sources at
/// the ends).
void boundary_step(WaveGrid& w);

/// Interior stencil applied at j = 0 and j = N with periodic wrap-around,
/// for closed-domain tests of the scheme.
void periodic_boundary_step(WaveGrid& w, std::span<const double> s);

/// Discrete energy between levels curr and next, using the staggered
/// gradient product that the leapfrog scheme conserves exactly on a
/// periodic domain.
double discrete_energy(const WaveGrid& w, bool periodic);

}  // namespace rabisig

#pragma once

// DC-Stark model of a 1-Sigma rigid rotor truncated at N = 3 (ten |N M>
// states), used to derive effective two-level parameters for LiH.

#include "rabisig/mathkit.hpp"
#include "rabisig/units.hpp"

#include <array>
#include <string>
#include <vector>

namespace rabisig::stark {

inline constexpr std::size_t basis_size = 10;

struct RotorState {
  int n;
  int m;
};

/// Fixed ordering |00>,|10>,|20>,|30>,|11>,|21>,|31>,|22>,|32>,|33>.
inline constexpr std::array<RotorState, basis_size> rotor_states{{
    {0, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}}};

std::string label(std::size_t basis_index);  // e.g. "|10>"
std::size_t basis_index(int n, int m);

struct RotorBasis {
  double b_e = 0.0;  // rotational constant, rad/s
  double d0 = 0.0;   // body-frame dipole, C m

  /// LiH X1Sigma+: d0 = 5.88 D, B_e = 7.513 cm^-1.
  static RotorBasis lih();
};

/// H = H_rot - E_DC d_z in joules.
mathkit::Matrix build_hamiltonian(const RotorBasis& basis, double e_dc);

/// Lab-frame z-dipole operator in the bare basis (C m); zero diagonal.
mathkit::Matrix dipole_operator(const RotorBasis& basis);

struct StarkResult {
  double e_dc = 0.0;                   // V/m
  std::vector<double> energies;        // J, ascending
  mathkit::Matrix eigvecs;             // column k belongs to energies[k]
  std::vector<std::size_t> labels;     // dominant bare state per eigenstate
  std::vector<double> dz;              // <k|d_z|k>, C m
  mathkit::Matrix t_dip;               // <a|d_z|b>, C m

  /// Eigenstate index carrying a given bare-state label.
  std::size_t index_of(std::size_t basis_label) const;
};

class LabelConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diagonalises each |M| block, labels eigenstates by their largest
/// component (made positive) and conjugates the dipole operator.
StarkResult stark_point(const RotorBasis& basis, double e_dc);

struct StarkMap {
  std::vector<StarkResult> points;
  std::vector<std::string> warnings;  // weak-overlap tracking notes
};

/// Stark results for ascending fields. Labels come from the dominant
/// component at the first field and then follow maximum eigenvector overlap.
StarkMap stark_map(const RotorBasis& basis, const std::vector<double>& e_dc_values);

/// Two-level medium from the |00>- and |10>-labelled levels at e_dc.
MediumParams lih_medium_params(double e_dc, double concentration, double gamma_coll, double sample_length = 0.53,
                               const RotorBasis& basis = RotorBasis::lih());

}  // namespace rabisig::stark

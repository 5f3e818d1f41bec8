#include "rabisig/stark.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rabisig::stark {

namespace {

// Off-diagonal couplings of the truncated rotor: (row, col, <N M|cos theta|N' M>).
struct Coupling {
  std::size_t i;
  std::size_t j;
  double factor;
};

const std::array<Coupling, 6>& couplings() {
  static const std::array<Coupling, 6> table{{
      {0, 1, 1.0 / std::sqrt(3.0)},                   // |00>-|10>
      {1, 2, 2.0 / std::sqrt(15.0)},                  // |10>-|20>
      {2, 3, 3.0 / std::sqrt(35.0)},                  // |20>-|30>
      {4, 5, 1.0 / std::sqrt(5.0)},                   // |11>-|21>
      {5, 6, 2.0 * std::sqrt(2.0) / std::sqrt(35.0)},  // |21>-|31>
      {7, 8, 1.0 / std::sqrt(7.0)},                   // |22>-|32>
  }};
  return table;
}

// Index sets of the |M| blocks; the Hamiltonian never couples them.
const std::array<std::vector<std::size_t>, 4>& m_blocks() {
  static const std::array<std::vector<std::size_t>, 4> blocks{
      {{0, 1, 2, 3}, {4, 5, 6}, {7, 8}, {9}}};
  return blocks;
}

std::size_t dominant_component(const mathkit::Matrix& v, std::size_t col) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v(i, col)) > std::abs(v(best, col))) best = i;
  return best;
}

double overlap(const mathkit::Matrix& a, std::size_t ca, const mathkit::Matrix& b, std::size_t cb) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a(i, ca) * b(i, cb);
  return s;
}

}  // namespace

std::string label(std::size_t basis_index) {
  const auto& s = rotor_states.at(basis_index);
  return "|" + std::to_string(s.n) + std::to_string(s.m) + ">";
}

std::size_t basis_index(int n, int m) {
  for (std::size_t i = 0; i < basis_size; ++i)
    if (rotor_states[i].n == n && rotor_states[i].m == m) return i;
  throw std::out_of_range("stark: |N M> state outside the N <= 3 basis");
}

RotorBasis RotorBasis::lih() { return {wavenumber_to_angular(7.513), debye_to_si(5.88)}; }

mathkit::Matrix dipole_operator(const RotorBasis& basis) {
  mathkit::Matrix d(basis_size);
  for (const auto& c : couplings()) {
    d(c.i, c.j) = c.factor * basis.d0;
    d(c.j, c.i) = c.factor * basis.d0;
  }
  return d;
}

mathkit::Matrix build_hamiltonian(const RotorBasis& basis, double e_dc) {
  if (!(e_dc >= 0.0)) throw std::invalid_argument("build_hamiltonian: field must be non-negative");
  mathkit::Matrix h(basis_size);
  const double rot = phys::hbar * basis.b_e;
  for (std::size_t i = 0; i < basis_size; ++i) {
    const int n = rotor_states[i].n;
    h(i, i) = rot * n * (n + 1);
  }
  for (const auto& c : couplings()) {
    const double v = -e_dc * c.factor * basis.d0;
    h(c.i, c.j) = v;
    h(c.j, c.i) = v;
  }
  return h;
}

std::size_t StarkResult::index_of(std::size_t basis_label) const {
  const auto it = std::find(labels.begin(), labels.end(), basis_label);
  if (it == labels.end()) throw std::out_of_range("StarkResult: no eigenstate labelled " + label(basis_label));
  return static_cast<std::size_t>(it - labels.begin());
}

namespace {

// Diagonalisation with provisional dominant-component labels, which may
// repeat when levels are strongly mixed.
StarkResult diagonalise(const RotorBasis& basis, double e_dc) {
  const mathkit::Matrix h = build_hamiltonian(basis, e_dc);

  struct Eigenpair {
    double energy;
    std::array<double, basis_size> vec;
  };
  std::vector<Eigenpair> pairs;
  for (const auto& block : m_blocks()) {
    mathkit::Matrix sub(block.size());
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = 0; b < block.size(); ++b) sub(a, b) = h(block[a], block[b]);
    const mathkit::EigenResult er = mathkit::eigh_symmetric(sub);
    for (std::size_t k = 0; k < block.size(); ++k) {
      Eigenpair p{er.values[k], {}};
      for (std::size_t a = 0; a < block.size(); ++a) p.vec[block[a]] = er.vectors(a, k);
      pairs.push_back(p);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });

  StarkResult r;
  r.e_dc = e_dc;
  r.eigvecs = mathkit::Matrix(basis_size);
  for (std::size_t k = 0; k < basis_size; ++k) {
    r.energies.push_back(pairs[k].energy);
    for (std::size_t i = 0; i < basis_size; ++i) r.eigvecs(i, k) = pairs[k].vec[i];
    const std::size_t dom = dominant_component(r.eigvecs, k);
    if (r.eigvecs(dom, k) < 0.0)
      for (std::size_t i = 0; i < basis_size; ++i) r.eigvecs(i, k) = -r.eigvecs(i, k);
    r.labels.push_back(dom);
  }

  const mathkit::Matrix d = dipole_operator(basis);
  r.t_dip = r.eigvecs.transposed() * d * r.eigvecs;
  for (std::size_t a = 0; a < basis_size; ++a)
    for (std::size_t b = 0; b < a; ++b) {
      const double sym = 0.5 * (r.t_dip(a, b) + r.t_dip(b, a));
      r.t_dip(a, b) = sym;
      r.t_dip(b, a) = sym;
    }
  for (std::size_t k = 0; k < basis_size; ++k) r.dz.push_back(r.t_dip(k, k));
  return r;
}

}  // namespace

StarkResult stark_point(const RotorBasis& basis, double e_dc) {
  StarkResult r = diagonalise(basis, e_dc);
  for (std::size_t a = 0; a < basis_size; ++a)
    for (std::size_t b = a + 1; b < basis_size; ++b)
      if (r.labels[a] == r.labels[b])
        throw LabelConflict("stark_point: two eigenstates dominated by " + label(r.labels[a]) + " at " +
                            std::to_string(e_dc * 1e-5) + " kV/cm");
  return r;
}

StarkMap stark_map(const RotorBasis& basis, const std::vector<double>& e_dc_values) {
  if (e_dc_values.size() < 2) throw std::invalid_argument("stark_map: at least two field values required");
  if (!std::is_sorted(e_dc_values.begin(), e_dc_values.end()))
    throw std::invalid_argument("stark_map: field values must be ascending");

  StarkMap map;
  map.points.push_back(stark_point(basis, e_dc_values.front()));
  for (std::size_t p = 1; p < e_dc_values.size(); ++p) {
    StarkResult r = diagonalise(basis, e_dc_values[p]);
    const StarkResult& prev = map.points.back();

    // greedy maximum-overlap matching against the previous field point
    std::vector<bool> used_prev(basis_size, false), used_new(basis_size, false);
    std::vector<std::size_t> new_labels(basis_size, 0);
    for (std::size_t round = 0; round < basis_size; ++round) {
      double best = -1.0;
      std::size_t bk = 0, bp = 0;
      for (std::size_t k = 0; k < basis_size; ++k) {
        if (used_new[k]) continue;
        for (std::size_t q = 0; q < basis_size; ++q) {
          if (used_prev[q]) continue;
          const double o = std::abs(overlap(r.eigvecs, k, prev.eigvecs, q));
          if (o > best) {
            best = o;
            bk = k;
            bp = q;
          }
        }
      }
      used_new[bk] = used_prev[bp] = true;
      new_labels[bk] = prev.labels[bp];
      if (best < 0.5) {
        std::ostringstream os;
        os << "weak overlap " << best << " tracking " << label(prev.labels[bp]) << " at " << r.e_dc * 1e-5
           << " kV/cm";
        map.warnings.push_back(os.str());
      }
    }
    r.labels = new_labels;
    map.points.push_back(std::move(r));
  }
  return map;
}

MediumParams lih_medium_params(double e_dc, double concentration, double gamma_coll, double sample_length,
                               const RotorBasis& basis) {
  if (!(e_dc > 0.0))
    throw ConfigError("stark field must be positive: zero-field eigenstates carry no permanent dipole");
  const StarkResult r = stark_point(basis, e_dc);
  const std::size_t g = r.index_of(basis_index(0, 0));
  const std::size_t e = r.index_of(basis_index(1, 0));
  MediumParams m;
  m.omega0 = (r.energies[e] - r.energies[g]) / phys::hbar;
  m.d_gg = r.dz[g];
  m.d_ee = r.dz[e];
  m.d_eg = r.t_dip(e, g);
  m.gamma_se = weisskopf_wigner_rate(m.d_eg, m.omega0);
  m.gamma_coll = gamma_coll;
  m.concentration = concentration;
  m.sample_start = 0.0;
  m.sample_end = sample_length;
  return m;
}

}  // namespace rabisig::stark

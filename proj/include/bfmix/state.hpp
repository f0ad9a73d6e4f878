#pragma once

// The layered many-body wavefunction: a rank-M Schmidt decomposition over
// species functions, each species function expanded over number states of m
// time-dependent single-particle functions (SPFs).
//
// Conventions:
//  - SPFs are stored as function values on the grid, normalized so that
//    dx * sum |phi_j|^2 = 1.
//  - Schmidt weights lambda_k are probabilities (sum to 1, descending); the
//    square root enters only when amplitudes are assembled.
//  - Species coefficient rows (one row per Schmidt branch) are orthonormal.

#include <cstring>
#include <istream>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bfmix/fock.hpp"
#include "bfmix/grid.hpp"
#include "bfmix/model.hpp"

namespace bfmix {

struct SpeciesBlock {
  std::shared_ptr<const NumberStateTable> table;
  CMat coeffs;  // M x dim(table), row k = branch-k species function
  CMat spfs;    // n_points x m, column j = phi_j

  int n_orbitals() const { return static_cast<int>(spfs.cols()); }
  int dim() const { return static_cast<int>(coeffs.cols()); }
};

struct MBState {
  double time = 0.0;
  Vec lambda;            // Schmidt probabilities, descending
  SpeciesBlock fermions;
  SpeciesBlock bosons;

  int rank() const { return static_cast<int>(lambda.size()); }
  const SpeciesBlock& species(Statistics s) const {
    return s == Statistics::Bosonic ? bosons : fermions;
  }
  SpeciesBlock& species(Statistics s) {
    return s == Statistics::Bosonic ? bosons : fermions;
  }
};

inline Complex spf_dot(const Grid& grid, const CVec& a, const CVec& b) {
  return grid.dx() * a.dot(b);  // Eigen's dot conjugates the first argument
}

// max over species and orbital pairs of |<phi_i|phi_j> - delta_ij|
inline double orthonormality_error(const MBState& state, const Grid& grid) {
  double err = 0.0;
  for (const SpeciesBlock* blk : {&state.fermions, &state.bosons}) {
    const CMat& p = blk->spfs;
    CMat overlap = grid.dx() * (p.adjoint() * p);
    overlap -= CMat::Identity(p.cols(), p.cols());
    err = std::max(err, overlap.cwiseAbs().maxCoeff());
  }
  return err;
}

// <Psi|Psi> via the layered structure; exact for non-normalized blocks too.
inline double total_norm_squared(const MBState& state) {
  const int m_rank = state.rank();
  CMat sf = state.fermions.coeffs.conjugate() * state.fermions.coeffs.transpose();
  CMat sb = state.bosons.coeffs.conjugate() * state.bosons.coeffs.transpose();
  Complex acc = 0.0;
  for (int k = 0; k < m_rank; ++k)
    for (int k2 = 0; k2 < m_rank; ++k2)
      acc += std::sqrt(state.lambda[k] * state.lambda[k2]) * sf(k, k2) *
             sb(k, k2);
  return acc.real();
}

inline double total_norm(const MBState& state) {
  return std::sqrt(total_norm_squared(state));
}

inline const Vec& schmidt_spectrum(const MBState& state) { return state.lambda; }

// At least two Schmidt weights above threshold = interspecies entangled.
inline bool is_entangled(const MBState& state, double threshold = 1e-8) {
  int above = 0;
  for (int k = 0; k < state.rank(); ++k)
    if (state.lambda[k] > threshold) ++above;
  return above >= 2;
}

struct InitStrategy {
  double perturbation = 1e-3;   // coefficient-space noise amplitude
  double epsilon_lambda = 1e-6; // seed weight of initially unoccupied branches
  uint64_t seed = 0;
  bool parity_offset = false;   // mix +-x parity partners to break degeneracy
};

namespace detail {

// uniform in (-0.5, 0.5), bit-reproducible for a given seed
inline double sym_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

inline void gram_schmidt_rows(CMat& c) {
  for (int k = 0; k < c.rows(); ++k) {
    for (int rep = 0; rep < 2; ++rep)
      for (int j = 0; j < k; ++j)
        c.row(k) -= (c.row(j).conjugate() * c.row(k).transpose())(0, 0) *
                    c.row(j);
    const double nrm = c.row(k).norm();
    if (nrm < 1e-14)
      throw std::runtime_error("init_guess: degenerate coefficient rows");
    c.row(k) /= nrm;
  }
}

inline SpeciesBlock init_species_block(const SystemSpec& sys, const Grid& grid,
                                       Statistics stat, int rank,
                                       const InitStrategy& strategy,
                                       std::mt19937_64& rng) {
  const SpeciesSpec& sp = sys.species(stat);
  SpeciesBlock blk;
  blk.table = std::make_shared<NumberStateTable>(stat, sp.count, sp.n_orbitals);
  if (rank > blk.table->size())
    throw std::invalid_argument(
        "init_guess: Schmidt rank exceeds species configuration count");

  // SPFs: lowest eigenvectors of the one-body Hamiltonian h = T + V.
  Mat h = grid.kinetic_matrix(sp.mass);
  h += Mat(potential_vector(sys.trap, grid, sp.mass).asDiagonal());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const double scale = 1.0 / std::sqrt(grid.dx());
  blk.spfs.resize(grid.n(), sp.n_orbitals);
  for (int j = 0; j < sp.n_orbitals; ++j)
    blk.spfs.col(j) = scale * es.eigenvectors().col(j).cast<Complex>();
  if (strategy.parity_offset) {
    // replace near-degenerate parity partners (2j, 2j+1) by left/right combos
    for (int j = 0; j + 1 < sp.n_orbitals; j += 2) {
      CVec a = blk.spfs.col(j), b = blk.spfs.col(j + 1);
      blk.spfs.col(j) = (a + b) / std::sqrt(2.0);
      blk.spfs.col(j + 1) = (a - b) / std::sqrt(2.0);
    }
  }

  // Branch k starts from the k-th number state plus a small seeded
  // perturbation, rows then orthonormalized.
  blk.coeffs = CMat::Zero(rank, blk.table->size());
  for (int k = 0; k < rank; ++k) {
    blk.coeffs(k, k) = 1.0;
    for (int s = 0; s < blk.table->size(); ++s)
      blk.coeffs(k, s) += strategy.perturbation *
                          Complex(sym_uniform(rng), sym_uniform(rng));
  }
  gram_schmidt_rows(blk.coeffs);
  return blk;
}

}  // namespace detail

inline MBState init_guess(const SystemSpec& sys, const Grid& grid,
                          const InitStrategy& strategy = {}) {
  std::mt19937_64 rng(strategy.seed ^ 0x9e3779b97f4a7c15ull);
  MBState state;
  state.time = 0.0;
  const int rank = sys.schmidt_rank;
  state.fermions = detail::init_species_block(sys, grid, Statistics::Fermionic,
                                              rank, strategy, rng);
  state.bosons = detail::init_species_block(sys, grid, Statistics::Bosonic,
                                            rank, strategy, rng);
  state.lambda.resize(rank);
  if (rank == 1) {
    state.lambda[0] = 1.0;
  } else {
    const double eps = strategy.epsilon_lambda;
    state.lambda.setConstant(eps);
    state.lambda[0] = 1.0 - (rank - 1) * eps;
  }
  return state;
}

// ---------------------------------------------------------------------------
// Binary snapshot format "BFQ1": little-endian throughout.
//   magic "BFQ1"
//   int64 dims: M, m_F, m_B, N_F, N_B, n_points
//   float64: time, x_minus, x_plus
//   float64[M]: lambda
//   complex128[M x dim_F] row-major: fermionic coefficients
//   complex128[M x dim_B] row-major: bosonic coefficients
//   complex128[m_F x n_points] orbital-major: fermionic SPFs
//   complex128[m_B x n_points] orbital-major: bosonic SPFs
// State ordering within the coefficient blocks is the table's fixed
// descending-lexicographic order.
// ---------------------------------------------------------------------------

namespace detail {
template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("BFQ1: truncated stream");
  return v;
}
inline void write_cmat_rowmajor(std::ostream& os, const CMat& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      write_pod(os, m(r, c).real());
      write_pod(os, m(r, c).imag());
    }
}
inline void read_cmat_rowmajor(std::istream& is, CMat& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const double re = read_pod<double>(is);
      const double im = read_pod<double>(is);
      m(r, c) = Complex(re, im);
    }
}
}  // namespace detail

inline void save_state(std::ostream& os, const MBState& state,
                       const GridSpec& grid) {
  os.write("BFQ1", 4);
  detail::write_pod<int64_t>(os, state.rank());
  detail::write_pod<int64_t>(os, state.fermions.n_orbitals());
  detail::write_pod<int64_t>(os, state.bosons.n_orbitals());
  detail::write_pod<int64_t>(os, state.fermions.table->n_particles());
  detail::write_pod<int64_t>(os, state.bosons.table->n_particles());
  detail::write_pod<int64_t>(os, grid.n_points);
  detail::write_pod<double>(os, state.time);
  detail::write_pod<double>(os, grid.x_minus);
  detail::write_pod<double>(os, grid.x_plus);
  for (int k = 0; k < state.rank(); ++k)
    detail::write_pod<double>(os, state.lambda[k]);
  detail::write_cmat_rowmajor(os, state.fermions.coeffs);
  detail::write_cmat_rowmajor(os, state.bosons.coeffs);
  detail::write_cmat_rowmajor(os, CMat(state.fermions.spfs.transpose()));
  detail::write_cmat_rowmajor(os, CMat(state.bosons.spfs.transpose()));
}

inline MBState load_state(std::istream& is, GridSpec& grid_out) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "BFQ1", 4) != 0)
    throw std::runtime_error("BFQ1: bad magic");
  const auto rank = static_cast<int>(detail::read_pod<int64_t>(is));
  const auto m_f = static_cast<int>(detail::read_pod<int64_t>(is));
  const auto m_b = static_cast<int>(detail::read_pod<int64_t>(is));
  const auto n_f = static_cast<int>(detail::read_pod<int64_t>(is));
  const auto n_b = static_cast<int>(detail::read_pod<int64_t>(is));
  const auto n_points = static_cast<int>(detail::read_pod<int64_t>(is));
  MBState state;
  state.time = detail::read_pod<double>(is);
  grid_out.n_points = n_points;
  grid_out.x_minus = detail::read_pod<double>(is);
  grid_out.x_plus = detail::read_pod<double>(is);
  state.lambda.resize(rank);
  for (int k = 0; k < rank; ++k) state.lambda[k] = detail::read_pod<double>(is);
  state.fermions.table =
      std::make_shared<NumberStateTable>(Statistics::Fermionic, n_f, m_f);
  state.bosons.table =
      std::make_shared<NumberStateTable>(Statistics::Bosonic, n_b, m_b);
  state.fermions.coeffs.resize(rank, state.fermions.table->size());
  state.bosons.coeffs.resize(rank, state.bosons.table->size());
  detail::read_cmat_rowmajor(is, state.fermions.coeffs);
  detail::read_cmat_rowmajor(is, state.bosons.coeffs);
  CMat tmp(m_f, n_points);
  detail::read_cmat_rowmajor(is, tmp);
  state.fermions.spfs = tmp.transpose();
  tmp.resize(m_b, n_points);
  detail::read_cmat_rowmajor(is, tmp);
  state.bosons.spfs = tmp.transpose();
  return state;
}

}  // namespace bfmix

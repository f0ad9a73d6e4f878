#pragma once

// Occupation-number basis for one species: enumeration of permanents /
// determinants over m orbitals and the second-quantized operator rules
// (bosonic sqrt(n) factors, fermionic sign counting) that replace explicit
// permutation sums.

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bfmix/model.hpp"
#include "bfmix/types.hpp"

namespace bfmix {

// Sparse one- or two-body operator in a fixed number-state basis,
// stored as triplets (source state, target state, matrix element).
struct SparseOp {
  std::vector<int> src;
  std::vector<int> dst;
  std::vector<double> coeff;

  void add(int s, int d, double c) {
    src.push_back(s);
    dst.push_back(d);
    coeff.push_back(c);
  }

  // y += alpha * Op x
  template <typename VecX, typename VecY>
  void accumulate(const VecX& x, VecY& y, Complex alpha) const {
    for (size_t e = 0; e < src.size(); ++e)
      y[dst[e]] += alpha * coeff[e] * x[src[e]];
  }

  // <bra| Op |ket>
  template <typename VecX, typename VecY>
  Complex matrix_element(const VecY& bra, const VecX& ket) const {
    Complex acc = 0.0;
    for (size_t e = 0; e < src.size(); ++e)
      acc += std::conj(bra[dst[e]]) * coeff[e] * ket[src[e]];
    return acc;
  }
};

class NumberStateTable {
 public:
  NumberStateTable(Statistics statistics, int n_particles, int n_orbitals)
      : statistics_(statistics), n_(n_particles), m_(n_orbitals) {
    if (n_ < 1 || m_ < 1)
      throw std::invalid_argument("NumberStateTable: N >= 1 and m >= 1");
    if (statistics_ == Statistics::Fermionic && m_ < n_)
      throw std::invalid_argument(
          "NumberStateTable: fermions require m >= N (Pauli)");
    if (m_ > 10 || n_ > 63)
      throw std::invalid_argument("NumberStateTable: supports m <= 10, N <= 63");
    std::vector<int> occ(m_, 0);
    enumerate(occ, 0, n_);
    index_.reserve(states_.size());
    for (size_t s = 0; s < states_.size(); ++s)
      index_.emplace(pack(states_[s]), static_cast<int>(s));
    build_one_body();
    build_two_body();  // eager so a shared table needs no synchronization
  }

  Statistics statistics() const { return statistics_; }
  int n_particles() const { return n_; }
  int n_orbitals() const { return m_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<int>& occupation(int idx) const { return states_[idx]; }

  int index_of(const std::vector<int>& occ) const {
    auto it = index_.find(pack(occ));
    if (it == index_.end())
      throw std::out_of_range("NumberStateTable: occupation not in table");
    return it->second;
  }

  // a^dag_i a_j
  const SparseOp& hop(int i, int j) const { return one_body_[i * m_ + j]; }

  // a^dag_i a^dag_j a_l a_k  (the <ij|W|kl> ordering)
  const SparseOp& pair(int i, int j, int k, int l) const {
    return two_body_[((i * m_ + j) * m_ + k) * m_ + l];
  }

  // Amplitude bookkeeping for a single annihilation / creation on an
  // occupation vector.  Returns the multiplicative factor, 0 if the move is
  // forbidden; `occ` is updated in place.
  double annihilate(std::vector<int>& occ, int p) const {
    if (occ[p] == 0) return 0.0;
    double f;
    if (statistics_ == Statistics::Bosonic) {
      f = std::sqrt(static_cast<double>(occ[p]));
    } else {
      f = jw_sign(occ, p);
    }
    occ[p] -= 1;
    return f;
  }

  double create(std::vector<int>& occ, int p) const {
    double f;
    if (statistics_ == Statistics::Bosonic) {
      f = std::sqrt(static_cast<double>(occ[p] + 1));
    } else {
      if (occ[p] == 1) return 0.0;
      f = jw_sign(occ, p);
    }
    occ[p] += 1;
    return f;
  }

 private:
  void enumerate(std::vector<int>& occ, int orbital, int remaining) {
    if (orbital == m_ - 1) {
      const int cap = statistics_ == Statistics::Fermionic ? 1 : remaining;
      if (remaining <= cap) {
        occ[orbital] = remaining;
        states_.push_back(occ);
      }
      return;
    }
    const int cap = statistics_ == Statistics::Fermionic ? 1 : remaining;
    const int tail = m_ - orbital - 1;
    for (int k = std::min(cap, remaining); k >= 0; --k) {
      const int rest = remaining - k;
      if (statistics_ == Statistics::Fermionic && rest > tail) continue;
      occ[orbital] = k;
      enumerate(occ, orbital + 1, rest);
    }
  }

  static double jw_sign_static(const std::vector<int>& occ, int p) {
    int cnt = 0;
    for (int q = 0; q < p; ++q) cnt += occ[q];
    return (cnt % 2 == 0) ? 1.0 : -1.0;
  }
  double jw_sign(const std::vector<int>& occ, int p) const {
    return jw_sign_static(occ, p);
  }

  uint64_t pack(const std::vector<int>& occ) const {
    uint64_t key = 0;
    for (int p = 0; p < m_; ++p) key = (key << 6) | static_cast<uint64_t>(occ[p]);
    return key;
  }

  void build_one_body() {
    one_body_.assign(static_cast<size_t>(m_) * m_, SparseOp{});
    std::vector<int> occ;
    for (int s = 0; s < size(); ++s) {
      for (int j = 0; j < m_; ++j) {
        if (states_[s][j] == 0) continue;
        for (int i = 0; i < m_; ++i) {
          occ = states_[s];
          double f = annihilate(occ, j);
          f *= create(occ, i);
          if (f == 0.0) continue;
          one_body_[i * m_ + j].add(s, index_of(occ), f);
        }
      }
    }
  }

  void build_two_body() {
    auto& ops = two_body_;
    ops.assign(static_cast<size_t>(m_) * m_ * m_ * m_, SparseOp{});
    std::vector<int> occ;
    for (int s = 0; s < size(); ++s) {
      for (int k = 0; k < m_; ++k) {
        for (int l = 0; l < m_; ++l) {
          for (int j = 0; j < m_; ++j) {
            for (int i = 0; i < m_; ++i) {
              occ = states_[s];
              double f = annihilate(occ, k);
              if (f == 0.0) continue;
              f *= annihilate(occ, l);
              if (f == 0.0) continue;
              f *= create(occ, j);
              if (f == 0.0) continue;
              f *= create(occ, i);
              if (f == 0.0) continue;
              ops[((i * m_ + j) * m_ + k) * m_ + l].add(s, index_of(occ), f);
            }
          }
        }
      }
    }
  }

  Statistics statistics_;
  int n_;
  int m_;
  std::vector<std::vector<int>> states_;
  std::unordered_map<uint64_t, int> index_;
  std::vector<SparseOp> one_body_;
  std::vector<SparseOp> two_body_;
};

inline uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 0; i < std::min(k, n - k); ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline uint64_t state_count(Statistics s, int n, int m) {
  return s == Statistics::Bosonic ? binomial(n + m - 1, m - 1) : binomial(m, n);
}

}  // namespace bfmix

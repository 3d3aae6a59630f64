#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace rotsim {

enum class JParity { Odd, Even, Any };

/// Molecular constants of the rigid rotor. The He2* a-state supports only
/// odd J; the rotational constant may differ per vibrational level.
struct RotorSpec {
  struct VibLevel {
    int v = 0;
    double weight = 1.0; // population fraction
    double b_thz = 0.0;  // rotational constant
  };

  std::vector<VibLevel> vib;   // fractions sum to 1
  double delta_alpha_a3 = 35.1; // polarizability anisotropy, Angstrom^3
  JParity j_parity = JParity::Odd;
  int j_max = 11;

  /// Throws ConfigError on violated invariants.
  void validate() const;

  double b_for(int v) const; // throws ConfigError for unknown v

  /// Frequency of the J=1..J=3 coherence for the lowest listed level:
  /// nu13 = (E3-E1)/2pi = 10 B.
  double nu13_thz() const { return 10.0 * vib.front().b_thz; }
};

/// Flat index over the (J,M) product basis, parity-filtered, ordered by
/// ascending J then ascending M.
class BasisIndex {
public:
  BasisIndex(int j_min, int j_max, JParity parity);

  std::size_t size() const { return pairs_.size(); }
  int j_of(std::size_t idx) const { return pairs_[idx].first; }
  int m_of(std::size_t idx) const { return pairs_[idx].second; }
  std::pair<int, int> lookup(std::size_t idx) const { return pairs_[idx]; }

  /// Flat index of (J,M); throws ConfigError if absent.
  std::size_t index(int j, int m) const;
  bool contains(int j, int m) const;

  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  JParity parity() const { return parity_; }
  const std::vector<int>& shells() const { return shells_; } // distinct J values

private:
  int j_min_;
  int j_max_;
  JParity parity_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> shells_;
  std::map<std::pair<int, int>, std::size_t> rindex_;
};

/// Parity-filtered basis for the spec: J in {1,3,..,j_max} for odd parity.
BasisIndex build_basis(const RotorSpec& spec);

} // namespace rotsim

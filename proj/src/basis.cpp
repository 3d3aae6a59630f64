#include "rotsim/basis.hpp"

#include <cmath>
#include <string>

#include "rotsim/errors.hpp"

namespace rotsim {

namespace {

bool parity_admits(JParity p, int j) {
  switch (p) {
    case JParity::Odd: return j % 2 == 1;
    case JParity::Even: return j % 2 == 0;
    case JParity::Any: return true;
  }
  return false;
}

} // namespace

void RotorSpec::validate() const {
  if (vib.empty()) throw ConfigError("rotor spec lists no vibrational levels");
  double wsum = 0.0;
  for (const auto& lv : vib) {
    if (!(lv.b_thz > 0.0))
      throw ConfigError("b_rot must be positive for v=" + std::to_string(lv.v));
    if (lv.weight < 0.0 || lv.weight > 1.0)
      throw ConfigError("vibrational weight out of [0,1] for v=" + std::to_string(lv.v));
    wsum += lv.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw ConfigError("vibrational weights must sum to 1 (got " + std::to_string(wsum) + ")");
  if (!(delta_alpha_a3 > 0.0)) throw ConfigError("delta_alpha must be positive");
  if (j_max < 1) throw ConfigError("j_max must be >= 1");
  if (!parity_admits(j_parity, j_max))
    throw ConfigError("j_max=" + std::to_string(j_max) + " violates the J parity restriction");
}

double RotorSpec::b_for(int v) const {
  for (const auto& lv : vib)
    if (lv.v == v) return lv.b_thz;
  throw ConfigError("unknown vibrational level v=" + std::to_string(v));
}

BasisIndex::BasisIndex(int j_min, int j_max, JParity parity)
    : j_min_(j_min), j_max_(j_max), parity_(parity) {
  if (j_min < 0 || j_max < j_min)
    throw ConfigError("invalid basis range J in [" + std::to_string(j_min) + "," +
                      std::to_string(j_max) + "]");
  for (int j = j_min; j <= j_max; ++j) {
    if (!parity_admits(parity, j)) continue;
    shells_.push_back(j);
    for (int m = -j; m <= j; ++m) {
      rindex_[{j, m}] = pairs_.size();
      pairs_.emplace_back(j, m);
    }
  }
  if (pairs_.empty()) throw ConfigError("basis is empty");
}

std::size_t BasisIndex::index(int j, int m) const {
  auto it = rindex_.find({j, m});
  if (it == rindex_.end())
    throw ConfigError("state (J=" + std::to_string(j) + ",M=" + std::to_string(m) +
                      ") is not in the basis");
  return it->second;
}

bool BasisIndex::contains(int j, int m) const {
  return rindex_.find({j, m}) != rindex_.end();
}

BasisIndex build_basis(const RotorSpec& spec) {
  spec.validate();
  int j_min = spec.j_parity == JParity::Even ? 0 : 1;
  return BasisIndex(j_min, spec.j_max, spec.j_parity);
}

} // namespace rotsim

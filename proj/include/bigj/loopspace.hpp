#pragma once

#include <tuple>
#include <vector>

#include "bigj/config.hpp"
#include "bigj/partial_fractions.hpp"
#include "bigj/qseries.hpp"
#include "bigj/residue_pairing.hpp"

namespace bigj {

// A candidate point of the big J-function variety: a sequence (f_1, ..., f_R)
// of K-valued rational functions, plus the truncation config it was built at.
class SequencePoint {
 public:
  SequencePoint() = default;
  SequencePoint(std::vector<RationalQ> entries, EngineConfig cfg)
      : entries_(std::move(entries)), cfg_(cfg) {
    if (static_cast<int>(entries_.size()) != cfg_.R)
      throw std::invalid_argument("sequence point: length must equal R");
  }

  const std::vector<RationalQ>& entries() const { return entries_; }
  const RationalQ& entry(int r) const { return entries_.at(static_cast<size_t>(r - 1)); }
  void set_entry(int r, const RationalQ& f) { entries_.at(static_cast<size_t>(r - 1)) = f; }
  const EngineConfig& config() const { return cfg_; }
  int R() const { return cfg_.R; }

  friend bool operator==(const SequencePoint& a, const SequencePoint& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (size_t i = 0; i < a.entries_.size(); ++i)
      if (a.entries_[i] != b.entries_[i]) return false;
    return true;
  }

 private:
  std::vector<RationalQ> entries_;
  EngineConfig cfg_;
};

// v = (1-q)(1, 1, ...), the dilaton vector.
inline SequencePoint dilaton_point(const EngineConfig& cfg) {
  RationalQ v(LaurentPoly::one_minus_q_pow(1));
  return SequencePoint(std::vector<RationalQ>(static_cast<size_t>(cfg.R), v), cfg);
}

inline std::vector<LaurentPoly> project_plus_seq(const SequencePoint& f) {
  std::vector<LaurentPoly> out;
  out.reserve(f.entries().size());
  for (const auto& e : f.entries()) out.push_back(project_plus(e));
  return out;
}

// Cell key (r, zeta = zeta_m^a).
struct AdelicKey {
  int r;
  int m;
  int a;
  auto operator<=>(const AdelicKey&) const = default;
};

// { Psi^r(f_r(q^{1/m}/zeta)) expanded near q = 1 }, for r <= R and primitive
// roots of order m <= M_max. Psi^r acts on the expansion coefficients only;
// the substitution has already been performed cellwise.
struct AdelicTable {
  std::map<AdelicKey, QSeries> cells;
};

inline std::vector<std::pair<int, int>> primitive_roots(int M_max) {
  std::vector<std::pair<int, int>> out;
  out.emplace_back(1, 0);
  for (int m = 2; m <= M_max; ++m)
    for (int a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) out.emplace_back(m, a);
  return out;
}

inline AdelicTable adelic_map(const SequencePoint& f) {
  const EngineConfig& cfg = f.config();
  AdelicTable t;
  for (int r = 1; r <= cfg.R; ++r)
    for (auto [m, a] : primitive_roots(cfg.M_max))
      t.cells[AdelicKey{r, m, a}] = expand_adelic(f.entry(r), m, a, cfg.E).adams_coeffs(r);
  return t;
}

inline LambdaElement omega_infinity(const SequencePoint& f, const SequencePoint& g,
                                    const PairingSpec& pairing = PairingSpec::pt()) {
  return omega_infinity(f.entries(), g.entries(), pairing);
}

}  // namespace bigj

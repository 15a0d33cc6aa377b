#pragma once

#include <vector>

#include "bigj/rational_q.hpp"

namespace bigj {

// K-theoretic Poincare pairing data over a basis of the coefficient K-ring.
// For the point target: rank 1, gram = (1).
struct PairingSpec {
  int rank = 1;
  std::vector<std::vector<LambdaElement>> gram;

  static PairingSpec pt() {
    PairingSpec p;
    p.rank = 1;
    p.gram = {{LambdaElement::one()}};
    return p;
  }
};

// Omega(f, g) = -[Res_{q=0} + Res_{q=inf}] (f(1/q), g(q)) dq/q. The residue
// at infinity reduces (w = 1/q) to -Res_{w=0} (f(w), g(1/w)) dw/w, so both
// pieces are residues at 0 of rational functions of the standard shape.
inline LambdaElement omega_pair(const RationalQ& f, const RationalQ& g,
                                const PairingSpec& pairing = PairingSpec::pt()) {
  if (pairing.rank != 1) throw std::domain_error("omega_pair: only rank-1 pairings supported");
  const LambdaElement& w = pairing.gram[0][0];
  RationalQ qinv(LaurentPoly::monomial(-1, LambdaElement::one()));
  RationalQ h = f.invert_q() * g * qinv;
  RationalQ ht = f * g.invert_q() * qinv;
  return (ht.residue_at_zero() - h.residue_at_zero()) * w;
}

// Omega^inf(f, g) = sum_{r=1}^{R} Psi^r(Omega(f_r, g_r)) / r.
inline LambdaElement omega_infinity(const std::vector<RationalQ>& f, const std::vector<RationalQ>& g,
                                    const PairingSpec& pairing = PairingSpec::pt()) {
  if (f.size() != g.size()) throw std::invalid_argument("omega_infinity: length mismatch");
  LambdaElement s;
  for (size_t r = 1; r <= f.size(); ++r) {
    LambdaElement w = omega_pair(f[r - 1], g[r - 1], pairing);
    s = s + w.adams(static_cast<int>(r)).scaled(Rational(1) / Rational(static_cast<int>(r)));
  }
  return s;
}

// (Psi^r a, Psi^r b)^{(r)} = r Psi^r((a, b)); inputs are the pre-images.
inline LambdaElement twisted_pair(int r, const LambdaElement& a, const LambdaElement& b,
                                  const PairingSpec& pairing = PairingSpec::pt()) {
  if (pairing.rank != 1) throw std::domain_error("twisted_pair: only rank-1 pairings supported");
  LambdaElement plain = a * b * pairing.gram[0][0];
  return plain.adams(r).scaled(Rational(r));
}

}  // namespace bigj

#pragma once

#include <cstdint>
#include <vector>

namespace nbpolar {

using GfElem = std::uint16_t;

// Arithmetic over GF(2^r) for 1 <= r <= 8. Addition is XOR; multiplication
// goes through log/antilog tables built from a primitive element of the
// multiplicative group. The context is immutable after construction and can
// be shared freely across threads.
class GfContext {
 public:
  GfContext() = default;  // empty context; build() produces a usable one

  // Builds the field for the given degree and reduction polynomial
  // (an (r+1)-bit mask, e.g. 0x11D for x^8+x^4+x^3+x^2+1). Throws
  // std::invalid_argument if the polynomial is not irreducible, is not
  // monic of degree r, or has a zero constant term.
  static GfContext build(int degree, unsigned poly);

  int degree() const { return r_; }
  unsigned order() const { return q_; }
  unsigned poly() const { return poly_; }

  static GfElem add(GfElem a, GfElem b) { return a ^ b; }

  GfElem mul(GfElem a, GfElem b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  // Multiplicative inverse; throws std::domain_error for a = 0.
  GfElem inv(GfElem a) const;

  GfElem pow(GfElem a, unsigned e) const;

  const std::vector<GfElem>& log_table() const { return log_; }
  const std::vector<GfElem>& antilog_table() const { return antilog_; }

 private:
  int r_ = 0;
  unsigned q_ = 0;
  unsigned poly_ = 0;
  std::vector<GfElem> log_;      // log_[x] for x != 0
  std::vector<GfElem> antilog_;  // antilog_[k] = g^k, k in [0, q-1)
};

// Carry-less polynomial multiply of a and b followed by reduction modulo
// poly (degree r). Slow bitwise route, independent of the tables; used for
// table construction and as a cross-check oracle.
GfElem gf_clmul_reduce(GfElem a, GfElem b, unsigned poly, int r);

// True iff poly (monic, degree r over GF(2)) has no factor of degree
// in [1, r/2]; checked by exhaustive trial division.
bool gf_poly_irreducible(unsigned poly, int r);

}  // namespace nbpolar

#include "nbpolar/gf.hpp"

#include <stdexcept>

namespace nbpolar {

namespace {

int poly_degree(unsigned p) {
  int d = -1;
  for (int i = 0; i < 32; ++i)
    if (p & (1u << i)) d = i;
  return d;
}

// Remainder of a mod b in GF(2)[x].
unsigned poly_mod(unsigned a, unsigned b) {
  int db = poly_degree(b);
  int da = poly_degree(a);
  while (da >= db) {
    a ^= b << (da - db);
    da = poly_degree(a);
  }
  return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GfElem gf_clmul_reduce(GfElem a, GfElem b, unsigned poly, int r) {
  unsigned prod = 0;
  for (int i = 0; i < r; ++i)
    if (b & (1u << i)) prod ^= static_cast<unsigned>(a) << i;
  for (int i = 2 * r - 2; i >= r; --i)
    if (prod & (1u << i)) prod ^= poly << (i - r);
  return static_cast<GfElem>(prod);
}

bool gf_poly_irreducible(unsigned poly, int r) {
  if (poly_degree(poly) != r) return false;
  if ((poly & 1u) == 0) return false;  // x divides
  for (int d = 1; 2 * d <= r; ++d) {
    for (unsigned f = (1u << d); f < (2u << d); ++f) {
      if (poly_mod(poly, f) == 0) return false;
    }
  }
  return true;
}

GfContext GfContext::build(int degree, unsigned poly) {
  if (degree < 1 || degree > 8)
    throw std::invalid_argument("GfContext: degree must be in [1, 8]");
  unsigned q = 1u << degree;
  if ((poly & (q | 1u)) != (q | 1u) || poly >= (q << 1))
    throw std::invalid_argument("GfContext: polynomial must be monic of the given degree with nonzero constant term");
  if (!gf_poly_irreducible(poly, degree))
    throw std::invalid_argument("GfContext: polynomial is reducible");

  GfContext gf;
  gf.r_ = degree;
  gf.q_ = q;
  gf.poly_ = poly;
  gf.log_.assign(q, 0);
  gf.antilog_.assign(q - 1, 0);

  // Find a primitive element: order must be exactly q-1.
  auto factors = prime_factors(q - 1);
  GfElem gen = 0;
  for (unsigned c = (q == 2 ? 1u : 2u); c < q; ++c) {
    bool primitive = true;
    for (unsigned p : factors) {
      // c^((q-1)/p) == 1 would rule c out.
      unsigned e = (q - 1) / p;
      GfElem acc = 1;
      GfElem base = static_cast<GfElem>(c);
      while (e) {
        if (e & 1) acc = gf_clmul_reduce(acc, base, poly, degree);
        base = gf_clmul_reduce(base, base, poly, degree);
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = static_cast<GfElem>(c);
      break;
    }
  }

  GfElem x = 1;
  for (unsigned k = 0; k < q - 1; ++k) {
    gf.antilog_[k] = x;
    gf.log_[x] = static_cast<GfElem>(k);
    x = gf_clmul_reduce(x, gen, poly, degree);
  }
  return gf;
}

GfElem GfContext::inv(GfElem a) const {
  if (a == 0) throw std::domain_error("GfContext::inv: zero has no inverse");
  return antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GfElem GfContext::pow(GfElem a, unsigned e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  unsigned k = (static_cast<unsigned>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  return antilog_[k];
}

}  // namespace nbpolar

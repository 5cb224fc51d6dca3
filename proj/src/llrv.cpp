#include "nbpolar/llrv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nbpolar {

namespace {

bool power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Work buffers sized for the largest supported field.
constexpr size_t kMaxQ = 256;

}  // namespace

void wht_inplace(std::span<double> v) {
  if (!power_of_two(v.size()))
    throw std::invalid_argument("wht: length must be a power of two");
  for (size_t h = 1; h < v.size(); h <<= 1) {
    for (size_t i = 0; i < v.size(); i += h << 1) {
      for (size_t j = i; j < i + h; ++j) {
        double a = v[j];
        double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

std::vector<double> wht(std::vector<double> v) {
  wht_inplace(v);
  return v;
}

void normalize_inplace(std::span<double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m))
    throw std::domain_error("normalize: no finite entry");
  for (double& x : v) x = std::max(x - m, -kLlrClamp);
}

Llrv normalize(Llrv v) {
  normalize_inplace(v);
  return v;
}

void quantize_llrv_inplace(std::span<double> v, const QuantConfig& quant) {
  if (!quant.enabled) return;
  for (double& x : v) {
    double k = std::round(-x / quant.llrv_step);
    x = -std::min(k, 255.0) * quant.llrv_step;
  }
}

double quantize_pm(double pm, const QuantConfig& quant) {
  if (!quant.enabled) return pm;
  double k = std::round(pm / quant.pm_step);
  k = std::clamp(k, -32767.0, 32767.0);
  return k * quant.pm_step;
}

void affine_permute_into(const GfContext& gf, std::span<const double> in,
                         GfElem g, GfElem offset, std::span<double> out) {
  if (g == 0)
    throw std::invalid_argument("affine_permute: g must be nonzero");
  const unsigned q = gf.order();
  if (in.size() != q || out.size() != q)
    throw std::invalid_argument("affine_permute: length mismatch");
  for (unsigned t = 0; t < q; ++t)
    out[t] = in[GfContext::add(gf.mul(g, static_cast<GfElem>(t)), offset)];
}

Llrv affine_permute(const GfContext& gf, const Llrv& in, GfElem g,
                    GfElem offset) {
  Llrv out(in.size());
  affine_permute_into(gf, in, g, offset, out);
  return out;
}

void f_node(const GfContext& gf, KernelCoeffs k, std::span<const double> l1,
            std::span<const double> l2, std::span<double> out) {
  const unsigned q = gf.order();
  double pa[kMaxQ];
  double pb[kMaxQ];
  // Align the second factor so the sum becomes a plain XOR convolution:
  // with w = alpha*u1 the second index is (beta*alpha^-1)*w.
  GfElem g = gf.mul(k.beta, gf.inv(k.alpha));
  for (unsigned t = 0; t < q; ++t) pa[t] = std::exp(l1[t]);
  for (unsigned t = 0; t < q; ++t)
    pb[t] = std::exp(l2[gf.mul(g, static_cast<GfElem>(t))]);
  wht_inplace({pa, q});
  wht_inplace({pb, q});
  for (unsigned t = 0; t < q; ++t) pa[t] *= pb[t];
  wht_inplace({pa, q});  // q times the convolution; scale washes out below
  for (unsigned t = 0; t < q; ++t)
    out[t] = std::log(std::max(pa[t], kProbFloor));
  normalize_inplace(out);
}

void g_node(const GfContext& gf, KernelCoeffs k, std::span<const double> l1,
            std::span<const double> l2, GfElem mu, std::span<double> out) {
  const unsigned q = gf.order();
  for (unsigned t = 0; t < q; ++t) {
    GfElem i1 = GfContext::add(gf.mul(k.alpha, static_cast<GfElem>(t)), mu);
    GfElem i2 = gf.mul(k.beta, static_cast<GfElem>(t));
    out[t] = l1[i1] + l2[i2];
  }
  normalize_inplace(out);
}

Llrv f_node(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
            const Llrv& l2) {
  Llrv out(gf.order());
  f_node(gf, k, l1, l2, out);
  return out;
}

Llrv g_node(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
            const Llrv& l2, GfElem mu) {
  Llrv out(gf.order());
  g_node(gf, k, l1, l2, mu, out);
  return out;
}

Llrv node_oracle(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
                 const Llrv& l2, std::optional<GfElem> mu) {
  const unsigned q = gf.order();
  Llrv out(q);
  if (mu) {
    for (unsigned t = 0; t < q; ++t) {
      GfElem i1 = GfContext::add(gf.mul(k.alpha, static_cast<GfElem>(t)), *mu);
      GfElem i2 = gf.mul(k.beta, static_cast<GfElem>(t));
      double p = std::exp(l1[i1]) * std::exp(l2[i2]);
      out[t] = std::log(std::max(p, kProbFloor));
    }
  } else {
    for (unsigned u0 = 0; u0 < q; ++u0) {
      double acc = 0.0;
      for (unsigned u1 = 0; u1 < q; ++u1) {
        GfElem i1 = GfContext::add(static_cast<GfElem>(u0),
                                   gf.mul(k.alpha, static_cast<GfElem>(u1)));
        GfElem i2 = gf.mul(k.beta, static_cast<GfElem>(u1));
        acc += std::exp(l1[i1]) * std::exp(l2[i2]);
      }
      out[u0] = std::log(std::max(acc, kProbFloor));
    }
  }
  normalize_inplace(out);
  return out;
}

}  // namespace nbpolar

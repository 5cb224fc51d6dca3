#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nbpolar/gf.hpp"

namespace nbpolar {

// Length-q vector of log-likelihoods for one GF(q) symbol, natural-log
// domain. Normalized form: max entry 0, all entries in [-kLlrClamp, 0].
using Llrv = std::vector<double>;

// Log-domain floor after normalization.
inline constexpr double kLlrClamp = 80.0;
// Probability floor applied before taking logs, to keep -inf out.
inline constexpr double kProbFloor = 1e-30;

struct KernelCoeffs {
  GfElem alpha = 1;
  GfElem beta = 1;
};

// Optional fixed-point emulation: LLRV entries snap to an 8-bit grid
// (values -255*step/2 .. 0 in steps of llrv_step after normalization) and
// path metrics to a saturating 16-bit grid of pm_step.
struct QuantConfig {
  bool enabled = false;
  double llrv_step = kLlrClamp / 255.0;
  double pm_step = kLlrClamp / 255.0;
};

// Unnormalized fast Walsh-Hadamard transform in place; length must be a
// power of two. Applying it twice multiplies by the length.
void wht_inplace(std::span<double> v);
std::vector<double> wht(std::vector<double> v);

// Subtract the max so the peak sits at 0, then clamp below -kLlrClamp.
// Throws std::domain_error when no finite entry exists.
void normalize_inplace(std::span<double> v);
Llrv normalize(Llrv v);

void quantize_llrv_inplace(std::span<double> v, const QuantConfig& quant);
double quantize_pm(double pm, const QuantConfig& quant);

// out[t] = in[g*t + offset] over GF(q); g must be nonzero so the index map
// is a bijection.
void affine_permute_into(const GfContext& gf, std::span<const double> in,
                         GfElem g, GfElem offset, std::span<double> out);
Llrv affine_permute(const GfContext& gf, const Llrv& in, GfElem g,
                    GfElem offset);

// Check-direction trellis node: output proportional to
//   p(u0) = sum_{u1} p1(u0 ^ alpha*u1) * p2(beta*u1),
// evaluated exactly in the probability domain via WHT (XOR convolution),
// then re-normalized. Inputs must be normalized LLRVs of length q.
void f_node(const GfContext& gf, KernelCoeffs k, std::span<const double> l1,
            std::span<const double> l2, std::span<double> out);

// Conditioned node: output proportional to
//   p(u1) = p1(mu ^ alpha*u1) * p2(beta*u1),
// i.e. two index permutations plus a log-domain add, then normalization.
void g_node(const GfContext& gf, KernelCoeffs k, std::span<const double> l1,
            std::span<const double> l2, GfElem mu, std::span<double> out);

Llrv f_node(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
            const Llrv& l2);
Llrv g_node(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
            const Llrv& l2, GfElem mu);

// Brute-force reference for f_node (no mu) and g_node (with mu): direct
// O(q^2) / O(q) evaluation of the defining sums in the probability domain.
// Kept free of the WHT/permutation path so the two routes are independent.
Llrv node_oracle(const GfContext& gf, KernelCoeffs k, const Llrv& l1,
                 const Llrv& l2, std::optional<GfElem> mu);

}  // namespace nbpolar

#include "nbpolar/code.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nbpolar {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int ilog2(int n) {
  int d = 0;
  while ((1 << d) < n) ++d;
  return d;
}

}  // namespace

void CodeSpec::validate() const {
  if (!power_of_two(N)) throw std::invalid_argument("CodeSpec: N must be a power of two");
  if (K < 0 || K > N) throw std::invalid_argument("CodeSpec: K out of range");
  if (n != ilog2(N)) throw std::invalid_argument("CodeSpec: n != log2(N)");
  if (kernel.alpha == 0 || kernel.beta == 0 ||
      kernel.alpha >= field.order() || kernel.beta >= field.order())
    throw std::invalid_argument("CodeSpec: kernel coefficients must be nonzero field elements");
  if (frozen.size() != static_cast<size_t>(N) ||
      frozen_value.size() != static_cast<size_t>(N))
    throw std::invalid_argument("CodeSpec: frozen arrays must have length N");
  int frozen_count = 0;
  for (int i = 0; i < N; ++i) {
    if (frozen[i]) ++frozen_count;
    if (frozen_value[i] >= field.order())
      throw std::invalid_argument("CodeSpec: frozen value outside field");
  }
  if (frozen_count != N - K)
    throw std::invalid_argument("CodeSpec: frozen count != N-K");
}

CodeSpec make_code(int N, int K, GfContext field, KernelCoeffs kernel,
                   std::vector<std::uint8_t> frozen,
                   std::vector<GfElem> frozen_value) {
  CodeSpec code;
  code.N = N;
  code.K = K;
  code.n = ilog2(N);
  code.field = std::move(field);
  code.kernel = kernel;
  code.frozen = std::move(frozen);
  code.frozen_value = std::move(frozen_value);
  code.validate();
  return code;
}

std::vector<GfElem> encode(const CodeSpec& code, const std::vector<GfElem>& u,
                           bool enforce_frozen) {
  if (u.size() != static_cast<size_t>(code.N))
    throw std::invalid_argument("encode: input length != N");
  if (enforce_frozen) {
    for (int i = 0; i < code.N; ++i)
      if (code.is_frozen(i) && u[i] != code.frozen_value[i])
        throw std::invalid_argument("encode: frozen value violated");
  }
  const GfContext& gf = code.field;
  const GfElem a = code.kernel.alpha;
  const GfElem b = code.kernel.beta;
  std::vector<GfElem> c = u;
  for (int len = code.N; len >= 2; len /= 2) {
    int half = len / 2;
    for (int s = 0; s < code.N; s += len) {
      for (int j = s; j < s + half; ++j) {
        GfElem lo = c[j];
        GfElem hi = c[j + half];
        c[j] = GfContext::add(lo, gf.mul(a, hi));
        c[j + half] = gf.mul(b, hi);
      }
    }
  }
  return c;
}

std::vector<GfElem> expand_message(const CodeSpec& code,
                                   const std::vector<GfElem>& message) {
  if (message.size() != static_cast<size_t>(code.K))
    throw std::invalid_argument("expand_message: length != K");
  std::vector<GfElem> u(code.N);
  size_t m = 0;
  for (int i = 0; i < code.N; ++i)
    u[i] = code.is_frozen(i) ? code.frozen_value[i] : message[m++];
  return u;
}

std::vector<GfElem> extract_message(const CodeSpec& code,
                                    const std::vector<GfElem>& u) {
  std::vector<GfElem> msg;
  msg.reserve(code.K);
  for (int i = 0; i < code.N; ++i)
    if (!code.is_frozen(i)) msg.push_back(u[i]);
  return msg;
}

GfMatrix gf_identity(int n) {
  GfMatrix m;
  m.rows = m.cols = n;
  m.a.assign(static_cast<size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

GfMatrix gf_mat_invert(const GfContext& gf, const GfMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("gf_mat_invert: not square");
  int n = m.rows;
  GfMatrix work = m;
  GfMatrix inv = gf_identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (work.at(r, col) != 0) { pivot = r; break; }
    if (pivot < 0) throw std::invalid_argument("gf_mat_invert: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(work.at(pivot, c), work.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    GfElem d = gf.inv(work.at(col, col));
    for (int c = 0; c < n; ++c) {
      work.at(col, c) = gf.mul(work.at(col, c), d);
      inv.at(col, c) = gf.mul(inv.at(col, c), d);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work.at(r, col) == 0) continue;
      GfElem f = work.at(r, col);
      for (int c = 0; c < n; ++c) {
        work.at(r, c) = GfContext::add(work.at(r, c), gf.mul(f, work.at(col, c)));
        inv.at(r, c) = GfContext::add(inv.at(r, c), gf.mul(f, inv.at(col, c)));
      }
    }
  }
  return inv;
}

std::vector<GfElem> gf_mat_apply(const GfContext& gf, const GfMatrix& m,
                                 const std::vector<GfElem>& v) {
  if (v.size() != static_cast<size_t>(m.cols))
    throw std::invalid_argument("gf_mat_apply: size mismatch");
  std::vector<GfElem> out(static_cast<size_t>(m.rows), 0);
  for (int r = 0; r < m.rows; ++r) {
    GfElem acc = 0;
    for (int c = 0; c < m.cols; ++c)
      acc = GfContext::add(acc, gf.mul(m.at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

namespace {

// Recursive stream derivation: one split step pairs position i with
// position i + len/2 through the kernel, then recurses into both halves.
void derive_streams(const GfContext& gf, KernelCoeffs k,
                    const std::vector<GfElem>& u, int m,
                    std::vector<std::vector<GfElem>>& out) {
  if (m == 1) {
    out.push_back(u);
    return;
  }
  size_t half = u.size() / 2;
  std::vector<GfElem> va(half), vb(half);
  for (size_t i = 0; i < half; ++i) {
    va[i] = GfContext::add(u[i], gf.mul(k.alpha, u[i + half]));
    vb[i] = gf.mul(k.beta, u[i + half]);
  }
  derive_streams(gf, k, va, m / 2, out);
  derive_streams(gf, k, vb, m / 2, out);
}

}  // namespace

std::vector<std::vector<GfElem>> split_streams(const SplitSpec& split,
                                               const std::vector<GfElem>& u) {
  if (u.size() != static_cast<size_t>(split.original.N))
    throw std::invalid_argument("split_streams: length != N");
  std::vector<std::vector<GfElem>> out;
  out.reserve(static_cast<size_t>(split.M));
  derive_streams(split.original.field, split.original.kernel, u, split.M, out);
  return out;
}

std::vector<GfElem> merge_streams(const SplitSpec& split,
                                  const std::vector<std::vector<GfElem>>& w) {
  const GfContext& gf = split.original.field;
  int levels = split.levels();
  std::vector<GfElem> u(static_cast<size_t>(split.original.N), 0);
  std::vector<GfElem> wv(static_cast<size_t>(split.M));
  for (int i = 0; i < levels; ++i) {
    for (int j = 0; j < split.M; ++j) wv[j] = w[j][i];
    std::vector<GfElem> mu = gf_mat_apply(gf, split.T_inv, wv);
    for (int k = 0; k < split.M; ++k) u[split.original_index(i, k)] = mu[k];
  }
  return u;
}

bool SplitSpec::level_all_frozen(int level) const {
  for (int j = 0; j < M; ++j)
    if (!subcodes[j].is_frozen(level)) return false;
  return true;
}

std::vector<std::uint8_t> SplitSpec::level_bypass_pattern() const {
  std::vector<std::uint8_t> out(static_cast<size_t>(levels()));
  for (int i = 0; i < levels(); ++i) out[i] = level_all_frozen(i) ? 1 : 0;
  return out;
}

SplitSpec split_code(const CodeSpec& code, int M) {
  if (M != 2 && M != 4)
    throw std::invalid_argument("split_code: M must be 2 or 4");
  if (M >= code.N)
    throw std::invalid_argument("split_code: M must be smaller than N");

  SplitSpec split;
  split.original = code;
  split.M = M;

  const GfContext& gf = code.field;
  int levels = code.N / M;

  // T columns from unit vectors: stream values at level 0 when a single
  // original symbol u[k * N/M] is set to 1.
  split.T.rows = split.T.cols = M;
  split.T.a.assign(static_cast<size_t>(M * M), 0);
  for (int k = 0; k < M; ++k) {
    std::vector<GfElem> u(static_cast<size_t>(code.N), 0);
    u[static_cast<size_t>(k * levels)] = 1;
    std::vector<std::vector<GfElem>> streams;
    derive_streams(gf, code.kernel, u, M, streams);
    for (int j = 0; j < M; ++j) split.T.at(j, k) = streams[j][0];
  }
  split.T_inv = gf_mat_invert(gf, split.T);

  // Local frozen rule: stream j at level i is decidable locally exactly
  // when every original symbol it touches is frozen.
  split.subcodes.reserve(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    std::vector<std::uint8_t> frozen(static_cast<size_t>(levels), 0);
    std::vector<GfElem> value(static_cast<size_t>(levels), 0);
    int k_local = levels;
    for (int i = 0; i < levels; ++i) {
      bool decidable = true;
      GfElem sigma = 0;
      for (int k = 0; k < M; ++k) {
        GfElem t = split.T.at(j, k);
        if (t == 0) continue;
        int idx = i + k * levels;
        if (!code.is_frozen(idx)) {
          decidable = false;
          break;
        }
        sigma = GfContext::add(sigma, gf.mul(t, code.frozen_value[idx]));
      }
      if (decidable) {
        frozen[i] = 1;
        value[i] = sigma;
        --k_local;
      }
    }
    split.subcodes.push_back(make_code(levels, k_local, gf, code.kernel,
                                       std::move(frozen), std::move(value)));
  }
  return split;
}

void save_code(const CodeSpec& code, std::ostream& os) {
  os << code.N << ' ' << code.K << ' ' << code.field.order() << ' '
     << code.kernel.alpha << ' ' << code.kernel.beta << ' '
     << code.field.poly() << '\n';
  for (int i = 0; i < code.N; ++i)
    if (code.is_frozen(i)) os << i << ' ' << code.frozen_value[i] << '\n';
}

void save_code_file(const CodeSpec& code, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_code(code, os);
}

CodeSpec load_code(std::istream& is) {
  int N = 0, K = 0;
  unsigned q = 0, alpha = 0, beta = 0, poly = 0;
  if (!(is >> N >> K >> q >> alpha >> beta >> poly))
    throw std::runtime_error("load_code: malformed header");
  if (!power_of_two(static_cast<int>(q)))
    throw std::runtime_error("load_code: q must be a power of two");
  GfContext field = GfContext::build(ilog2(static_cast<int>(q)), poly);
  std::vector<std::uint8_t> frozen(static_cast<size_t>(N), 0);
  std::vector<GfElem> value(static_cast<size_t>(N), 0);
  int idx = 0;
  unsigned val = 0;
  int count = 0;
  while (is >> idx >> val) {
    if (idx < 0 || idx >= N) throw std::runtime_error("load_code: index out of range");
    if (val >= q) throw std::runtime_error("load_code: frozen value outside field");
    if (!frozen[idx]) ++count;
    frozen[static_cast<size_t>(idx)] = 1;
    value[static_cast<size_t>(idx)] = static_cast<GfElem>(val);
  }
  if (count != N - K) throw std::runtime_error("load_code: frozen line count != N-K");
  return make_code(N, K, std::move(field),
                   {static_cast<GfElem>(alpha), static_cast<GfElem>(beta)},
                   std::move(frozen), std::move(value));
}

CodeSpec load_code_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open code file: " + path);
  return load_code(is);
}

}  // namespace nbpolar

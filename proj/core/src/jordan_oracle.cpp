#include "repring/jordan_oracle.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "repring/ring.hpp"

namespace repring {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long pow_long(long p, int n) {
  long r = 1;
  while (n-- > 0) r *= p;
  return r;
}

// Binomial coefficients C(s, 0..s) mod p.
std::vector<std::uint32_t> binom_row_mod(int s, long p) {
  std::vector<std::uint32_t> row(s + 1);
  row[0] = 1;
  std::vector<std::uint64_t> prev(s + 1, 0), cur(s + 1, 0);
  prev[0] = 1;
  for (int r = 1; r <= s; ++r) {
    cur[0] = 1;
    for (int k = 1; k <= r; ++k)
      cur[k] = (prev[k] + (k >= 1 ? prev[k - 1] : 0)) % p;
    std::swap(prev, cur);
  }
  for (int k = 0; k <= s; ++k) row[k] = static_cast<std::uint32_t>(prev[k]);
  return row;
}

std::uint32_t inv_mod(std::uint32_t a, long p) {
  // p is a small prime
  std::uint64_t r = 1, b = a % p;
  long e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

int rank_mod_p(std::vector<std::vector<std::uint32_t>>& m, long p) {
  // forward elimination only, lazy reduction: entries are kept as residues
  // after each full-row normalisation, eliminations accumulate in uint64
  // without intermediate mods (p <= 127 keeps products far below overflow)
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<std::uint64_t>> w(rows);
  for (int r = 0; r < rows; ++r) w[r].assign(m[r].begin(), m[r].end());
  const std::uint64_t up = static_cast<std::uint64_t>(p);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      w[r][c] %= up;
      if (w[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(w[rank], w[piv]);
    auto& prow = w[rank];
    std::uint64_t inv = inv_mod(static_cast<std::uint32_t>(prow[c] % up), p);
    for (int k = c; k < cols; ++k) prow[k] = prow[k] % up * inv % up;
    for (int r = rank + 1; r < rows; ++r) {
      std::uint64_t v = w[r][c] % up;
      if (v == 0) {
        w[r][c] = 0;
        continue;
      }
      std::uint64_t f = up - v;
      std::uint64_t* row = w[r].data();
      const std::uint64_t* pr = prow.data();
      // no interior mods: increments stay below (p-1)^2 per pivot and at
      // most min(rows, cols) pivots touch a cell, far from overflow
      for (int k = c; k < cols; ++k) row[k] += f * pr[k];
    }
    ++rank;
  }
  return rank;
}

// rank over F_p of the matrix [C(s, j - i)] with i in [r0, r1], j in [c0, c1]
// (inclusive); only the offset c0 - r0 and the interval lengths matter.
struct PascalRankCache {
  long p;
  std::unordered_map<std::uint64_t, int> memo;
  std::map<int, std::vector<std::uint32_t>> rows;

  const std::vector<std::uint32_t>& binomials(int s) {
    auto it = rows.find(s);
    if (it == rows.end()) it = rows.emplace(s, binom_row_mod(s, p)).first;
    return it->second;
  }

  int rank(int s, int nrows, int ncols, int offset,
           const std::vector<std::uint32_t>& binrow) {
    if (nrows <= 0 || ncols <= 0) return 0;
    // entry (r, c) is C(s, offset + c - r). For offset <= 0 the columns
    // left of -offset vanish and the C(s,0) = 1 diagonal makes the rest
    // unitriangular; for offset >= s the mirror holds with C(s,s) = 1.
    if (offset <= 0) return std::max(0, std::min(nrows, ncols + offset));
    if (offset >= s)
      return std::max(0, std::min(nrows - (offset - s), ncols));
    // transpose-reverse symmetry: rank(s,R,C,off) = rank(s,C,R,off+C-R);
    // take the closed form if either orientation leaves the band
    {
      int off2 = offset + ncols - nrows;
      if (off2 <= 0) return std::max(0, std::min(ncols, nrows + off2));
      if (off2 >= s)
        return std::max(0, std::min(ncols - (off2 - s), nrows));
    }
    int R = nrows, C = ncols, off = offset;
    if (R > C) {
      std::swap(R, C);
      off = offset + ncols - nrows;
    }
    // key packing bounds: windows and offsets stay below 2^13 / 2^14 for
    // any a, b up to several thousand; s below 2^24
    std::uint64_t key = (static_cast<std::uint64_t>(s) << 40) |
                        (static_cast<std::uint64_t>(R & 0x1fff) << 27) |
                        (static_cast<std::uint64_t>(C & 0x1fff) << 14) |
                        static_cast<std::uint64_t>(off & 0x3fff);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<std::uint32_t>> m(
        R, std::vector<std::uint32_t>(C, 0));
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c) {
        int k = off + c - r;
        if (k >= 0 && k <= s) m[r][c] = binrow[k];
      }
    int rk = rank_mod_p(m, p);
    memo.emplace(key, rk);
    return rk;
  }
};

thread_local std::map<long, PascalRankCache> g_cache;

// nullity of multiplication by (u+t)^s on F_p[u,t]/(u^a, t^b)
int graded_nullity(int a, int b, int s, PascalRankCache& cache,
                   const std::vector<std::uint32_t>& binrow) {
  const int dmax = a + b - 2;
  int null = 0;
  for (int d = 0; d <= dmax; ++d) {
    // monomials u^i t^(d-i) with 0 <= i < a, 0 <= d-i < b
    int r0 = std::max(0, d - b + 1), r1 = std::min(a - 1, d);
    int nrows = r1 - r0 + 1;
    if (nrows <= 0) continue;
    int dd = d + s;
    int c0 = std::max(0, dd - b + 1), c1 = std::min(a - 1, dd);
    int ncols = c1 - c0 + 1;
    int rk = ncols <= 0 ? 0 : cache.rank(s, nrows, ncols, c0 - r0, binrow);
    null += nrows - rk;
  }
  return null;
}

std::vector<std::pair<int, int>> type_from_nullities(
    const std::vector<int>& nullity) {
  // nullity[s] = sum_i min(s, lambda_i); jumps give counts of blocks >= s.
  std::vector<std::pair<int, int>> type;
  const int smax = static_cast<int>(nullity.size()) - 1;
  for (int s = 1; s <= smax; ++s) {
    int ge_s = nullity[s] - nullity[s - 1];
    int ge_s1 = s < smax ? nullity[s + 1] - nullity[s] : 0;
    int exactly = ge_s - ge_s1;
    if (exactly > 0) type.emplace_back(s, exactly);
  }
  std::reverse(type.begin(), type.end());
  return type;
}

}  // namespace

std::vector<std::pair<int, int>> jordan_tensor_type(long p, int n, int a,
                                                    int b) {
  if (!is_prime(p)) throw RingError(Err::NotPrime, "p must be prime");
  const long pn = pow_long(p, n);
  if (a < 1 || b < 1 || a > pn || b > pn)
    throw RingError(Err::OutOfRange, "block lengths must lie in 1..p^n");
  if (std::min(a, b) >= 8192)
    throw RingError(Err::CapExceeded,
                    "tensor factors beyond the supported window size");
  auto& cache = g_cache[p];
  cache.p = p;
  const int smax = static_cast<int>(std::min<long>(a + b - 1, pn));
  std::vector<int> nullity(smax + 2, 0);
  for (int s = 1; s <= smax + 1; ++s) {
    if (s > smax) {
      nullity[s] = a * b;
      break;
    }
    const auto& binrow = cache.binomials(s);
    nullity[s] = graded_nullity(a, b, s, cache, binrow);
    if (nullity[s] == a * b) {
      for (int t = s + 1; t <= smax + 1; ++t) nullity[t] = a * b;
      break;
    }
  }
  return type_from_nullities(nullity);
}

std::vector<std::pair<int, int>> jordan_tensor_type_dense(long p, int n, int a,
                                                          int b) {
  if (!is_prime(p)) throw RingError(Err::NotPrime, "p must be prime");
  const long pn = pow_long(p, n);
  if (a < 1 || b < 1 || a > pn || b > pn)
    throw RingError(Err::OutOfRange, "block lengths must lie in 1..p^n");
  const int dim = a * b;
  auto idx = [b](int i, int j) { return i * b + j; };
  // matrix of w = u + v + uv acting on monomials u^i v^j
  std::vector<std::vector<std::uint32_t>> w(
      dim, std::vector<std::uint32_t>(dim, 0));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      if (i + 1 < a) w[idx(i + 1, j)][idx(i, j)] = 1;
      if (j + 1 < b) w[idx(i, j + 1)][idx(i, j)] = 1;
      if (i + 1 < a && j + 1 < b) w[idx(i + 1, j + 1)][idx(i, j)] = 1;
    }
  const int smax = static_cast<int>(std::min<long>(a + b - 1, pn));
  std::vector<int> nullity(smax + 2, 0);
  std::vector<std::vector<std::uint32_t>> pw(
      dim, std::vector<std::uint32_t>(dim, 0));
  for (int i = 0; i < dim; ++i) pw[i][i] = 1;
  for (int s = 1; s <= smax + 1; ++s) {
    // pw <- w * pw
    std::vector<std::vector<std::uint32_t>> nx(
        dim, std::vector<std::uint32_t>(dim, 0));
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        if (w[i][k] == 0) continue;
        std::uint64_t f = w[i][k];
        for (int j = 0; j < dim; ++j)
          nx[i][j] =
              static_cast<std::uint32_t>((nx[i][j] + f * pw[k][j]) % p);
      }
    pw = std::move(nx);
    auto copy = pw;
    nullity[s] = dim - rank_mod_p(copy, p);
    if (nullity[s] == dim) {
      for (int t = s + 1; t <= smax + 1; ++t) nullity[t] = dim;
      break;
    }
  }
  return type_from_nullities(nullity);
}

}  // namespace repring

#include "bifib/elimination.hpp"

#include <map>

#include "bifib/errors.hpp"

namespace bifib {

namespace {

constexpr uint64_t P61 = 2305843009213693951ULL;  // 2^61 - 1
constexpr uint64_t P31 = 2147483647ULL;           // 2^31 - 1

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t bigint_mod(const BigInt& x, uint64_t p) {
  BigInt r = x % BigInt(p);
  if (r < 0) r += BigInt(p);
  return r.convert_to<uint64_t>();
}

uint64_t det_mod_p(std::vector<std::vector<uint64_t>> m, uint64_t p) {
  size_t n = m.size();
  uint64_t det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = p - det;
    }
    det = mulmod(det, m[col][col], p);
    uint64_t inv = powmod(m[col][col], p - 2, p);
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      uint64_t f = mulmod(m[r][col], inv, p);
      for (size_t c = col; c < n; ++c) {
        uint64_t sub = mulmod(f, m[col][c], p);
        m[r][c] = m[r][c] >= sub ? m[r][c] - sub : m[r][c] + p - sub;
      }
    }
  }
  return det;
}

void enum_monos_rec(int arity, int deg, int pos, Mono& cur, std::vector<Mono>& out) {
  if (pos == arity - 1) {
    cur.e[pos] = static_cast<uint16_t>(deg);
    out.push_back(cur);
    cur.e[pos] = 0;
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur.e[pos] = static_cast<uint16_t>(e);
    enum_monos_rec(arity, deg - e, pos + 1, cur, out);
  }
  cur.e[pos] = 0;
}

// scale a form to integer coefficients (common denominator); harmless for the
// vanishing locus
std::vector<std::pair<Mono, BigInt>> integer_terms(const MultiPoly& f) {
  BigInt den(1);
  for (const auto& [m, q] : f.terms()) den = lcm(den, denominator(q));
  std::vector<std::pair<Mono, BigInt>> out;
  for (const auto& [m, q] : f.terms())
    out.emplace_back(m, numerator(q) * (den / denominator(q)));
  return out;
}

int reduced_count(const Mono& mu, const std::vector<int>& degs, int arity) {
  int k = 0;
  for (int i = 0; i < arity; ++i)
    if (mu.e[i] >= degs[i]) ++k;
  return k;
}

std::vector<std::vector<BigInt>> macaulay_build(const std::vector<MultiPoly>& g,
                                                const std::vector<int>& degs, int arity,
                                                bool minor_only) {
  int t = 1;
  for (int d : degs) t += d - 1;
  std::vector<Mono> monos;
  for (const Mono& mu : monomials_of_degree(arity, t))
    if (!minor_only || reduced_count(mu, degs, arity) >= 2) monos.push_back(mu);
  std::map<Mono, int> col;
  for (size_t i = 0; i < monos.size(); ++i) col[monos[i]] = static_cast<int>(i);
  size_t n = monos.size();
  std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n, BigInt(0)));
  std::vector<std::vector<std::pair<Mono, BigInt>>> gi;
  gi.reserve(g.size());
  for (const auto& f : g) gi.push_back(integer_terms(f));
  for (size_t r = 0; r < n; ++r) {
    const Mono& mu = monos[r];
    int pick = -1;
    for (int i = 0; i < arity; ++i)
      if (mu.e[i] >= degs[i]) {
        pick = i;
        break;
      }
    if (pick < 0) throw internal_consistency_error("macaulay row without an admissible divisor");
    for (const auto& [m, c] : gi[static_cast<size_t>(pick)]) {
      Mono nm = mu;
      nm.e[pick] = static_cast<uint16_t>(nm.e[pick] - degs[static_cast<size_t>(pick)]);
      for (int v = 0; v < arity; ++v) nm.e[v] = static_cast<uint16_t>(nm.e[v] + m.e[v]);
      auto it = col.find(nm);
      // products of minor monomials with the row content can leave the minor
      // index set only when the content is not the designated leading power;
      // those columns are outside the minor and are dropped
      if (it == col.end()) {
        if (!minor_only)
          throw internal_consistency_error("macaulay column outside the full monomial set");
        continue;
      }
      M[r][static_cast<size_t>(it->second)] += c;
    }
  }
  return M;
}

}  // namespace

std::vector<Mono> monomials_of_degree(int arity, int deg) {
  std::vector<Mono> out;
  Mono cur;
  enum_monos_rec(arity, deg, 0, cur, out);
  return out;
}

std::vector<std::vector<BigInt>> macaulay_matrix(const std::vector<MultiPoly>& g,
                                                 const std::vector<int>& degs, int arity) {
  return macaulay_build(g, degs, arity, false);
}

std::vector<std::vector<BigInt>> macaulay_minor(const std::vector<MultiPoly>& g,
                                                const std::vector<int>& degs, int arity) {
  return macaulay_build(g, degs, arity, true);
}

BigInt det_bareiss_int(std::vector<std::vector<BigInt>> m) {
  size_t n = m.size();
  if (n == 0) return BigInt(1);
  BigInt prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return BigInt(0);
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = t / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

bool det_nonzero_mod(const std::vector<std::vector<BigInt>>& M) {
  for (uint64_t p : {P61, P31}) {
    std::vector<std::vector<uint64_t>> mm(M.size(), std::vector<uint64_t>(M.size()));
    for (size_t i = 0; i < M.size(); ++i)
      for (size_t j = 0; j < M.size(); ++j) mm[i][j] = bigint_mod(M[i][j], p);
    if (det_mod_p(std::move(mm), p) != 0) return true;
  }
  return false;
}

}  // namespace bifib

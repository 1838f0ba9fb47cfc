#include "hopfkit/qgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "hopfkit/integrals.hpp"
#include "hopfkit/matrix.hpp"

namespace hopfkit {

namespace {

// ---------------------------------------------------------------------------
// Cartan data and root systems.

mpq_class leading_minor_det(const std::vector<std::vector<int>>& a, size_t k) {
  std::vector<std::vector<mpq_class>> m(k, std::vector<mpq_class>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) m[i][j] = a[i][j];
  mpq_class det = 1;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < k; ++r) {
      mpq_class f = m[r][col] / m[col][col];
      for (size_t j = col; j < k; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace

CartanDatum CartanDatum::make(char type, unsigned rank) {
  std::vector<std::pair<unsigned, unsigned>> edges;  // 1-based node pairs
  switch (type) {
    case 'A':
      if (rank < 1) throw QGroupError("type A requires rank >= 1");
      for (unsigned i = 1; i < rank; ++i) edges.push_back({i, i + 1});
      break;
    case 'D':
      if (rank < 4) throw QGroupError("type D requires rank >= 4");
      for (unsigned i = 1; i + 1 < rank; ++i) edges.push_back({i, i + 1});
      edges.push_back({rank - 2, rank});
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw QGroupError("type E requires rank 6..8");
      for (unsigned i = 1; i + 1 < rank; ++i) edges.push_back({i, i + 1});
      edges.push_back({3, rank});
      break;
    default:
      throw QGroupError(std::string("unknown Cartan type '") + type + "'");
  }
  CartanDatum d;
  d.type = type;
  d.rank = rank;
  d.a.assign(rank, std::vector<int>(rank, 0));
  for (unsigned i = 0; i < rank; ++i) d.a[i][i] = 2;
  for (auto [u, v] : edges) {
    d.a[u - 1][v - 1] = -1;
    d.a[v - 1][u - 1] = -1;
  }
  for (size_t k = 1; k <= rank; ++k)
    if (leading_minor_det(d.a, k) <= 0)
      throw QGroupError("Cartan matrix is not positive definite");
  return d;
}

namespace {

// s_i(v) = v - (sum_j a_ij v_j) e_i, coordinates in the simple basis.
std::vector<int> reflect(const CartanDatum& d, unsigned i,
                         std::vector<int> v) {
  int s = 0;
  for (unsigned j = 0; j < d.rank; ++j) s += d.a[i][j] * v[j];
  v[i] -= s;
  return v;
}

bool is_positive(const std::vector<int>& v) {
  bool nonzero = false;
  for (int c : v) {
    if (c < 0) return false;
    if (c > 0) nonzero = true;
  }
  return nonzero;
}

}  // namespace

RootSystem root_system(const CartanDatum& d) {
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> queue;
  for (unsigned i = 0; i < d.rank; ++i) {
    std::vector<int> e(d.rank, 0);
    e[i] = 1;
    all.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto v = queue.back();
    queue.pop_back();
    for (unsigned i = 0; i < d.rank; ++i) {
      auto w = reflect(d, i, v);
      if (all.insert(w).second) queue.push_back(w);
    }
  }
  RootSystem rs;
  for (const auto& v : all)
    if (is_positive(v)) rs.positive.push_back(v);
  std::sort(rs.positive.begin(), rs.positive.end());
  size_t expect = 0;
  unsigned n = d.rank;
  if (d.type == 'A') expect = size_t(n) * (n + 1) / 2;
  if (d.type == 'D') expect = size_t(n) * (n - 1);
  if (d.type == 'E') expect = (n == 6) ? 36 : (n == 7) ? 63 : 120;
  if (rs.positive.size() != expect)
    throw QGroupError("positive root count does not match the closed formula");
  rs.two_rho.assign(n, 0);
  for (const auto& v : rs.positive)
    for (unsigned i = 0; i < n; ++i) rs.two_rho[i] += v[i];
  if (d.type == 'A') {
    for (unsigned i = 0; i < n; ++i)
      if (rs.two_rho[i] != int((i + 1) * (n - i)))
        throw QGroupError("2rho does not match the type-A closed formula");
  }
  return rs;
}

std::vector<std::vector<int>> beta_sequence(const CartanDatum& d,
                                            const std::vector<int>& word,
                                            const RootSystem& rs) {
  for (int i : word)
    if (i < 1 || unsigned(i) > d.rank)
      throw QGroupError("word entry out of range");
  if (word.size() != rs.N())
    throw QGroupError("word length must equal the number of positive roots");
  std::vector<std::vector<int>> beta;
  std::set<std::vector<int>> seen;
  for (size_t k = 0; k < word.size(); ++k) {
    std::vector<int> v(d.rank, 0);
    v[word[k] - 1] = 1;
    for (size_t a = k; a-- > 0;) v = reflect(d, unsigned(word[a] - 1), v);
    if (!is_positive(v) || !seen.insert(v).second)
      throw QGroupError("word is not a reduced word for the longest element");
    beta.push_back(v);
  }
  return beta;
}

std::vector<int> default_reduced_word(const CartanDatum& d) {
  if (d.type != 'A')
    throw QGroupError("default reduced word implemented for type A only");
  std::vector<int> w;
  for (unsigned k = 1; k <= d.rank; ++k)
    for (unsigned i = k; i >= 1; --i) w.push_back(int(i));
  return w;
}

// ---------------------------------------------------------------------------
// Quantum integers.

namespace {
void require_cyclo(const FieldSpec& F) {
  if (F.kind() != FieldKind::Cyclotomic || F.N() < 3)
    throw QGroupError("quantum integers need a cyclotomic field with q^2 != 1");
}
}  // namespace

Scalar q_int(const FieldSpec& F, long k) {
  require_cyclo(F);
  Scalar num = Scalar::root_of_unity_power(F, k) -
               Scalar::root_of_unity_power(F, -k);
  Scalar den = Scalar::root_of_unity_power(F, 1) -
               Scalar::root_of_unity_power(F, -1);
  return num / den;
}

Scalar q_factorial(const FieldSpec& F, unsigned long m) {
  require_cyclo(F);
  Scalar r = Scalar::one(F);
  for (unsigned long k = 1; k <= m; ++k) r *= q_int(F, long(k));
  return r;
}

Scalar q_binom(const FieldSpec& F, unsigned long m, unsigned long k) {
  require_cyclo(F);
  if (k > m) throw QGroupError("q_binom requires k <= m");
  // Balanced Gaussian binomial via the q-Pascal recursion
  //   B(m, k) = q^k B(m-1, k) + q^{k-m} B(m-1, k-1),
  // a Laurent-polynomial identity that stays defined at roots of unity.
  std::vector<Scalar> row{Scalar::one(F)};
  for (unsigned long mm = 1; mm <= m; ++mm) {
    std::vector<Scalar> next(std::min(mm, k) + 1, Scalar::zero(F));
    for (unsigned long kk = 0; kk < next.size(); ++kk) {
      if (kk < row.size())
        next[kk] += Scalar::root_of_unity_power(F, long(kk)) * row[kk];
      if (kk >= 1 && kk - 1 < row.size())
        next[kk] += Scalar::root_of_unity_power(F, long(kk) - long(mm)) *
                    row[kk - 1];
    }
    row = std::move(next);
  }
  return row[k];
}

// ---------------------------------------------------------------------------
// CheckReport.

std::string CheckReport::text() const {
  std::ostringstream os;
  for (const auto& l : lines) os << l << "\n";
  return os.str();
}

void CheckReport::check(bool pass, const std::string& what) {
  lines.push_back((pass ? "pass: " : "FAIL: ") + what);
  ok = ok && pass;
}

// ---------------------------------------------------------------------------
// The PBW engine.

namespace {

using Word = std::vector<int>;    // simple-generator letters, 0-based
using RWord = std::vector<int>;   // root-vector letters (indices into beta)
using WordPoly = std::map<Word, Scalar>;           // one-sided word combo
using ExpPoly = std::map<std::vector<unsigned>, Scalar>;  // PBW exponents

struct MixedKey {
  Word f;
  std::vector<int> k;  // K exponents mod 2p, one per simple root
  Word e;
  bool operator<(const MixedKey& o) const {
    return std::tie(f, k, e) < std::tie(o.f, o.k, o.e);
  }
};
using Mixed = std::map<MixedKey, Scalar>;

struct CrossTerm {
  Word f;
  std::vector<int> ks;  // K exponent shift produced by the bracket
  Word e;
  Scalar c;
};

struct Cross1Term {
  Word f;
  std::vector<int> ks;
  bool keep;  // whether the crossing E letter survives
  Scalar c;
};

}  // namespace

struct UqAlgebra::Impl {
  CartanDatum datum;
  unsigned n = 1, p = 2, twop = 4;
  RootSystem rs;
  std::vector<int> word;  // 1-based, as supplied
  Word word0;             // 0-based
  std::vector<std::vector<int>> beta;
  size_t N = 0;
  FieldSpec F;
  std::vector<Scalar> qtab;           // q^r, r = 0..2p-1
  std::vector<size_t> simple_rootpos; // simple index -> position in beta
  size_t dim = 0;
  Scalar qdiff_inv;  // (q - q^{-1})^{-1}

  // Root-vector expansions into simple-generator words (E side; the F side
  // reuses the same coefficients under E_i -> F_i, K_i -> K_i^{-1}).
  std::vector<WordPoly> eroot;

  // Straightening rules E_t E_s = sum coeff * rootword, for t > s.
  std::map<std::pair<int, int>, std::vector<std::pair<RWord, Scalar>>> rules;

  // Memo tables.
  std::map<std::pair<int, Word>, std::vector<Cross1Term>> cross1_memo;
  std::map<std::pair<Word, Word>, std::vector<CrossTerm>> cross_memo;
  std::map<RWord, ExpPoly> straighten_memo;
  std::map<std::vector<unsigned>, WordPoly> expand_memo;
  std::unordered_map<uint64_t, SparseVec> mul_memo;

  // One-sided ideal slices used when deriving straightening rules, keyed by
  // multidegree.
  struct DegSpace {
    std::vector<Word> words;
    std::map<Word, size_t> windex;
    std::vector<Vec> rows;        // reduced row basis of the ideal slice
    std::vector<size_t> pivots;
  };
  std::map<std::vector<int>, DegSpace> degspaces;

  // -------------------------------------------------------------------------
  Scalar qpow(long e) const {
    long r = e % long(twop);
    if (r < 0) r += twop;
    return qtab[size_t(r)];
  }

  int cartan(int i, int j) const { return datum.a[i][j]; }

  std::vector<int> wt(const Word& w) const {
    std::vector<int> v(n, 0);
    for (int l : w) v[l]++;
    return v;
  }

  // (sum_i k_i alpha_i | nu)
  long kpair(const std::vector<int>& k, const std::vector<int>& nu) const {
    long s = 0;
    for (unsigned i = 0; i < n; ++i)
      if (k[i])
        for (unsigned j = 0; j < n; ++j) s += long(k[i]) * cartan(i, j) * nu[j];
    return s;
  }

  long simple_pair(int i, const std::vector<int>& nu) const {
    long s = 0;
    for (unsigned j = 0; j < n; ++j) s += long(cartan(i, j)) * nu[j];
    return s;
  }

  long root_pair(int r, int s) const {
    long v = 0;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        v += long(beta[r][i]) * cartan(i, j) * beta[s][j];
    return v;
  }

  std::vector<int> normk(std::vector<int> k) const {
    for (auto& v : k) {
      v %= int(twop);
      if (v < 0) v += int(twop);
    }
    return k;
  }

  // -------------------------------------------------------------------------
  // PBW index encoding: digits f[0..N-1] (base p), k[0..n-1] (base 2p),
  // e[0..N-1] (base p), least significant first.
  size_t encode(const std::vector<unsigned>& f, const std::vector<int>& k,
                const std::vector<unsigned>& e) const {
    size_t idx = 0, radix = 1;
    for (size_t r = 0; r < N; ++r) {
      idx += size_t(f[r]) * radix;
      radix *= p;
    }
    for (size_t i = 0; i < n; ++i) {
      idx += size_t(k[i]) * radix;
      radix *= twop;
    }
    for (size_t r = 0; r < N; ++r) {
      idx += size_t(e[r]) * radix;
      radix *= p;
    }
    return idx;
  }

  void decode(size_t idx, std::vector<unsigned>& f, std::vector<int>& k,
              std::vector<unsigned>& e) const {
    f.assign(N, 0);
    k.assign(n, 0);
    e.assign(N, 0);
    for (size_t r = 0; r < N; ++r) {
      f[r] = unsigned(idx % p);
      idx /= p;
    }
    for (size_t i = 0; i < n; ++i) {
      k[i] = int(idx % twop);
      idx /= twop;
    }
    for (size_t r = 0; r < N; ++r) {
      e[r] = unsigned(idx % p);
      idx /= p;
    }
  }

  size_t simple_E_index(int i) const {
    std::vector<unsigned> f(N, 0), e(N, 0);
    std::vector<int> k(n, 0);
    e[simple_rootpos[i]] = 1;
    return encode(f, k, e);
  }
  size_t simple_F_index(int i) const {
    std::vector<unsigned> f(N, 0), e(N, 0);
    std::vector<int> k(n, 0);
    f[simple_rootpos[i]] = 1;
    return encode(f, k, e);
  }
  size_t k_index(const std::vector<int>& k) const {
    std::vector<unsigned> f(N, 0), e(N, 0);
    return encode(f, normk(k), e);
  }

  // -------------------------------------------------------------------------
  // Crossing: rewriting E-word times F-word into F..K..E triangular form
  // using E_i F_j = F_j E_i + delta_ij (K_i - K_i^{-1}) / (q - q^{-1}).

  const std::vector<Cross1Term>& cross1(int i, const Word& fw) {
    auto key = std::make_pair(i, fw);
    auto it = cross1_memo.find(key);
    if (it != cross1_memo.end()) return it->second;
    std::vector<Cross1Term> res;
    if (fw.empty()) {
      res.push_back({Word{}, std::vector<int>(n, 0), true, Scalar::one(F)});
    } else {
      int j = fw.front();
      Word rest(fw.begin() + 1, fw.end());
      for (const auto& t : cross1(i, rest)) {
        Word f2;
        f2.push_back(j);
        f2.insert(f2.end(), t.f.begin(), t.f.end());
        res.push_back({std::move(f2), t.ks, t.keep, t.c});
      }
      if (i == j) {
        auto nu = wt(rest);
        long d = simple_pair(i, nu);
        std::vector<int> kplus(n, 0), kminus(n, 0);
        kplus[i] = 1;
        kminus[i] = -1;
        res.push_back({rest, kplus, false, qpow(-d) * qdiff_inv});
        res.push_back({rest, kminus, false, -(qpow(d) * qdiff_inv)});
      }
    }
    auto [pos, inserted] = cross1_memo.emplace(key, std::move(res));
    (void)inserted;
    return pos->second;
  }

  const std::vector<CrossTerm>& cross(const Word& ew, const Word& fw) {
    auto key = std::make_pair(ew, fw);
    auto it = cross_memo.find(key);
    if (it != cross_memo.end()) return it->second;
    std::vector<CrossTerm> res;
    if (ew.empty() || fw.empty()) {
      res.push_back({fw, std::vector<int>(n, 0), ew, Scalar::one(F)});
    } else {
      Word u(ew.begin(), ew.end() - 1);
      int i = ew.back();
      for (const auto& s : cross1(i, fw)) {
        for (const auto& t : cross(u, s.f)) {
          Word e3 = t.e;
          if (s.keep) e3.push_back(i);
          Scalar c = s.c * t.c * qpow(-kpair(s.ks, wt(t.e)));
          std::vector<int> ks(n);
          for (unsigned a = 0; a < n; ++a) ks[a] = t.ks[a] + s.ks[a];
          res.push_back({t.f, std::move(ks), std::move(e3), c});
        }
      }
    }
    auto [pos, inserted] = cross_memo.emplace(key, std::move(res));
    (void)inserted;
    return pos->second;
  }

  // -------------------------------------------------------------------------
  // The triangular word layer (F-word, K-exponent, E-word) and its product.

  static void mixed_add(Mixed& acc, const MixedKey& k, const Scalar& c) {
    auto it = acc.find(k);
    if (it == acc.end()) {
      if (!c.is_zero()) acc.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }

  Mixed mixed_one() const {
    Mixed m;
    m.emplace(MixedKey{Word{}, std::vector<int>(n, 0), Word{}},
              Scalar::one(F));
    return m;
  }

  Mixed mul_mixed(const Mixed& A, const Mixed& B) {
    Mixed acc;
    for (const auto& [ka, ca] : A) {
      for (const auto& [kb, cb] : B) {
        for (const auto& t : cross(ka.e, kb.f)) {
          Scalar c = ca * cb * t.c * qpow(-kpair(ka.k, wt(t.f))) *
                     qpow(-kpair(kb.k, wt(t.e)));
          MixedKey key;
          key.f = ka.f;
          key.f.insert(key.f.end(), t.f.begin(), t.f.end());
          key.k.resize(n);
          for (unsigned i = 0; i < n; ++i)
            key.k[i] = ka.k[i] + t.ks[i] + kb.k[i];
          key.k = normk(key.k);
          key.e = t.e;
          key.e.insert(key.e.end(), kb.e.begin(), kb.e.end());
          mixed_add(acc, key, c);
        }
      }
    }
    return acc;
  }

  Mixed mixed_letter(char kind, int i, const Scalar& c) const {
    MixedKey key{Word{}, std::vector<int>(n, 0), Word{}};
    if (kind == 'E')
      key.e.push_back(i);
    else if (kind == 'F')
      key.f.push_back(i);
    else
      key.k[i] = 1;
    Mixed m;
    m.emplace(std::move(key), c);
    return m;
  }

  // -------------------------------------------------------------------------
  // Lusztig automorphisms on the word layer (i, j are 0-based):
  //   T_i(E_i) = -F_i K_i^{-1}           T_i(F_i) = -K_i E_i
  //   T_i(E_j) = -E_i E_j + q E_j E_i    (a_ij = -1)
  //   T_i(F_j) = q^{-1} F_i F_j - F_j F_i
  //   T_i(K^k) = K^{k - (sum_j a_ij k_j) e_i}
  Mixed lusztig_letter(int i, char kind, int j) const {
    Mixed m;
    Scalar one = Scalar::one(F);
    if (kind == 'K') {
      std::vector<int> k(n, 0);
      k[j] = 1;
      k[i] -= cartan(i, j);
      m.emplace(MixedKey{Word{}, normk(k), Word{}}, one);
      return m;
    }
    if (kind == 'E') {
      if (i == j) {
        std::vector<int> k(n, 0);
        k[i] = -1;
        m.emplace(MixedKey{Word{i}, normk(k), Word{}}, -one);
      } else if (cartan(i, j) == 0) {
        m.emplace(MixedKey{Word{}, std::vector<int>(n, 0), Word{j}}, one);
      } else {
        m.emplace(MixedKey{Word{}, std::vector<int>(n, 0), Word{i, j}}, -one);
        m.emplace(MixedKey{Word{}, std::vector<int>(n, 0), Word{j, i}},
                  qpow(1));
      }
      return m;
    }
    // kind == 'F'
    if (i == j) {
      std::vector<int> k(n, 0);
      k[i] = 1;
      m.emplace(MixedKey{Word{}, normk(k), Word{i}}, -one);
    } else if (cartan(i, j) == 0) {
      m.emplace(MixedKey{Word{j}, std::vector<int>(n, 0), Word{}}, one);
    } else {
      m.emplace(MixedKey{Word{i, j}, std::vector<int>(n, 0), Word{}},
                qpow(-1));
      m.emplace(MixedKey{Word{j, i}, std::vector<int>(n, 0), Word{}}, -one);
    }
    return m;
  }

  Mixed lusztig_apply(int i, const Mixed& x) {
    Mixed res;
    for (const auto& [key, c] : x) {
      Mixed acc = mixed_one();
      for (int l : key.f) acc = mul_mixed(acc, lusztig_letter(i, 'F', l));
      // K part in one step.
      std::vector<int> k = key.k;
      long s = 0;
      for (unsigned j = 0; j < n; ++j) s += long(cartan(i, j)) * key.k[j];
      k[i] -= int(s);
      Mixed kimg;
      kimg.emplace(MixedKey{Word{}, normk(k), Word{}}, Scalar::one(F));
      acc = mul_mixed(acc, kimg);
      for (int l : key.e) acc = mul_mixed(acc, lusztig_letter(i, 'E', l));
      for (const auto& [kk, cc] : acc) mixed_add(res, kk, c * cc);
    }
    return res;
  }

  // -------------------------------------------------------------------------
  // One-sided ideal slices (embedded Serre relations and p-th powers of the
  // simple generators) for a fixed multidegree.

  std::vector<Word> words_of_degree(const std::vector<int>& d) const {
    std::vector<Word> out;
    Word cur;
    std::vector<int> rem = d;
    size_t total = std::accumulate(d.begin(), d.end(), 0);
    std::function<void()> rec = [&]() {
      if (cur.size() == total) {
        out.push_back(cur);
        return;
      }
      for (unsigned i = 0; i < n; ++i)
        if (rem[i] > 0) {
          rem[i]--;
          cur.push_back(int(i));
          rec();
          cur.pop_back();
          rem[i]++;
        }
    };
    rec();
    std::sort(out.begin(), out.end());
    return out;
  }

  // Bilinear pairing of positive-part words (free-algebra letters are paired
  // through weighted shuffles).  Its radical on each weight space is exactly
  // the defining ideal slice of the restricted positive part, which the
  // finitely many quantum Serre and nilpotency relations do not always span
  // at small p.
  std::map<std::pair<Word, Word>, Scalar> pair_memo;

  Scalar shuffle_pair(const Word& u, const Word& v) {
    if (u.empty()) return Scalar::one(F);
    auto key = std::make_pair(u, v);
    auto it = pair_memo.find(key);
    if (it != pair_memo.end()) return it->second;
    Scalar sum = Scalar::zero(F);
    int i = u[0];
    Word ut(u.begin() + 1, u.end());
    int phase = 0;
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k] == i) {
        Word vt = v;
        vt.erase(vt.begin() + ptrdiff_t(k));
        sum += qpow(phase) * shuffle_pair(ut, vt);
      }
      phase += cartan(v[k], i);
    }
    pair_memo.emplace(std::move(key), sum);
    return sum;
  }

  const DegSpace& degspace(const std::vector<int>& d) {
    auto it = degspaces.find(d);
    if (it != degspaces.end()) return it->second;
    DegSpace ds;
    ds.words = words_of_degree(d);
    for (size_t w = 0; w < ds.words.size(); ++w) ds.windex[ds.words[w]] = w;

    // Relation list: (multidegree, word combination).
    std::vector<std::pair<std::vector<int>, WordPoly>> rels;
    Scalar one = Scalar::one(F);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cartan(int(i), int(j)) == -1) {
          WordPoly r;
          r[Word{int(i), int(i), int(j)}] = one;
          r[Word{int(i), int(j), int(i)}] = -(qpow(1) + qpow(-1));
          r[Word{int(j), int(i), int(i)}] = one;
          std::vector<int> deg(n, 0);
          deg[i] = 2;
          deg[j] = 1;
          rels.push_back({deg, std::move(r)});
        } else if (i < j && cartan(int(i), int(j)) == 0) {
          WordPoly r;
          r[Word{int(i), int(j)}] = one;
          r[Word{int(j), int(i)}] = -one;
          std::vector<int> deg(n, 0);
          deg[i] = 1;
          deg[j] = 1;
          rels.push_back({deg, std::move(r)});
        }
      }
      WordPoly r;
      r[Word(p, int(i))] = one;
      std::vector<int> deg(n, 0);
      deg[i] = int(p);
      rels.push_back({deg, std::move(r)});
    }
    // p-th powers of the composite root vectors that are available so far.
    for (size_t r = 0; r < eroot.size(); ++r) {
      int ht = std::accumulate(beta[r].begin(), beta[r].end(), 0);
      if (ht <= 1) continue;
      std::vector<int> deg(n, 0);
      bool fits = true;
      for (unsigned i = 0; i < n; ++i) {
        deg[i] = int(p) * beta[r][i];
        if (deg[i] > d[i]) fits = false;
      }
      if (!fits) continue;
      WordPoly acc;
      acc[Word{}] = one;
      for (unsigned m = 0; m < p; ++m) acc = wp_concat(acc, eroot[r]);
      rels.push_back({deg, std::move(acc)});
    }

    std::vector<Vec> rows;
    for (const auto& [rdeg, rel] : rels) {
      std::vector<int> rem(n);
      bool fits = true;
      for (unsigned i = 0; i < n; ++i) {
        rem[i] = d[i] - rdeg[i];
        if (rem[i] < 0) fits = false;
      }
      if (!fits) continue;
      // All splits rem = du + dv.
      std::vector<int> du(n, 0);
      while (true) {
        std::vector<int> dv(n);
        for (unsigned i = 0; i < n; ++i) dv[i] = rem[i] - du[i];
        for (const auto& u : words_of_degree(du)) {
          for (const auto& v : words_of_degree(dv)) {
            Vec row = vec_zero(F, ds.words.size());
            for (const auto& [w, c] : rel) {
              Word full = u;
              full.insert(full.end(), w.begin(), w.end());
              full.insert(full.end(), v.begin(), v.end());
              row[ds.windex.at(full)] += c;
            }
            if (!vec_is_zero(row)) rows.push_back(std::move(row));
          }
        }
        // Next du.
        unsigned i = 0;
        while (i < n && du[i] == rem[i]) du[i++] = 0;
        if (i == n) break;
        du[i]++;
      }
    }
    // The ideal slice proper: the radical of the pairing on this weight
    // space (left kernel of the Gram matrix on its words).
    const size_t W = ds.words.size();
    std::vector<Vec> gram;
    gram.reserve(W);
    for (size_t r = 0; r < W; ++r) {
      Vec grow = vec_zero(F, W);
      for (size_t c = 0; c < W; ++c)
        grow[c] = shuffle_pair(ds.words[c], ds.words[r]);
      gram.push_back(std::move(grow));
    }
    std::vector<Vec> ker = ExactMatrix::from_rows(F, gram).nullspace();
    if (!ker.empty()) {
      ExactMatrix m = ExactMatrix::from_rows(F, ker);
      auto pivots = m.rref();
      ds.rows.clear();
      for (size_t r = 0; r < pivots.size(); ++r) {
        Vec row(W, Scalar::zero(F));
        for (size_t c = 0; c < W; ++c) row[c] = m.at(r, c);
        ds.rows.push_back(std::move(row));
      }
      ds.pivots = pivots;
    }
    // Consistency guard: every embedded defining relation must lie in the
    // radical, else the pairing convention disagrees with the relations.
    for (const Vec& row : rows) {
      Vec res = row;
      for (size_t r = 0; r < ds.rows.size(); ++r) {
        Scalar c = res[ds.pivots[r]];
        if (c.is_zero()) continue;
        for (size_t j = 0; j < W; ++j) res[j] -= c * ds.rows[r][j];
      }
      if (!vec_is_zero(res))
        throw QGroupError(
            "embedded defining relation escapes the radical ideal slice");
    }
    auto [pos, inserted] = degspaces.emplace(d, std::move(ds));
    (void)inserted;
    return pos->second;
  }

  // Reduces a word combination modulo the ideal slice of its multidegree;
  // the input must be homogeneous.
  WordPoly serre_reduce(const WordPoly& x) {
    if (x.empty()) return {};
    const auto d = wt(x.begin()->first);
    const DegSpace& ds = degspace(d);
    Vec v = vec_zero(F, ds.words.size());
    for (const auto& [w, c] : x) {
      if (wt(w) != d) throw QGroupError("inhomogeneous word combination");
      v[ds.windex.at(w)] += c;
    }
    for (size_t r = 0; r < ds.rows.size(); ++r) {
      const Scalar& lead = v[ds.pivots[r]];
      if (!lead.is_zero()) {
        Scalar f = lead;
        for (size_t c = 0; c < v.size(); ++c)
          v[c] -= f * ds.rows[r][c];
      }
    }
    WordPoly out;
    for (size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) out[ds.words[c]] = v[c];
    return out;
  }

  // -------------------------------------------------------------------------
  // Word expansion of PBW exponent vectors.

  static void wp_add(WordPoly& acc, const Word& w, const Scalar& c) {
    auto it = acc.find(w);
    if (it == acc.end()) {
      if (!c.is_zero()) acc.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }

  WordPoly wp_concat(const WordPoly& a, const WordPoly& b) const {
    WordPoly acc;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        wp_add(acc, w, ca * cb);
      }
    return acc;
  }

  const WordPoly& expand(const std::vector<unsigned>& exp) {
    auto it = expand_memo.find(exp);
    if (it != expand_memo.end()) return it->second;
    WordPoly res;
    // Last nonzero root position; empty exponent expands to the empty word.
    size_t r = N;
    for (size_t i = N; i-- > 0;)
      if (exp[i] > 0) {
        r = i;
        break;
      }
    if (r == N) {
      res[Word{}] = Scalar::one(F);
    } else {
      auto prev = exp;
      prev[r]--;
      res = wp_concat(expand(prev), eroot[r]);
    }
    auto [pos, inserted] = expand_memo.emplace(exp, std::move(res));
    (void)inserted;
    return pos->second;
  }

  // -------------------------------------------------------------------------
  // Straightening of root-vector words into sorted capped exponents.

  static void ep_add(ExpPoly& acc, const std::vector<unsigned>& e,
                     const Scalar& c) {
    auto it = acc.find(e);
    if (it == acc.end()) {
      if (!c.is_zero()) acc.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }

  const ExpPoly& straighten(const RWord& w) {
    auto it = straighten_memo.find(w);
    if (it != straighten_memo.end()) return it->second;
    ExpPoly res;
    size_t a = 0;
    while (a + 1 < w.size() && w[a] <= w[a + 1]) ++a;
    if (a + 1 >= w.size()) {
      std::vector<unsigned> exp(N, 0);
      bool capped = false;
      for (int r : w) {
        if (++exp[size_t(r)] >= p) {
          capped = true;
          break;
        }
      }
      if (!capped) res[exp] = Scalar::one(F);
    } else {
      int t = w[a], s = w[a + 1];
      const auto& rule = rules.at({t, s});
      for (const auto& [repl, c] : rule) {
        RWord w2(w.begin(), w.begin() + long(a));
        w2.insert(w2.end(), repl.begin(), repl.end());
        w2.insert(w2.end(), w.begin() + long(a) + 2, w.end());
        for (const auto& [e, cc] : straighten(w2)) ep_add(res, e, c * cc);
      }
    }
    auto [pos, inserted] = straighten_memo.emplace(w, std::move(res));
    (void)inserted;
    return pos->second;
  }

  RWord to_roots(const Word& w) const {
    RWord r;
    r.reserve(w.size());
    for (int l : w) r.push_back(int(simple_rootpos[size_t(l)]));
    return r;
  }

  RWord exp_to_rword(const std::vector<unsigned>& exp) const {
    RWord r;
    for (size_t i = 0; i < N; ++i)
      for (unsigned m = 0; m < exp[i]; ++m) r.push_back(int(i));
    return r;
  }

  // -------------------------------------------------------------------------
  // Rule derivation: write E_{b_t} E_{b_s} over the sorted monomial
  // E_{b_s} E_{b_t} and the monomials in the roots strictly between, modulo
  // the ideal slice, by solving an exact linear system on word coordinates.

  void derive_rule(int t, int s) {
    std::vector<int> d(n);
    for (unsigned i = 0; i < n; ++i) d[i] = beta[s][i] + beta[t][i];
    const DegSpace& ds = degspace(d);

    // Candidate sorted monomials: every ascending capped monomial of weight
    // d whose first letter is below t.  (That includes the swapped product
    // [s, t]; the first-letter bound keeps the rewriting strictly
    // lex-decreasing, hence terminating.)
    std::vector<RWord> cands;
    std::vector<unsigned> m(N, 0);
    while (true) {
      std::vector<int> rem = d;
      bool valid = true;
      for (size_t r = 0; r < N && valid; ++r)
        for (unsigned i = 0; i < n; ++i) {
          rem[i] -= int(m[r]) * beta[r][i];
          if (rem[i] < 0) {
            valid = false;
            break;
          }
        }
      if (valid && std::all_of(rem.begin(), rem.end(),
                               [](int v) { return v == 0; })) {
        RWord w;
        for (size_t r = 0; r < N; ++r)
          for (unsigned mm = 0; mm < m[r]; ++mm) w.push_back(int(r));
        if (!w.empty() && w.front() < t && !(w.size() == 2 && w[0] == t &&
                                             w[1] == s))
          cands.push_back(std::move(w));
      }
      size_t i = 0;
      while (i < N && m[i] + 1 >= p) m[i++] = 0;
      if (i == N) break;
      m[i]++;
    }

    auto rword_expand = [&](const RWord& w) {
      WordPoly acc;
      acc[Word{}] = Scalar::one(F);
      for (int r : w) acc = wp_concat(acc, eroot[size_t(r)]);
      return acc;
    };
    auto to_vec = [&](const WordPoly& wp) {
      Vec v = vec_zero(F, ds.words.size());
      for (const auto& [w, c] : wp) v[ds.windex.at(w)] += c;
      return v;
    };

    std::vector<Vec> cols;
    for (const auto& cand : cands) cols.push_back(to_vec(rword_expand(cand)));
    for (const auto& row : ds.rows) cols.push_back(row);
    Vec target = to_vec(rword_expand(RWord{t, s}));

    auto sol = ExactMatrix::from_cols(F, cols).solve(target);
    if (!sol)
      throw QGroupError("straightening rule derivation: no solution at pair (" +
                        std::to_string(t) + "," + std::to_string(s) +
                        "), degree space " + std::to_string(ds.words.size()) +
                        " words, " + std::to_string(cands.size()) +
                        " candidates, " + std::to_string(ds.rows.size()) +
                        " ideal rows");

    std::vector<std::pair<RWord, Scalar>> rhs;
    Vec residual = target;
    for (size_t c = 0; c < cands.size(); ++c) {
      if (!(*sol)[c].is_zero()) rhs.push_back({cands[c], (*sol)[c]});
      Vec cv = to_vec(rword_expand(cands[c]));
      for (size_t w = 0; w < residual.size(); ++w)
        residual[w] -= (*sol)[c] * cv[w];
    }
    // Exactness check: the residual must lie in the ideal slice.
    WordPoly res_wp;
    for (size_t w = 0; w < residual.size(); ++w)
      if (!residual[w].is_zero()) res_wp[ds.words[w]] = residual[w];
    if (!serre_reduce(res_wp).empty())
      throw QGroupError("straightening rule residual not in the ideal");
    rules[{t, s}] = std::move(rhs);
  }

  // -------------------------------------------------------------------------
  // Products of PBW basis monomials.

  std::vector<int> eweight(const std::vector<unsigned>& e) const {
    std::vector<int> v(n, 0);
    for (size_t r = 0; r < N; ++r)
      if (e[r])
        for (unsigned i = 0; i < n; ++i) v[i] += int(e[r]) * beta[r][i];
    return v;
  }

  static void acc_add(std::map<uint64_t, Scalar>& acc, uint64_t idx,
                      const Scalar& c) {
    auto it = acc.find(idx);
    if (it == acc.end())
      acc.emplace(idx, c);
    else
      it->second += c;
  }

  // Right multiplication of a straightened element by E_{beta_r}: append the
  // root letter to the E part and re-straighten.
  std::map<uint64_t, Scalar> mul_by_Eroot(const std::map<uint64_t, Scalar>& x,
                                          int r) {
    std::map<uint64_t, Scalar> out;
    std::vector<unsigned> f, e;
    std::vector<int> k;
    for (const auto& [idx, c] : x) {
      decode(idx, f, k, e);
      RWord w = exp_to_rword(e);
      w.push_back(r);
      for (const auto& [ee, cc] : straighten(w))
        acc_add(out, encode(f, k, ee), c * cc);
    }
    return out;
  }

  // Right multiplication by K^{kb}: shift the K exponent and pick up the
  // phase of moving K^{kb} left past the E part.
  std::map<uint64_t, Scalar> mul_by_K(const std::map<uint64_t, Scalar>& x,
                                      const std::vector<int>& kb) {
    if (std::all_of(kb.begin(), kb.end(), [](int v) { return v == 0; }))
      return x;
    std::map<uint64_t, Scalar> out;
    std::vector<unsigned> f, e;
    std::vector<int> k;
    for (const auto& [idx, c] : x) {
      decode(idx, f, k, e);
      Scalar phase = qpow(-kpair(kb, eweight(e)));
      for (unsigned i = 0; i < n; ++i) k[i] += kb[i];
      acc_add(out, encode(f, normk(k), e), c * phase);
    }
    return out;
  }

  // Right multiplication by a single simple letter F_l: cross it through the
  // expanded E part (at most one bracket annihilation per expansion word).
  std::map<uint64_t, Scalar> mul_by_Fletter(const std::map<uint64_t, Scalar>& x,
                                            int l) {
    std::map<uint64_t, Scalar> out;
    std::vector<unsigned> f, e;
    std::vector<int> k;
    Word fw{l};
    for (const auto& [idx, c] : x) {
      decode(idx, f, k, e);
      RWord f_r = exp_to_rword(f);
      for (const auto& [ew, ce] : expand(e)) {
        for (const auto& t : cross(ew, fw)) {
          Scalar base = c * ce * t.c * qpow(-kpair(k, wt(t.f)));
          RWord frw = f_r;
          for (int s : t.f) frw.push_back(int(simple_rootpos[size_t(s)]));
          const ExpPoly& fres = straighten(frw);
          if (fres.empty()) continue;
          const ExpPoly& eres = straighten(to_roots(t.e));
          if (eres.empty()) continue;
          std::vector<int> kk(n);
          for (unsigned i = 0; i < n; ++i) kk[i] = k[i] + t.ks[i];
          kk = normk(kk);
          for (const auto& [fe, cF] : fres)
            for (const auto& [ee, cE] : eres)
              acc_add(out, encode(fe, kk, ee), base * cF * cE);
        }
      }
    }
    return out;
  }

  // Right multiplication by F_{beta_r}, one expansion word at a time.
  std::map<uint64_t, Scalar> mul_by_Froot(const std::map<uint64_t, Scalar>& x,
                                          int r) {
    std::map<uint64_t, Scalar> out;
    for (const auto& [w, cw] : eroot[size_t(r)]) {
      std::map<uint64_t, Scalar> cur = x;
      for (int l : w) cur = mul_by_Fletter(cur, l);
      for (const auto& [idx, c] : cur) acc_add(out, idx, cw * c);
    }
    return out;
  }

  // Product of basis monomials, folding the right factor letter by letter so
  // every intermediate stays a straightened element.
  SparseVec mul_keys(size_t ia, size_t ib) {
    uint64_t memo_key = uint64_t(ia) * dim + uint64_t(ib);
    auto it = mul_memo.find(memo_key);
    if (it != mul_memo.end()) return it->second;

    std::vector<unsigned> fb, eb;
    std::vector<int> kb;
    decode(ib, fb, kb, eb);
    std::map<uint64_t, Scalar> acc;
    acc.emplace(ia, Scalar::one(F));
    for (size_t r = 0; r < N; ++r)
      for (unsigned m = 0; m < fb[r]; ++m) acc = mul_by_Froot(acc, int(r));
    acc = mul_by_K(acc, kb);
    for (size_t r = 0; r < N; ++r)
      for (unsigned m = 0; m < eb[r]; ++m) acc = mul_by_Eroot(acc, int(r));

    SparseVec out;
    for (const auto& [idx, c] : acc)
      if (!c.is_zero()) out.push_back({idx, c});
    mul_memo.emplace(memo_key, out);
    return out;
  }

  SparseVec mul_sparse(const SparseVec& a, const SparseVec& b) {
    std::map<uint64_t, Scalar> acc;
    for (const auto& [ia, ca] : a)
      for (const auto& [ib, cb] : b)
        for (const auto& [ix, cx] : mul_keys(size_t(ia), size_t(ib))) {
          auto it = acc.find(ix);
          if (it == acc.end())
            acc.emplace(ix, ca * cb * cx);
          else
            it->second += ca * cb * cx;
        }
    SparseVec out;
    for (const auto& [i, c] : acc)
      if (!c.is_zero()) out.push_back({i, c});
    return out;
  }

  // -------------------------------------------------------------------------
  // Coproduct and antipode of basis monomials via letter factorization.

  // Letter-wise coproducts: Delta(F_i) = F_i (x) 1 + K_i^{-1} (x) F_i,
  // Delta(K^k) = K^k (x) K^k, Delta(E_i) = 1 (x) E_i + E_i (x) K_i.
  CoprodList coproduct_of(size_t idx) {
    std::vector<unsigned> f, e;
    std::vector<int> k;
    decode(idx, f, k, e);
    using Tensor = std::map<std::pair<size_t, size_t>, Scalar>;
    size_t unit_idx = 0;
    Tensor total;

    auto tensor_step =
        [&](Tensor cur,
            const std::vector<std::tuple<size_t, size_t, Scalar>>& delta) {
          Tensor next;
          for (const auto& [pr, c] : cur)
            for (const auto& [L, R, dc] : delta)
              for (const auto& [pl, cl] : mul_keys(pr.first, L))
                for (const auto& [prr, cr] : mul_keys(pr.second, R)) {
                  Scalar v = c * dc * cl * cr;
                  auto key = std::make_pair(size_t(pl), size_t(prr));
                  auto it = next.find(key);
                  if (it == next.end())
                    next.emplace(key, v);
                  else
                    it->second += v;
                }
          return next;
        };

    for (const auto& [fw, cf] : expand(f)) {
      for (const auto& [ew, ce] : expand(e)) {
        Tensor cur;
        cur.emplace(std::make_pair(unit_idx, unit_idx), cf * ce);
        for (int l : fw) {
          std::vector<int> kinv(n, 0);
          kinv[l] = -1;
          cur = tensor_step(
              cur, {{simple_F_index(l), unit_idx, Scalar::one(F)},
                    {k_index(kinv), simple_F_index(l), Scalar::one(F)}});
        }
        size_t kk = k_index(k);
        cur = tensor_step(cur, {{kk, kk, Scalar::one(F)}});
        for (int l : ew) {
          std::vector<int> kl(n, 0);
          kl[l] = 1;
          cur = tensor_step(
              cur, {{unit_idx, simple_E_index(l), Scalar::one(F)},
                    {simple_E_index(l), k_index(kl), Scalar::one(F)}});
        }
        for (const auto& [pr, c] : cur) {
          auto it = total.find(pr);
          if (it == total.end())
            total.emplace(pr, c);
          else
            it->second += c;
        }
      }
    }
    CoprodList out;
    for (const auto& [pr, c] : total)
      if (!c.is_zero())
        out.push_back({uint32_t(pr.first), uint32_t(pr.second), c});
    return out;
  }

  // S(E_i) = -E_i K_i^{-1}, S(F_i) = -K_i F_i, S(K^k) = K^{-k};
  // S reverses products.
  SparseVec antipode_of(size_t idx) {
    std::vector<unsigned> f, e;
    std::vector<int> k;
    decode(idx, f, k, e);
    std::map<uint64_t, Scalar> acc;
    for (const auto& [fw, cf] : expand(f)) {
      for (const auto& [ew, ce] : expand(e)) {
        SparseVec elem{{0, cf * ce}};
        for (auto it = ew.rbegin(); it != ew.rend(); ++it) {
          std::vector<int> kinv(n, 0);
          kinv[*it] = -1;
          std::vector<unsigned> ee(N, 0);
          ee[simple_rootpos[size_t(*it)]] = 1;
          std::vector<unsigned> ff(N, 0);
          SparseVec s_letter{{encode(ff, normk(kinv), ee), -qpow(2)}};
          elem = mul_sparse(elem, s_letter);
        }
        std::vector<int> kneg(n);
        for (unsigned i = 0; i < n; ++i) kneg[i] = -k[i];
        SparseVec kelem{{k_index(kneg), Scalar::one(F)}};
        elem = mul_sparse(elem, kelem);
        for (auto it = fw.rbegin(); it != fw.rend(); ++it) {
          std::vector<int> kl(n, 0);
          kl[*it] = 1;
          std::vector<unsigned> ff(N, 0);
          ff[simple_rootpos[size_t(*it)]] = 1;
          std::vector<unsigned> ee(N, 0);
          SparseVec s_letter{{encode(ff, normk(kl), ee), -qpow(-2)}};
          elem = mul_sparse(elem, s_letter);
        }
        for (const auto& [i, c] : elem) {
          auto ai = acc.find(i);
          if (ai == acc.end())
            acc.emplace(i, c);
          else
            ai->second += c;
        }
      }
    }
    SparseVec out;
    for (const auto& [i, c] : acc)
      if (!c.is_zero()) out.push_back({i, c});
    return out;
  }

  // -------------------------------------------------------------------------
  // Conversions between the word layer and PBW coordinates.

  SparseVec mixed_to_elem(const Mixed& x) {
    std::map<uint64_t, Scalar> acc;
    for (const auto& [key, c] : x) {
      const ExpPoly& fres = straighten(to_roots(key.f));
      const ExpPoly& eres = straighten(to_roots(key.e));
      for (const auto& [fe, cF] : fres)
        for (const auto& [ee, cE] : eres) {
          uint64_t idx = encode(fe, key.k, ee);
          auto it = acc.find(idx);
          if (it == acc.end())
            acc.emplace(idx, c * cF * cE);
          else
            it->second += c * cF * cE;
        }
    }
    SparseVec out;
    for (const auto& [i, c] : acc)
      if (!c.is_zero()) out.push_back({i, c});
    return out;
  }

  Mixed basis_to_mixed(size_t idx) {
    std::vector<unsigned> f, e;
    std::vector<int> k;
    decode(idx, f, k, e);
    Mixed out;
    for (const auto& [fw, cf] : expand(f))
      for (const auto& [ew, ce] : expand(e))
        mixed_add(out, MixedKey{fw, k, ew}, cf * ce);
    return out;
  }

  SparseVec lusztig_elem(int i, const SparseVec& x) {
    std::map<uint64_t, Scalar> acc;
    for (const auto& [idx, c] : x) {
      SparseVec img = mixed_to_elem(lusztig_apply(i, basis_to_mixed(idx)));
      for (const auto& [j, cc] : img) {
        auto it = acc.find(j);
        if (it == acc.end())
          acc.emplace(j, c * cc);
        else
          it->second += c * cc;
      }
    }
    SparseVec out;
    for (const auto& [j, c] : acc)
      if (!c.is_zero()) out.push_back({j, c});
    return out;
  }

  // Splits a word-layer element into its triangular-pure E part and checks
  // that the remainder vanishes modulo the ideal (both one-sided slices).
  WordPoly pure_E_part(const Mixed& x, bool* clean) {
    WordPoly pure;
    std::map<MixedKey, Scalar> rest;
    for (const auto& [key, c] : x) {
      if (key.f.empty() && std::all_of(key.k.begin(), key.k.end(),
                                       [](int v) { return v == 0; }))
        wp_add(pure, key.e, c);
      else
        rest[key] = c;
    }
    bool ok = true;
    // Group the remainder by K exponent and reduce both word sides.
    std::map<std::tuple<Word, std::vector<int>, Word>, Scalar> red;
    for (const auto& [key, c] : rest) {
      WordPoly rf = serre_reduce(WordPoly{{key.f, Scalar::one(F)}});
      WordPoly re = serre_reduce(WordPoly{{key.e, Scalar::one(F)}});
      for (const auto& [wf, cf] : rf)
        for (const auto& [we, ce] : re) {
          auto k = std::make_tuple(wf, key.k, we);
          auto it = red.find(k);
          if (it == red.end())
            red.emplace(k, c * cf * ce);
          else
            it->second += c * cf * ce;
        }
    }
    for (const auto& [k, c] : red)
      if (!c.is_zero()) ok = false;
    if (clean) *clean = ok;
    return pure;
  }

  // -------------------------------------------------------------------------
  // Labels.

  std::string root_name(size_t r) const {
    std::string s;
    for (unsigned i = 0; i < n; ++i)
      for (int m = 0; m < beta[r][i]; ++m) s += std::to_string(i + 1);
    return s;
  }

  std::string label_of(size_t idx) const {
    std::vector<unsigned> f, e;
    std::vector<int> k;
    decode(idx, f, k, e);
    std::vector<std::string> parts;
    auto add = [&](char kind, const std::string& name, unsigned exp) {
      std::string t(1, kind);
      t += name;
      if (exp > 1) t += "^" + std::to_string(exp);
      parts.push_back(t);
    };
    bool indexed = n > 1;
    for (size_t r = 0; r < N; ++r)
      if (f[r]) add('F', indexed || N > 1 ? root_name(r) : "", f[r]);
    for (unsigned i = 0; i < n; ++i)
      if (k[i]) add('K', indexed ? std::to_string(i + 1) : "", unsigned(k[i]));
    for (size_t r = 0; r < N; ++r)
      if (e[r]) add('E', indexed || N > 1 ? root_name(r) : "", e[r]);
    if (parts.empty()) return "1";
    std::string s = parts[0];
    for (size_t a = 1; a < parts.size(); ++a) s += "*" + parts[a];
    return s;
  }

  // -------------------------------------------------------------------------
  // Closed forms (as sparse elements / dual indices).

  SparseVec cointegral_sparse() {
    // prod_i (sum_m K_i^m) * prod F_beta^{p-1} * prod E_beta^{p-1}.
    std::vector<unsigned> full(N, p - 1), zero(N, 0);
    std::vector<int> k0(n, 0);
    SparseVec fpart{{encode(full, k0, zero), Scalar::one(F)}};
    SparseVec epart{{encode(zero, k0, full), Scalar::one(F)}};
    SparseVec ksum;
    std::vector<int> k(n, 0);
    while (true) {
      ksum.push_back({k_index(k), Scalar::one(F)});
      unsigned i = 0;
      while (i < n && k[i] + 1 >= int(twop)) k[i++] = 0;
      if (i == n) break;
      k[i]++;
    }
    ksum = sparse_normalize(std::move(ksum));
    return mul_sparse(mul_sparse(ksum, fpart), epart);
  }

  size_t integral_index() const {
    std::vector<unsigned> full(N, p - 1);
    std::vector<int> k(n);
    for (unsigned i = 0; i < n; ++i) k[i] = int((p + 1) * rs.two_rho[i]);
    return encode(full, normk(k), full);
  }

  size_t pivot_index(unsigned eps_bits) const {
    std::vector<int> k(n);
    for (unsigned i = 0; i < n; ++i)
      k[i] = rs.two_rho[i] + int(p) * int((eps_bits >> i) & 1u);
    return k_index(k);
  }

  size_t comodulus_index() const {
    std::vector<int> k(n);
    for (unsigned i = 0; i < n; ++i) k[i] = 2 * rs.two_rho[i];
    return k_index(k);
  }
};

// ---------------------------------------------------------------------------
// UqAlgebra.

UqAlgebra::UqAlgebra(CartanDatum datum, std::vector<int> word, unsigned p) {
  bool supported = datum.type == 'A' &&
                   ((datum.rank == 1 && p >= 2 && p <= 7) ||
                    (datum.rank == 2 && (p == 2 || p == 3)) ||
                    (datum.rank == 3 && p == 2));
  if (!supported)
    throw QGroupError(
        "unsupported quantum group: available are A1 (2 <= p <= 7), "
        "A2 (p in {2,3}), A3 (p = 2)");

  auto impl = std::make_shared<Impl>();
  impl->datum = datum;
  impl->n = datum.rank;
  impl->p = p;
  impl->twop = 2 * p;
  impl->rs = root_system(datum);
  impl->word = word;
  for (int i : word) impl->word0.push_back(i - 1);
  impl->beta = beta_sequence(datum, word, impl->rs);
  impl->N = impl->beta.size();
  impl->F = FieldSpec::cyclotomic(impl->twop);
  for (unsigned r = 0; r < impl->twop; ++r)
    impl->qtab.push_back(Scalar::root_of_unity_power(impl->F, long(r)));
  impl->qdiff_inv = (impl->qtab[1] - impl->qpow(-1)).inverse();
  impl->simple_rootpos.assign(impl->n, impl->N);
  for (size_t r = 0; r < impl->N; ++r) {
    int height = 0, which = -1;
    for (unsigned i = 0; i < impl->n; ++i) {
      height += impl->beta[r][i];
      if (impl->beta[r][i] == 1) which = int(i);
    }
    if (height == 1) impl->simple_rootpos[unsigned(which)] = r;
  }
  for (unsigned i = 0; i < impl->n; ++i)
    if (impl->simple_rootpos[i] == impl->N)
      throw QGroupError("simple root missing from the root enumeration");

  impl->dim = 1;
  for (size_t r = 0; r < 2 * impl->N; ++r) impl->dim *= p;
  for (unsigned i = 0; i < impl->n; ++i) impl->dim *= impl->twop;

  // Root vectors via chained Lusztig automorphisms on the word layer.
  for (size_t k = 0; k < impl->N; ++k) {
    Mixed x = impl->mixed_letter('E', impl->word0[k], Scalar::one(impl->F));
    for (size_t a = k; a-- > 0;) x = impl->lusztig_apply(impl->word0[a], x);
    bool clean = false;
    WordPoly pure = impl->pure_E_part(x, &clean);
    if (!clean)
      throw QGroupError("root vector is not in the positive part");
    for (const auto& [w, c] : pure)
      if (impl->wt(w) != impl->beta[k])
        throw QGroupError("root vector is not weight homogeneous");
    impl->eroot.push_back(std::move(pure));
    // Ideal slices computed before this root vector existed are missing its
    // p-th power relation; recompute them on demand.
    impl->degspaces.clear();
  }

  // Pairwise straightening rules.
  for (int t = 1; t < int(impl->N); ++t)
    for (int s = 0; s < t; ++s) impl->derive_rule(t, s);

  // The Hopf structure, lazily backed by the engine.
  std::vector<std::string> labels;
  labels.reserve(impl->dim);
  for (size_t i = 0; i < impl->dim; ++i) labels.push_back(impl->label_of(i));
  Vec unit = vec_zero(impl->F, impl->dim);
  unit[0] = Scalar::one(impl->F);
  Vec counit = vec_zero(impl->F, impl->dim);
  {
    std::vector<unsigned> f, e;
    std::vector<int> k;
    for (size_t i = 0; i < impl->dim; ++i) {
      impl->decode(i, f, k, e);
      bool pure_k =
          std::all_of(f.begin(), f.end(), [](unsigned v) { return v == 0; }) &&
          std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
      counit[i] = pure_k ? Scalar::one(impl->F) : Scalar::zero(impl->F);
    }
  }
  std::vector<size_t> gens;
  for (unsigned i = 0; i < impl->n; ++i) {
    gens.push_back(impl->simple_E_index(int(i)));
    gens.push_back(impl->simple_F_index(int(i)));
    std::vector<int> k(impl->n, 0);
    k[i] = 1;
    gens.push_back(impl->k_index(k));
  }
  Vec pivot = vec_zero(impl->F, impl->dim);
  pivot[impl->pivot_index(0)] = Scalar::one(impl->F);

  HopfAlgebra::LazyOps ops;
  ops.mult = [impl](size_t i, size_t j) { return impl->mul_keys(i, j); };
  ops.coprod = [impl](size_t i) { return impl->coproduct_of(i); };
  ops.antipode = [impl](size_t i) { return impl->antipode_of(i); };

  impl_ = impl;
  hopf_ = std::make_unique<HopfAlgebra>(impl->F, std::move(labels),
                                        std::move(unit), std::move(counit),
                                        std::move(ops), std::move(pivot),
                                        std::move(gens));
}

UqAlgebra::~UqAlgebra() = default;
UqAlgebra::UqAlgebra(UqAlgebra&&) noexcept = default;

const CartanDatum& UqAlgebra::datum() const { return impl_->datum; }
unsigned UqAlgebra::p() const { return impl_->p; }
const RootSystem& UqAlgebra::roots() const { return impl_->rs; }
const std::vector<int>& UqAlgebra::word() const { return impl_->word; }
const std::vector<std::vector<int>>& UqAlgebra::betas() const {
  return impl_->beta;
}
size_t UqAlgebra::dim() const { return impl_->dim; }
const HopfAlgebra& UqAlgebra::hopf() const { return *hopf_; }

size_t UqAlgebra::monomial_index(const std::vector<unsigned>& fexp,
                                 const std::vector<unsigned>& kexp,
                                 const std::vector<unsigned>& eexp) const {
  if (fexp.size() != impl_->N || kexp.size() != impl_->n ||
      eexp.size() != impl_->N)
    throw QGroupError("monomial exponent vector has the wrong length");
  std::vector<int> k(kexp.begin(), kexp.end());
  for (size_t r = 0; r < impl_->N; ++r)
    if (fexp[r] >= impl_->p || eexp[r] >= impl_->p)
      throw QGroupError("root-vector exponent out of range");
  for (int v : k)
    if (v >= int(impl_->twop))
      throw QGroupError("Cartan exponent out of range");
  return impl_->encode(fexp, k, eexp);
}

Vec UqAlgebra::lusztig_image(int i, char kind, int j) const {
  if (i < 1 || unsigned(i) > impl_->n || j < 1 || unsigned(j) > impl_->n)
    throw QGroupError("generator index out of range");
  if (kind != 'E' && kind != 'F' && kind != 'K')
    throw QGroupError("generator kind must be E, F or K");
  Mixed img = impl_->lusztig_letter(i - 1, kind, j - 1);
  return sparse_to_dense(impl_->F, impl_->dim, impl_->mixed_to_elem(img));
}

Vec UqAlgebra::root_vector_E(size_t beta_index) const {
  if (beta_index >= impl_->N) throw QGroupError("root index out of range");
  WordPoly wp = impl_->eroot[beta_index];
  std::map<uint64_t, Scalar> acc;
  std::vector<unsigned> f(impl_->N, 0);
  std::vector<int> k(impl_->n, 0);
  for (const auto& [w, c] : wp)
    for (const auto& [e, cc] : impl_->straighten(impl_->to_roots(w))) {
      uint64_t idx = impl_->encode(f, k, e);
      auto it = acc.find(idx);
      if (it == acc.end())
        acc.emplace(idx, c * cc);
      else
        it->second += c * cc;
    }
  SparseVec sv;
  for (const auto& [idx, c] : acc)
    if (!c.is_zero()) sv.push_back({idx, c});
  return sparse_to_dense(impl_->F, impl_->dim, sv);
}

CheckReport UqAlgebra::lusztig_checks() const {
  auto& I = *impl_;
  CheckReport rep;
  Scalar one = Scalar::one(I.F);
  unsigned n = I.n;

  auto letter_elem = [&](char kind, int l) -> SparseVec {
    if (kind == 'E') return {{I.simple_E_index(l), one}};
    if (kind == 'F') return {{I.simple_F_index(l), one}};
    std::vector<int> k(n, 0);
    k[l] = 1;
    return {{I.k_index(k), one}};
  };
  auto mul = [&](const SparseVec& a, const SparseVec& b) {
    return I.mul_sparse(a, b);
  };
  auto sub = [&](const SparseVec& a, const SparseVec& b) {
    return sparse_add(a, sparse_scale(-one, b));
  };
  SparseVec unit{{0, one}};

  for (unsigned i = 0; i < n; ++i) {
    std::vector<SparseVec> TE(n), TF(n), TK(n), TKi(n);
    for (unsigned l = 0; l < n; ++l) {
      TE[l] = I.mixed_to_elem(I.lusztig_letter(int(i), 'E', int(l)));
      TF[l] = I.mixed_to_elem(I.lusztig_letter(int(i), 'F', int(l)));
      TK[l] = I.mixed_to_elem(I.lusztig_letter(int(i), 'K', int(l)));
      // Image of K_l^{-1}: invert the K exponent of the (group-like) image.
      std::vector<int> k(n, 0);
      k[l] = -1;
      k[i] += I.cartan(int(i), int(l));
      TKi[l] = {{I.k_index(k), one}};
    }
    bool ok = true;
    for (unsigned l = 0; l < n && ok; ++l) {
      ok = ok && sub(mul(TK[l], TKi[l]), unit).empty();
      SparseVec ep = TE[l];
      SparseVec fp = TF[l];
      for (unsigned m = 1; m < I.p; ++m) {
        ep = mul(ep, TE[l]);
        fp = mul(fp, TF[l]);
      }
      ok = ok && ep.empty() && fp.empty();
      for (unsigned m = 0; m < n && ok; ++m) {
        // K E K^{-1} and K F K^{-1} scaling.
        ok = ok && sub(mul(mul(TK[l], TE[m]), TKi[l]),
                       sparse_scale(I.qpow(I.cartan(int(l), int(m))), TE[m]))
                       .empty();
        ok = ok && sub(mul(mul(TK[l], TF[m]), TKi[l]),
                       sparse_scale(I.qpow(-I.cartan(int(l), int(m))), TF[m]))
                       .empty();
        // Bracket.
        SparseVec lhs = sub(mul(TE[l], TF[m]), mul(TF[m], TE[l]));
        SparseVec rhs;
        if (l == m)
          rhs = sparse_scale(I.qdiff_inv, sub(TK[l], TKi[l]));
        ok = ok && sub(lhs, rhs).empty();
        // Serre / commutation.
        if (l != m) {
          if (I.cartan(int(l), int(m)) == 0) {
            ok = ok && sub(mul(TE[l], TE[m]), mul(TE[m], TE[l])).empty();
            ok = ok && sub(mul(TF[l], TF[m]), mul(TF[m], TF[l])).empty();
          } else {
            Scalar qq = I.qpow(1) + I.qpow(-1);
            auto serre = [&](const std::vector<SparseVec>& X) {
              SparseVec t1 = mul(mul(X[l], X[l]), X[m]);
              SparseVec t2 = mul(mul(X[l], X[m]), X[l]);
              SparseVec t3 = mul(mul(X[m], X[l]), X[l]);
              return sparse_add(sub(t1, sparse_scale(qq, t2)), t3);
            };
            ok = ok && serre(TE).empty() && serre(TF).empty();
          }
        }
      }
    }
    rep.check(ok, "T_" + std::to_string(i + 1) +
                      " respects the defining relations");
  }

  // Braid relations on all generators, applied as algebra maps.
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      std::vector<int> lw, rw;
      if (I.cartan(int(i), int(j)) == 0) {
        lw = {int(i), int(j)};
        rw = {int(j), int(i)};
      } else {
        lw = {int(i), int(j), int(i)};
        rw = {int(j), int(i), int(j)};
      }
      bool ok = true;
      for (unsigned l = 0; l < n && ok; ++l) {
        for (char kind : {'E', 'F', 'K'}) {
          SparseVec a = letter_elem(kind, int(l));
          SparseVec b = a;
          for (auto it = lw.rbegin(); it != lw.rend(); ++it)
            a = I.lusztig_elem(*it, a);
          for (auto it = rw.rbegin(); it != rw.rend(); ++it)
            b = I.lusztig_elem(*it, b);
          ok = ok && sub(a, b).empty();
          if (!ok) break;
        }
      }
      rep.check(ok, "braid relation for T_" + std::to_string(i + 1) + ", T_" +
                        std::to_string(j + 1) + " on all generators");
    }
  }
  return rep;
}

CheckReport UqAlgebra::grading_checks() const {
  auto& I = *impl_;
  CheckReport rep;

  // Root vectors are weight homogeneous and straighten to basis monomials.
  bool homog = true, basis = true;
  for (size_t k = 0; k < I.N; ++k) {
    for (const auto& [w, c] : I.eroot[k])
      if (I.wt(w) != I.beta[k]) homog = false;
    std::vector<unsigned> f(I.N, 0), e(I.N, 0);
    std::vector<int> kk(I.n, 0);
    e[k] = 1;
    SparseVec expect{{I.encode(f, kk, e), Scalar::one(I.F)}};
    std::map<uint64_t, Scalar> acc;
    for (const auto& [w, c] : I.eroot[k])
      for (const auto& [ee, cc] : I.straighten(I.to_roots(w))) {
        uint64_t idx = I.encode(f, kk, ee);
        auto it = acc.find(idx);
        if (it == acc.end())
          acc.emplace(idx, c * cc);
        else
          it->second += c * cc;
      }
    SparseVec got;
    for (const auto& [idx, c] : acc)
      if (!c.is_zero()) got.push_back({idx, c});
    if (got != expect) basis = false;
  }
  rep.check(homog, "root vectors are weight homogeneous");
  rep.check(basis, "root vectors straighten to their PBW basis monomials");

  // Prefix gradings: for every prefix w of the defining word and every
  // simple i with w(alpha_i) positive, T_w(E_i) lies in the positive part
  // with weight w(alpha_i).
  bool prefix_ok = true;
  for (size_t t = 0; t < I.N && prefix_ok; ++t) {
    for (unsigned i = 0; i < I.n; ++i) {
      std::vector<int> v(I.n, 0);
      v[i] = 1;
      for (size_t a = t; a-- > 0;)
        v = reflect(I.datum, unsigned(I.word0[a]), v);
      if (!is_positive(v)) continue;
      Mixed x = I.mixed_letter('E', int(i), Scalar::one(I.F));
      for (size_t a = t; a-- > 0;) x = I.lusztig_apply(I.word0[a], x);
      bool clean = false;
      WordPoly pure = I.pure_E_part(x, &clean);
      if (!clean) prefix_ok = false;
      for (const auto& [w, c] : pure)
        if (I.wt(w) != v) prefix_ok = false;
    }
  }
  rep.check(prefix_ok,
            "prefix images T_w(E_i) are positive of weight w(alpha_i)");
  return rep;
}

CheckReport UqAlgebra::verify_power_commutation() const {
  auto& I = *impl_;
  CheckReport rep;
  bool all = true;
  for (size_t j = 0; j < I.N; ++j) {
    for (size_t k = j + 1; k < I.N; ++k) {
      std::vector<unsigned> f(I.N, 0), block(I.N, 0), ej(I.N, 0);
      std::vector<int> kz(I.n, 0);
      for (size_t l = j + 1; l <= k; ++l) block[l] = I.p - 1;
      ej[j] = 1;
      size_t iblock = I.encode(f, kz, block);
      size_t iej = I.encode(f, kz, ej);
      SparseVec lhs = I.mul_keys(iblock, iej);
      long pairing = 0;
      for (size_t l = j + 1; l <= k; ++l)
        pairing += I.root_pair(int(j), int(l));
      Scalar phase = I.qpow(long(I.p - 1) * pairing);
      SparseVec rhs = sparse_scale(phase, I.mul_keys(iej, iblock));
      bool ok = sparse_add(lhs, sparse_scale(-Scalar::one(I.F), rhs)).empty();
      if (!ok) {
        all = false;
        rep.check(false, "power commutation at (j,k) = (" +
                             std::to_string(j + 1) + "," +
                             std::to_string(k + 1) + ")");
      }
    }
  }
  rep.check(all, "power-commutation identity for all root pairs");
  return rep;
}

Vec UqAlgebra::cointegral_closed() const {
  return sparse_to_dense(impl_->F, impl_->dim, impl_->cointegral_sparse());
}

std::vector<Vec> UqAlgebra::pivot_candidates() const {
  std::vector<Vec> out;
  for (unsigned b = 0; b < (1u << impl_->n); ++b) {
    Vec g = vec_zero(impl_->F, impl_->dim);
    g[impl_->pivot_index(b)] = Scalar::one(impl_->F);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<bool> UqAlgebra::pivot_candidate_valid() const {
  // The candidate with bits eps conjugates correctly iff C eps = 0 (mod 2).
  std::vector<bool> out;
  for (unsigned b = 0; b < (1u << impl_->n); ++b) {
    bool ok = true;
    for (unsigned i = 0; i < impl_->n; ++i) {
      int s = 0;
      for (unsigned j = 0; j < impl_->n; ++j)
        s += impl_->cartan(int(i), int(j)) * int((b >> j) & 1u);
      if (s % 2 != 0) ok = false;
    }
    out.push_back(ok);
  }
  return out;
}

Vec UqAlgebra::integral_closed() const {
  Vec mu = vec_zero(impl_->F, impl_->dim);
  mu[impl_->integral_index()] = Scalar::one(impl_->F);
  return mu;
}

Vec UqAlgebra::comodulus_closed() const {
  Vec a = vec_zero(impl_->F, impl_->dim);
  a[impl_->comodulus_index()] = Scalar::one(impl_->F);
  return a;
}

CheckReport UqAlgebra::closed_form_checks() const {
  auto& I = *impl_;
  const HopfAlgebra& H = *hopf_;
  CheckReport rep;
  Scalar one = Scalar::one(I.F);

  SparseVec c = I.cointegral_sparse();
  size_t mu_idx = I.integral_index();
  size_t a_idx = I.comodulus_index();

  // Basis sample: everything up to 4096, otherwise generators plus a
  // deterministic arithmetic sample.
  std::vector<size_t> sample;
  bool full = I.dim <= 4096;
  if (full) {
    sample.resize(I.dim);
    std::iota(sample.begin(), sample.end(), 0);
  } else {
    sample = H.generators();
    for (size_t s = 0; s < 200; ++s)
      sample.push_back((s * 2654435761u) % I.dim);
    std::sort(sample.begin(), sample.end());
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  }

  // (i) Two-sided cointegral: x c = eps(x) c = c x on the sample.
  {
    bool ok = true;
    for (size_t x : sample) {
      SparseVec bx{{x, one}};
      SparseVec lc = I.mul_sparse(bx, c);
      SparseVec rc = I.mul_sparse(c, bx);
      SparseVec want =
          H.counit_coeffs()[x].is_zero() ? SparseVec{} : c;
      if (sparse_add(lc, sparse_scale(-one, want)).size() ||
          sparse_add(rc, sparse_scale(-one, want)).size())
        ok = false;
    }
    rep.check(ok, full ? "cointegral is two-sided (all basis elements)"
                       : "cointegral is two-sided (sampled basis)");
  }

  // Coproduct-based checks are skipped above the tensor-tractable size.
  bool coprod_ok = I.dim <= 4096;
  if (coprod_ok) {
    // (iii) Right-integral identity (mu (x) id) Delta(x) = mu(x) 1.
    bool ok_mu = true, ok_a = true;
    for (size_t x : sample) {
      std::map<uint64_t, Scalar> left, right;
      Scalar mux = Scalar::zero(I.F);
      for (const auto& t : H.coprod(x)) {
        if (t.j == mu_idx) {
          auto it = left.find(t.k);
          if (it == left.end())
            left.emplace(t.k, t.c);
          else
            it->second += t.c;
        }
        if (t.k == mu_idx) {
          auto it = right.find(t.j);
          if (it == right.end())
            right.emplace(t.j, t.c);
          else
            it->second += t.c;
        }
        if (x == mu_idx && t.j == mu_idx && t.k == mu_idx) {
          // handled below via direct lookup
        }
      }
      mux = (x == mu_idx) ? one : Scalar::zero(I.F);
      // (mu (x) id) Delta(x) = mu(x) * 1.
      auto expect_one = [&](std::map<uint64_t, Scalar>& m, size_t target) {
        auto it = m.find(target);
        Scalar got = (it == m.end()) ? Scalar::zero(I.F) : it->second;
        if (got != mux) return false;
        for (const auto& [idx, v] : m)
          if (idx != target && !v.is_zero()) return false;
        return true;
      };
      if (!expect_one(left, 0)) ok_mu = false;
      if (!expect_one(right, a_idx)) ok_a = false;
    }
    rep.check(ok_mu, "closed-form right integral satisfies its defining "
                     "identity on the basis");
    rep.check(ok_a, "comodulus identity (id (x) mu) Delta(x) = mu(x) a holds "
                    "on the basis");
  } else {
    rep.lines.push_back(
        "note: coproduct-based integral checks skipped above dimension 4096");
  }

  // (ii) Pivot candidates against the parity prediction.
  {
    auto valid = pivot_candidate_valid();
    bool ok = true;
    if (I.dim <= 4096) {
      auto cands = pivot_candidates();
      for (size_t b = 0; b < cands.size(); ++b) {
        bool pass = H.verify_pivot(cands[b]);
        if (pass != valid[b]) ok = false;
      }
      rep.check(ok, "pivot candidates match the parity criterion (verified "
                    "by full conjugation sweep)");
    } else {
      // Conjugation check on the generators only.
      for (unsigned b = 0; b < (1u << I.n); ++b) {
        size_t g = I.pivot_index(b);
        size_t ginv;
        {
          std::vector<unsigned> f, e;
          std::vector<int> k;
          I.decode(g, f, k, e);
          for (auto& v : k) v = -v;
          ginv = I.k_index(k);
        }
        bool pass = true;
        for (size_t gen : H.generators()) {
          SparseVec s2 = I.antipode_of(gen);
          std::map<uint64_t, Scalar> acc;
          for (const auto& [i2, c2] : s2)
            for (const auto& [i3, c3] : I.antipode_of(size_t(i2))) {
              auto it = acc.find(i3);
              if (it == acc.end())
                acc.emplace(i3, c2 * c3);
              else
                it->second += c2 * c3;
            }
          SparseVec ss;
          for (const auto& [i2, c2] : acc)
            if (!c2.is_zero()) ss.push_back({i2, c2});
          SparseVec conj = I.mul_sparse(
              I.mul_sparse(SparseVec{{g, one}}, SparseVec{{gen, one}}),
              SparseVec{{ginv, one}});
          if (sparse_add(ss, sparse_scale(-one, conj)).size()) pass = false;
        }
        if (pass != valid[b]) ok = false;
      }
      rep.check(ok, "pivot candidates match the parity criterion (generator "
                    "conjugation)");
    }
  }

  // (v) The comodulus is the square of every pivot candidate.
  {
    bool ok = true;
    for (unsigned b = 0; b < (1u << I.n); ++b) {
      size_t g = I.pivot_index(b);
      SparseVec sq = I.mul_keys(g, g);
      if (sq != SparseVec{{a_idx, one}}) ok = false;
    }
    rep.check(ok, "comodulus equals the square of every pivot candidate");
  }

  // Solver crosschecks at desk scale.
  if (I.dim <= 64) {
    Vec cd = cointegral_closed();
    Vec left = cointegral(H, Side::Left);
    Vec right = cointegral(H, Side::Right);
    Vec cn = normalize_first_nonzero(cd);
    rep.check(cn == left && cn == right,
              "closed-form cointegral matches the linear-system solver "
              "(left and right)");
    Vec mu = right_integral(H);
    rep.check(normalize_first_nonzero(integral_closed()) == mu,
              "closed-form integral matches the linear-system solver");
    rep.check(comodulus(H) == comodulus_closed(),
              "closed-form comodulus matches the linear-system solver");
  }
  return rep;
}

}  // namespace hopfkit

// Primitive idempotent decomposition in characteristic 0.
//
// The Jacobson radical J is computed exactly as the radical of the trace
// form of the regular representation.  The semisimple quotient A/J is then
// split by repeatedly refining idempotents: for a corner algebra e(A/J)e
// of dimension > 1, a candidate element b is taken from a deterministic
// pool, its minimal polynomial is computed exactly, factored into pairwise
// coprime exact factors, and the partial-fraction idempotents of
// F[x]/(m) are evaluated at b.  The resulting idempotents of A/J are
// lifted into A by the exact Newton iteration e <- 3e^2 - 2e^3 through the
// nilpotent radical, with a corner trick keeping the family orthogonal.
//
// The only step that is not plain linear algebra over the base field is
// locating the eigenvalues of b that lie in the base field.  That is done
// modulo an inert prime l (one keeping the defining cyclotomic polynomial
// irreducible, so the residue ring is the field GF(l^d)): roots are found
// there by brute force, Hensel-lifted to l^K, and pulled back by rational
// reconstruction.  Every recovered root is verified exactly, so the
// modular search is a heuristic, never a trust boundary.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <random>

#include "hopfkit/modtrace.hpp"

namespace hopfkit {

namespace {

// ------------------------------------------------------------------
// Exact reduction modulo a subspace (row echelon kept fully reduced).

struct EchelonSpace {
  std::vector<Vec> rows;
  std::vector<size_t> pivots;

  void add(Vec v) {
    reduce(v);
    size_t p = v.size();
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) {
        p = k;
        break;
      }
    if (p == v.size()) return;
    Scalar inv = v[p].inverse();
    for (auto& c : v) c *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar f = rows[r][p];
      if (f.is_zero()) continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) rows[r][k] -= f * v[k];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
  }

  void reduce(Vec& v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (!rows[r][k].is_zero()) v[k] -= f * rows[r][k];
    }
  }

  size_t rank() const { return rows.size(); }
};

// Echelon space with dependency tracking, used for minimal polynomials:
// when an inserted vector is dependent, the coefficients expressing the
// dependency over all insertions (the new vector last, coefficient 1) are
// returned.
struct TrackedEchelon {
  FieldSpec F;
  std::vector<Vec> rows;
  std::vector<Vec> combos;
  std::vector<size_t> pivots;
  size_t inserted = 0;

  explicit TrackedEchelon(const FieldSpec& f) : F(f) {}

  std::optional<Vec> add(Vec v) {
    Vec combo(inserted + 1, Scalar::zero(F));
    combo[inserted] = Scalar::one(F);
    ++inserted;
    for (auto& c : combos) c.push_back(Scalar::zero(F));
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar f = v[pivots[r]];
      if (f.is_zero()) continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (!rows[r][k].is_zero()) v[k] -= f * rows[r][k];
      for (size_t k = 0; k < combos[r].size(); ++k)
        if (!combos[r][k].is_zero()) combo[k] -= f * combos[r][k];
    }
    size_t p = v.size();
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) {
        p = k;
        break;
      }
    if (p == v.size()) return combo;
    Scalar inv = v[p].inverse();
    for (auto& c : v) c *= inv;
    for (auto& c : combo) c *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar f = rows[r][p];
      if (f.is_zero()) continue;
      for (size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) rows[r][k] -= f * v[k];
      for (size_t k = 0; k < combo.size(); ++k)
        if (!combo[k].is_zero()) combos[r][k] -= f * combo[k];
    }
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(p);
    return std::nullopt;
  }
};

// ------------------------------------------------------------------
// Exact polynomials over the base field, low degree first.

using SPoly = std::vector<Scalar>;

void sp_trim(SPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

SPoly sp_mul(const FieldSpec& F, const SPoly& a, const SPoly& b) {
  if (a.empty() || b.empty()) return {};
  SPoly out(a.size() + b.size() - 1, Scalar::zero(F));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  sp_trim(out);
  return out;
}

std::pair<SPoly, SPoly> sp_divmod(const FieldSpec& F, SPoly a,
                                  const SPoly& b) {
  SPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Scalar::zero(F));
  Scalar lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    Scalar c = a.back() * lead_inv;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    sp_trim(a);
  }
  sp_trim(q);
  return {q, a};
}

Scalar sp_eval(const FieldSpec& F, const SPoly& p, const Scalar& x) {
  Scalar acc = Scalar::zero(F);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

SPoly sp_deriv(const FieldSpec& F, const SPoly& p) {
  SPoly out;
  for (size_t i = 1; i < p.size(); ++i)
    out.push_back(p[i] * Scalar::from_int(F, long(i)));
  sp_trim(out);
  return out;
}

SPoly sp_monic(SPoly p) {
  sp_trim(p);
  if (p.empty()) return p;
  Scalar inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

SPoly sp_gcd(const FieldSpec& F, SPoly a, SPoly b) {
  sp_trim(a);
  sp_trim(b);
  while (!b.empty()) {
    SPoly r = sp_divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return sp_monic(std::move(a));
}

// Inverse of a modulo m (requires gcd(a, m) = 1).
SPoly sp_inv_mod(const FieldSpec& F, SPoly a, const SPoly& m) {
  SPoly r0 = m, r1 = std::move(a);
  SPoly t0, t1 = {Scalar::one(F)};
  sp_trim(r1);
  while (!r1.empty()) {
    auto [q, r2] = sp_divmod(F, r0, r1);
    SPoly qt = sp_mul(F, q, t1);
    SPoly t2 = t0;
    t2.resize(std::max(t2.size(), qt.size()), Scalar::zero(F));
    for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    sp_trim(t2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1)
    throw TraceError("idempotents: polynomial inverse of non-coprime input");
  Scalar inv = r0[0].inverse();
  for (auto& c : t0) c *= inv;
  return sp_divmod(F, t0, m).second;
}

// ------------------------------------------------------------------
// GF(l^d) = GF(l)[z]/Phi with Phi irreducible mod l (d == 1 degenerates
// to plain GF(l)).  Used only to locate base-field roots of exact minimal
// polynomials.

struct GFq {
  unsigned long ell = 0;
  size_t d = 1;
  std::vector<unsigned long> phi;  // monic mod l, size d+1 (unused if d==1)

  using E = std::vector<unsigned long>;

  E zero() const { return E(d, 0); }
  E one() const {
    E e(d, 0);
    e[0] = 1;
    return e;
  }
  bool is_zero(const E& a) const {
    for (auto c : a)
      if (c) return false;
    return true;
  }
  E add(const E& a, const E& b) const {
    E o(d);
    for (size_t i = 0; i < d; ++i) o[i] = (a[i] + b[i]) % ell;
    return o;
  }
  E mul(const E& a, const E& b) const {
    std::vector<unsigned long> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < d; ++j)
        if (b[j]) prod[i + j] = (prod[i + j] + a[i] * b[j]) % ell;
    }
    for (size_t k = prod.size(); k-- > d;) {
      unsigned long c = prod[k];
      if (!c) continue;
      prod[k] = 0;
      for (size_t i = 0; i < d; ++i) {
        size_t t = k - d + i;
        prod[t] = (prod[t] + (ell - phi[i]) % ell * c) % ell;
      }
    }
    prod.resize(d);
    return prod;
  }
  E pow(E a, unsigned long e) const {
    E r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  unsigned long q() const {
    unsigned long v = 1;
    for (size_t i = 0; i < d; ++i) v *= ell;
    return v;
  }
  E inv(const E& a) const {
    if (is_zero(a)) throw FieldError("GFq: division by zero");
    return pow(a, q() - 2);
  }
  E from_index(unsigned long idx) const {
    E e(d);
    for (size_t i = 0; i < d; ++i) {
      e[i] = idx % ell;
      idx /= ell;
    }
    return e;
  }

  // Embeds an exact base-field scalar; throws FieldError when a
  // denominator vanishes mod l.
  E from_scalar(const Scalar& s) const {
    auto embed_q = [&](const mpq_class& v) -> unsigned long {
      mpz_class lz(ell);
      mpz_class num = ((v.get_num() % lz) + lz) % lz;
      mpz_class den = ((v.get_den() % lz) + lz) % lz;
      if (den == 0) throw FieldError("denominator divisible by l");
      unsigned long nu = num.get_ui();
      unsigned long de = den.get_ui();
      unsigned long inv = 1, base = de, e = ell - 2;
      while (e) {
        if (e & 1) inv = inv * base % ell;
        base = base * base % ell;
        e >>= 1;
      }
      return nu * inv % ell;
    };
    E e = zero();
    if (s.field().kind() == FieldKind::Rational) {
      e[0] = embed_q(s.rational());
    } else {
      const auto& cs = s.coeffs();
      for (size_t i = 0; i < cs.size(); ++i) e[i] = embed_q(cs[i]);
    }
    return e;
  }

  E eval_poly(const std::vector<E>& p, const E& x) const {
    E acc = zero();
    for (size_t i = p.size(); i-- > 0;) acc = add(mul(acc, x), p[i]);
    return acc;
  }
};

// ------------------------------------------------------------------
// R = (Z/l^K)[z]/Phi, the lifting ring for Hensel iteration on roots.

struct LiftRing {
  mpz_class mod;
  size_t d = 1;
  std::vector<mpz_class> phi;  // monic, size d+1 (unused if d==1)

  using Elt = std::vector<mpz_class>;

  Elt zero() const { return Elt(d, 0); }
  bool is_zero(const Elt& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt o(d);
    for (size_t i = 0; i < d; ++i) o[i] = (a[i] + b[i]) % mod;
    return o;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt o(d);
    for (size_t i = 0; i < d; ++i) o[i] = ((a[i] - b[i]) % mod + mod) % mod;
    return o;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<mpz_class> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < d; ++j)
        if (b[j] != 0) prod[i + j] = (prod[i + j] + a[i] * b[j]) % mod;
    }
    for (size_t k = prod.size(); k-- > d;) {
      mpz_class c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (size_t i = 0; i < d; ++i) {
        size_t t = k - d + i;
        prod[t] = ((prod[t] - c * phi[i]) % mod + mod) % mod;
      }
    }
    prod.resize(d);
    return prod;
  }
  Elt scale_int(long c, const Elt& a) const {
    Elt o(d);
    for (size_t i = 0; i < d; ++i) o[i] = ((a[i] * c) % mod + mod) % mod;
    return o;
  }

  Elt from_scalar(const Scalar& s) const {
    auto embed_q = [&](const mpq_class& v) {
      mpz_class num = v.get_num() % mod;
      mpz_class den = v.get_den() % mod;
      mpz_class dinv;
      if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw FieldError("denominator not invertible mod l^K");
      return mpz_class(((num * dinv) % mod + mod) % mod);
    };
    Elt e = zero();
    if (s.field().kind() == FieldKind::Rational) {
      e[0] = embed_q(s.rational());
    } else {
      const auto& cs = s.coeffs();
      for (size_t i = 0; i < cs.size(); ++i) e[i] = embed_q(cs[i]);
    }
    return e;
  }

  Elt eval_poly(const std::vector<Elt>& p, const Elt& x) const {
    Elt acc = zero();
    for (size_t i = p.size(); i-- > 0;) acc = add(mul(acc, x), p[i]);
    return acc;
  }

};

// Rational reconstruction of c mod M with |num|, den <= sqrt(M/2).
bool rat_reconstruct(const mpz_class& c, const mpz_class& M, mpq_class* out) {
  mpz_class bound, half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = M, r1 = ((c % M) + M) % M;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  mpz_class den = t1 < 0 ? mpz_class(-t1) : t1;
  mpz_class num = t1 < 0 ? mpz_class(-r1) : r1;
  if (den == 0 || den > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    num /= g;
    den /= g;
  }
  *out = mpq_class(num, den);
  out->canonicalize();
  return true;
}

bool is_prime_ul(unsigned long v) {
  if (v < 2) return false;
  for (unsigned long f = 2; f * f <= v; ++f)
    if (v % f == 0) return false;
  return true;
}

unsigned long mult_order_mod(unsigned long a, unsigned long N) {
  if (N == 1) return 1;
  unsigned long x = a % N, ord = 1;
  while (x != 1) {
    x = x * a % N;
    if (++ord > N) return 0;  // not coprime
  }
  return ord;
}

// ------------------------------------------------------------------
// The exact splitter.

struct ExactSplitter {
  const HopfAlgebra& H;
  const EchelonSpace& J;
  // Spanning set of the (sub)algebra being decomposed; products of corner
  // elements with pool elements stay inside that subalgebra.
  const std::vector<Vec>& pool;
  FieldSpec F;
  size_t n;
  mutable std::mt19937_64 rng{20240817};

  ExactSplitter(const HopfAlgebra& h, const EchelonSpace& j,
                const std::vector<Vec>& spanning)
      : H(h), J(j), pool(spanning), F(h.field()), n(h.dim()) {}

  Vec reduceJ(Vec v) const {
    J.reduce(v);
    return v;
  }

  // Exact minimal polynomial of b in the corner algebra e (A/J) e (monic,
  // low degree first); all vectors in radical-reduced coordinates.
  SPoly min_poly(const Vec& e, const Vec& b) const {
    TrackedEchelon span(F);
    Vec cur = e;
    while (true) {
      auto dep = span.add(cur);
      if (dep) return *dep;
      cur = reduceJ(H.multiply(cur, b));
      if (span.rows.size() > n + 1)
        throw TraceError("idempotents: minimal polynomial did not terminate");
    }
  }

  Vec eval_at(const SPoly& p, const Vec& e, const Vec& b) const {
    Vec acc = vec_zero(F, n);
    for (size_t i = p.size(); i-- > 0;) {
      acc = reduceJ(H.multiply(acc, b));
      if (!p[i].is_zero()) acc = vec_add(acc, vec_scale(p[i], e));
    }
    return acc;
  }

  size_t corner_dim(const Vec& e) const {
    EchelonSpace span;
    for (const Vec& b : pool)
      span.add(reduceJ(H.multiply(H.multiply(e, b), e)));
    return span.rank();
  }

  // Base-field roots of a squarefree monic polynomial: located modulo an
  // inert prime, Hensel-lifted, rationally reconstructed, then verified
  // exactly.  Roots outside the base field are simply not returned.
  std::vector<Scalar> field_roots(const SPoly& g) const {
    if (g.size() <= 1) return {};
    const bool cyclo = F.kind() == FieldKind::Cyclotomic;
    const unsigned N = cyclo ? F.N() : 1;
    const size_t d = F.degree();

    int primes_tried = 0;
    for (unsigned long ell = 5;; ++ell) {
      if (!is_prime_ul(ell)) continue;
      if (cyclo && mult_order_mod(ell, N) != d) continue;
      if (++primes_tried > 25)
        throw TraceError("idempotents: no usable prime for root finding");
      try {
        GFq K;
        K.ell = ell;
        K.d = d;
        if (d > 1) {
          K.phi.resize(d + 1);
          const auto& phi = F.cyclo().phi;
          for (size_t i = 0; i <= d; ++i) {
            mpz_class lz(ell);
            mpz_class c = ((mpz_class(phi[i].get_num()) % lz) + lz) % lz;
            K.phi[i] = c.get_ui();
          }
        }
        if (K.q() > 2000000) throw FieldError("residue field too large");

        std::vector<GFq::E> gm, gmd;
        for (const Scalar& c : g) gm.push_back(K.from_scalar(c));
        if (K.is_zero(gm.back())) throw FieldError("degree drop");
        {
          SPoly der = sp_deriv(F, g);
          for (const Scalar& c : der) gmd.push_back(K.from_scalar(c));
        }

        // Brute-force simple roots in GF(l^d); a multiple root mod l
        // blocks Hensel lifting, so such primes are skipped entirely.
        std::vector<GFq::E> roots_mod;
        for (unsigned long idx = 0; idx < K.q(); ++idx) {
          GFq::E x = K.from_index(idx);
          if (!K.is_zero(K.eval_poly(gm, x))) continue;
          if (K.is_zero(K.eval_poly(gmd, x)))
            throw FieldError("multiple root mod l");
          roots_mod.push_back(x);
        }

        std::vector<Scalar> found;
        for (const GFq::E& r0 : roots_mod) {
          std::optional<Scalar> lam = lift_root(g, K, r0);
          if (lam) found.push_back(*lam);
        }
        return found;
      } catch (const FieldError&) {
        continue;
      }
    }
  }

  // Hensel-lifts one simple root and reconstructs it in the base field;
  // returns nullopt when the root is (or behaves like) an irrational one.
  std::optional<Scalar> lift_root(const SPoly& g, const GFq& K,
                                  const GFq::E& r0) const {
    const size_t d = F.degree();
    SPoly der = sp_deriv(F, g);
    for (unsigned prec = 32; prec <= 2048; prec *= 2) {
      LiftRing R;
      R.d = d;
      mpz_class lz(K.ell);
      mpz_pow_ui(R.mod.get_mpz_t(), lz.get_mpz_t(), prec);
      if (d > 1) {
        R.phi.resize(d + 1);
        for (size_t i = 0; i <= d; ++i)
          R.phi[i] =
              ((mpz_class(F.cyclo().phi[i].get_num()) % R.mod) + R.mod) %
              R.mod;
      }
      std::vector<LiftRing::Elt> gR, gdR;
      for (const Scalar& c : g) gR.push_back(R.from_scalar(c));
      for (const Scalar& c : der) gdR.push_back(R.from_scalar(c));

      LiftRing::Elt lam = R.zero();
      for (size_t k = 0; k < d; ++k) lam[k] = r0[k];
      unsigned iters = unsigned(mpz_sizeinbase(R.mod.get_mpz_t(), 2)) + 8;
      bool converged = false;
      for (unsigned it = 0; it < iters; ++it) {
        LiftRing::Elt val = R.eval_poly(gR, lam);
        if (R.is_zero(val)) {
          converged = true;
          break;
        }
        LiftRing::Elt dv = R.eval_poly(gdR, lam);
        // Inverse of dv: Newton from the mod-l inverse.
        GFq::E dv0(d);
        for (size_t k = 0; k < d; ++k)
          dv0[k] = mpz_class(dv[k] % (long)K.ell).get_ui();
        GFq::E seed = K.inv(dv0);
        LiftRing::Elt x = R.zero();
        for (size_t k = 0; k < d; ++k) x[k] = seed[k];
        unsigned inv_iters = unsigned(mpz_sizeinbase(R.mod.get_mpz_t(), 2)) + 4;
        for (unsigned j = 0; j < inv_iters; ++j) {
          LiftRing::Elt two = R.zero();
          two[0] = 2;
          LiftRing::Elt nx = R.mul(x, R.sub(two, R.mul(dv, x)));
          if (nx == x) break;
          x = std::move(nx);
        }
        lam = R.sub(lam, R.mul(val, x));
      }
      if (!converged) continue;

      Scalar s = Scalar::zero(F);
      Scalar zp = Scalar::one(F);
      bool ok = true;
      for (size_t k = 0; k < d && ok; ++k) {
        mpq_class q;
        if (!rat_reconstruct(lam[k], R.mod, &q)) {
          ok = false;
          break;
        }
        s += Scalar::from_rational(F, q) * zp;
        if (k + 1 < d) zp *= Scalar::gen(F);
      }
      if (!ok) continue;  // more precision
      if (!sp_eval(F, g, s).is_zero()) continue;
      return s;
    }
    return std::nullopt;
  }

  // Candidate pool for splitting a corner: compressed basis elements
  // first (their spectra tend to be roots of unity and small rationals),
  // then small random integer combinations.
  Vec candidate(const Vec& e, size_t attempt) const {
    if (attempt < pool.size()) {
      return reduceJ(H.multiply(H.multiply(e, pool[attempt]), e));
    }
    Vec x = vec_zero(F, n);
    for (const Vec& b : pool) {
      Scalar c = Scalar::from_int(F, long(rng() % 5) - 2);
      if (!c.is_zero()) x = vec_add(x, vec_scale(c, b));
    }
    return reduceJ(H.multiply(H.multiply(e, x), e));
  }

  void split(const Vec& e, std::vector<Vec>& out, int depth = 0) const {
    if (depth > 64)
      throw TraceError("idempotents: splitting recursion too deep");
    if (corner_dim(e) == 1) {
      out.push_back(e);
      return;
    }
    for (size_t attempt = 0; attempt < pool.size() + 96; ++attempt) {
      Vec b = candidate(e, attempt);
      if (vec_is_zero(b)) continue;
      SPoly m = min_poly(e, b);
      if (m.size() <= 2) continue;  // b is a scalar multiple of e
      SPoly g = sp_monic(sp_divmod(F, m, sp_gcd(F, m, sp_deriv(F, m))).first);

      std::vector<Scalar> roots = field_roots(g);
      if (roots.empty()) continue;

      // Pairwise coprime exact factors of m: (x - lambda)^mult per
      // recovered root, plus the exact cofactor.
      std::vector<SPoly> factors;
      SPoly rem = m;
      for (const Scalar& lam : roots) {
        SPoly lin = {-lam, Scalar::one(F)};
        SPoly power = {Scalar::one(F)};
        while (true) {
          auto [q, r] = sp_divmod(F, rem, lin);
          if (!r.empty()) break;
          rem = q;
          power = sp_mul(F, power, lin);
        }
        if (power.size() > 1) factors.push_back(power);
      }
      if (rem.size() > 1) factors.push_back(rem);
      if (factors.size() < 2) continue;

      // Partial-fraction idempotents of F[x]/(m), pushed into the corner.
      for (const SPoly& f : factors) {
        SPoly gi = sp_divmod(F, m, f).first;
        SPoly si = sp_inv_mod(F, gi, f);
        SPoly u = sp_divmod(F, sp_mul(F, gi, si), m).second;
        split(eval_at(u, e, b), out, depth + 1);
      }
      return;
    }
    throw TraceError(
        "idempotents: failed to split a corner algebra (the semisimple "
        "quotient may not be split over the base field)");
  }
};

// Radical of the trace form B(x, y) = tr(L_x L_y), as an echelon space.
// tr(L_i L_j) is accumulated entrywise from the sparse left-multiplication
// matrices to avoid full dense products.
EchelonSpace trace_form_radical(const HopfAlgebra& H) {
  const FieldSpec& F = H.field();
  const size_t n = H.dim();
  std::vector<SparseMatrix> L;
  for (size_t i = 0; i < n; ++i)
    L.push_back(H.left_mult_matrix(H.basis_elem(i)));
  ExactMatrix G(F, n, n);
  for (size_t j = 0; j < n; ++j) {
    ExactMatrix Dj = L[j].to_dense();
    for (size_t i = 0; i <= j; ++i) {
      Scalar v = Scalar::zero(F);
      for (size_t k = 0; k < n; ++k)
        for (const auto& [m, s] : L[i].row(k)) v = v + s * Dj.at(m, k);
      G.at(i, j) = v;
      G.at(j, i) = v;
    }
  }
  EchelonSpace J;
  for (const Vec& v : G.nullspace()) J.add(v);
  return J;
}

}  // namespace

// Complete orthogonal family of primitive idempotents of the unital
// subalgebra spanned by `subalgebra` (which must contain the unit and be
// closed under multiplication).  The radical used for the semisimple
// reduction is the radical of the ambient algebra, which is valid whenever
// rad(S) = S ∩ rad(H) — true for S = H itself and for S = Z(H).
std::vector<Vec> primitive_idempotent_family(
    const HopfAlgebra& H, const std::vector<Vec>& subalgebra) {
  const FieldSpec& F = H.field();
  const size_t n = H.dim();
  if (F.characteristic() != 0)
    throw TraceError(
        "primitive idempotents: only supported in characteristic 0 (the "
        "trace-form radical criterion fails in characteristic p)");
  if (subalgebra.empty())
    throw TraceError("primitive idempotents: empty spanning set");

  // Exact radical of the trace form B(x, y) = tr(L_x L_y).
  EchelonSpace J = trace_form_radical(H);

  // Complete family of primitive idempotents of S/rad (reduced coords).
  ExactSplitter splitter(H, J, subalgebra);
  std::vector<Vec> prims;
  splitter.split(splitter.reduceJ(H.unit()), prims);
  if (prims.empty())
    throw TraceError("idempotents: splitting produced no idempotents");

  // Lift sequentially into A by exact Newton iteration; the corner through
  // 1 - (sum of already-lifted idempotents) keeps the family orthogonal.
  auto newton = [&](Vec u) {
    for (int it = 0; it < 64; ++it) {
      Vec u2 = H.multiply(u, u);
      if (u2 == u) return u;
      Vec u3 = H.multiply(u2, u);
      u = vec_sub(vec_scale(Scalar::from_int(F, 3), u2),
                  vec_scale(Scalar::from_int(F, 2), u3));
    }
    throw TraceError("idempotents: Newton lift did not converge");
  };
  std::vector<Vec> exact;
  Vec cap = H.unit();
  for (const Vec& p : prims) {
    Vec u = newton(H.multiply(H.multiply(cap, p), cap));
    exact.push_back(u);
    cap = vec_sub(cap, u);
  }
  // The leftover 1 - sum is an idempotent inside the nilpotent radical,
  // hence zero; anything else indicates a genuine failure.
  if (!vec_is_zero(cap))
    throw TraceError("idempotents: lifted family does not sum to 1");

  // Exact verification: idempotent, pairwise orthogonal, primitive.
  for (size_t i = 0; i < exact.size(); ++i) {
    if (H.multiply(exact[i], exact[i]) != exact[i])
      throw TraceError("idempotents: lifted element is not idempotent");
    for (size_t j = i + 1; j < exact.size(); ++j)
      if (!vec_is_zero(H.multiply(exact[i], exact[j])) ||
          !vec_is_zero(H.multiply(exact[j], exact[i])))
        throw TraceError("idempotents: lifted family is not orthogonal");
  }
  for (const Vec& e : exact) {
    EchelonSpace span;
    for (const Vec& b : subalgebra) {
      Vec v = H.multiply(H.multiply(e, b), e);
      J.reduce(v);
      span.add(v);
    }
    if (span.rank() != 1)
      throw TraceError("idempotents: lifted idempotent is not primitive");
  }
  return exact;
}

IdempotentDecomposition primitive_idempotents(const HopfAlgebra& H) {
  const size_t n = H.dim();
  std::vector<Vec> basis;
  for (size_t i = 0; i < n; ++i) basis.push_back(H.basis_elem(i));
  std::vector<Vec> exact = primitive_idempotent_family(H, basis);

  // Iso-class detection needs Hom spaces modulo the radical.
  EchelonSpace J = trace_form_radical(H);

  IdempotentDecomposition out;
  out.idempotents = exact;
  for (const Vec& e : exact)
    out.summands.push_back(
        summand_from_idempotent(H, H.right_mult_matrix(e), 1));
  // He_i ~ He_j iff both e_i (A/J) e_j and e_j (A/J) e_i are nonzero.
  auto hom_nonzero = [&](const Vec& a, const Vec& b) {
    for (size_t s = 0; s < n; ++s) {
      Vec v = H.multiply(H.multiply(a, H.basis_elem(s)), b);
      J.reduce(v);
      if (!vec_is_zero(v)) return true;
    }
    return false;
  };
  out.iso_class.assign(exact.size(), size_t(-1));
  out.num_classes = 0;
  for (size_t i = 0; i < exact.size(); ++i) {
    if (out.iso_class[i] != size_t(-1)) continue;
    size_t cls = out.num_classes++;
    out.iso_class[i] = cls;
    for (size_t j = i + 1; j < exact.size(); ++j)
      if (out.iso_class[j] == size_t(-1) && hom_nonzero(exact[i], exact[j]) &&
          hom_nonzero(exact[j], exact[i]))
        out.iso_class[j] = cls;
  }
  return out;
}

}  // namespace hopfkit

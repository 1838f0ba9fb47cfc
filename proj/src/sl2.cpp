#include "hopfkit/sl2.hpp"

#include <iomanip>
#include <sstream>

namespace hopfkit {

namespace {

std::string idx(const std::string& base, unsigned s, char sign) {
  std::ostringstream os;
  os << base << s << sign << ")";
  return os.str();
}

}  // namespace

void Sl2Catalog::check_central(const Vec& z, const std::string& what) const {
  const HopfAlgebra& H = algebra();
  for (const Vec* x : {&E_, &F_elem_, &K_})
    if (H.multiply(z, *x) != H.multiply(*x, z))
      throw TraceError("sl2 catalog: " + what + " is not central");
}

Vec Sl2Catalog::monomial(unsigned a, unsigned b, unsigned j) const {
  const HopfAlgebra& H = algebra();
  return H.multiply(H.multiply(H.pow(F_elem_, a), H.pow(E_, b)),
                    H.pow(K_, j));
}

Sl2Catalog::Sl2Catalog(unsigned p)
    : p_(p),
      uq_(CartanDatum::make('A', 1), default_reduced_word(CartanDatum::make('A', 1)), p),
      F_(uq_.hopf().field()) {
  const HopfAlgebra& H = algebra();
  const long P = long(p);
  E_ = H.parse_element("E");
  F_elem_ = H.parse_element("F");
  K_ = H.parse_element("K");

  // Symmetrised right integral for the pivot g = K^{p+1}.
  g_ = H.pow(K_, p + 1);
  mu_g_ = symmetrise(H, right_integral(H), g_, Side::Right);

  // mu_g is supported on the single monomial F^{p-1} E^{p-1} K^0; its value
  // there is the normalization constant eta.
  eta_ = H.eval_form(mu_g_, monomial(p - 1, p - 1, 0));
  if (eta_.is_zero())
    throw TraceError("sl2 catalog: mu_g vanishes at F^{p-1} E^{p-1}");
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      for (unsigned j = 0; j < 2 * p; ++j) {
        Scalar v = H.eval_form(mu_g_, monomial(a, b, j));
        Scalar want = (a == p - 1 && b == p - 1 && j == 0) ? eta_
                                                           : Scalar::zero(F_);
        if (v != want)
          throw TraceError("sl2 catalog: mu_g support is not the single "
                           "monomial F^{p-1} E^{p-1}");
      }

  // zeta_0, zeta_s (1 <= s <= p-1), zeta_p.
  Scalar fupp = q_factorial(F_, p - 1);          // [p-1]!
  Scalar base = (fupp * fupp *
                 Scalar::from_int(F_, 2 * P)).inverse();  // 1/(2p [p-1]!^2)
  zeta_.assign(p + 1, Scalar::zero(F_));
  zeta_[0] = Scalar::from_int(F_, (p - 1) % 2 == 0 ? 1 : -1) * base;
  zeta_[p] = base;
  for (unsigned s = 1; s < p; ++s) {
    Scalar qs = q_int(F_, long(s));
    zeta_[s] = Scalar::from_int(F_, (p - s - 1) % 2 == 0 ? 1 : -1) * base *
               qs * qs;
  }

  // The common quadruple-sum shape behind w_s^pm, e_0 and e_p:
  //   zeta * sum_{n=0}^{S} sum_{i=0}^{n} sum_{j=0}^{2p-1}
  //     sign^{i+j} ([i]!)^2 q^{j(S-2n)} [S-n+i ch i][n ch i] F^{p-1-i}E^{p-1-i}K^j
  std::vector<Vec> fe(p);  // F^{p-1-i} E^{p-1-i}
  for (unsigned i = 0; i < p; ++i)
    fe[i] = H.multiply(H.pow(F_elem_, p - 1 - i), H.pow(E_, p - 1 - i));
  std::vector<Vec> kpow(2 * p);
  for (unsigned j = 0; j < 2 * p; ++j) kpow[j] = H.pow(K_, j);

  auto quad = [&](unsigned S, bool with_sign, const Scalar& zeta) {
    Vec acc = vec_zero(F_, H.dim());
    for (unsigned n = 0; n <= S; ++n)
      for (unsigned i = 0; i <= n; ++i) {
        Scalar fi = q_factorial(F_, i);
        Scalar coeff = fi * fi * q_binom(F_, S - n + i, i) *
                       q_binom(F_, n, i);
        for (unsigned j = 0; j < 2 * p; ++j) {
          Scalar c = coeff *
                     Scalar::root_of_unity_power(
                         F_, long(j) * (long(S) - 2 * long(n)));
          if (with_sign && (i + j) % 2 == 1) c = -c;
          acc = vec_add(acc, vec_scale(c, H.multiply(fe[i], kpow[j])));
        }
      }
    return vec_scale(zeta, acc);
  };

  wp_.resize(p == 0 ? 0 : p - 1);
  wm_.resize(p - 1);
  for (unsigned s = 1; s < p; ++s) {
    wp_[s - 1] = quad(s - 1, false, zeta_[s]);
    wm_[s - 1] = quad(p - s - 1, true, zeta_[s]);
    check_central(wp_[s - 1], idx("w(", s, '+'));
    check_central(wm_[s - 1], idx("w(", s, '-'));
  }
  Vec e0 = quad(p - 1, true, zeta_[0]);
  Vec ep = quad(p - 1, false, zeta_[p]);
  check_central(e0, "e(0)");
  check_central(ep, "e(p)");

  // Complete family of central primitive idempotents (the block
  // idempotents of H); the closed forms for e_0 and e_p must appear
  // verbatim, and e_s is the unique member acting as identity on w_s^+.
  std::vector<Vec> fam = primitive_idempotent_family(H, H.center());
  if (fam.size() != p + 1)
    throw TraceError("sl2 catalog: expected p+1 blocks");
  e_.assign(p + 1, Vec{});
  std::vector<bool> used(fam.size(), false);
  auto claim = [&](const Vec& v, unsigned slot, const std::string& what) {
    for (size_t i = 0; i < fam.size(); ++i)
      if (!used[i] && fam[i] == v) {
        used[i] = true;
        e_[slot] = fam[i];
        return;
      }
    throw TraceError("sl2 catalog: " + what +
                     " is not a central primitive idempotent");
  };
  claim(e0, 0, "closed form e(0)");
  claim(ep, p, "closed form e(p)");
  for (unsigned s = 1; s < p; ++s) {
    bool found = false;
    for (size_t i = 0; i < fam.size(); ++i) {
      if (used[i]) continue;
      if (H.multiply(fam[i], wp_[s - 1]) == wp_[s - 1]) {
        if (found)
          throw TraceError("sl2 catalog: block of w(s+) is not unique");
        used[i] = true;
        e_[s] = fam[i];
        found = true;
      }
    }
    if (!found)
      throw TraceError("sl2 catalog: no block idempotent fixes w(s+)");
  }

  // Recorded squares of the nilpotent part.
  wp_sq_.resize(p - 1);
  wm_sq_.resize(p - 1);
  for (unsigned s = 1; s < p; ++s) {
    wp_sq_[s - 1] = H.multiply(wp_[s - 1], wp_[s - 1]);
    wm_sq_[s - 1] = H.multiply(wm_[s - 1], wm_[s - 1]);
  }

  // Cartan projectors pi_n = (1/2p) sum_j q^{-nj} K^j, verified to be a
  // complete orthogonal idempotent family.
  Scalar inv2p = Scalar::from_int(F_, 2 * P).inverse();
  pi_.resize(2 * p);
  for (unsigned n = 0; n < 2 * p; ++n) {
    Vec acc = vec_zero(F_, H.dim());
    for (unsigned j = 0; j < 2 * p; ++j)
      acc = vec_add(acc,
                    vec_scale(Scalar::root_of_unity_power(
                                  F_, -long(n) * long(j)),
                              kpow[j]));
    pi_[n] = vec_scale(inv2p, acc);
  }
  Vec total = vec_zero(F_, H.dim());
  for (unsigned n = 0; n < 2 * p; ++n) {
    total = vec_add(total, pi_[n]);
    for (unsigned m = 0; m < 2 * p; ++m) {
      Vec prod = H.multiply(pi_[n], pi_[m]);
      if (n == m ? prod != pi_[n] : !vec_is_zero(prod))
        throw TraceError("sl2 catalog: Cartan projectors are not an "
                         "orthogonal idempotent family");
    }
  }
  if (total != H.unit())
    throw TraceError("sl2 catalog: Cartan projectors do not sum to 1");
}

const Vec& Sl2Catalog::w_plus(unsigned s) const {
  if (s < 1 || s >= p_) throw TraceError("sl2 catalog: w index out of range");
  return wp_[s - 1];
}
const Vec& Sl2Catalog::w_minus(unsigned s) const {
  if (s < 1 || s >= p_) throw TraceError("sl2 catalog: w index out of range");
  return wm_[s - 1];
}
const Vec& Sl2Catalog::w_plus_square(unsigned s) const {
  if (s < 1 || s >= p_) throw TraceError("sl2 catalog: w index out of range");
  return wp_sq_[s - 1];
}
const Vec& Sl2Catalog::w_minus_square(unsigned s) const {
  if (s < 1 || s >= p_) throw TraceError("sl2 catalog: w index out of range");
  return wm_sq_[s - 1];
}
const Vec& Sl2Catalog::e(unsigned s) const {
  if (s > p_) throw TraceError("sl2 catalog: e index out of range");
  return e_[s];
}
const Scalar& Sl2Catalog::zeta(unsigned s) const {
  if (s > p_) throw TraceError("sl2 catalog: zeta index out of range");
  return zeta_[s];
}
const Vec& Sl2Catalog::pi(unsigned n) const {
  if (n >= 2 * p_) throw TraceError("sl2 catalog: pi index out of range");
  return pi_[n];
}

Vec Sl2Catalog::block_idempotent(unsigned n, unsigned s) const {
  if (n >= 2 * p_ || s > p_)
    throw TraceError("sl2 catalog: block idempotent index out of range");
  if ((2 * p_ + n - s) % 2 != 1)
    throw TraceError("sl2 catalog: I_{n,s} requires n - s odd");
  return algebra().multiply(pi_[n], e_[s]);
}

Scalar Sl2Catalog::mu(const Vec& x) const {
  return algebra().eval_form(mu_g_, x);
}

std::vector<Sl2Catalog::IntegralValue> Sl2Catalog::sym_integral_values()
    const {
  const unsigned p = p_;
  std::vector<IntegralValue> out;
  auto expect = [&](const std::string& label, const Vec& z,
                    const Scalar& want) {
    Scalar v = mu(z);
    if (v != want)
      throw TraceError("sl2 catalog: mu_g(" + label +
                       ") does not match its closed form");
    out.push_back({label, v});
  };
  Scalar q1 = Scalar::root_of_unity_power(F_, 1);
  for (unsigned s = 1; s < p; ++s) {
    expect(idx("w(", s, '+'), wp_[s - 1],
           Scalar::from_int(F_, long(s)) * eta_ * zeta_[s]);
    expect(idx("w(", s, '-'), wm_[s - 1],
           Scalar::from_int(F_, long(p - s)) * eta_ * zeta_[s]);
  }
  expect("e(0)", e_[0], Scalar::from_int(F_, long(p)) * eta_ * zeta_[0]);
  for (unsigned s = 1; s < p; ++s) {
    Scalar qq = q1.pow(long(s)) + q1.pow(-long(s));
    Scalar sign = Scalar::from_int(F_, s % 2 == 0 ? 1 : -1);
    expect("e(" + std::to_string(s) + ")", e_[s],
           sign * Scalar::from_int(F_, long(p)) * eta_ * qq * zeta_[0]);
  }
  expect("e(p)", e_[p], Scalar::from_int(F_, long(p)) * eta_ * zeta_[p]);
  return out;
}

std::vector<Sl2Cell> Sl2Catalog::trace_table(EtaChoice eta) const {
  const HopfAlgebra& H = algebra();
  const unsigned p = p_;
  Scalar scale = eta == EtaChoice::Zeta0Inv ? (eta_ * zeta_[0]).inverse()
                                            : eta_.inverse();
  auto block_dim = [&](const Vec& I) {
    return summand_from_idempotent(H, H.right_mult_matrix(I), 1)
        .module.dim();
  };
  std::vector<Sl2Cell> cells;
  for (unsigned s = 1; s <= p; ++s) {
    Vec Ip = s == p ? block_idempotent(p - 1, p)
                    : block_idempotent(s - 1, s);
    Vec Im = s == p ? block_idempotent(2 * p - 1, 0)
                    : block_idempotent((2 * p - s - 1) % (2 * p), s);
    cells.push_back({idx("id(P", s, '+'), block_dim(Ip), mu(Ip) * scale});
    cells.push_back({idx("id(P", s, '-'), block_dim(Im), mu(Im) * scale});
  }
  for (unsigned s = 1; s < p; ++s) {
    Vec Ip = block_idempotent(s - 1, s);
    cells.push_back({idx("x(", s, '+'), block_dim(Ip),
                     mu(H.multiply(Ip, wp_[s - 1])) * scale});
  }
  return cells;
}

std::string Sl2Catalog::trace_table_text(const std::vector<Sl2Cell>& cells) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "class" << std::setw(8) << "dim"
     << "t" << '\n';
  for (const Sl2Cell& c : cells)
    os << std::left << std::setw(12) << c.label << std::setw(8) << c.block_dim
       << c.value.str() << '\n';
  return os.str();
}

}  // namespace hopfkit

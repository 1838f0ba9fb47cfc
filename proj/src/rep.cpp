#include "hopfkit/rep.hpp"

#include <algorithm>
#include <mutex>
#include <random>

namespace hopfkit {

namespace {

// Verification policy mirroring the axiom budget: exhaustive pair sweeps
// stay affordable only while both the algebra and the module are small.
constexpr size_t kFullSweepMaxDim = 64;
constexpr size_t kSampledPairs = 64;

}  // namespace

// ---------------------------------------------------------------------------
// HModule

struct HModule::Impl {
  const HopfAlgebra* H = nullptr;
  size_t m = 0;
  std::vector<HModule> factors;
  HModule predual;  // set for modules built by dual_module

  // Action matrices, either stored eagerly or produced on demand.
  std::function<SparseMatrix(size_t)> maker;
  mutable std::mutex mutex;
  mutable std::vector<std::optional<SparseMatrix>> cache;

  const SparseMatrix& rho(size_t i) const {
    std::lock_guard<std::mutex> lock(mutex);
    if (!cache[i]) cache[i] = maker(i);
    return *cache[i];
  }
};

const HopfAlgebra& HModule::algebra() const { return *impl_->H; }
size_t HModule::dim() const { return impl_->m; }
const SparseMatrix& HModule::rho(size_t i) const { return impl_->rho(i); }
const std::vector<HModule>& HModule::factors() const {
  return impl_->factors;
}
const HModule* HModule::predual() const {
  return impl_->predual.defined() ? &impl_->predual : nullptr;
}
HModule::HModule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
bool HModule::same_module(const HModule& o) const {
  return impl_ == o.impl_;
}
bool HModule::defined() const { return impl_ != nullptr; }

SparseMatrix HModule::act(const Vec& x) const {
  const auto& H = *impl_->H;
  SparseMatrix out(H.field(), impl_->m, impl_->m);
  bool any = false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    out = any ? out + rho(i).scaled(x[i]) : rho(i).scaled(x[i]);
    any = true;
  }
  if (!any) out.finalize();
  return out;
}

Vec HModule::apply_elem(const Vec& x, const Vec& v) const {
  Vec out = vec_zero(impl_->H->field(), impl_->m);
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out = vec_add(out, vec_scale(x[i], rho(i).apply(v)));
  return out;
}

namespace {

std::shared_ptr<HModule::Impl> make_impl(
    const HopfAlgebra& H, size_t m, std::function<SparseMatrix(size_t)> maker,
    std::vector<HModule> factors) {
  auto impl = std::make_shared<HModule::Impl>();
  impl->H = &H;
  impl->m = m;
  impl->factors = std::move(factors);
  impl->maker = std::move(maker);
  impl->cache.resize(H.dim());
  return impl;
}

// Verifies that rho is a unital algebra map under the sweep policy.
void verify_action(const HModule& V) {
  const HopfAlgebra& H = V.algebra();
  size_t n = H.dim(), m = V.dim();
  const FieldSpec& F = H.field();

  SparseMatrix unit_act = V.act(H.unit());
  if (!(unit_act == SparseMatrix::identity(F, m)))
    throw RepError("module action: the unit does not act as the identity");

  auto check_pair = [&](size_t i, size_t j) {
    SparseMatrix lhs = V.rho(i) * V.rho(j);
    SparseMatrix rhs(F, m, m);
    bool any = false;
    for (const auto& [k, c] : H.mult(i, j)) {
      rhs = any ? rhs + V.rho(k).scaled(c) : V.rho(k).scaled(c);
      any = true;
    }
    if (!any) rhs.finalize();
    if (!(lhs == rhs))
      throw RepError("module action: not an algebra map at basis pair (" +
                     H.labels()[i] + ", " + H.labels()[j] + ")");
  };

  if (n <= kFullSweepMaxDim && m <= kFullSweepMaxDim) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) check_pair(i, j);
    return;
  }
  const auto& gens = H.generators();
  for (size_t i : gens)
    for (size_t j : gens) check_pair(i, j);
  std::mt19937_64 rng(0);
  for (size_t t = 0; t < kSampledPairs; ++t)
    check_pair(rng() % n, rng() % n);
}

}  // namespace

HModule::HModule(const HopfAlgebra& H, std::vector<SparseMatrix> action,
                 std::vector<HModule> factors, bool verify) {
  if (action.size() != H.dim())
    throw RepError("module action: one matrix per basis element required");
  size_t m = action.empty() ? 0 : action[0].rows();
  for (const auto& a : action)
    if (a.rows() != m || a.cols() != m)
      throw RepError("module action: square matrices of equal size required");
  auto store = std::make_shared<std::vector<SparseMatrix>>(std::move(action));
  impl_ = make_impl(
      H, m, [store](size_t i) { return (*store)[i]; }, std::move(factors));
  if (verify) verify_action(*this);
}

// ---------------------------------------------------------------------------
// Fixture modules.

HModule trivial_module(const HopfAlgebra& H) {
  const FieldSpec& F = H.field();
  const Vec eps = H.counit_coeffs();
  auto impl = make_impl(
      H, 1,
      [&H, eps, F](size_t i) {
        SparseMatrix m(F, 1, 1);
        m.add_entry(0, 0, eps[i]);
        m.finalize();
        return m;
      },
      {});
  HModule V = HModule(std::move(impl));
  verify_action(V);
  return V;
}

HModule regular_module(const HopfAlgebra& H) {
  auto impl = make_impl(
      H, H.dim(),
      [&H](size_t i) { return H.left_mult_matrix(H.basis_elem(i)); }, {});
  HModule V = HModule(std::move(impl));
  verify_action(V);
  return V;
}

HModule trivialized_module(const HModule& V) {
  const HopfAlgebra& H = V.algebra();
  const FieldSpec& F = H.field();
  const Vec eps = H.counit_coeffs();
  size_t m = V.dim();
  auto impl = make_impl(
      H, m,
      [eps, F, m](size_t i) {
        return SparseMatrix::identity(F, m).scaled(eps[i]);
      },
      {});
  return HModule(std::move(impl));
}

HModule direct_sum_power(const HModule& V, size_t mcopies) {
  const HopfAlgebra& H = V.algebra();
  const FieldSpec& F = H.field();
  HModule Vcopy = V;
  auto impl = make_impl(
      H, mcopies * V.dim(),
      [Vcopy, F, mcopies](size_t i) {
        return SparseMatrix::identity(F, mcopies).kron(Vcopy.rho(i));
      },
      {});
  return HModule(std::move(impl));
}

HModule dual_module(const HModule& V) {
  const HopfAlgebra& H = V.algebra();
  HModule Vcopy = V;
  auto impl = make_impl(
      H, V.dim(),
      [Vcopy, &H](size_t i) {
        // (h f)(x) = f(S(h) x): the transpose of the action of S(b_i).
        SparseMatrix acc(H.field(), Vcopy.dim(), Vcopy.dim());
        bool any = false;
        for (const auto& [k, c] : H.antipode_col(i)) {
          acc = any ? acc + Vcopy.rho(k).scaled(c) : Vcopy.rho(k).scaled(c);
          any = true;
        }
        if (!any) acc.finalize();
        return acc.transpose();
      },
      {});
  impl->predual = V;
  return HModule(std::move(impl));
}

HModule tensor_module(const HModule& V, const HModule& W) {
  if (&V.algebra() != &W.algebra())
    throw RepError("tensor_module: factors over different algebras");
  const HopfAlgebra& H = V.algebra();
  HModule Vc = V, Wc = W;
  auto impl = make_impl(
      H, V.dim() * W.dim(),
      [Vc, Wc, &H](size_t i) {
        SparseMatrix acc(H.field(), Vc.dim() * Wc.dim(),
                         Vc.dim() * Wc.dim());
        bool any = false;
        for (const auto& term : H.coprod(i)) {
          SparseMatrix k = Vc.rho(term.j).kron(Wc.rho(term.k)).scaled(term.c);
          acc = any ? acc + k : std::move(k);
          any = true;
        }
        if (!any) acc.finalize();
        return acc;
      },
      {Vc, Wc});
  return HModule(std::move(impl));
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(HModule src, HModule tgt, SparseMatrix mat,
                     bool check_intertwiner)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(mat)) {
  if (&src_.algebra() != &tgt_.algebra())
    throw RepError("module map: source and target over different algebras");
  if (mat_.rows() != tgt_.dim() || mat_.cols() != src_.dim())
    throw RepError("module map: matrix shape does not match the modules");
  if (check_intertwiner && !is_intertwiner())
    throw RepError("module map: not an intertwiner");
}

bool ModuleMap::is_intertwiner() const {
  const HopfAlgebra& H = src_.algebra();
  const auto& gens = H.generators();
  std::vector<size_t> idx;
  if (!gens.empty() && H.dim() > kFullSweepMaxDim)
    idx = gens;
  else
    for (size_t i = 0; i < H.dim(); ++i) idx.push_back(i);
  for (size_t i : idx)
    if (!((mat_ * src_.rho(i)) - (tgt_.rho(i) * mat_)).is_zero()) return false;
  return true;
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
  if (!inner.tgt_.same_module(src_) && inner.tgt_.dim() != src_.dim())
    throw RepError("module map composition: shape mismatch");
  return ModuleMap(inner.src_, tgt_, mat_ * inner.mat_, false);
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
  return ModuleMap(src_, tgt_, mat_ + o.mat_, false);
}

ModuleMap ModuleMap::scaled(const Scalar& c) const {
  return ModuleMap(src_, tgt_, mat_.scaled(c), false);
}

// ---------------------------------------------------------------------------
// Duality kit.

DualityKit duality_kit(const HModule& V) {
  const HopfAlgebra& H = V.algebra();
  const FieldSpec& F = H.field();
  const Vec& g = H.require_pivot();
  size_t m = V.dim();

  HModule dual = dual_module(V);
  HModule triv = trivial_module(H);
  HModule dual_V = tensor_module(dual, V);   // V* (x) V
  HModule V_dual = tensor_module(V, dual);   // V (x) V*

  ExactMatrix G = V.act(g).to_dense();
  ExactMatrix Ginv = V.act(H.group_like_inverse(g)).to_dense();

  SparseMatrix ev_m(F, 1, m * m);
  for (size_t j = 0; j < m; ++j) ev_m.add_entry(0, j * m + j, Scalar::one(F));
  ev_m.finalize();

  SparseMatrix coev_m(F, m * m, 1);
  for (size_t j = 0; j < m; ++j)
    coev_m.add_entry(j * m + j, 0, Scalar::one(F));
  coev_m.finalize();

  // ev_r(v_a (x) v_b*) = v_b*(g v_a) = G[b][a].
  SparseMatrix ev_r_m(F, 1, m * m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      if (!G.at(b, a).is_zero()) ev_r_m.add_entry(0, a * m + b, G.at(b, a));
  ev_r_m.finalize();

  // coev_r(1) = sum_j v_j* (x) g^{-1} v_j.
  SparseMatrix coev_r_m(F, m * m, 1);
  for (size_t j = 0; j < m; ++j)
    for (size_t b = 0; b < m; ++b)
      if (!Ginv.at(b, j).is_zero())
        coev_r_m.add_entry(j * m + b, 0, Ginv.at(b, j));
  coev_r_m.finalize();

  DualityKit kit{
      dual,
      ModuleMap(dual_V, triv, std::move(ev_m)),
      ModuleMap(triv, V_dual, std::move(coev_m)),
      ModuleMap(V_dual, triv, std::move(ev_r_m)),
      ModuleMap(triv, dual_V, std::move(coev_r_m)),
      ModuleMap(V, dual_module(dual), SparseMatrix::from_dense(G)),
  };

  // Zig-zag identities for both dualities.
  SparseMatrix idm = SparseMatrix::identity(F, m);
  SparseMatrix zig1 = idm.kron(kit.ev.matrix()) *
                      (kit.coev.matrix().kron(idm));  // V -> V
  SparseMatrix zig2 = kit.ev.matrix().kron(idm) *
                      (idm.kron(kit.coev.matrix()));  // V* -> V*
  SparseMatrix zig3 = kit.ev_r.matrix().kron(idm) *
                      (idm.kron(kit.coev_r.matrix()));  // V -> V
  SparseMatrix zig4 = idm.kron(kit.ev_r.matrix()) *
                      (kit.coev_r.matrix().kron(idm));  // V* -> V*
  if (!(zig1 == idm) || !(zig2 == idm) || !(zig3 == idm) || !(zig4 == idm))
    throw RepError("duality kit: zig-zag identity failed");
  return kit;
}

// ---------------------------------------------------------------------------
// Partial and categorical traces.

namespace {

// Requires a declared two-factor endomorphism; returns the factor pair.
std::pair<HModule, HModule> endo_factors(const ModuleMap& f) {
  if (!f.source().same_module(f.target()))
    throw RepError("partial trace: not an endomorphism");
  const auto& fac = f.source().factors();
  if (fac.size() != 2)
    throw RepError("partial trace: two declared tensor factors required");
  return {fac[0], fac[1]};
}

}  // namespace

ModuleMap partial_trace(const ModuleMap& f, TraceSide side) {
  auto [W, V] = endo_factors(f);
  const HopfAlgebra& H = f.source().algebra();
  const FieldSpec& F = H.field();
  const Vec& g = H.require_pivot();
  size_t mw = W.dim(), mv = V.dim();

  SparseMatrix out(F, side == TraceSide::Right ? mw : mv,
                   side == TraceSide::Right ? mw : mv);
  if (side == TraceSide::Right) {
    // tr^r(f)[w'][w] = sum_{j,v'} f[(w',v'),(w,j)] G[j][v'],  G = rho_V(g).
    ExactMatrix G = V.act(g).to_dense();
    for (size_t wp = 0; wp < mw; ++wp)
      for (size_t vp = 0; vp < mv; ++vp)
        for (const auto& [col, c] : f.matrix().row(wp * mv + vp)) {
          size_t w = col / mv, j = col % mv;
          if (!G.at(j, vp).is_zero())
            out.add_entry(wp, w, c * G.at(j, vp));
        }
  } else {
    // tr^l(f)[v'][v] = sum_{i,a} Ginv[a][i] f[(i,v'),(a,v)],
    // Ginv = rho_W(g^{-1}).
    ExactMatrix Ginv = W.act(H.group_like_inverse(g)).to_dense();
    for (size_t i = 0; i < mw; ++i)
      for (size_t vp = 0; vp < mv; ++vp)
        for (const auto& [col, c] : f.matrix().row(i * mv + vp)) {
          size_t a = col / mv, v = col % mv;
          if (!Ginv.at(a, i).is_zero())
            out.add_entry(vp, v, c * Ginv.at(a, i));
        }
  }
  out.finalize();
  HModule rest = side == TraceSide::Right ? W : V;
  return ModuleMap(rest, rest, std::move(out), /*check_intertwiner=*/true);
}

Scalar categorical_trace(const ModuleMap& f, TraceSide side) {
  if (!f.source().same_module(f.target()))
    throw RepError("categorical trace: not an endomorphism");
  const HModule& V = f.source();
  const HopfAlgebra& H = V.algebra();
  const Vec& g = H.require_pivot();
  SparseMatrix twist =
      V.act(side == TraceSide::Right ? g : H.group_like_inverse(g));
  SparseMatrix prod = side == TraceSide::Right ? twist * f.matrix()
                                               : f.matrix() * twist;
  return prod.trace();
}

// ---------------------------------------------------------------------------
// Intertwiner spaces.

std::vector<ModuleMap> intertwiner_space(const HModule& V, const HModule& W) {
  if (&V.algebra() != &W.algebra())
    throw RepError("intertwiner space: modules over different algebras");
  const HopfAlgebra& H = V.algebra();
  const FieldSpec& F = H.field();
  size_t mv = V.dim(), mw = W.dim();
  std::vector<size_t> idx;
  if (!H.generators().empty())
    idx = H.generators();
  else
    for (size_t i = 0; i < H.dim(); ++i) idx.push_back(i);

  // Unknown T (mw x mv), flattened row-major; constraints
  // T rho_V(i) - rho_W(i) T = 0.
  std::vector<Vec> rows;
  for (size_t i : idx) {
    ExactMatrix rv = V.rho(i).to_dense();
    ExactMatrix rw = W.rho(i).to_dense();
    for (size_t w = 0; w < mw; ++w)
      for (size_t v = 0; v < mv; ++v) {
        Vec row = vec_zero(F, mw * mv);
        for (size_t u = 0; u < mv; ++u) row[w * mv + u] += rv.at(u, v);
        for (size_t u = 0; u < mw; ++u) row[u * mv + v] -= rw.at(w, u);
        if (!vec_is_zero(row)) rows.push_back(std::move(row));
      }
  }
  std::vector<Vec> basis =
      rows.empty()
          ? std::vector<Vec>()
          : ExactMatrix::from_rows(F, rows).nullspace();
  if (rows.empty()) {
    // No constraints: the whole space of matrices.
    for (size_t k = 0; k < mw * mv; ++k) {
      Vec v = vec_zero(F, mw * mv);
      v[k] = Scalar::one(F);
      basis.push_back(std::move(v));
    }
  }
  std::vector<ModuleMap> out;
  for (const Vec& t : basis) {
    SparseMatrix m(F, mw, mv);
    for (size_t w = 0; w < mw; ++w)
      for (size_t v = 0; v < mv; ++v)
        if (!t[w * mv + v].is_zero()) m.add_entry(w, v, t[w * mv + v]);
    m.finalize();
    out.emplace_back(V, W, std::move(m), /*check_intertwiner=*/false);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Twisted-factor isomorphisms and the summand system.

std::pair<ModuleMap, ModuleMap> phi_psi(const HopfAlgebra& H,
                                        const HModule& W, Side side) {
  const FieldSpec& F = H.field();
  size_t n = H.dim(), m = W.dim();
  HModule reg = regular_module(H);
  HModule triv_w = trivialized_module(W);

  if (side == Side::Right) {
    HModule src = tensor_module(reg, triv_w);
    HModule tgt = tensor_module(reg, W);
    SparseMatrix phi(F, n * m, n * m), psi(F, n * m, n * m);
    for (size_t i = 0; i < n; ++i)
      for (const auto& term : H.coprod(i)) {
        // phi(b_i (x) w_j) = b_a (x) rho_W(b_c) w_j.
        const SparseMatrix& rc = W.rho(term.k);
        for (size_t r = 0; r < m; ++r)
          for (const auto& [j, c] : rc.row(r))
            phi.add_entry(term.j * m + r, i * m + j, term.c * c);
        // psi(b_i (x) w_j) = b_a (x) rho_W(S(b_c)) w_j.
        for (const auto& [k, ac] : H.antipode_col(term.k)) {
          const SparseMatrix& rs = W.rho(k);
          for (size_t r = 0; r < m; ++r)
            for (const auto& [j, c] : rs.row(r))
              psi.add_entry(term.j * m + r, i * m + j, term.c * ac * c);
        }
      }
    phi.finalize();
    psi.finalize();
    ModuleMap phi_map(src, tgt, std::move(phi));
    ModuleMap psi_map(tgt, src, std::move(psi));
    if (!(phi_map.matrix() * psi_map.matrix() ==
          SparseMatrix::identity(F, n * m)) ||
        !(psi_map.matrix() * phi_map.matrix() ==
          SparseMatrix::identity(F, n * m)))
      throw RepError("twisted-factor isomorphism: inverse check failed");
    return {std::move(phi_map), std::move(psi_map)};
  }

  // Left version on eW (x) H -> W (x) H.
  HModule src = tensor_module(triv_w, reg);
  HModule tgt = tensor_module(W, reg);
  ExactMatrix Sinv = H.antipode_matrix().inverse();
  SparseMatrix phi(F, m * n, m * n), psi(F, m * n, m * n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& term : H.coprod(i)) {
      // phi_l(w_j (x) b_i) = rho_W(b_a) w_j (x) b_c.
      const SparseMatrix& ra = W.rho(term.j);
      for (size_t r = 0; r < m; ++r)
        for (const auto& [j, c] : ra.row(r))
          phi.add_entry(r * n + term.k, j * n + i, term.c * c);
      // psi_l(w_j (x) b_i) = rho_W(S^{-1}(b_a)) w_j (x) b_c.
      for (size_t k = 0; k < n; ++k) {
        const Scalar& sc = Sinv.at(k, term.j);
        if (sc.is_zero()) continue;
        const SparseMatrix& rs = W.rho(k);
        for (size_t r = 0; r < m; ++r)
          for (const auto& [j, c] : rs.row(r))
            psi.add_entry(r * n + term.k, j * n + i, term.c * sc * c);
      }
    }
  }
  phi.finalize();
  psi.finalize();
  ModuleMap phi_map(src, tgt, std::move(phi));
  ModuleMap psi_map(tgt, src, std::move(psi));
  if (!(phi_map.matrix() * psi_map.matrix() ==
        SparseMatrix::identity(F, m * n)) ||
      !(psi_map.matrix() * phi_map.matrix() ==
        SparseMatrix::identity(F, m * n)))
    throw RepError("twisted-factor isomorphism: inverse check failed");
  return {std::move(phi_map), std::move(psi_map)};
}

SummandSystem summand_system(const HopfAlgebra& H) {
  const FieldSpec& F = H.field();
  size_t n = H.dim();
  HModule reg = regular_module(H);
  auto [phi, psi] = phi_psi(H, reg, Side::Right);
  HModule square = phi.target();

  SummandSystem sys;
  sys.regular = reg;
  sys.square = square;
  for (size_t y = 0; y < n; ++y) {
    // iota_y = phi o (h -> h (x) y): select columns i*n + y of phi.
    SparseMatrix im(F, n * n, n);
    for (size_t r = 0; r < n * n; ++r)
      for (const auto& [col, c] : phi.matrix().row(r))
        if (col % n == y) im.add_entry(r, col / n, c);
    im.finalize();
    // pi_y = (h (x) u -> delta_{u,y} h) o psi: rows i*n + y of psi.
    SparseMatrix pm(F, n, n * n);
    for (size_t i = 0; i < n; ++i)
      for (const auto& [col, c] : psi.matrix().row(i * n + y))
        pm.add_entry(i, col, c);
    pm.finalize();
    sys.iota.emplace_back(reg, square, std::move(im),
                          /*check_intertwiner=*/false);
    sys.pi.emplace_back(square, reg, std::move(pm),
                        /*check_intertwiner=*/false);
  }
  // Identities: pi_x iota_y = delta_{x,y} id and sum_y e_y = id; these two
  // together give idempotency and orthogonality of the e_y.
  SparseMatrix idn = SparseMatrix::identity(F, n);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      SparseMatrix prod = sys.pi[x].matrix() * sys.iota[y].matrix();
      if (x == y ? !(prod == idn) : !prod.is_zero())
        throw RepError("summand system: projection identities failed");
    }
  SparseMatrix esum(F, n * n, n * n);
  for (size_t y = 0; y < n; ++y) {
    sys.e.push_back(sys.iota[y].matrix() * sys.pi[y].matrix());
    esum = y == 0 ? sys.e.back() : esum + sys.e.back();
  }
  if (!(esum == SparseMatrix::identity(F, n * n)))
    throw RepError("summand system: idempotents do not sum to the identity");
  return sys;
}

ModuleMap endo_triple(const HopfAlgebra& H, const Vec& h, const Vec& v,
                      const Vec& gamma, bool check_intertwiner) {
  const FieldSpec& F = H.field();
  size_t n = H.dim();
  HModule reg = regular_module(H);
  auto [phi, psi] = phi_psi(H, reg, Side::Right);
  // Middle map x (x) y -> gamma(y) (x h) (x) v is R_h (x) (v gamma^T).
  SparseMatrix rh = H.right_mult_matrix(h);
  SparseMatrix rank1(F, n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (!v[a].is_zero() && !gamma[b].is_zero())
        rank1.add_entry(a, b, v[a] * gamma[b]);
  rank1.finalize();
  SparseMatrix mat = phi.matrix() * rh.kron(rank1) * psi.matrix();
  return ModuleMap(phi.target(), phi.target(), std::move(mat),
                   check_intertwiner);
}

size_t endo_span_dimension(const HopfAlgebra& H) {
  const FieldSpec& F = H.field();
  size_t n = H.dim();
  // span{phi (R_h (x) E_{v,gamma}) psi} where conjugation by the invertible
  // phi preserves dimension and {E_{v,gamma}} is the full matrix-unit
  // basis: the dimension is rank{R_h : h in B} * n^2.
  std::vector<Vec> rows;
  for (size_t h = 0; h < n; ++h) {
    ExactMatrix rh = H.right_mult_matrix(H.basis_elem(h)).to_dense();
    Vec row = vec_zero(F, n * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) row[i * n + j] = rh.at(i, j);
    rows.push_back(std::move(row));
  }
  ExactMatrix m = ExactMatrix::from_rows(F, rows);
  m.rref();
  return m.rank() * n * n;
}

// ---------------------------------------------------------------------------
// Duality isomorphisms on Hom spaces.

namespace {

const HModule& declared_factor(const HModule& T, size_t k,
                               const char* what) {
  if (T.factors().size() != 2)
    throw RepError(std::string(what) +
                   ": two declared tensor factors required");
  return T.factors()[k];
}

const HModule& predual_of(const HModule& Vstar) {
  const HModule* V = Vstar.predual();
  if (!V)
    throw RepError(
        "duality iso: inverse direction needs a factor built by "
        "dual_module");
  return *V;
}

}  // namespace

ModuleMap duality_iso(const ModuleMap& f, DualityIso which, bool inverse) {
  const HopfAlgebra& H = f.source().algebra();
  const FieldSpec& F = H.field();
  auto id = [&](size_t m) { return SparseMatrix::identity(F, m); };

  switch (which) {
    case DualityIso::DCap: {
      if (!inverse) {
        // f : W -> U (x) V  ->  (id_U (x) ev_r_V) (f (x) id_{V*}).
        const HModule& U = declared_factor(f.target(), 0, "duality iso");
        const HModule& V = declared_factor(f.target(), 1, "duality iso");
        DualityKit kit = duality_kit(V);
        SparseMatrix mat = id(U.dim()).kron(kit.ev_r.matrix()) *
                           f.matrix().kron(id(V.dim()));
        return ModuleMap(tensor_module(f.source(), kit.dual), U,
                         std::move(mat), false);
      }
      // g : W (x) V* -> U  ->  (g (x) id_V) (id_W (x) coev_r_V).
      const HModule& W = declared_factor(f.source(), 0, "duality iso");
      const HModule& Vstar = declared_factor(f.source(), 1, "duality iso");
      const HModule& V = predual_of(Vstar);
      DualityKit kit = duality_kit(V);
      SparseMatrix mat = f.matrix().kron(id(V.dim())) *
                         id(W.dim()).kron(kit.coev_r.matrix());
      return ModuleMap(W, tensor_module(f.target(), V), std::move(mat),
                       false);
    }
    case DualityIso::DCup: {
      if (!inverse) {
        // f : U (x) V -> W  ->  (f (x) id_{V*}) (id_U (x) coev_V).
        const HModule& U = declared_factor(f.source(), 0, "duality iso");
        const HModule& V = declared_factor(f.source(), 1, "duality iso");
        DualityKit kit = duality_kit(V);
        SparseMatrix mat = f.matrix().kron(id(V.dim())) *
                           id(U.dim()).kron(kit.coev.matrix());
        return ModuleMap(U, tensor_module(f.target(), kit.dual),
                         std::move(mat), false);
      }
      // g : U -> W (x) V*  ->  (id_W (x) ev_V) (g (x) id_V).
      const HModule& W = declared_factor(f.target(), 0, "duality iso");
      const HModule& Vstar = declared_factor(f.target(), 1, "duality iso");
      const HModule& V = predual_of(Vstar);
      DualityKit kit = duality_kit(V);
      SparseMatrix mat = id(W.dim()).kron(kit.ev.matrix()) *
                         f.matrix().kron(id(V.dim()));
      return ModuleMap(tensor_module(f.source(), V), W, std::move(mat),
                       false);
    }
    case DualityIso::CupD: {
      if (!inverse) {
        // f : W -> U (x) V  ->  (ev_U (x) id_V) (id_{U*} (x) f).
        const HModule& U = declared_factor(f.target(), 0, "duality iso");
        const HModule& V = declared_factor(f.target(), 1, "duality iso");
        DualityKit kit = duality_kit(U);
        SparseMatrix mat = kit.ev.matrix().kron(id(V.dim())) *
                           id(U.dim()).kron(f.matrix());
        return ModuleMap(tensor_module(kit.dual, f.source()), V,
                         std::move(mat), false);
      }
      // g : U* (x) W -> V  ->  (id_U (x) g) (coev_U (x) id_W).
      const HModule& Ustar = declared_factor(f.source(), 0, "duality iso");
      const HModule& W = declared_factor(f.source(), 1, "duality iso");
      const HModule& U = predual_of(Ustar);
      DualityKit kit = duality_kit(U);
      SparseMatrix mat = id(U.dim()).kron(f.matrix()) *
                         kit.coev.matrix().kron(id(W.dim()));
      return ModuleMap(W, tensor_module(U, f.target()), std::move(mat),
                       false);
    }
    case DualityIso::CapD: {
      if (!inverse) {
        // f : U (x) V -> W  ->  (id_{U*} (x) f) (coev_r_U (x) id_V).
        const HModule& U = declared_factor(f.source(), 0, "duality iso");
        const HModule& V = declared_factor(f.source(), 1, "duality iso");
        DualityKit kit = duality_kit(U);
        SparseMatrix mat = id(U.dim()).kron(f.matrix()) *
                           kit.coev_r.matrix().kron(id(V.dim()));
        return ModuleMap(V, tensor_module(kit.dual, f.target()),
                         std::move(mat), false);
      }
      // g : V -> U* (x) W  ->  (ev_r_U (x) id_W) (id_U (x) g).
      const HModule& Ustar = declared_factor(f.target(), 0, "duality iso");
      const HModule& W = declared_factor(f.target(), 1, "duality iso");
      const HModule& U = predual_of(Ustar);
      DualityKit kit = duality_kit(U);
      SparseMatrix mat = kit.ev_r.matrix().kron(id(W.dim())) *
                         id(U.dim()).kron(f.matrix());
      return ModuleMap(tensor_module(U, f.source()), W, std::move(mat),
                       false);
    }
  }
  throw RepError("duality iso: unknown transform");
}

}  // namespace hopfkit

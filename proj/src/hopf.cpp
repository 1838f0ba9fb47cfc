#include "hopfkit/hopf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>
#include <sstream>
#include <tuple>

namespace hopfkit {

namespace {

uint64_t key2(size_t i, size_t j) {
  return (static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j);
}

}  // namespace

std::string AxiomReport::text() const {
  std::ostringstream os;
  os << (ok ? "PASS" : "FAIL") << " (" << policy << ", "
     << triples_checked << " associativity instances)\n";
  for (const auto& f : failures) os << "  FAIL: " << f << "\n";
  return os.str();
}

HopfAlgebra::HopfAlgebra(FieldSpec F, std::vector<std::string> labels,
                         Vec unit, std::vector<std::vector<SparseVec>> mult,
                         std::vector<CoprodList> coprod, Vec counit,
                         std::vector<SparseVec> antipode_cols,
                         std::optional<Vec> pivot)
    : field_(std::move(F)),
      n_(labels.size()),
      labels_(std::move(labels)),
      unit_(std::move(unit)),
      counit_(std::move(counit)),
      pivot_(std::move(pivot)) {
  if (mult.size() != n_ || coprod.size() != n_ || antipode_cols.size() != n_ ||
      unit_.size() != n_ || counit_.size() != n_)
    throw HopfError("structure tensor dimension mismatch");
  for (size_t i = 0; i < n_; ++i) {
    if (mult[i].size() != n_)
      throw HopfError("structure tensor dimension mismatch");
    label_to_index_.emplace(labels_[i], i);
    for (size_t j = 0; j < n_; ++j)
      caches_->mult.emplace(key2(i, j), sparse_normalize(std::move(mult[i][j])));
  }
  if (label_to_index_.size() != n_)
    throw HopfError("basis labels are not distinct");
  caches_->coprod.resize(n_);
  caches_->antipode.resize(n_);
  for (size_t i = 0; i < n_; ++i) {
    caches_->coprod[i] = std::move(coprod[i]);
    caches_->antipode[i] = sparse_normalize(std::move(antipode_cols[i]));
  }
}

HopfAlgebra::HopfAlgebra(FieldSpec F, std::vector<std::string> labels,
                         Vec unit, Vec counit, LazyOps ops,
                         std::optional<Vec> pivot,
                         std::vector<size_t> generators)
    : field_(std::move(F)),
      n_(labels.size()),
      labels_(std::move(labels)),
      unit_(std::move(unit)),
      counit_(std::move(counit)),
      pivot_(std::move(pivot)),
      generators_(std::move(generators)),
      ops_(std::move(ops)) {
  for (size_t i = 0; i < n_; ++i) label_to_index_.emplace(labels_[i], i);
  if (label_to_index_.size() != n_)
    throw HopfError("basis labels are not distinct");
  caches_->coprod.resize(n_);
  caches_->antipode.resize(n_);
}

size_t HopfAlgebra::label_index(const std::string& label) const {
  auto it = label_to_index_.find(label);
  if (it == label_to_index_.end())
    throw HopfError("unknown basis label: " + label);
  return it->second;
}

const SparseVec& HopfAlgebra::mult(size_t i, size_t j) const {
  std::lock_guard<std::mutex> lock(caches_->mutex);
  auto it = caches_->mult.find(key2(i, j));
  if (it != caches_->mult.end()) return it->second;
  if (!ops_.mult) throw HopfError("multiplication tensor incomplete");
  SparseVec v = sparse_normalize(ops_.mult(i, j));
  return caches_->mult.emplace(key2(i, j), std::move(v)).first->second;
}

const CoprodList& HopfAlgebra::coprod(size_t i) const {
  std::lock_guard<std::mutex> lock(caches_->mutex);
  if (!caches_->coprod[i]) {
    if (!ops_.coprod) throw HopfError("coproduct tensor incomplete");
    caches_->coprod[i] = ops_.coprod(i);
  }
  return *caches_->coprod[i];
}

const SparseVec& HopfAlgebra::antipode_col(size_t i) const {
  std::lock_guard<std::mutex> lock(caches_->mutex);
  if (!caches_->antipode[i]) {
    if (!ops_.antipode) throw HopfError("antipode tensor incomplete");
    caches_->antipode[i] = sparse_normalize(ops_.antipode(i));
  }
  return *caches_->antipode[i];
}

Vec HopfAlgebra::basis_elem(size_t i) const {
  Vec v = vec_zero(field_, n_);
  v[i] = Scalar::one(field_);
  return v;
}

Vec HopfAlgebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_)
    throw HopfError("element dimension mismatch");
  Vec r = vec_zero(field_, n_);
  for (size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const auto& [k, v] : mult(i, j)) r[k] += c * v;
    }
  }
  return r;
}

SparseVec HopfAlgebra::multiply_sparse(const SparseVec& x,
                                       const SparseVec& y) const {
  SparseVec acc;
  for (const auto& [i, xi] : x)
    for (const auto& [j, yj] : y)
      acc = sparse_add(acc, sparse_scale(xi * yj, mult(i, j)));
  return acc;
}

SparseVec HopfAlgebra::coproduct(const Vec& x) const {
  return coproduct_sparse(dense_to_sparse(x));
}

SparseVec HopfAlgebra::coproduct_sparse(const SparseVec& x) const {
  SparseVec acc;
  for (const auto& [i, xi] : x) {
    SparseVec term;
    for (const auto& t : coprod(i))
      term.emplace_back(static_cast<uint64_t>(t.j) * n_ + t.k, xi * t.c);
    acc = sparse_add(acc, sparse_normalize(std::move(term)));
  }
  return acc;
}

SparseVec HopfAlgebra::tensor_multiply(const SparseVec& a,
                                       const SparseVec& b) const {
  SparseVec acc;
  for (const auto& [ia, ca] : a) {
    size_t j1 = ia / n_, k1 = ia % n_;
    for (const auto& [ib, cb] : b) {
      size_t j2 = ib / n_, k2 = ib % n_;
      Scalar c = ca * cb;
      SparseVec term;
      for (const auto& [j, vj] : mult(j1, j2))
        for (const auto& [k, vk] : mult(k1, k2))
          term.emplace_back(static_cast<uint64_t>(j) * n_ + k, c * vj * vk);
      acc = sparse_add(acc, sparse_normalize(std::move(term)));
    }
  }
  return acc;
}

Scalar HopfAlgebra::counit(const Vec& x) const {
  return eval_form(counit_, x);
}

Vec HopfAlgebra::antipode(const Vec& x) const {
  return sparse_to_dense(field_, n_,
                         antipode_sparse(dense_to_sparse(x)));
}

SparseVec HopfAlgebra::antipode_sparse(const SparseVec& x) const {
  SparseVec acc;
  for (const auto& [i, xi] : x)
    acc = sparse_add(acc, sparse_scale(xi, antipode_col(i)));
  return acc;
}

Scalar HopfAlgebra::eval_form(const Vec& form, const Vec& x) const {
  if (form.size() != n_ || x.size() != n_)
    throw HopfError("form/element dimension mismatch");
  Scalar s = Scalar::zero(field_);
  for (size_t i = 0; i < n_; ++i)
    if (!form[i].is_zero() && !x[i].is_zero()) s += form[i] * x[i];
  return s;
}

Vec HopfAlgebra::pow(const Vec& x, unsigned long e) const {
  Vec acc = unit_;
  for (unsigned long i = 0; i < e; ++i) acc = multiply(acc, x);
  return acc;
}

bool HopfAlgebra::is_group_like(const Vec& x) const {
  if (!counit(x).is_one()) return false;
  SparseVec lhs = coproduct(x);
  SparseVec outer;
  for (size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n_; ++j)
      if (!x[j].is_zero())
        outer.emplace_back(static_cast<uint64_t>(i) * n_ + j, x[i] * x[j]);
  }
  return lhs == sparse_normalize(std::move(outer));
}

Vec HopfAlgebra::group_like_inverse(const Vec& g) const {
  Vec inv = antipode(g);  // S(g) = g^{-1} for group-like g
  if (multiply(g, inv) != unit_ || multiply(inv, g) != unit_)
    throw HopfError("element is not an invertible group-like");
  return inv;
}

bool HopfAlgebra::verify_pivot(const Vec& g, std::string* why) const {
  if (!is_group_like(g)) {
    if (why) *why = "pivot candidate is not group-like";
    return false;
  }
  Vec ginv;
  try {
    ginv = group_like_inverse(g);
  } catch (const HopfError&) {
    if (why) *why = "pivot candidate is not invertible";
    return false;
  }
  for (size_t i = 0; i < n_; ++i) {
    Vec s2 = antipode(antipode(basis_elem(i)));
    Vec conj = multiply(multiply(g, basis_elem(i)), ginv);
    if (s2 != conj) {
      if (why) *why = "S^2 != g(.)g^{-1} on basis element " + labels_[i];
      return false;
    }
  }
  return true;
}

const Vec& HopfAlgebra::require_pivot() const {
  if (!pivot_)
    throw PivotMissingError(
        "operation requires a pivot but none is stored in the algebra");
  return *pivot_;
}

SparseMatrix HopfAlgebra::left_mult_matrix(const Vec& x) const {
  SparseMatrix m(field_, n_, n_);
  for (size_t j = 0; j < n_; ++j) {
    for (size_t i = 0; i < n_; ++i) {
      if (x[i].is_zero()) continue;
      for (const auto& [k, v] : mult(i, j)) m.add_entry(k, j, x[i] * v);
    }
  }
  m.finalize();
  return m;
}

SparseMatrix HopfAlgebra::right_mult_matrix(const Vec& x) const {
  SparseMatrix m(field_, n_, n_);
  for (size_t j = 0; j < n_; ++j) {
    for (size_t i = 0; i < n_; ++i) {
      if (x[i].is_zero()) continue;
      for (const auto& [k, v] : mult(j, i)) m.add_entry(k, j, x[i] * v);
    }
  }
  m.finalize();
  return m;
}

ExactMatrix HopfAlgebra::antipode_matrix() const {
  ExactMatrix m(field_, n_, n_);
  for (size_t j = 0; j < n_; ++j)
    for (const auto& [i, v] : antipode_col(j)) m.at(i, j) = v;
  return m;
}

std::vector<Vec> HopfAlgebra::center() const {
  // Equations: for each basis i and coordinate k,
  //   sum_j z_j (b_j b_i - b_i b_j)_k = 0.
  std::vector<Vec> cols(n_);
  for (size_t j = 0; j < n_; ++j) {
    Vec col = vec_zero(field_, n_ * n_);
    for (size_t i = 0; i < n_; ++i) {
      for (const auto& [k, v] : mult(j, i)) col[i * n_ + k] += v;
      for (const auto& [k, v] : mult(i, j)) col[i * n_ + k] -= v;
    }
    cols[j] = std::move(col);
  }
  return ExactMatrix::from_cols(field_, cols).nullspace();
}

HopfAlgebra HopfAlgebra::opposite() const {
  std::vector<std::vector<SparseVec>> m(n_, std::vector<SparseVec>(n_));
  std::vector<CoprodList> cop(n_);
  std::vector<SparseVec> anti(n_);
  for (size_t i = 0; i < n_; ++i) {
    cop[i] = coprod(i);
    anti[i] = antipode_col(i);
    for (size_t j = 0; j < n_; ++j) m[i][j] = mult(j, i);
  }
  return HopfAlgebra(field_, labels_, unit_, std::move(m), std::move(cop),
                     counit_, std::move(anti), pivot_);
}

// ---------------------------------------------------------------------------
// Element expressions

namespace {

struct ElemLexer {
  const std::string& s;
  size_t i = 0;
  explicit ElemLexer(const std::string& text) : s(text) {}
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    char c = peek();
    if (c) ++i;
    return c;
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() && ident_char(s[i])) ++i;
    return s.substr(start, i - start);
  }
};

class ElemParser {
 public:
  ElemParser(const HopfAlgebra& H, const std::string& text)
      : H_(H), lx_(text), text_(text) {}

  Vec parse() {
    Vec v = expr();
    if (lx_.peek() != '\0')
      throw ParseError("trailing input in element expression: " + text_);
    return v;
  }

 private:
  const HopfAlgebra& H_;
  ElemLexer lx_;
  const std::string& text_;

  Vec expr() {
    int sign = 1;
    while (lx_.peek() == '+' || lx_.peek() == '-')
      if (lx_.take() == '-') sign = -sign;
    Vec total = term();
    if (sign < 0) total = vec_scale(-Scalar::one(H_.field()), total);
    while (true) {
      char c = lx_.peek();
      if (c != '+' && c != '-') break;
      sign = 1;
      while (lx_.peek() == '+' || lx_.peek() == '-')
        if (lx_.take() == '-') sign = -sign;
      Vec t = term();
      if (sign < 0) t = vec_scale(-Scalar::one(H_.field()), t);
      total = vec_add(total, t);
    }
    return total;
  }

  Vec term() {
    Vec acc = power();
    while (lx_.peek() == '*') {
      lx_.take();
      acc = H_.multiply(acc, power());
    }
    return acc;
  }

  Vec power() {
    Vec base = atom();
    if (lx_.peek() == '^') {
      lx_.take();
      if (!std::isdigit(static_cast<unsigned char>(lx_.peek())))
        throw ParseError("expected exponent in element expression: " + text_);
      long e = std::stol(lx_.ident());
      return H_.pow(base, static_cast<unsigned long>(e));
    }
    return base;
  }

  Vec atom() {
    char c = lx_.peek();
    if (c == '(') {
      lx_.take();
      Vec v = expr();
      if (lx_.take() != ')')
        throw ParseError("missing ')' in element expression: " + text_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = lx_.ident();
      for (char d : num)
        if (!std::isdigit(static_cast<unsigned char>(d)))
          return label_atom(num);  // e.g. label "2x" -- digits then letters
      mpz_class n(num), d(1);
      if (lx_.peek() == '/') {
        lx_.take();
        std::string den = lx_.ident();
        d = mpz_class(den);
        if (d == 0) throw ParseError("zero denominator: " + text_);
      }
      return vec_scale(Scalar::from_rational(H_.field(), mpq_class(n, d)),
                       H_.unit());
    }
    if (ElemLexer::ident_char(c)) return label_atom(lx_.ident());
    throw ParseError("unexpected character '" + std::string(1, c) +
                     "' in element expression: " + text_);
  }

  Vec label_atom(const std::string& name) {
    try {
      return H_.basis_elem(H_.label_index(name));
    } catch (const HopfError&) {
      if (name == "z" && H_.field().kind() == FieldKind::Cyclotomic)
        return vec_scale(Scalar::gen(H_.field()), H_.unit());
      throw ParseError("unknown basis label '" + name + "' in: " + text_);
    }
  }
};

std::string coeff_prefix(const Scalar& c) {
  if (c.is_one()) return "";
  std::string s = c.str();
  if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos ||
      s.find('-') != std::string::npos)
    return "(" + s + ")*";
  return s + "*";
}

}  // namespace

Vec HopfAlgebra::parse_element(const std::string& text) const {
  return ElemParser(*this, text).parse();
}

std::string HopfAlgebra::element_str(const Vec& x) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string pre = coeff_prefix(x[i]);
    if (labels_[i] == "1")
      os << (pre.empty() ? "1" : pre.substr(0, pre.size() - 1));
    else
      os << pre << labels_[i];
  }
  if (first) os << "0";
  return os.str();
}

std::string HopfAlgebra::form_str(const Vec& form) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < n_; ++i) {
    if (form[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeff_prefix(form[i]) << "(" << labels_[i] << ")^*";
  }
  if (first) os << "0";
  return os.str();
}

Vec normalize_first_nonzero(const Vec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return vec_scale(c.inverse(), v);
  throw HopfError("cannot normalize the zero vector");
}

// ---------------------------------------------------------------------------
// verify_axioms

AxiomReport verify_axioms(const HopfAlgebra& H, const AxiomBudget& budget) {
  AxiomReport rep;
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.failures.size() < 32) rep.failures.push_back(msg);
  };
  const auto& L = H.labels();

  // Unit element sanity: eps(1) = 1, Delta(1) = 1(x)1, S(1) = 1.
  if (!H.counit(H.unit()).is_one()) fail("counit axiom, witness 1 (eps(1) != 1)");
  {
    SparseVec d1 = H.coproduct(H.unit());
    SparseVec outer;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!H.unit()[i].is_zero() && !H.unit()[j].is_zero())
          outer.emplace_back(static_cast<uint64_t>(i) * n + j,
                             H.unit()[i] * H.unit()[j]);
    if (d1 != sparse_normalize(std::move(outer)))
      fail("coproduct axiom, witness 1 (Delta(1) != 1(x)1)");
    if (H.antipode(H.unit()) != H.unit())
      fail("antipode axiom, witness 1 (S(1) != 1)");
  }

  // Unit law on all basis elements.
  for (size_t i = 0; i < n; ++i) {
    Vec b = H.basis_elem(i);
    if (H.multiply(H.unit(), b) != b || H.multiply(b, H.unit()) != b)
      fail("unit axiom, witness " + L[i]);
  }

  // Coassociativity and counit axioms on all basis elements.
  for (size_t i = 0; i < n; ++i) {
    std::map<std::tuple<size_t, size_t, size_t>, Scalar> lhs, rhs;
    auto addto = [&](std::map<std::tuple<size_t, size_t, size_t>, Scalar>& m,
                     size_t a, size_t b, size_t c, const Scalar& v) {
      auto key = std::make_tuple(a, b, c);
      auto it = m.find(key);
      if (it == m.end())
        m.emplace(key, v);
      else {
        it->second += v;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& t : H.coprod(i)) {
      for (const auto& u : H.coprod(t.j)) addto(lhs, u.j, u.k, t.k, t.c * u.c);
      for (const auto& u : H.coprod(t.k)) addto(rhs, t.j, u.j, u.k, t.c * u.c);
    }
    if (lhs != rhs) fail("coassociativity axiom, witness " + L[i]);

    Vec left = vec_zero(F, n), right = vec_zero(F, n);
    for (const auto& t : H.coprod(i)) {
      left[t.k] += t.c * H.counit_coeffs()[t.j];
      right[t.j] += t.c * H.counit_coeffs()[t.k];
    }
    Vec b = H.basis_elem(i);
    if (left != b || right != b) fail("counit axiom, witness " + L[i]);
  }

  // Antipode axioms on all basis elements.
  for (size_t i = 0; i < n; ++i) {
    SparseVec left, right;
    for (const auto& t : H.coprod(i)) {
      left = sparse_add(
          left, sparse_scale(t.c, H.multiply_sparse(H.antipode_col(t.j),
                                                    {{t.k, Scalar::one(F)}})));
      right = sparse_add(
          right, sparse_scale(t.c, H.multiply_sparse({{t.j, Scalar::one(F)}},
                                                     H.antipode_col(t.k))));
    }
    SparseVec want = sparse_scale(H.counit_coeffs()[i],
                                  dense_to_sparse(H.unit()));
    if (left != want || right != want) fail("antipode axiom, witness " + L[i]);
  }

  // Associativity (budget policy) and algebra-map property of Delta/eps.
  bool full = n <= budget.full_sweep_max_dim;
  rep.full_sweep = full;
  auto assoc_check = [&](size_t i, size_t j, size_t k) {
    ++rep.triples_checked;
    SparseVec bi{{i, Scalar::one(F)}}, bj{{j, Scalar::one(F)}},
        bk{{k, Scalar::one(F)}};
    SparseVec lhs = H.multiply_sparse(H.mult(i, j), bk);
    SparseVec rhs = H.multiply_sparse(bi, H.mult(j, k));
    if (lhs != rhs)
      fail("associativity axiom, witness (" + L[i] + ", " + L[j] + ", " +
           L[k] + ")");
  };
  auto pair_check = [&](size_t i, size_t j) {
    SparseVec lhs = H.coproduct_sparse(H.mult(i, j));
    SparseVec di, dj;
    for (const auto& t : H.coprod(i))
      di.emplace_back(static_cast<uint64_t>(t.j) * n + t.k, t.c);
    for (const auto& t : H.coprod(j))
      dj.emplace_back(static_cast<uint64_t>(t.j) * n + t.k, t.c);
    if (lhs != H.tensor_multiply(sparse_normalize(std::move(di)),
                                 sparse_normalize(std::move(dj))))
      fail("coproduct multiplicativity axiom, witness (" + L[i] + ", " + L[j] +
           ")");
    Scalar el = Scalar::zero(F);
    for (const auto& [k, v] : H.mult(i, j)) el += v * H.counit_coeffs()[k];
    if (el != H.counit_coeffs()[i] * H.counit_coeffs()[j])
      fail("counit multiplicativity axiom, witness (" + L[i] + ", " + L[j] +
           ")");
  };
  if (full) {
    rep.policy = "full sweep (dim <= " +
                 std::to_string(budget.full_sweep_max_dim) + ")";
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        pair_check(i, j);
        for (size_t k = 0; k < n; ++k) assoc_check(i, j, k);
      }
  } else {
    rep.policy = "generator triples + " +
                 std::to_string(budget.random_triples) +
                 " seeded random triples (seed " + std::to_string(budget.seed) +
                 ")";
    const auto& gens = H.generators();
    // All triples with at least two coordinates in the generator set.
    for (size_t g1 : gens)
      for (size_t g2 : gens)
        for (size_t x = 0; x < n; ++x) {
          assoc_check(g1, g2, x);
          assoc_check(g1, x, g2);
          assoc_check(x, g1, g2);
        }
    std::mt19937_64 rng(budget.seed);
    for (size_t it = 0; it < budget.random_triples; ++it)
      assoc_check(rng() % n, rng() % n, rng() % n);
    // Pairs: all generator-involving pairs plus a seeded sample.
    for (size_t g : gens)
      for (size_t x = 0; x < n; ++x) {
        pair_check(g, x);
        pair_check(x, g);
      }
    for (size_t it = 0; it < std::max<size_t>(budget.random_triples / 10, 100);
         ++it)
      pair_check(rng() % n, rng() % n);
  }

  // Antipode invertibility: by rank at small dimension, otherwise via the
  // pivot relation (S^2 = conjugation by an invertible element implies S is
  // bijective).
  if (n <= 128) {
    if (H.antipode_matrix().rank() != n)
      fail("antipode invertibility, witness: rank(S) < dim");
  } else if (!H.pivot()) {
    rep.policy += "; antipode rank check skipped (no pivot, dim budget)";
  }

  // Pivot, when stored.
  if (H.pivot()) {
    std::string why;
    if (!H.verify_pivot(*H.pivot(), &why)) fail("pivot axiom, " + why);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

HopfAlgebra group_algebra(const FieldSpec& F,
                          const std::vector<std::string>& labels,
                          const std::vector<std::vector<size_t>>& table,
                          const std::vector<size_t>& inverse) {
  size_t n = labels.size();
  Scalar one = Scalar::one(F);
  std::vector<std::vector<SparseVec>> mult(n, std::vector<SparseVec>(n));
  std::vector<CoprodList> cop(n);
  std::vector<SparseVec> anti(n);
  Vec unit = vec_zero(F, n), counit(n, one);
  unit[0] = one;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j)
      mult[i][j] = {{table[i][j], one}};
    cop[i] = {{static_cast<uint32_t>(i), static_cast<uint32_t>(i), one}};
    anti[i] = {{inverse[i], one}};
  }
  return HopfAlgebra(F, labels, unit, std::move(mult), std::move(cop), counit,
                     std::move(anti), unit);
}

}  // namespace

HopfAlgebra group_algebra_cyclic(const FieldSpec& F, unsigned m) {
  std::vector<std::string> labels;
  for (unsigned i = 0; i < m; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
  std::vector<std::vector<size_t>> table(m, std::vector<size_t>(m));
  std::vector<size_t> inverse(m);
  for (unsigned i = 0; i < m; ++i) {
    inverse[i] = (m - i) % m;
    for (unsigned j = 0; j < m; ++j) table[i][j] = (i + j) % m;
  }
  return group_algebra(F, labels, table, inverse);
}

HopfAlgebra group_algebra_s3(const FieldSpec& F) {
  // Permutations of {0,1,2} as arrays; composition (p*q)(x) = p(q(x)).
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> labels = {"e",    "s12",  "s13",
                                     "s23",  "c123", "c132"};
  auto find = [&](const std::array<int, 3>& p) -> size_t {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return i;
    throw HopfError("internal: S3 table");
  };
  std::vector<std::vector<size_t>> table(6, std::vector<size_t>(6));
  std::vector<size_t> inverse(6);
  for (size_t i = 0; i < 6; ++i) {
    std::array<int, 3> inv{};
    for (int x = 0; x < 3; ++x) inv[perms[i][x]] = x;
    inverse[i] = find(inv);
    for (size_t j = 0; j < 6; ++j) {
      std::array<int, 3> comp{};
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      table[i][j] = find(comp);
    }
  }
  return group_algebra(F, labels, table, inverse);
}

HopfAlgebra taft4(const FieldSpec& F) {
  if (F.characteristic() == 2)
    throw HopfError("taft4 requires characteristic != 2");
  // Basis monomials g^a x^b with a,b in {0,1}; index = 2a + b.
  //   (g^a x^b)(g^c x^d) = (-1)^{bc} g^{a+c} x^{b+d}, zero when b + d >= 2.
  std::vector<std::string> labels = {"1", "x", "g", "gx"};
  Scalar one = Scalar::one(F);
  auto idx = [](int a, int b) { return 2 * a + b; };
  std::vector<std::vector<SparseVec>> mult(4, std::vector<SparseVec>(4));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          SparseVec& dst = mult[idx(a, b)][idx(c, d)];
          if (b + d >= 2) continue;
          Scalar coef = (b && c) ? -one : one;
          dst = {{static_cast<uint64_t>(idx((a + c) % 2, b + d)), coef}};
        }
  std::vector<CoprodList> cop(4);
  cop[idx(0, 0)] = {{0, 0, one}};
  cop[idx(1, 0)] = {{2, 2, one}};  // Delta(g) = g (x) g
  // Delta(x) = 1 (x) x + x (x) g
  cop[idx(0, 1)] = {{0, 1, one}, {1, 2, one}};
  // Delta(gx) = Delta(g)Delta(x) = g (x) gx + gx (x) 1
  cop[idx(1, 1)] = {{2, 3, one}, {3, 0, one}};
  Vec counit = vec_zero(F, 4);
  counit[idx(0, 0)] = one;
  counit[idx(1, 0)] = one;
  std::vector<SparseVec> anti(4);
  anti[idx(0, 0)] = {{0, one}};
  anti[idx(1, 0)] = {{2, one}};   // S(g) = g
  anti[idx(0, 1)] = {{3, one}};   // S(x) = -x g = gx
  anti[idx(1, 1)] = {{1, -one}};  // S(gx) = -x
  Vec unit = vec_zero(F, 4), pivot = vec_zero(F, 4);
  unit[idx(0, 0)] = one;
  pivot[idx(1, 0)] = one;  // S^2(x) = -x = g x g^{-1}
  return HopfAlgebra(F, labels, unit, std::move(mult), std::move(cop), counit,
                     std::move(anti), pivot);
}

}  // namespace hopfkit

#include "hopfkit/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace hopfkit {

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exact division of polynomials with rational coefficients; remainder must
// be zero.  Coefficient vectors are little-endian (index = power).
std::vector<mpq_class> poly_divide_exact(std::vector<mpq_class> num,
                                         const std::vector<mpq_class>& den) {
  size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<mpq_class> quo(dn - dd + 1, mpq_class(0));
  for (size_t k = dn + 1; k-- > dd;) {
    mpq_class c = num[k] / den[dd];
    quo[k - dd] = c;
    if (c != 0)
      for (size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw FieldError("internal: inexact polynomial division");
  return quo;
}

std::mutex g_cyclo_mutex;
std::map<unsigned, std::shared_ptr<const CycloInfo>> g_cyclo_cache;

}  // namespace

std::vector<mpq_class> cyclotomic_polynomial(unsigned N) {
  if (N == 0) throw FieldError("cyclotomic index must be positive");
  // x^N - 1 divided by the product of Phi_d over proper divisors d of N.
  std::vector<mpq_class> num(N + 1, mpq_class(0));
  num[0] = -1;
  num[N] = 1;
  for (unsigned d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    num = poly_divide_exact(std::move(num), cyclotomic_polynomial(d));
  }
  return num;
}

FieldSpec FieldSpec::rationals() { return FieldSpec(); }

FieldSpec FieldSpec::prime(unsigned long p) {
  if (!is_prime(p)) throw FieldError("GF(p) requires a prime modulus");
  if (p >= (1ul << 31)) throw FieldError("prime modulus too large");
  FieldSpec F;
  F.kind_ = FieldKind::Prime;
  F.p_ = p;
  return F;
}

FieldSpec FieldSpec::cyclotomic(unsigned N) {
  if (N == 0) throw FieldError("cyclotomic index must be positive");
  FieldSpec F;
  F.kind_ = FieldKind::Cyclotomic;
  F.N_ = N;
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(N);
    if (it != g_cyclo_cache.end()) {
      F.cyclo_ = it->second;
      return F;
    }
  }
  auto info = std::make_shared<CycloInfo>();
  info->N = N;
  info->phi = cyclotomic_polynomial(N);
  info->deg = static_cast<unsigned>(info->phi.size() - 1);
  // Precompute z^(deg+j) mod Phi_N for j = 0 .. deg-2.
  unsigned d = info->deg;
  std::vector<mpq_class> cur(d, mpq_class(0));  // z^deg mod Phi
  for (unsigned i = 0; i < d; ++i) cur[i] = -info->phi[i];
  if (d >= 1) {
    for (unsigned j = 0; j + 1 < d; ++j) {
      info->red.push_back(cur);
      // multiply cur by z and reduce
      std::vector<mpq_class> nxt(d, mpq_class(0));
      mpq_class top = cur[d - 1];
      for (unsigned i = d - 1; i >= 1; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      if (top != 0)
        for (unsigned i = 0; i < d; ++i) nxt[i] += top * -info->phi[i];
      cur = std::move(nxt);
    }
  }
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    g_cyclo_cache.emplace(N, info);
  }
  F.cyclo_ = info;
  return F;
}

const CycloInfo& FieldSpec::cyclo() const {
  if (kind_ != FieldKind::Cyclotomic)
    throw FieldError("not a cyclotomic field");
  return *cyclo_;
}

std::string FieldSpec::name() const {
  switch (kind_) {
    case FieldKind::Rational:
      return "QQ";
    case FieldKind::Prime:
      return "GF(" + std::to_string(p_) + ")";
    case FieldKind::Cyclotomic:
      return "Cyclotomic(" + std::to_string(N_) + ")";
  }
  return "?";
}

FieldSpec FieldSpec::from_name(const std::string& name) {
  if (name == "QQ") return rationals();
  auto grab = [&](const std::string& prefix) -> long {
    if (name.size() > prefix.size() + 1 && name.rfind(prefix, 0) == 0 &&
        name.back() == ')')
      return std::stol(name.substr(prefix.size(),
                                   name.size() - prefix.size() - 1));
    return -1;
  };
  long v = grab("GF(");
  if (v > 0) return prime(static_cast<unsigned long>(v));
  v = grab("Cyclotomic(");
  if (v > 0) return cyclotomic(static_cast<unsigned>(v));
  throw ParseError("unknown field name: " + name);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::zero(const FieldSpec& F) {
  Scalar s;
  s.field_ = F;
  if (F.kind() == FieldKind::Cyclotomic)
    s.coef_.assign(F.degree(), mpq_class(0));
  return s;
}

Scalar Scalar::one(const FieldSpec& F) { return from_int(F, 1); }

Scalar Scalar::from_int(const FieldSpec& F, long v) {
  return from_rational(F, mpq_class(v));
}

Scalar Scalar::from_rational(const FieldSpec& F, const mpq_class& v) {
  Scalar s = zero(F);
  switch (F.kind()) {
    case FieldKind::Rational:
      s.rat_ = v;
      s.rat_.canonicalize();
      break;
    case FieldKind::Prime: {
      mpz_class num = v.get_num(), den = v.get_den();
      mpz_class p(static_cast<unsigned long>(F.p()));
      mpz_class nm = num % p;
      if (nm < 0) nm += p;
      mpz_class dm = den % p;
      if (dm < 0) dm += p;
      if (dm == 0) throw FieldError("denominator divisible by p in GF(p)");
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t()) == 0)
        throw FieldError("non-invertible denominator in GF(p)");
      mpz_class r = (nm * inv) % p;
      s.res_ = r.get_ui();
      break;
    }
    case FieldKind::Cyclotomic:
      s.coef_[0] = v;
      s.coef_[0].canonicalize();
      break;
  }
  return s;
}

Scalar Scalar::gen(const FieldSpec& F) {
  if (F.kind() != FieldKind::Cyclotomic)
    throw FieldError("z is only defined over cyclotomic fields");
  Scalar s = zero(F);
  if (F.degree() == 1) {
    // Phi_1 = z - 1, Phi_2 = z + 1: z is rational in these fields.
    s.coef_[0] = (F.N() == 1) ? 1 : -1;
  } else {
    s.coef_[1] = 1;
  }
  return s;
}

Scalar Scalar::root_of_unity_power(const FieldSpec& F, long k) {
  long N = static_cast<long>(F.N());
  if (F.kind() != FieldKind::Cyclotomic || N == 0)
    throw FieldError("root_of_unity_power requires a cyclotomic field");
  long r = ((k % N) + N) % N;
  Scalar z = gen(F);
  return z.pow(r);
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    throw FieldMismatchError("scalars from different fields: " +
                             field_.name() + " vs " + o.field_.name());
}

void Scalar::reduce_cyclo(std::vector<mpq_class>& c) const {
  const CycloInfo& ci = field_.cyclo();
  unsigned d = ci.deg;
  for (size_t k = c.size(); k-- > d;) {
    if (c[k] == 0) continue;
    const auto& rep = ci.red[k - d];
    for (unsigned i = 0; i < d; ++i) c[i] += c[k] * rep[i];
    c[k] = 0;
  }
  c.resize(d);
}

bool Scalar::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::Rational:
      return rat_ == 0;
    case FieldKind::Prime:
      return res_ == 0;
    case FieldKind::Cyclotomic:
      for (const auto& c : coef_)
        if (c != 0) return false;
      return true;
  }
  return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  switch (field_.kind()) {
    case FieldKind::Rational:
      return rat_ == o.rat_;
    case FieldKind::Prime:
      return res_ == o.res_;
    case FieldKind::Cyclotomic:
      return coef_ == o.coef_;
  }
  return false;
}

bool Scalar::operator<(const Scalar& o) const {
  check_same(o);
  switch (field_.kind()) {
    case FieldKind::Rational:
      return rat_ < o.rat_;
    case FieldKind::Prime:
      return res_ < o.res_;
    case FieldKind::Cyclotomic:
      return coef_ < o.coef_;
  }
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  switch (field_.kind()) {
    case FieldKind::Rational:
      s.rat_ += o.rat_;
      break;
    case FieldKind::Prime:
      s.res_ = (res_ + o.res_) % field_.p();
      break;
    case FieldKind::Cyclotomic:
      for (size_t i = 0; i < coef_.size(); ++i) s.coef_[i] += o.coef_[i];
      break;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  switch (field_.kind()) {
    case FieldKind::Rational:
      s.rat_ = -rat_;
      break;
    case FieldKind::Prime:
      s.res_ = res_ == 0 ? 0 : field_.p() - res_;
      break;
    case FieldKind::Cyclotomic:
      for (auto& c : s.coef_) c = -c;
      break;
  }
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s = zero(field_);
  switch (field_.kind()) {
    case FieldKind::Rational:
      s.rat_ = rat_ * o.rat_;
      break;
    case FieldKind::Prime:
      s.res_ = (res_ * o.res_) % field_.p();  // p < 2^31, no overflow
      break;
    case FieldKind::Cyclotomic: {
      size_t d = coef_.size();
      std::vector<mpq_class> prod(2 * d - 1, mpq_class(0));
      for (size_t i = 0; i < d; ++i) {
        if (coef_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
          if (o.coef_[j] == 0) continue;
          prod[i + j] += coef_[i] * o.coef_[j];
        }
      }
      reduce_cyclo(prod);
      s.coef_ = std::move(prod);
      break;
    }
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  Scalar s = zero(field_);
  switch (field_.kind()) {
    case FieldKind::Rational:
      s.rat_ = 1 / rat_;
      break;
    case FieldKind::Prime: {
      mpz_class a(res_), p(field_.p()), inv;
      mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
      s.res_ = inv.get_ui();
      break;
    }
    case FieldKind::Cyclotomic: {
      // Extended Euclid in Q[z] for gcd(this, Phi_N) = 1.
      // r0 = Phi_N, r1 = this; maintain r = s*Phi + t*this.
      std::vector<mpq_class> r0 = field_.cyclo().phi;
      std::vector<mpq_class> r1 = coef_;
      auto trim = [](std::vector<mpq_class>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
      };
      trim(r1);
      std::vector<mpq_class> t0, t1{mpq_class(1)};
      while (true) {
        // divide r0 by r1: r0 = q*r1 + r2
        std::vector<mpq_class> rem = r0;
        std::vector<mpq_class> q(rem.size() >= r1.size()
                                     ? rem.size() - r1.size() + 1
                                     : 0,
                                 mpq_class(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
          mpq_class c = rem.back() / r1.back();
          size_t shift = rem.size() - r1.size();
          q[shift] = c;
          for (size_t j = 0; j < r1.size(); ++j)
            rem[shift + j] -= c * r1[j];
          trim(rem);
          if (rem.size() < r1.size()) break;
        }
        // t2 = t0 - q*t1
        std::vector<mpq_class> t2 = t0;
        if (t2.size() < q.size() + t1.size())
          t2.resize(q.size() + t1.size() > 0 ? q.size() + t1.size() - 1 : 0,
                    mpq_class(0));
        for (size_t i = 0; i < q.size(); ++i) {
          if (q[i] == 0) continue;
          for (size_t j = 0; j < t1.size(); ++j) {
            if (t2.size() < i + j + 1) t2.resize(i + j + 1, mpq_class(0));
            t2[i + j] -= q[i] * t1[j];
          }
        }
        trim(t2);
        if (rem.empty()) {
          // r1 is the gcd; it must be a nonzero constant.
          if (r1.size() != 1)
            throw FieldError("internal: non-invertible cyclotomic element");
          std::vector<mpq_class> inv(field_.degree(), mpq_class(0));
          for (size_t i = 0; i < t1.size() && i < inv.size(); ++i)
            inv[i] = t1[i] / r1[0];
          s.coef_ = std::move(inv);
          return s;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
      }
    }
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Scalar acc = one(field_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

const mpq_class& Scalar::rational() const {
  if (field_.kind() != FieldKind::Rational)
    throw FieldError("not a rational scalar");
  return rat_;
}

unsigned long Scalar::residue() const {
  if (field_.kind() != FieldKind::Prime)
    throw FieldError("not a GF(p) scalar");
  return res_;
}

const std::vector<mpq_class>& Scalar::coeffs() const {
  if (field_.kind() != FieldKind::Cyclotomic)
    throw FieldError("not a cyclotomic scalar");
  return coef_;
}

std::string Scalar::str() const {
  std::ostringstream os;
  switch (field_.kind()) {
    case FieldKind::Rational:
      os << rat_;
      break;
    case FieldKind::Prime:
      os << res_;
      break;
    case FieldKind::Cyclotomic: {
      bool first = true;
      for (size_t k = coef_.size(); k-- > 0;) {
        const mpq_class& c = coef_[k];
        if (c == 0) continue;
        mpq_class a = c;
        if (first) {
          if (a < 0) {
            os << "-";
            a = -a;
          }
        } else {
          os << (a < 0 ? " - " : " + ");
          if (a < 0) a = -a;
        }
        first = false;
        if (k == 0) {
          os << a;
        } else {
          if (a != 1) os << a << "*";
          os << "z";
          if (k > 1) os << "^" << k;
        }
      }
      if (first) os << "0";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Scalar grammar parser

namespace {

struct ScalarLexer {
  const std::string& s;
  size_t i = 0;
  explicit ScalarLexer(const std::string& text) : s(text) {}
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
  mpz_class integer() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected integer in scalar: " + s);
    return mpz_class(s.substr(start, i - start));
  }
};

}  // namespace

Scalar parse_scalar(const FieldSpec& F, const std::string& text) {
  ScalarLexer lx(text);
  Scalar total = Scalar::zero(F);
  bool expect_term = true;
  int sign = 1;
  while (true) {
    char c = lx.peek();
    if (c == '\0') break;
    if (!expect_term) {
      if (c == '+') {
        sign = 1;
        lx.take();
      } else if (c == '-') {
        sign = -1;
        lx.take();
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) +
                         "' in scalar: " + text);
      }
      expect_term = true;
      continue;
    }
    // allow extra leading signs within a term
    while (lx.peek() == '+' || lx.peek() == '-') {
      if (lx.take() == '-') sign = -sign;
    }
    // term := number [ '*' zpart ] | zpart
    mpq_class coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      mpz_class num = lx.integer();
      mpz_class den(1);
      if (lx.peek() == '/') {
        lx.take();
        den = lx.integer();
        if (den == 0) throw ParseError("zero denominator in scalar: " + text);
      }
      coef = mpq_class(num, den);
      coef.canonicalize();
      have_coef = true;
      if (lx.peek() == '*') lx.take();
    }
    long zpow = 0;
    if (lx.peek() == 'z') {
      lx.take();
      zpow = 1;
      if (lx.peek() == '^') {
        lx.take();
        zpow = lx.integer().get_si();
      }
    } else if (!have_coef) {
      throw ParseError("expected term in scalar: " + text);
    }
    Scalar term = Scalar::from_rational(F, sign < 0 ? mpq_class(-coef) : coef);
    if (zpow != 0) term = term * Scalar::gen(F).pow(zpow);
    total += term;
    sign = 1;
    expect_term = false;
  }
  if (expect_term) throw ParseError("empty scalar: " + text);
  return total;
}

}  // namespace hopfkit

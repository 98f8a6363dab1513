#include "dmf/fq.hpp"

#include <algorithm>

namespace dmf {
namespace {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Minimal F_p[x] helpers used for modulus validation and inversion.
// Polynomials are coefficient vectors, constant term first, no trailing zeros.
using PolyP = std::vector<int64_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t inv_mod(int64_t a, int64_t p) {
  int64_t res = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) res = res * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return res;
}

// a mod b, b nonzero.
PolyP poly_rem(PolyP a, const PolyP& b, int64_t p) {
  trim(a);
  int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    int64_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

// Trial division by every monic polynomial of degree <= deg(f)/2.
bool is_irreducible(const PolyP& f, int64_t p) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  for (int d = 1; 2 * d <= deg; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t idx = 0; idx < count; ++idx) {
      PolyP g(d + 1, 0);
      g[d] = 1;
      int64_t t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

PolyP first_irreducible(int64_t p, int r) {
  // Lexicographic order on (a_{r-1}, ..., a_0): the constant term varies fastest.
  int64_t count = 1;
  for (int i = 0; i < r; ++i) count *= p;
  for (int64_t idx = 0; idx < count; ++idx) {
    PolyP g(r + 1, 0);
    g[r] = 1;
    int64_t t = idx;
    for (int i = 0; i < r; ++i) {
      g[i] = t % p;
      t /= p;
    }
    if (is_irreducible(g, p)) return g;
  }
  throw DomainError("no irreducible modulus found");
}

}  // namespace

Field Field::make(int64_t p, int r) {
  if (r < 1 || r > FqElem::kMaxDeg) throw DomainError("extension degree out of range");
  if (r == 1) {
    std::vector<int64_t> m = {0, 1};
    return make(p, r, m);
  }
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw DomainError("p must be an odd prime");
  PolyP m = first_irreducible(p, r);
  std::vector<int64_t> mv(m.begin(), m.end());
  return make(p, r, mv);
}

Field Field::make(int64_t p, int r, const std::vector<int64_t>& modulus) {
  if (p < 3 || p % 2 == 0 || p >= (1 << 15) || !is_prime(p))
    throw DomainError("p must be an odd prime below 2^15");
  if (r < 1 || r > FqElem::kMaxDeg) throw DomainError("extension degree out of range");
  if (static_cast<int>(modulus.size()) != r + 1) throw DomainError("modulus must have degree r");
  PolyP m;
  m.reserve(modulus.size());
  for (int64_t c : modulus) m.push_back(((c % p) + p) % p);
  if (m[r] != 1) throw DomainError("modulus must be monic");
  if (r > 1 && !is_irreducible(m, p)) throw DomainError("modulus is reducible");

  Field f;
  f.p_ = p;
  f.r_ = r;
  f.q_ = 1;
  for (int i = 0; i < r; ++i) f.q_ *= p;
  f.mod_.assign(m.begin(), m.end());
  return f;
}

FqElem Field::from_int(int64_t n) const {
  FqElem e{};
  e.c[0] = static_cast<uint16_t>(((n % p_) + p_) % p_);
  return e;
}

bool Field::is_zero(const FqElem& a) const {
  for (int i = 0; i < r_; ++i)
    if (a.c[i]) return false;
  return true;
}

FqElem Field::add(const FqElem& a, const FqElem& b) const {
  FqElem r{};
  for (int i = 0; i < r_; ++i) {
    int32_t s = a.c[i] + b.c[i];
    if (s >= p_) s -= static_cast<int32_t>(p_);
    r.c[i] = static_cast<uint16_t>(s);
  }
  return r;
}

FqElem Field::sub(const FqElem& a, const FqElem& b) const {
  FqElem r{};
  for (int i = 0; i < r_; ++i) {
    int32_t s = a.c[i] - b.c[i];
    if (s < 0) s += static_cast<int32_t>(p_);
    r.c[i] = static_cast<uint16_t>(s);
  }
  return r;
}

FqElem Field::neg(const FqElem& a) const { return sub(zero(), a); }

void Field::reduce_mul(const FqElem& a, const FqElem& b, FqElem& out) const {
  // Schoolbook product, then reduction by the monic modulus.
  std::array<int64_t, 2 * FqElem::kMaxDeg> t{};
  for (int i = 0; i < r_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < r_; ++j) t[i + j] += static_cast<int64_t>(a.c[i]) * b.c[j];
  }
  for (int k = 2 * r_ - 2; k >= r_; --k) {
    int64_t c = t[k] % p_;
    if (!c) continue;
    for (int i = 0; i < r_; ++i) t[k - r_ + i] -= c * mod_[i];
    t[k] = 0;
  }
  for (int i = 0; i < r_; ++i) out.c[i] = static_cast<uint16_t>(((t[i] % p_) + p_) % p_);
}

FqElem Field::mul(const FqElem& a, const FqElem& b) const {
  if (r_ == 1) {
    FqElem r{};
    r.c[0] = static_cast<uint16_t>(static_cast<int64_t>(a.c[0]) * b.c[0] % p_);
    return r;
  }
  FqElem r{};
  reduce_mul(a, b, r);
  return r;
}

FqElem Field::pow(const FqElem& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  FqElem base = a, res = one();
  while (e) {
    if (e & 1) res = mul(res, base);
    base = mul(base, base);
    e >>= 1;
  }
  return res;
}

FqElem Field::inv(const FqElem& a) const {
  if (is_zero(a)) throw DivisionByZero("inverse of zero field element");
  // q is small; Fermat works fine and avoids a polynomial gcd.
  return pow(a, q_ - 2);
}

FqElem Field::element(int64_t index) const {
  FqElem e{};
  for (int i = 0; i < r_; ++i) {
    e.c[i] = static_cast<uint16_t>(index % p_);
    index /= p_;
  }
  return e;
}

int64_t Field::index_of(const FqElem& a) const {
  int64_t idx = 0;
  for (int i = r_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
  return idx;
}

std::vector<FqElem> Field::elements() const {
  std::vector<FqElem> v;
  v.reserve(static_cast<size_t>(q_));
  for (int64_t i = 0; i < q_; ++i) v.push_back(element(i));
  return v;
}

std::string Field::render(const FqElem& a) const {
  bool ext = false;
  for (int i = 1; i < r_; ++i)
    if (a.c[i]) ext = true;
  if (!ext) {
    int64_t c = a.c[0];
    if (c > p_ / 2) c -= p_;
    return std::to_string(c);
  }
  std::string s;
  for (int i = r_ - 1; i >= 0; --i) {
    if (!a.c[i]) continue;
    if (!s.empty()) s += "+";
    if (a.c[i] != 1 || i == 0) s += std::to_string(a.c[i]);
    if (i >= 1) {
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace dmf

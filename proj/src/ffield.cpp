#include "equilab/ffield.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace equilab {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<Int, int> prime_power_split(Int n) {
  if (n < 2) throw DomainError("prime power must be at least 2");
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    Int m = n;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1) throw DomainError(std::to_string(n) + " is not a prime power");
    return {p, e};
  }
  return {n, 1};
}

// --- dense polynomials over F_p, constant coefficient first ---

namespace {

using Poly = std::vector<Int>;

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

Poly poly_trim(Poly f) {
  f.resize(static_cast<std::size_t>(std::max(0, poly_deg(f) + 1)));
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, Int p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = mod_reduce(out[i + j] + a[i] * b[j], p);
  return poly_trim(std::move(out));
}

// quotient and remainder of a by b
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, Int p) {
  int db = poly_deg(b);
  if (db < 0) throw DomainError("polynomial division by zero");
  Int lead_inv = pow_mod(b[db], p - 2, p);
  Poly q(std::max<std::size_t>(a.size(), 1), 0);
  while (poly_deg(a) >= db) {
    int da = poly_deg(a);
    Int factor = mul_mod(a[da], lead_inv, p);
    q[da - db] = factor;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = mod_reduce(a[da - db + i] - factor * b[i], p);
  }
  return {poly_trim(std::move(q)), poly_trim(std::move(a))};
}

Poly poly_rem(Poly a, const Poly& b, Int p) {
  return poly_divmod(std::move(a), b, p).second;
}

Poly poly_sub(const Poly& a, const Poly& b, Int p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Int va = i < a.size() ? a[i] : 0;
    Int vb = i < b.size() ? b[i] : 0;
    out[i] = mod_reduce(va - vb, p);
  }
  return poly_trim(std::move(out));
}

bool poly_is_irreducible(const Poly& f, Int p) {
  int d = poly_deg(f);
  if (d < 1) return false;
  if (d == 1) return true;
  // trial division by all monic polynomials of degree 1..d/2
  for (int e = 1; 2 * e <= d; ++e) {
    Poly g(e + 1, 0);
    g[e] = 1;
    Int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (Int idx = 0; idx < count; ++idx) {
      Int rest = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = rest % p;
        rest /= p;
      }
      if (poly_deg(poly_rem(f, g, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Int> canonical_irreducible(Int p, int m) {
  if (!is_prime(p)) throw DomainError("characteristic must be prime");
  if (m < 1) throw DomainError("degree must be positive");
  Poly f(m + 1, 0);
  f[m] = 1;
  Int count = 1;
  for (int i = 0; i < m; ++i) {
    count *= p;
    if (count > (Int(1) << 22)) throw SizeError("irreducible search space too large");
  }
  for (Int idx = 0; idx < count; ++idx) {
    Int rest = idx;
    for (int i = 0; i < m; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    if (poly_is_irreducible(f, p)) return f;
  }
  throw ValidationError("no irreducible found");  // unreachable
}

// ---------------------------------------------------------------------------

FqField::FqField(Int p, int m, Int size_bound) : p_(p), m_(m) {
  if (!is_prime(p)) throw DomainError("characteristic must be prime");
  if (m < 1) throw DomainError("extension degree must be positive");
  size_ = 1;
  for (int i = 0; i < m; ++i) {
    size_ *= p;
    if (size_ > size_bound) throw SizeError("field size exceeds the configured bound");
  }
  modulus_ = canonical_irreducible(p, m);
}

FqField::Elem FqField::one() const {
  Elem e(m_, 0);
  e[0] = 1;
  return e;
}

FqField::Elem FqField::from_index(Int idx) const {
  if (idx < 0 || idx >= size_) throw DomainError("field element index out of range");
  Elem e(m_, 0);
  for (int i = 0; i < m_; ++i) {
    e[i] = idx % p_;
    idx /= p_;
  }
  return e;
}

Int FqField::to_index(const Elem& a) const {
  Int idx = 0;
  for (int i = m_ - 1; i >= 0; --i) idx = idx * p_ + a[i];
  return idx;
}

bool FqField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](Int c) { return c == 0; });
}

FqField::Elem FqField::add(const Elem& a, const Elem& b) const {
  Elem out(m_);
  for (int i = 0; i < m_; ++i) out[i] = mod_reduce(a[i] + b[i], p_);
  return out;
}

FqField::Elem FqField::sub(const Elem& a, const Elem& b) const {
  Elem out(m_);
  for (int i = 0; i < m_; ++i) out[i] = mod_reduce(a[i] - b[i], p_);
  return out;
}

FqField::Elem FqField::mul(const Elem& a, const Elem& b) const {
  Poly prod = poly_mul(a, b, p_);
  Poly rem = poly_rem(std::move(prod), modulus_, p_);
  rem.resize(m_, 0);
  return rem;
}

FqField::Elem FqField::pow(const Elem& a, Int e) const {
  if (e < 0) return pow(inv(a), -e);
  Elem r = one();
  Elem b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FqField::Elem FqField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("inverse of zero");
  // extended euclid: r_k = s_k * a (mod modulus); ends at a nonzero constant
  Poly r0 = modulus_, r1 = poly_trim(a);
  Poly s0 = {}, s1 = {1};
  while (poly_deg(r1) > 0) {
    auto [q, r] = poly_divmod(r0, r1, p_);
    Poly s = poly_sub(s0, poly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (poly_deg(r1) != 0) throw DomainError("element is not invertible");
  Int c_inv = pow_mod(r1[0], p_ - 2, p_);
  Poly out = s1;
  for (Int& c : out) c = mul_mod(c, c_inv, p_);
  out = poly_rem(std::move(out), modulus_, p_);
  out.resize(m_, 0);
  return out;
}

FqField::Elem FqField::pow_p(const Elem& a, int k) const {
  Elem r = a;
  for (int i = 0; i < k; ++i) r = pow(r, p_);
  return r;
}

std::pair<FqField::Elem, FqField::Elem> norm_and_trace(const FqField& f, int sub_degree,
                                                       const FqField::Elem& x) {
  if (sub_degree < 1 || f.m() % sub_degree != 0)
    throw DomainError("subfield degree must divide the extension degree");
  const int steps = f.m() / sub_degree;
  FqField::Elem norm = f.one();
  FqField::Elem trace = f.zero();
  FqField::Elem cur = x;
  for (int j = 0; j < steps; ++j) {
    norm = f.mul(norm, cur);
    trace = f.add(trace, cur);
    cur = f.pow_p(cur, sub_degree);
  }
  // both must be fixed by Frobenius^sub_degree
  if (f.pow_p(norm, sub_degree) != norm || f.pow_p(trace, sub_degree) != trace)
    throw ValidationError("norm/trace left the subfield");
  return {norm, trace};
}

FqField::Elem normal_basis_element(Int p, int n) {
  FqField f(p, n, Int(1) << 16);
  for (Int idx = 0; idx < f.size(); ++idx) {
    FqField::Elem theta = f.from_index(idx);
    IntMat conj(n, n);
    FqField::Elem cur = theta;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) conj(i, j) = cur[i];
      cur = f.frobenius(cur);
    }
    if (rank_mod_p(conj, p) == n) return theta;
  }
  throw ValidationError("no normal basis element found");  // unreachable
}

// ---------------------------------------------------------------------------
// Tensor decomposition via distinct-degree factorization over F_{p^b}

namespace {

// polynomials over an FqField, constant coefficient first
using QPoly = std::vector<FqField::Elem>;

int qpoly_deg(const FqField& f, const QPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!f.is_zero(a[i])) return i;
  return -1;
}

QPoly qpoly_trim(const FqField& f, QPoly a) {
  a.resize(static_cast<std::size_t>(std::max(0, qpoly_deg(f, a) + 1)), f.zero());
  return a;
}

QPoly qpoly_mul(const FqField& f, const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return qpoly_trim(f, std::move(out));
}

QPoly qpoly_rem(const FqField& f, QPoly a, const QPoly& b) {
  int db = qpoly_deg(f, b);
  if (db < 0) throw DomainError("polynomial division by zero");
  FqField::Elem lead_inv = f.inv(b[db]);
  while (qpoly_deg(f, a) >= db) {
    int da = qpoly_deg(f, a);
    FqField::Elem factor = f.mul(a[da], lead_inv);
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = f.sub(a[da - db + i], f.mul(factor, b[i]));
  }
  return qpoly_trim(f, std::move(a));
}

QPoly qpoly_monic(const FqField& f, QPoly a) {
  int d = qpoly_deg(f, a);
  if (d < 0) return a;
  FqField::Elem lead_inv = f.inv(a[d]);
  for (auto& c : a) c = f.mul(c, lead_inv);
  return a;
}

QPoly qpoly_gcd(const FqField& f, QPoly a, QPoly b) {
  a = qpoly_trim(f, std::move(a));
  b = qpoly_trim(f, std::move(b));
  while (qpoly_deg(f, b) >= 0) {
    QPoly r = qpoly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return qpoly_monic(f, std::move(a));
}

// a^q mod modulus, exponent by squaring
QPoly qpoly_pow_q(const FqField& f, const QPoly& a, const QPoly& modulus) {
  Int e = f.size();
  QPoly r{f.one()};
  QPoly base = qpoly_rem(f, a, modulus);
  while (e > 0) {
    if (e & 1) r = qpoly_rem(f, qpoly_mul(f, r, base), modulus);
    base = qpoly_rem(f, qpoly_mul(f, base, base), modulus);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::pair<int, int>> tensor_decompose(Int p, int a, int b) {
  if (a < 1 || b < 1) throw DomainError("tensor factors need positive degrees");
  FqField fq(p, b, Int(1) << 16);

  // canonical degree-a irreducible over F_p, coefficients embedded in F_{p^b}
  std::vector<Int> fa = canonical_irreducible(p, a);
  QPoly f;
  f.reserve(fa.size());
  for (Int c : fa) {
    FqField::Elem e = fq.zero();
    e[0] = c;
    f.push_back(std::move(e));
  }

  std::map<int, int> factor_counts;  // degree over F_{p^b} -> count
  QPoly remaining = f;
  QPoly h{fq.zero(), fq.one()};  // y
  const QPoly y = h;
  for (int d = 1; qpoly_deg(fq, remaining) > 0; ++d) {
    h = qpoly_pow_q(fq, h, f);  // y^(q^d) mod f
    QPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), fq.zero());
    diff[1] = fq.sub(diff[1], fq.one());
    QPoly g = qpoly_gcd(fq, qpoly_rem(fq, diff, remaining), remaining);
    int dg = qpoly_deg(fq, g);
    if (dg > 0) {
      if (dg % d != 0) throw ValidationError("distinct-degree factorization inconsistency");
      factor_counts[d] += dg / d;
      // divide remaining by g
      QPoly quot;
      {
        QPoly r = remaining;
        int dr = qpoly_deg(fq, r);
        quot.assign(dr - dg + 1, fq.zero());
        FqField::Elem lead_inv = fq.inv(g[dg]);
        while ((dr = qpoly_deg(fq, r)) >= dg) {
          FqField::Elem factor = fq.mul(r[dr], lead_inv);
          quot[dr - dg] = factor;
          for (int i = 0; i <= dg; ++i)
            r[dr - dg + i] = fq.sub(r[dr - dg + i], fq.mul(factor, g[i]));
          r = qpoly_trim(fq, std::move(r));
        }
        if (qpoly_deg(fq, r) >= 0) throw ValidationError("factor division left a remainder");
      }
      remaining = quot;
    }
    if (d > a) throw ValidationError("distinct-degree factorization ran away");
  }

  std::vector<std::pair<int, int>> out;  // (degree over F_p, multiplicity)
  for (const auto& [deg_q, count] : factor_counts) out.emplace_back(deg_q * b, count);

  // arithmetic prediction: gcd(a,b) factors of degree lcm(a,b)
  int g_ab = static_cast<int>(gcd_int(a, b));
  int l_ab = a / g_ab * b;
  if (out.size() != 1 || out[0].first != l_ab || out[0].second != g_ab)
    throw ValidationError("tensor factorization disagrees with the gcd/lcm prediction");
  return out;
}

// ---------------------------------------------------------------------------
// Norm forms

NormFormSpace norm_form_space(Int p, int n, int d, Int unknown_bound) {
  if (n < 1 || d < 1) throw DomainError("norm forms need n >= 1, d >= 1");
  Int tuples = 1;
  for (int i = 0; i < n; ++i) {
    tuples *= d;
    if (tuples * n > unknown_bound) throw SizeError("norm form system exceeds the unknown bound");
  }
  const Int unknowns = tuples * n;

  FqField e(p, n, Int(1) << 20);
  // matrix of the Frobenius as an F_p-linear map on the power basis
  IntMat frob = IntMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    FqField::Elem basis = e.zero();
    basis[j] = 1;
    FqField::Elem image = e.frobenius(basis);
    for (int i = 0; i < n; ++i) frob(i, j) = image[i];
  }

  // unknowns x_{t,c}; constraints Frob * x_t = x_{shift t} for the generator
  auto shift_tuple = [&](Int t) {
    // digit h of the result is digit (h+1 mod n) of t
    std::vector<Int> digits(n);
    Int rest = t;
    for (int h = 0; h < n; ++h) {
      digits[h] = rest % d;
      rest /= d;
    }
    Int out = 0;
    for (int h = n - 1; h >= 0; --h) out = out * d + digits[(h + 1) % n];
    return out;
  };

  IntMat a = IntMat::Zero(unknowns, unknowns);
  for (Int t = 0; t < tuples; ++t) {
    Int u = shift_tuple(t);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        a(t * n + i, t * n + j) = mod_reduce(a(t * n + i, t * n + j) + frob(i, j), p);
      a(t * n + i, u * n + i) = mod_reduce(a(t * n + i, u * n + i) - 1, p);
    }
  }

  NormFormSpace s;
  s.p = p;
  s.n = n;
  s.d = d;
  s.basis = nullspace_mod_p(std::move(a), p);
  s.dimension = s.basis.cols();
  return s;
}

}  // namespace equilab

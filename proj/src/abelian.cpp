#include "equilab/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace equilab {

FgAbGroup::FgAbGroup(std::vector<Int> d) : factors(std::move(d)) {
  for (Int f : factors)
    if (f < 0) throw ValidationError("invariant factors must be nonnegative");
}

bool FgAbGroup::is_finite() const {
  return std::all_of(factors.begin(), factors.end(), [](Int d) { return d > 0; });
}

Int FgAbGroup::size() const {
  if (!is_finite()) throw DomainError("group is infinite");
  Int n = 1;
  for (Int d : factors) n = mul_mod(n, d, 0);
  return n;
}

bool FgAbGroup::is_trivial() const {
  return std::all_of(factors.begin(), factors.end(), [](Int d) { return d == 1; });
}

std::string FgAbGroup::describe() const {
  if (factors.empty()) return "0";
  std::ostringstream os;
  int free = 0;
  std::vector<Int> torsion;
  for (Int d : factors) {
    if (d == 0)
      ++free;
    else if (d > 1)
      torsion.push_back(d);
  }
  bool first = true;
  if (free == 1) {
    os << "Z";
    first = false;
  } else if (free > 1) {
    os << "Z^" << free;
    first = false;
  }
  for (Int d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMat matrix)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(matrix)) {
  if (mat_.rows() != target_.rank() || mat_.cols() != source_.rank())
    throw ValidationError("hom matrix shape must be target-rank x source-rank");
  for (int i = 0; i < mat_.rows(); ++i)
    for (int j = 0; j < mat_.cols(); ++j) {
      mat_(i, j) = mod_reduce(mat_(i, j), target_.factors[i]);
      // d_j * m_ij must vanish in Z/e_i ("mod 0" meaning equals 0)
      Int d = source_.factors[j];
      Int e = target_.factors[i];
      if (mul_mod(d, mat_(i, j), e) != 0)
        throw ValidationError("hom is not well defined: order of generator " +
                              std::to_string(j) + " is not respected at row " +
                              std::to_string(i));
    }
}

AbHom AbHom::identity(const FgAbGroup& a) {
  return AbHom(a, a, IntMat::Identity(a.rank(), a.rank()));
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, IntMat::Zero(target.rank(), source.rank()));
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source())) throw DomainError("homs are not composable");
  const int rows = g.target().rank();
  const int mid = f.target().rank();
  const int cols = f.source().rank();
  IntMat out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    Int e = g.target().factors[i];
    for (int j = 0; j < cols; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < mid; ++k) {
        Int a = e == 0 ? g.matrix()(i, k) : mod_reduce(g.matrix()(i, k), e);
        Int b = e == 0 ? f.matrix()(k, j) : mod_reduce(f.matrix()(k, j), e);
        acc += static_cast<__int128>(a) * b;
      }
      if (e > 0) {
        acc %= e;
        if (acc < 0) acc += e;
      }
      if (acc > INT64_MAX || acc < INT64_MIN) throw SizeError("hom composition overflow");
      out(i, j) = static_cast<Int>(acc);
    }
  }
  return AbHom(f.source(), g.target(), std::move(out));
}

AbHom add(const AbHom& a, const AbHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DomainError("hom sum requires equal endpoints");
  IntMat out = a.matrix();
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out(i, j) = mod_reduce(out(i, j) + b.matrix()(i, j), a.target().factors[i]);
  return AbHom(a.source(), a.target(), std::move(out));
}

bool AbHom::is_invertible() const {
  if (!(source_ == target_)) return false;

  // free part: the submatrix on Z-factors must be unimodular, and Z-factors
  // must not hit torsion rows (enforced by well-definedness only in one
  // direction, so check columns explicitly)
  std::vector<int> free_idx, tor_idx;
  for (int i = 0; i < source_.rank(); ++i)
    (source_.factors[i] == 0 ? free_idx : tor_idx).push_back(i);

  IntMat ff(static_cast<int>(free_idx.size()), static_cast<int>(free_idx.size()));
  for (std::size_t i = 0; i < free_idx.size(); ++i)
    for (std::size_t j = 0; j < free_idx.size(); ++j)
      ff(static_cast<int>(i), static_cast<int>(j)) = mat_(free_idx[i], free_idx[j]);
  Int d = det_exact(ff);
  if (d != 1 && d != -1) return false;

  // torsion part: bijectivity on the finite subgroup, checked by enumeration
  Int tsize = 1;
  for (int i : tor_idx) {
    tsize = mul_mod(tsize, source_.factors[i], 0);
    if (tsize > 2000000) throw SizeError("torsion enumeration too large");
  }
  if (tsize == 1) return true;

  std::vector<std::vector<Int>> seen;
  std::vector<Int> x(tor_idx.size(), 0);
  seen.reserve(static_cast<std::size_t>(tsize));
  while (true) {
    std::vector<Int> y(tor_idx.size(), 0);
    for (std::size_t i = 0; i < tor_idx.size(); ++i) {
      Int e = target_.factors[tor_idx[i]];
      __int128 acc = 0;
      for (std::size_t j = 0; j < tor_idx.size(); ++j)
        acc += static_cast<__int128>(mat_(tor_idx[i], tor_idx[j])) * x[j];
      y[i] = static_cast<Int>(((acc % e) + e) % e);
    }
    seen.push_back(std::move(y));
    std::size_t i = 0;
    while (i < tor_idx.size() && ++x[i] == source_.factors[tor_idx[i]]) x[i++] = 0;
    if (i == tor_idx.size()) break;
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace equilab

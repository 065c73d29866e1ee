#include "mtlambda/modsym.hpp"

#include <numeric>
#include <stdexcept>

namespace mtlambda {

namespace {

// Coefficients of (u X + v Y)^e, index = power of X.
std::vector<Integer> linear_power(const Integer& u, const Integer& v, unsigned e) {
  std::vector<Integer> out(e + 1);
  for (unsigned j = 0; j <= e; ++j) out[j] = binomial(e, j) * ipow(u, j) * ipow(v, e - j);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

IntPoly monomial(unsigned degree, unsigned i) {
  IntPoly p(degree + 1, 0);
  p.at(i) = 1;
  return p;
}

IntPoly substitute(const IntPoly& p, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  const unsigned deg = static_cast<unsigned>(p.size()) - 1;
  IntPoly out(deg + 1, 0);
  for (unsigned i = 0; i <= deg; ++i) {
    if (p[i] == 0) continue;
    // X^i Y^{deg-i} -> (aX + bY)^i (cX + dY)^{deg-i}
    const std::vector<Integer> left = linear_power(a, b, i);
    const std::vector<Integer> right = linear_power(c, d, deg - i);
    for (unsigned s = 0; s < left.size(); ++s) {
      if (left[s] == 0) continue;
      for (unsigned t = 0; t < right.size(); ++t) {
        if (right[t] != 0) out[s + t] += p[i] * left[s] * right[t];
      }
    }
  }
  return out;
}

IntPoly act_left(const Mat2& g, const IntPoly& p) { return substitute(p, g.d, -g.b, -g.c, g.a); }

// ---------------------------------------------------------------------------

P1List::P1List(std::uint64_t n) : n_(n) {
  if (n == 0 || n > kMaxLevel) throw std::invalid_argument("P1List: level out of range");
  table_.assign(n * n, -1);
  std::vector<std::uint64_t> units;
  for (std::uint64_t u = 1; u <= n; ++u)
    if (gcd_u64(u, n) == 1) units.push_back(u % n);
  for (std::uint64_t c = 0; c < n; ++c) {
    for (std::uint64_t d = 0; d < n; ++d) {
      if (gcd_u64(gcd_u64(c, d), n) != 1 || table_[c * n + d] != -1) continue;
      const auto idx = static_cast<std::int32_t>(reps_.size());
      reps_.emplace_back(c, d);
      for (std::uint64_t u : units) table_[(u * c % n) * n + (u * d % n)] = idx;
    }
  }
}

std::size_t P1List::index_u64(std::uint64_t c, std::uint64_t d) const {
  const std::int32_t idx = table_[(c % n_) * n_ + (d % n_)];
  if (idx < 0) throw std::invalid_argument("P1List: (c : d) is not a point of P^1(Z/N)");
  return static_cast<std::size_t>(idx);
}

std::size_t P1List::index(const Integer& c, const Integer& d) const {
  return index_u64(mpz_fdiv_ui(c.get_mpz_t(), n_), mpz_fdiv_ui(d.get_mpz_t(), n_));
}

Mat2 P1List::lift(std::size_t i) const {
  const auto [c, d] = reps_.at(i);
  Integer C(static_cast<unsigned long>(c == 0 ? n_ : c));
  Integer D(static_cast<unsigned long>(d));
  const Integer N(static_cast<unsigned long>(n_));
  while (gcd(C, D) != 1) D += N;
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), D.get_mpz_t(), C.get_mpz_t());
  return {s, -t, C, D};
}

bool cusps_equivalent(const Cusp& a, const Cusp& b, std::uint64_t n) {
  if (n == 1) return true;
  const std::uint64_t v1 = mpz_fdiv_ui(a.den.get_mpz_t(), n);
  const std::uint64_t v2 = mpz_fdiv_ui(b.den.get_mpz_t(), n);
  const std::uint64_t g = gcd_u64(v1, n);
  const std::uint64_t u1 = mpz_fdiv_ui(a.num.get_mpz_t(), g);
  const std::uint64_t u2 = mpz_fdiv_ui(b.num.get_mpz_t(), g);
  for (std::uint64_t s = 1; s < n; ++s) {
    if (gcd_u64(s, n) != 1) continue;
    if ((s * v1) % n != v2) continue;
    if ((u1 + g * n - (s % g) * u2 % g) % g == 0) return true;
  }
  return false;
}

std::size_t count_cusp_classes(std::uint64_t n) {
  std::vector<Cusp> reps;
  for (std::uint64_t v = 1; v <= n; ++v) {
    if (n % v != 0) continue;
    for (std::uint64_t u = 0; u < v || (v == 1 && u == 0); ++u) {
      if (gcd_u64(u, v) != 1) continue;
      Cusp c(Integer(static_cast<unsigned long>(u)), Integer(static_cast<unsigned long>(v)));
      bool seen = false;
      for (const Cusp& r : reps) {
        if (cusps_equivalent(c, r, n)) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.push_back(c);
    }
  }
  return reps.size();
}

// ---------------------------------------------------------------------------

ManinSymbolSpace::ManinSymbolSpace(std::uint64_t level, unsigned weight)
    : level_(level), weight_(weight), p1_(std::make_shared<P1List>(level)) {
  if (weight < 2 || weight % 2 != 0) throw std::invalid_argument("ManinSymbolSpace: weight must be even and >= 2");
  const std::size_t ngens = num_generators();
  full_ = std::make_unique<SparseEchelon>(ngens);
  plus_ = std::make_unique<SparseEchelon>(ngens);

  const Mat2 sigma{0, -1, 1, 0};
  const Mat2 tau{0, -1, 1, -1};
  const Mat2 tau2 = tau * tau;
  const Mat2 jmat{-1, 0, 0, 1};

  auto add_terms = [](SparseVec& rel, const std::vector<std::pair<std::size_t, Integer>>& terms, int sign) {
    for (const auto& [id, c] : terms) rel.emplace_back(id, Rational(sign * c));
  };

  for (std::size_t x = 0; x < ngens; ++x) {
    SparseVec s_rel{{x, Rational(1)}};
    add_terms(s_rel, right_act(x, sigma), 1);
    SparseVec t_rel{{x, Rational(1)}};
    add_terms(t_rel, right_act(x, tau), 1);
    add_terms(t_rel, right_act(x, tau2), 1);
    full_->add_relation(s_rel);
    full_->add_relation(t_rel);
    plus_->add_relation(s_rel);
    plus_->add_relation(t_rel);
    SparseVec j_rel{{x, Rational(1)}};
    add_terms(j_rel, right_act(x, jmat), -1);
    plus_->add_relation(j_rel);
  }

  full_basis_ = full_->free_columns();
  plus_basis_ = plus_->free_columns();
  full_pos_.assign(ngens, -1);
  plus_pos_.assign(ngens, -1);
  for (std::size_t i = 0; i < full_basis_.size(); ++i) full_pos_[full_basis_[i]] = static_cast<std::int64_t>(i);
  for (std::size_t i = 0; i < plus_basis_.size(); ++i) plus_pos_[plus_basis_[i]] = static_cast<std::int64_t>(i);
}

std::vector<std::pair<std::size_t, Integer>> ManinSymbolSpace::right_act(std::size_t generator, const Mat2& g) const {
  const std::size_t np1 = p1_->size();
  const unsigned i = static_cast<unsigned>(generator / np1);
  const auto [c, d] = (*p1_)[generator % np1];
  const IntPoly p = substitute(monomial(weight_ - 2, i), g.a, g.b, g.c, g.d);
  const Integer cz(static_cast<unsigned long>(c)), dz(static_cast<unsigned long>(d));
  const std::size_t target = p1_->index(cz * g.a + dz * g.c, cz * g.b + dz * g.d);
  std::vector<std::pair<std::size_t, Integer>> out;
  for (unsigned j = 0; j < p.size(); ++j)
    if (p[j] != 0) out.emplace_back(generator_id(j, target), p[j]);
  return out;
}

SparseVec ManinSymbolSpace::coordinates(std::size_t generator) const {
  SparseVec out;
  for (const auto& [col, v] : full_->express(generator)) out.emplace_back(full_pos_[col], v);
  return out;
}

SparseVec ManinSymbolSpace::plus_coordinates(std::size_t generator) const {
  SparseVec out;
  for (const auto& [col, v] : plus_->express(generator)) out.emplace_back(plus_pos_[col], v);
  return out;
}

RationalMatrix ManinSymbolSpace::plus_involution() const {
  const std::size_t d = dimension();
  RationalMatrix m(d, d);
  const Mat2 jmat{-1, 0, 0, 1};
  for (std::size_t col = 0; col < d; ++col) {
    for (const auto& [gen, c] : right_act(full_basis_[col], jmat)) {
      for (const auto& [pos, v] : coordinates(gen)) m(pos, col) += Rational(c) * v;
    }
  }
  return m;
}

std::size_t ManinSymbolSpace::boundary_rank(bool plus) const {
  const std::vector<std::size_t>& basis = plus ? plus_basis_ : full_basis_;
  std::vector<Cusp> classes;
  auto class_of = [&](const Cusp& z) {
    const Cusp neg(-z.num, z.den);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (cusps_equivalent(z, classes[i], level_)) return i;
      if (plus && cusps_equivalent(neg, classes[i], level_)) return i;
    }
    classes.push_back(z);
    return classes.size() - 1;
  };
  std::vector<std::vector<std::pair<std::size_t, int>>> columns;
  const std::size_t np1 = p1_->size();
  for (std::size_t gen : basis) {
    const unsigned i = static_cast<unsigned>(gen / np1);
    const Mat2 g = p1_->lift(gen % np1);
    std::vector<std::pair<std::size_t, int>> col;
    if (i == weight_ - 2) col.emplace_back(class_of(Cusp(g.a, g.c)), 1);
    if (i == 0) col.emplace_back(class_of(Cusp(g.b, g.d)), -1);
    columns.push_back(std::move(col));
  }
  RationalMatrix m(classes.size(), basis.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [row, v] : columns[j]) m(row, j) += v;
  return rank(m);
}

std::size_t ManinSymbolSpace::cuspidal_dimension() const { return dimension() - boundary_rank(false); }
std::size_t ManinSymbolSpace::cuspidal_plus_dimension() const { return plus_dimension() - boundary_rank(true); }

void ManinSymbolSpace::expand_from_infinity(const IntPoly& p, const Cusp& r, const Integer& sign,
                                            std::vector<std::pair<std::size_t, Integer>>& out) const {
  if (r.is_infinity()) return;
  for (const Mat2& g : cfrac_paths(Rational(r.num, r.den))) {
    const IntPoly q = substitute(p, g.a, g.b, g.c, g.d);
    const std::size_t idx = p1_->index(g.c, g.d);
    for (unsigned j = 0; j < q.size(); ++j)
      if (q[j] != 0) out.emplace_back(generator_id(j, idx), sign * q[j]);
  }
}

void ManinSymbolSpace::expand(const IntPoly& p, const Cusp& alpha, const Cusp& beta,
                              std::vector<std::pair<std::size_t, Integer>>& out) const {
  expand_from_infinity(p, beta, 1, out);
  expand_from_infinity(p, alpha, -1, out);
}

std::vector<Rational> ManinSymbolSpace::plus_symbol(const IntPoly& p, const Cusp& alpha, const Cusp& beta) const {
  std::vector<std::pair<std::size_t, Integer>> terms;
  expand(p, alpha, beta, terms);
  std::vector<Rational> v(plus_dimension());
  for (const auto& [gen, c] : terms)
    for (const auto& [pos, x] : plus_coordinates(gen)) v[pos] += Rational(c) * x;
  return v;
}

RationalMatrix ManinSymbolSpace::hecke_matrix(std::uint64_t ell) const {
  if (!is_prime(ell)) throw std::invalid_argument("hecke_matrix: ell must be prime");
  const Integer L(static_cast<unsigned long>(ell));
  std::vector<Mat2> deltas;
  for (std::uint64_t r = 0; r < ell; ++r) deltas.push_back({1, Integer(static_cast<unsigned long>(r)), 0, L});
  if (level_ % ell != 0) deltas.push_back({L, 0, 0, 1});

  const std::size_t d = plus_dimension();
  const std::size_t np1 = p1_->size();
  RationalMatrix m(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    const std::size_t gen = plus_basis_[col];
    const IntPoly p = monomial(weight_ - 2, static_cast<unsigned>(gen / np1));
    const Mat2 g = p1_->lift(gen % np1);
    std::vector<std::pair<std::size_t, Integer>> terms;
    for (const Mat2& delta : deltas) {
      const Mat2 h = delta * g;
      expand(act_left(h, p), Cusp(h.b, h.d), Cusp(h.a, h.c), terms);
    }
    std::vector<Rational> v(d);
    for (const auto& [t, c] : terms)
      for (const auto& [pos, x] : plus_coordinates(t)) v[pos] += Rational(c) * x;
    for (std::size_t row = 0; row < d; ++row) m(row, col) = v[row];
  }
  return m;
}

// ---------------------------------------------------------------------------

Integer EigenSymbol::pair_from_infinity(const IntPoly& p, const Cusp& r) const {
  if (r.is_infinity()) return 0;
  const std::size_t np1 = p1->size();
  Integer total = 0;
  for (const Mat2& g : cfrac_paths(Rational(r.num, r.den))) {
    const IntPoly q = substitute(p, g.a, g.b, g.c, g.d);
    const std::size_t idx = p1->index(g.c, g.d);
    for (unsigned j = 0; j < q.size(); ++j)
      if (q[j] != 0) total += q[j] * generator_values[j * np1 + idx];
  }
  return total;
}

Integer EigenSymbol::pair(const IntPoly& p, const Cusp& alpha, const Cusp& beta) const {
  return pair_from_infinity(p, beta) - pair_from_infinity(p, alpha);
}

Integer EigenSymbol::value_at_01(const Rational& r) const {
  // L(Y^{k-2} {r, oo}) = -sum over paths of L([(cX + dY)^{k-2}, (c : d)]).
  const std::size_t np1 = p1->size();
  const unsigned deg = weight - 2;
  Integer total = 0;
  for (const Mat2& g : cfrac_paths(r)) {
    const std::size_t idx = p1->index(g.c, g.d);
    if (deg == 0) {
      total += generator_values[idx];
      continue;
    }
    const std::vector<Integer> q = linear_power(g.c, g.d, deg);
    for (unsigned j = 0; j <= deg; ++j)
      if (q[j] != 0) total += q[j] * generator_values[j * np1 + idx];
  }
  return -total;
}

namespace {

void normalize_integral(std::vector<Rational>& values) {
  Integer den = 1;
  for (const Rational& v : values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  Integer content = 0;
  for (Rational& v : values) {
    v *= den;
    content = gcd(content, v.get_num());
  }
  if (content == 0) throw std::runtime_error("no eigenvector");
  int sign = 0;
  for (const Rational& v : values) {
    if (v != 0) {
      sign = v > 0 ? 1 : -1;
      break;
    }
  }
  for (Rational& v : values) v = v / Rational(content) * sign;
}

}  // namespace

EigenSymbol eigen_symbol(const ManinSymbolSpace& space, const std::map<std::uint64_t, Integer>& eigen_data,
                         std::uint64_t prime_bound) {
  const std::size_t d = space.plus_dimension();
  RationalMatrix v = RationalMatrix::identity(d);
  std::map<std::uint64_t, Integer> used;
  bool done = d == 1;
  for (const auto& [ell, a] : eigen_data) {
    if (done || ell > prime_bound) break;
    const RationalMatrix t = space.hecke_matrix(ell).transpose();
    RationalMatrix shifted = t;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= Rational(a);
    const RationalMatrix k = nullspace(shifted * v);
    v = v * k;
    used.emplace(ell, a);
    if (v.cols() == 0) throw std::runtime_error("no eigenvector");
    done = v.cols() == 1;
  }
  if (!done) throw std::runtime_error("not rank one");

  std::vector<Rational> gen_values(space.num_generators());
  const std::vector<Rational> lambda = v.column(0);
  for (std::size_t gen = 0; gen < gen_values.size(); ++gen)
    for (const auto& [pos, c] : space.plus_coordinates(gen)) gen_values[gen] += c * lambda[pos];
  normalize_integral(gen_values);

  EigenSymbol phi;
  phi.level = space.level();
  phi.weight = space.weight();
  phi.p1 = space.p1_shared();
  phi.eigenvalues = std::move(used);
  for (const Rational& x : gen_values) phi.generator_values.push_back(x.get_num());
  for (std::size_t gen : space.plus_basis()) phi.coordinates.push_back(phi.generator_values[gen]);
  return phi;
}

EigenSymbol eigen_symbol_from_values(std::uint64_t level, unsigned weight, std::vector<Integer> generator_values,
                                     std::vector<Integer> coordinates, std::map<std::uint64_t, Integer> eigenvalues) {
  EigenSymbol phi;
  phi.level = level;
  phi.weight = weight;
  phi.p1 = std::make_shared<P1List>(level);
  if (generator_values.size() != (weight - 1) * phi.p1->size()) {
    throw std::invalid_argument("eigen symbol: generator count does not match level and weight");
  }
  phi.generator_values = std::move(generator_values);
  phi.coordinates = std::move(coordinates);
  phi.eigenvalues = std::move(eigenvalues);
  return phi;
}

HomogeneousPoly evaluate_path(const EigenSymbol& phi, const Cusp& alpha, const Cusp& beta) {
  const unsigned deg = phi.weight - 2;
  HomogeneousPoly out;
  for (unsigned j = 0; j <= deg; ++j) {
    out.coeffs.emplace_back(binomial(deg, j) * phi.pair(monomial(deg, j), alpha, beta));
  }
  return out;
}

HomogeneousPoly evaluate(const EigenSymbol& phi, const Rational& r) {
  return evaluate_path(phi, Cusp(r), Cusp::infinity());
}

}  // namespace mtlambda

#include "coxforge/lattice.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace coxforge::lattice {

namespace {

using IntVec = std::vector<Integer>;

// Calls fn on every k-subset of {0..n-1}, in lexicographic order. fn returns false to stop.
void for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Integer det_integer(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Adjugate of a small square integer matrix via cofactors.
std::vector<std::vector<Integer>> adjugate(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Integer>> adj(n, IntVec(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Integer>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      Integer cof = det_integer(std::move(minor));
      if ((i + j) % 2 == 1) cof = -cof;
      adj[j][i] = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

Integer gcd_of(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// Constraint g . t + h >= 0 over the lattice parameters t.
struct HalfSpace {
  std::vector<Rational> g;
  Rational h;
};

// x-space images of all vertices of {t : g_i . t + h_i >= 0}.
std::vector<std::vector<Rational>> polyhedron_vertices(const AffineLattice& lat, const std::vector<HalfSpace>& cons) {
  const std::size_t r = lat.rank();
  const std::size_t m = lat.dimension();
  std::vector<std::vector<Rational>> out;
  std::set<std::vector<Rational>> seen;
  for_each_combination(cons.size(), r, [&](const std::vector<std::size_t>& s) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (auto i : s) {
      a.push_back(cons[i].g);
      rhs.push_back(-cons[i].h);
    }
    std::vector<Rational> t;
    if (!solve_rational(a, rhs, t)) return true;
    for (const auto& c : cons) {
      Rational v = c.h;
      for (std::size_t j = 0; j < r; ++j) v += c.g[j] * t[j];
      if (v < 0) return true;
    }
    std::vector<Rational> x(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational v = Rational(lat.particular()[i]);
      for (std::size_t j = 0; j < r; ++j) v += Rational(lat.kernel()[j][i]) * t[j];
      x[i] = v;
    }
    if (seen.insert(x).second) out.push_back(std::move(x));
    return true;
  });
  return out;
}

std::vector<HalfSpace> nonnegativity(const AffineLattice& lat) {
  std::vector<HalfSpace> cons;
  for (std::size_t i = 0; i < lat.dimension(); ++i) {
    HalfSpace hs;
    for (std::size_t j = 0; j < lat.rank(); ++j) hs.g.emplace_back(lat.kernel()[j][i]);
    hs.h = Rational(lat.particular()[i]);
    cons.push_back(std::move(hs));
  }
  return cons;
}

std::vector<Vector> rays_of(const AffineLattice& lat) {
  const std::size_t r = lat.rank();
  const std::size_t m = lat.dimension();
  std::set<Vector> rays;
  auto consider = [&](const IntVec& u) {
    IntVec x(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < r; ++j) x[i] += lat.kernel()[j][i] * u[j];
    if (std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; })) return;
    for (int sign : {1, -1}) {
      bool ok = true;
      for (const auto& v : x)
        if (v * sign < 0) ok = false;
      if (!ok) continue;
      const Integer g = gcd_of(x);
      Vector ray(m);
      for (std::size_t i = 0; i < m; ++i) ray[i] = to_int64(x[i] * sign / g);
      rays.insert(ray);
    }
  };
  if (r == 0) return {};
  if (r == 1) {
    consider(IntVec{1});
    return {rays.begin(), rays.end()};
  }
  for_each_combination(m, r - 1, [&](const std::vector<std::size_t>& s) {
    // Generalised cross product of the (r-1) x r submatrix gives its null vector.
    IntVec u(r);
    for (std::size_t drop = 0; drop < r; ++drop) {
      std::vector<std::vector<Integer>> minor;
      for (auto i : s) {
        IntVec row;
        for (std::size_t j = 0; j < r; ++j)
          if (j != drop) row.push_back(lat.kernel()[j][i]);
        minor.push_back(std::move(row));
      }
      u[drop] = det_integer(std::move(minor));
      if (drop % 2 == 1) u[drop] = -u[drop];
    }
    if (std::any_of(u.begin(), u.end(), [](const Integer& v) { return v != 0; })) consider(u);
    return true;
  });
  return {rays.begin(), rays.end()};
}

std::int64_t floor_of(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  Integer f = num / den;
  if (num < 0 && f * den != num) f -= 1;
  return to_int64(f);
}

// Enumerates lattice points x with 0 <= x_i <= bound_i; `accept` sees each one.
void enumerate_box(const AffineLattice& lat, const Vector& bound, const SearchLimits& limits,
                   const std::function<void(const Vector&)>& accept, std::vector<Vector>& found_so_far) {
  const std::size_t m = lat.dimension();
  const std::size_t r = lat.rank();
  if (r == 0) {
    Vector x(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (lat.particular()[i] < 0 || lat.particular()[i] > bound[i]) return;
      x[i] = to_int64(lat.particular()[i]);
    }
    accept(x);
    return;
  }

  // Pick pivot coordinates S with K_S invertible and the smallest box.
  std::vector<std::size_t> best;
  long double best_size = std::numeric_limits<long double>::infinity();
  for_each_combination(m, r, [&](const std::vector<std::size_t>& s) {
    long double size = 1;
    for (auto i : s) size *= static_cast<long double>(bound[i] + 1);
    if (size >= best_size) return true;
    std::vector<std::vector<Integer>> ks(r, IntVec(r));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) ks[a][b] = lat.kernel()[b][s[a]];
    if (det_integer(ks) == 0) return true;
    best = s;
    best_size = size;
    return true;
  });
  if (best.empty()) throw ConsistencyError("kernel basis has no invertible square minor");

  std::vector<std::vector<Integer>> ks(r, IntVec(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) ks[a][b] = lat.kernel()[b][best[a]];
  const Integer det = det_integer(ks);
  const auto adj = adjugate(ks);

  // x = (c + P x_S) / det with P = K adj(K_S) and c = det x0 - P x0_S; both are basis independent.
  std::vector<Vector> p(m, Vector(r));
  Vector c(m);
  for (std::size_t i = 0; i < m; ++i) {
    IntVec row(r, 0);
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t j = 0; j < r; ++j) row[b] += lat.kernel()[j][i] * adj[j][b];
    Integer ci = det * lat.particular()[i];
    for (std::size_t b = 0; b < r; ++b) {
      ci -= row[b] * lat.particular()[best[b]];
      p[i][b] = to_int64(row[b]);
    }
    c[i] = to_int64(ci);
  }
  const std::int64_t d = to_int64(det);

  long double total = 1;
  for (auto i : best) total *= static_cast<long double>(bound[i] + 1);
  const bool over = total > static_cast<long double>(limits.max_candidates);
  std::uint64_t visited = 0;

  Vector xs(r, 0);
  Vector x(m);
  while (true) {
    if (over && ++visited > limits.max_candidates)
      throw SearchCapError("lattice search exceeded its candidate cap", found_so_far);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      std::int64_t v = c[i];
      for (std::size_t b = 0; b < r; ++b) v += p[i][b] * xs[b];
      if (v % d != 0) {
        ok = false;
        break;
      }
      v /= d;
      if (v < 0 || v > bound[i]) ok = false;
      x[i] = v;
    }
    if (ok) accept(x);
    std::size_t k = 0;
    while (k < r && xs[k] == bound[best[k]]) xs[k++] = 0;
    if (k == r) break;
    ++xs[k];
  }
}

}  // namespace

AffineLattice::AffineLattice(const IntegerMatrix& a, const Vector& b) : m_(a.cols()) {
  const std::size_t n = a.rows();
  if (b.size() != n) throw ParameterError("right-hand side length does not match the system");
  std::vector<IntVec> h(n, IntVec(m_));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m_; ++j) h[i][j] = a(i, j);
  std::vector<IntVec> u(m_, IntVec(m_, 0));  // u[col][row]
  for (std::size_t j = 0; j < m_; ++j) u[j][j] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < n; ++i) h[i][dst] -= q * h[i][src];
    for (std::size_t i = 0; i < m_; ++i) u[dst][i] -= q * u[src][i];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < n; ++i) std::swap(h[i][x], h[i][y]);
    std::swap(u[x], u[y]);
  };

  std::vector<std::size_t> pivot_rows;
  std::size_t p = 0;
  for (std::size_t i = 0; i < n && p < m_; ++i) {
    while (true) {
      std::size_t smallest = m_;
      for (std::size_t j = p; j < m_; ++j)
        if (h[i][j] != 0 && (smallest == m_ || abs(h[i][j]) < abs(h[i][smallest]))) smallest = j;
      if (smallest == m_) break;
      col_swap(p, smallest);
      bool clean = true;
      for (std::size_t j = p + 1; j < m_; ++j) {
        if (h[i][j] == 0) continue;
        col_axpy(j, p, h[i][j] / h[i][p]);
        if (h[i][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[i][p] == 0) continue;
    pivot_rows.push_back(i);
    ++p;
  }

  for (std::size_t j = p; j < m_; ++j) kernel_.push_back(u[j]);

  IntVec y(p, 0);
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t i = pivot_rows[j];
    Integer rest = b[i];
    for (std::size_t k = 0; k < j; ++k) rest -= h[i][k] * y[k];
    if (rest % h[i][j] != 0) return;
    y[j] = rest / h[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    Integer v = 0;
    for (std::size_t k = 0; k < p; ++k) v += h[i][k] * y[k];
    if (v != b[i]) return;
  }
  IntVec x0(m_, 0);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < m_; ++i) x0[i] += u[k][i] * y[k];
  particular_ = std::move(x0);
}

std::vector<Vector> extreme_rays(const IntegerMatrix& a) {
  AffineLattice lat(a, Vector(a.rows(), 0));
  return rays_of(lat);
}

bool canonical_less(const Vector& a, const Vector& b) {
  const auto ta = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const auto tb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (ta != tb) return ta < tb;
  return a > b;
}

bool dominates(const Vector& big, const Vector& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (big[i] < small[i]) return false;
  return true;
}

std::vector<Vector> minimal_elements(std::vector<Vector> vs) {
  std::sort(vs.begin(), vs.end(), canonical_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<Vector> kept;
  for (auto& v : vs) {
    bool reducible = false;
    for (const auto& k : kept)
      if (dominates(v, k)) {
        reducible = true;
        break;
      }
    if (!reducible) kept.push_back(std::move(v));
  }
  return kept;
}

namespace {

Vector minimal_search_bound(const AffineLattice& lat, const std::vector<std::vector<Rational>>& vertices,
                            const std::vector<Vector>& rays) {
  const std::size_t m = lat.dimension();
  const std::size_t r = lat.rank();
  Vector bound(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    Rational top = 0;
    for (const auto& v : vertices) top = std::max(top, v[i]);
    std::vector<std::int64_t> coords;
    for (const auto& ray : rays) coords.push_back(ray[i]);
    std::sort(coords.rbegin(), coords.rend());
    std::int64_t extra = 0;
    for (std::size_t k = 0; k < std::min(r, coords.size()); ++k) extra += coords[k];
    bound[i] = floor_of(top) + extra;
  }
  return bound;
}

}  // namespace

std::vector<Vector> hilbert_basis(const IntegerMatrix& a, const SearchLimits& limits) {
  AffineLattice lat(a, Vector(a.rows(), 0));
  const auto rays = rays_of(lat);
  if (rays.empty()) return {};
  const std::vector<std::vector<Rational>> origin{std::vector<Rational>(lat.dimension(), Rational(0))};
  const Vector bound = minimal_search_bound(lat, origin, rays);
  std::vector<Vector> found;
  enumerate_box(
      lat, bound, limits,
      [&](const Vector& x) {
        if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) found.push_back(x);
      },
      found);
  return minimal_elements(std::move(found));
}

std::vector<Vector> minimal_solutions(const IntegerMatrix& a, const Vector& b, const SearchLimits& limits) {
  AffineLattice lat(a, b);
  if (lat.empty()) return {};
  const auto vertices = polyhedron_vertices(lat, nonnegativity(lat));
  if (vertices.empty() && lat.rank() > 0) return {};
  AffineLattice hom(a, Vector(a.rows(), 0));
  const auto rays = rays_of(hom);
  std::vector<std::vector<Rational>> verts = vertices;
  if (lat.rank() == 0) {
    std::vector<Rational> x0;
    for (const auto& v : lat.particular()) x0.emplace_back(v);
    verts = {x0};
  }
  const Vector bound = minimal_search_bound(lat, verts, rays);
  std::vector<Vector> found;
  enumerate_box(lat, bound, limits, [&](const Vector& x) { found.push_back(x); }, found);
  return minimal_elements(std::move(found));
}

std::vector<Vector> bounded_solutions(const IntegerMatrix& a, const Vector& b, const std::vector<Rational>& weights,
                                      const Rational& cap, const SearchLimits& limits) {
  if (weights.size() != a.cols()) throw ParameterError("weight vector length does not match the variables");
  for (const auto& w : weights)
    if (w <= 0) throw ParameterError("truncation weights must be positive");
  if (cap < 0) return {};
  AffineLattice lat(a, b);
  if (lat.empty()) return {};
  const std::size_t m = lat.dimension();
  Vector bound(m, 0);
  if (lat.rank() == 0) {
    for (std::size_t i = 0; i < m; ++i) bound[i] = std::max<std::int64_t>(0, to_int64(lat.particular()[i]));
  } else {
    auto cons = nonnegativity(lat);
    HalfSpace capped;
    capped.g.assign(lat.rank(), Rational(0));
    capped.h = cap;
    for (std::size_t i = 0; i < m; ++i) {
      capped.h -= weights[i] * Rational(lat.particular()[i]);
      for (std::size_t j = 0; j < lat.rank(); ++j) capped.g[j] -= weights[i] * Rational(lat.kernel()[j][i]);
    }
    cons.push_back(capped);
    const auto vertices = polyhedron_vertices(lat, cons);
    if (vertices.empty()) return {};
    for (std::size_t i = 0; i < m; ++i) {
      Rational top = 0;
      for (const auto& v : vertices) top = std::max(top, v[i]);
      bound[i] = floor_of(top);
    }
  }
  std::vector<Vector> found;
  enumerate_box(
      lat, bound, limits,
      [&](const Vector& x) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += weights[i] * x[i];
        if (s <= cap) found.push_back(x);
      },
      found);
  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

}  // namespace coxforge::lattice

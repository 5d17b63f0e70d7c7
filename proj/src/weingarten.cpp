#include "rmpu/weingarten.hpp"

#include "rmpu/ncposet.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace rmpu {

namespace {

void require_table_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > kWeingartenCap) {
    throw ResourceError("Weingarten tables for k = " + std::to_string(k) + " exceed the cap k <= " +
                        std::to_string(kWeingartenCap));
  }
}

// counts[c'][c] = #{y in class c : #(y^{-1} x_{c'}) } bucketed by cycle count:
// returns for each representative x_{c'} and each class c the polynomial
// sum_{y in c} D^{#(y^{-1} x_{c'})} as a vector of multiplicities per cycle count.
std::vector<std::vector<std::vector<std::uint64_t>>> class_cycle_counts(int k) {
  const ClassIndex& ci = class_index(k);
  const int p = ci.size();
  std::vector<std::vector<std::vector<std::uint64_t>>> counts(
      static_cast<std::size_t>(p),
      std::vector<std::vector<std::uint64_t>>(static_cast<std::size_t>(p),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(k + 1), 0)));
  for (int cp = 0; cp < p; ++cp) {
    const Permutation& x = ci.representative(cp);
    auto& row = counts[static_cast<std::size_t>(cp)];
    for_each_permutation(k, [&](const Permutation& y) {
      const int c = ci.of(y);
      ++row[static_cast<std::size_t>(c)][static_cast<std::size_t>(k - cayley_distance(y, x))];
    });
  }
  return counts;
}

template <typename Scalar>
std::vector<Scalar> solve_dense(Matrix<Scalar> a, Vector<Scalar> b) {
  const Eigen::Index n = a.rows();
  if constexpr (std::is_same_v<Scalar, double>) {
    Vector<double> x = a.partialPivLu().solve(b);
    return {x.data(), x.data() + n};
  } else {
    // Gauss-Jordan in exact arithmetic.
    for (Eigen::Index col = 0; col < n; ++col) {
      Eigen::Index piv = col;
      while (piv < n && a(piv, col) == 0) ++piv;
      if (piv == n) throw std::domain_error("singular Gram system");
      if (piv != col) {
        a.row(piv).swap(a.row(col));
        std::swap(b(piv), b(col));
      }
      const Scalar inv = Scalar(1) / a(col, col);
      for (Eigen::Index j = col; j < n; ++j) a(col, j) *= inv;
      b(col) *= inv;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (r == col || a(r, col) == 0) continue;
        const Scalar f = a(r, col);
        for (Eigen::Index j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        b(r) -= f * b(col);
      }
    }
    return {b.data(), b.data() + n};
  }
}

}  // namespace

template <typename Scalar>
GramTable<Scalar> gram(std::int64_t dim, int k) {
  require_table_k(k);
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const ClassIndex& ci = class_index(k);
  std::vector<Scalar> values;
  for (int c = 0; c < ci.size(); ++c) values.push_back(ipow<Scalar>(dim, ci.cycles(c)));
  return GramTable<Scalar>(dim, k, std::move(values));
}

template <typename Scalar>
WeingartenTable<Scalar> weingarten(std::int64_t dim, int k) {
  require_table_k(k);
  if (dim <= k) {
    throw std::domain_error("Weingarten table needs D > k (Gram matrix may be singular), got D = " +
                            std::to_string(dim) + ", k = " + std::to_string(k));
  }
  // Row e of Wg * G = I, restricted to class functions:
  //   sum_c w_c sum_{y in c} D^{#(y^{-1} x_{c'})} = [c' = identity].
  static std::mutex mutex;
  static std::map<int, std::vector<std::vector<std::vector<std::uint64_t>>>> count_cache;
  const std::vector<std::vector<std::vector<std::uint64_t>>>* counts = nullptr;
  {
    std::lock_guard lock(mutex);
    auto it = count_cache.find(k);
    if (it == count_cache.end()) it = count_cache.emplace(k, class_cycle_counts(k)).first;
    counts = &it->second;
  }
  const ClassIndex& ci = class_index(k);
  const int p = ci.size();
  std::vector<Scalar> powers;
  for (int c = 0; c <= k; ++c) powers.push_back(ipow<Scalar>(dim, c));
  Matrix<Scalar> system(p, p);
  Vector<Scalar> rhs(p);
  for (int cp = 0; cp < p; ++cp) {
    for (int c = 0; c < p; ++c) {
      Scalar s(0);
      const auto& bucket = (*counts)[static_cast<std::size_t>(cp)][static_cast<std::size_t>(c)];
      for (int cyc = 0; cyc <= k; ++cyc) {
        if (bucket[static_cast<std::size_t>(cyc)] != 0) {
          s += Scalar(static_cast<long long>(bucket[static_cast<std::size_t>(cyc)])) *
               powers[static_cast<std::size_t>(cyc)];
        }
      }
      system(cp, c) = s;
    }
    rhs(cp) = (cp == ci.identity_class()) ? Scalar(1) : Scalar(0);
  }
  return WeingartenTable<Scalar>(dim, k, solve_dense<Scalar>(std::move(system), std::move(rhs)));
}

template <typename Scalar>
std::shared_ptr<const WeingartenTable<Scalar>> weingarten_cached(std::int64_t dim, int k) {
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const WeingartenTable<Scalar>>> cache;
  const auto key = std::make_pair(dim, k);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const WeingartenTable<Scalar>>(weingarten<Scalar>(dim, k));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;  // first writer wins
}

template GramTable<Rational> gram<Rational>(std::int64_t, int);
template GramTable<double> gram<double>(std::int64_t, int);
template WeingartenTable<Rational> weingarten<Rational>(std::int64_t, int);
template WeingartenTable<double> weingarten<double>(std::int64_t, int);
template std::shared_ptr<const WeingartenTable<Rational>> weingarten_cached<Rational>(std::int64_t, int);
template std::shared_ptr<const WeingartenTable<double>> weingarten_cached<double>(std::int64_t, int);

WgSeries::WgSeries(int k, int max_order) : k_(k) {
  require_table_k(k);
  if (max_order < 0) throw std::invalid_argument("series order must be non-negative");
  const ClassIndex& ci = class_index(k);
  const int p = ci.size();
  // structure[c][j][c'] = #{y : |y| = j, class(y^{-1} x_c) = c'}
  std::vector<std::vector<std::vector<std::uint64_t>>> structure(
      static_cast<std::size_t>(p),
      std::vector<std::vector<std::uint64_t>>(static_cast<std::size_t>(k),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(p), 0)));
  for (int c = 0; c < p; ++c) {
    const Permutation& x = ci.representative(c);
    for_each_permutation(k, [&](const Permutation& y) {
      const int j = length(y);
      if (j == 0) return;
      ++structure[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]
                 [static_cast<std::size_t>(ci.of(y.inverse() * x))];
    });
  }
  terms_.assign(static_cast<std::size_t>(max_order + 1), std::vector<BigInt>(static_cast<std::size_t>(p), 0));
  terms_[0][static_cast<std::size_t>(ci.identity_class())] = 1;
  for (int m = 1; m <= max_order; ++m) {
    for (int c = 0; c < p; ++c) {
      BigInt acc = 0;
      for (int j = 1; j <= std::min(m, k - 1); ++j) {
        const auto& row = structure[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        const auto& prev = terms_[static_cast<std::size_t>(m - j)];
        for (int cp = 0; cp < p; ++cp) {
          if (row[static_cast<std::size_t>(cp)] != 0) {
            acc += BigInt(row[static_cast<std::size_t>(cp)]) * prev[static_cast<std::size_t>(cp)];
          }
        }
      }
      terms_[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)] = -acc;
    }
  }
}

std::shared_ptr<const WgSeries> wg_series(int k, int min_order) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const WgSeries>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot || slot->max_order() < min_order) slot = std::make_shared<const WgSeries>(k, min_order);
  return slot;
}

BigInt wg_asymptotic_coeff_class(int k, int cls, int g) {
  if (g < 0) throw std::invalid_argument("series order must be non-negative");
  if (g >= 2) throw UnsupportedError("Weingarten series coefficients beyond g = 1 are not supported");
  const ClassIndex& ci = class_index(k);
  const int dist = k - ci.cycles(cls);
  if (g == 0) return BigInt(mobius_of_type(ci.type(cls)));
  const int order = dist + 2 * g;
  return wg_series(k, std::max(order, k + 1))->term(order, cls);
}

Rational wg_asymptotic_coeff(const Permutation& pi, const Permutation& sigma, int g) {
  if (pi.degree() != sigma.degree()) throw std::invalid_argument("incompatible replica counts");
  const int k = pi.degree();
  return Rational(wg_asymptotic_coeff_class(k, class_index(k).of(pi.inverse() * sigma), g));
}

std::vector<std::int64_t> replica_action(const Permutation& pi, std::int64_t dim) {
  const int k = pi.degree();
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= dim;
  std::vector<std::int64_t> stride(static_cast<std::size_t>(k));
  {
    std::int64_t s = 1;
    for (int i = k - 1; i >= 0; --i) {
      stride[static_cast<std::size_t>(i)] = s;
      s *= dim;
    }
  }
  // output slot pi(i) carries the digit of input slot i
  std::vector<std::int64_t> map(static_cast<std::size_t>(total));
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k));
  for (std::int64_t x = 0; x < total; ++x) {
    std::int64_t rest = x;
    for (int i = k - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = rest % dim;
      rest /= dim;
    }
    std::int64_t y = 0;
    for (int i = 0; i < k; ++i) y += digits[static_cast<std::size_t>(i)] * stride[static_cast<std::size_t>(pi(i))];
    map[static_cast<std::size_t>(x)] = y;
  }
  return map;
}

MatrixXc replica_operator(const Permutation& pi, std::int64_t dim) {
  const auto map = replica_action(pi, dim);
  const auto n = static_cast<Eigen::Index>(map.size());
  MatrixXc t = MatrixXc::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) t(map[static_cast<std::size_t>(x)], x) = 1.0;
  return t;
}

MatrixXc haar_twirl_exact(const MatrixXc& x, std::int64_t dim, int k) {
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= dim;
    if (total > kTwirlDimCap) {
      throw ResourceError("replica space D^k exceeds the twirl cap " + std::to_string(kTwirlDimCap));
    }
  }
  if (x.rows() != total || x.cols() != total) {
    throw std::invalid_argument("operator does not act on (C^D)^{(x)k}");
  }
  const auto wg = weingarten_cached<double>(dim, k);
  const GroupTable& g = group_table(k);
  const std::size_t n = g.order();
  std::vector<std::vector<std::int64_t>> maps;
  for (const auto& p : g.elements()) maps.push_back(replica_action(p, dim));
  // tr[X T_sigma^dagger] = sum_x <x| X T_{sigma^{-1}} |x> = sum_x X(x, T_{sigma^{-1}} x)
  std::vector<Complex> traces(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto inv = replica_action(g.elements()[s].inverse(), dim);
    Complex t = 0.0;
    for (std::int64_t i = 0; i < total; ++i) t += x(i, inv[static_cast<std::size_t>(i)]);
    traces[s] = t;
  }
  MatrixXc out = MatrixXc::Zero(total, total);
  for (std::size_t p = 0; p < n; ++p) {
    Complex coeff = 0.0;
    for (std::size_t s = 0; s < n; ++s) coeff += wg->class_value(g.relative_class(p, s)) * traces[s];
    const auto& map = maps[p];
    for (std::int64_t i = 0; i < total; ++i) out(map[static_cast<std::size_t>(i)], i) += coeff;
  }
  return out;
}

}  // namespace rmpu

#include "tropfact/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tropfact {

TropMatrix::TropMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix needs rows, cols >= 1");
  data_.assign(static_cast<std::size_t>(rows) * cols, TropScalar::infinity());
}

TropMatrix::TropMatrix(std::vector<std::vector<TropScalar>> rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("matrix needs rows, cols >= 1");
  }
  rows_ = static_cast<int>(rows.size());
  cols_ = static_cast<int>(rows.front().size());
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix");
    for (auto& x : r) data_.push_back(std::move(x));
  }
}

TropMatrix TropMatrix::submatrix(const std::vector<int>& rows,
                                 const std::vector<int>& cols) const {
  TropMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
  }
  return out;
}

TropMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<TropScalar>> rows;
  std::size_t position = 0;
  std::string line;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ';', '\n');
  std::istringstream lines(normalized);
  while (std::getline(lines, line)) {
    std::istringstream in(line);
    std::vector<TropScalar> row;
    std::string tok;
    while (in >> tok) {
      try {
        row.push_back(parse_scalar(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(position, e.what());
      }
      ++position;
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(position - 1, "row " + std::to_string(rows.size() + 1) + " has " +
                                         std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(0, "empty matrix");
  return TropMatrix(std::move(rows));
}

std::string to_string(const TropMatrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += '\n';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(m(i, j));
    }
  }
  return out;
}

TropMatrix eliminant(const TropPoly& f, const TropPoly& g) {
  const int r = f.degree();
  const int s = g.degree();
  if (r < 1 || s < 1) throw std::invalid_argument("eliminant needs polynomials of degree >= 1");
  TropMatrix m(r + s, r + s);
  for (int t = 0; t < s; ++t) {
    for (int k = 0; k <= r; ++k) m(t, t + k) = f[k];
  }
  for (int t = 0; t < r; ++t) {
    for (int k = 0; k <= s; ++k) m(s + t, t + k) = g[k];
  }
  return m;
}

namespace {

// Hungarian method with potentials; infinite entries are never used.
// Returns false when no finite permutation exists.
bool solve_assignment(const TropMatrix& a, Rational& value, std::vector<int>& witness) {
  const int n = a.rows();
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<TropScalar> minv(n + 1, TropScalar::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      TropScalar delta = TropScalar::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const TropScalar& c = a(i0 - 1, j - 1);
        if (c.is_finite()) {
          TropScalar cur(Rational(c.value() - u[i0] - v[j]));
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (delta.is_infinite()) return false;
      const Rational d = delta.value();
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += d;
          v[j] -= d;
        } else if (minv[j].is_finite()) {
          minv[j] = TropScalar(Rational(minv[j].value() - d));
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  witness.assign(n, -1);
  value = 0;
  for (int j = 1; j <= n; ++j) witness[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) value += a(i, witness[i]).value();
  return true;
}

void require_square(const TropMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("matrix must be square");
}

}  // namespace

AssignmentResult min_assignment(const TropMatrix& m) {
  require_square(m);
  AssignmentResult r;
  Rational best;
  if (!solve_assignment(m, best, r.witness)) {
    r.witness.clear();
    return r;
  }
  r.optimal_value = TropScalar(best);
  r.unique = true;
  TropMatrix work = m;
  for (int i = 0; i < m.rows() && r.unique; ++i) {
    const int j = r.witness[i];
    work(i, j) = TropScalar::infinity();
    Rational other;
    std::vector<int> ignored;
    if (solve_assignment(work, other, ignored) && other == best) r.unique = false;
    work(i, j) = m(i, j);
  }
  return r;
}

bool is_nonsingular(const TropMatrix& m) {
  const AssignmentResult r = min_assignment(m);
  return r.optimal_value.is_finite() && r.unique;
}

bool common_factor_obstruction(const TropPoly& f, const TropPoly& g) {
  return is_nonsingular(eliminant(f, g));
}

namespace {

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  do out.push_back(c);
  while (next_combination(c, n));
  return out;
}

bool has_nonsingular_minor(const TropMatrix& m, int k, int threads) {
  const auto row_sets = combinations(m.rows(), k);
  const auto col_sets = combinations(m.cols(), k);
  std::atomic<bool> found{false};
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < row_sets.size() && !found; i = next++) {
      for (const auto& cols : col_sets) {
        if (found) return;
        if (is_nonsingular(m.submatrix(row_sets[i], cols))) {
          found = true;
          return;
        }
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return found;
}

}  // namespace

int tropical_rank(const TropMatrix& m, int size_cap, int threads) {
  const int top = std::min(m.rows(), m.cols());
  if (top > size_cap) {
    throw std::invalid_argument("tropical_rank: min dimension " + std::to_string(top) +
                                " exceeds the brute-force cap " + std::to_string(size_cap) +
                                "; two-valued matrices can use two_value_rank_full");
  }
  for (int k = top; k >= 1; --k) {
    if (has_nonsingular_minor(m, k, threads)) return k;
  }
  return 0;
}

namespace {

// Greedy chain over `cols`: repeatedly take a column whose smaller-value
// entries outside the covered set sit in exactly one row of `rows`.
bool chain_covers(const std::vector<std::vector<char>>& low, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
  std::vector<char> covered(low.size(), 0);
  std::vector<char> used(cols.size(), 0);
  std::size_t size = 0;
  for (bool grew = true; grew && size < rows.size();) {
    grew = false;
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (used[t]) continue;
      int only = -1;
      int count = 0;
      for (int i : rows) {
        if (!covered[i] && low[i][cols[t]]) {
          only = i;
          ++count;
        }
      }
      if (count == 1) {
        covered[only] = 1;
        used[t] = 1;
        ++size;
        grew = true;
      }
    }
  }
  return size == rows.size();
}

}  // namespace

bool two_value_rank_full(const TropMatrix& m) {
  const int k = m.rows();
  const int n = m.cols();
  if (k > n) throw std::invalid_argument("two_value_rank_full needs rows <= cols");
  std::set<Rational> values;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(i, j).is_infinite()) throw std::invalid_argument("entries must be finite");
      values.insert(m(i, j).value());
    }
  }
  if (values.size() != 2) {
    throw std::invalid_argument("matrix must take exactly two distinct values");
  }
  const Rational high = *values.rbegin();
  for (int j = 0; j < n; ++j) {
    bool seen = false;
    for (int i = 0; i < k; ++i) seen = seen || m(i, j).value() == high;
    if (!seen) {
      throw std::invalid_argument("column " + std::to_string(j) + " lacks the larger value");
    }
  }

  std::vector<std::vector<char>> low(k, std::vector<char>(n, 0));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) low[i][j] = m(i, j).value() != high;
  }
  std::vector<int> all_rows(k), all_cols(n);
  for (int i = 0; i < k; ++i) all_rows[i] = i;
  for (int j = 0; j < n; ++j) all_cols[j] = j;
  if (chain_covers(low, all_rows, all_cols)) return true;

  // A minor can also be a permanent-1 block plus a single higher entry whose
  // row and column are otherwise higher too.
  for (int c = 0; c < n; ++c) {
    bool column_high = true;
    for (int i = 0; i < k; ++i) column_high = column_high && !low[i][c];
    if (!column_high) continue;
    for (int r = 0; r < k; ++r) {
      std::vector<int> rows, cols;
      for (int i = 0; i < k; ++i) {
        if (i != r) rows.push_back(i);
      }
      for (int j = 0; j < n; ++j) {
        if (j != c && !low[r][j]) cols.push_back(j);
      }
      if (chain_covers(low, rows, cols)) return true;
    }
  }
  return false;
}

}  // namespace tropfact

#pragma once

// Branch and bound over choice profiles for a fixed pair of factor supports.
//
// Unknowns are the factor coefficients a_i (i in A) and b_j (j in B). Every
// pair contributes a_i + b_j >= c_{i+j}; a branch chooses, for one product
// degree k, the pair that attains c_k. All constraints are of difference type
// in (a, -b), so the system is kept at its greatest solution (a as large and
// b as small as possible) by monotone propagation: a only decreases, b only
// increases, and a crossing of a static bound proves infeasibility.
// Weights are integers after scaling by a common denominator.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace tropfact::detail {

template <typename W>
struct SearchProblem {
  int left_degree = 0;
  int right_degree = 0;
  std::vector<W> c;            // product coefficients, 0..r+s
  std::vector<char> c_finite;  // c[k] meaningful iff c_finite[k]
  std::vector<char> in_a, in_b;
  std::vector<W> lb_a, ub_a, lb_b, ub_b;
};

template <typename W>
class ChoiceSearch {
 public:
  explicit ChoiceSearch(SearchProblem<W> problem)
      : p_(std::move(problem)),
        eq_(static_cast<std::size_t>(p_.right_degree + 1)) {
    for (int i = 0; i <= p_.left_degree; ++i) {
      if (p_.in_a[i]) a_idx_.push_back(i);
    }
    for (int j = 0; j <= p_.right_degree; ++j) {
      if (p_.in_b[j]) b_idx_.push_back(j);
    }
    symmetric_ = detect_symmetry();
  }

  /// Runs the full search; true when a factorization was found.
  bool run() {
    a_ = p_.ub_a;
    b_ = p_.lb_b;
    for (int i : a_idx_) {
      if (a_[i] < p_.lb_a[i]) return false;
      queue_.push_back(encode_a(i));
    }
    for (int j : b_idx_) {
      if (b_[j] > p_.ub_b[j]) return false;
    }
    if (!propagate()) return false;
    return dfs(symmetric_);
  }

  const std::vector<W>& a() const { return a_; }
  const std::vector<W>& b() const { return b_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t trials() const { return trials_; }

  /// Smallest attaining index per product degree at the current point.
  std::vector<int> profile() const {
    const int n = p_.left_degree + p_.right_degree;
    std::vector<int> out(static_cast<std::size_t>(n + 1), -1);
    for (int i : a_idx_) {
      for (int j : b_idx_) {
        const int k = i + j;
        if (out[k] < 0 && a_[i] + b_[j] == p_.c[k]) out[k] = i;
      }
    }
    return out;
  }

 private:
  enum class Kind : std::uint8_t { A, B, Eq };
  struct TrailEntry {
    Kind kind;
    int index;
    W old;
  };

  static int encode_a(int i) { return 2 * i; }
  static int encode_b(int j) { return 2 * j + 1; }

  bool detect_symmetry() const {
    if (p_.left_degree != p_.right_degree) return false;
    if (p_.in_a != p_.in_b) return false;
    const W shift = p_.lb_b[0];  // b_0 is pinned to c_0, a_0 to 0
    for (int i : a_idx_) {
      if (p_.lb_a[i] + shift != p_.lb_b[i]) return false;
      if (p_.ub_a[i] + shift != p_.ub_b[i]) return false;
    }
    return true;
  }

  void set_a(int i, const W& v) {
    trail_.push_back({Kind::A, i, a_[i]});
    a_[i] = v;
    queue_.push_back(encode_a(i));
  }

  void set_b(int j, const W& v) {
    trail_.push_back({Kind::B, j, b_[j]});
    b_[j] = v;
    queue_.push_back(encode_b(j));
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int code = queue_.back();
      queue_.pop_back();
      if (code % 2 == 0) {
        const int i = code / 2;
        if (a_[i] < p_.lb_a[i]) {
          queue_.clear();
          return false;
        }
        for (int j : b_idx_) {
          W v = p_.c[i + j] - a_[i];
          if (v > b_[j]) set_b(j, v);
        }
      } else {
        const int j = code / 2;
        if (b_[j] > p_.ub_b[j]) {
          queue_.clear();
          return false;
        }
        for (int i : eq_[j]) {
          W v = p_.c[i + j] - b_[j];
          if (v < a_[i]) set_a(i, v);
        }
      }
    }
    return true;
  }

  bool add_equality(int i, int j) {
    eq_[j].push_back(i);
    trail_.push_back({Kind::Eq, j, W{}});
    W v = p_.c[i + j] - b_[j];
    if (v < a_[i]) set_a(i, v);
    return propagate();
  }

  void rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      TrailEntry& e = trail_.back();
      switch (e.kind) {
        case Kind::A:
          a_[e.index] = e.old;
          break;
        case Kind::B:
          b_[e.index] = e.old;
          break;
        case Kind::Eq:
          eq_[e.index].pop_back();
          break;
      }
      trail_.pop_back();
    }
  }

  // Degrees whose coefficient is not attained at the current point.
  std::vector<int> violated_degrees() const {
    const int n = p_.left_degree + p_.right_degree;
    std::vector<char> attained(static_cast<std::size_t>(n + 1), 0);
    for (int i : a_idx_) {
      for (int j : b_idx_) {
        const int k = i + j;
        if (!attained[k] && a_[i] + b_[j] == p_.c[k]) attained[k] = 1;
      }
    }
    std::vector<int> out;
    for (int k = 0; k <= n; ++k) {
      if (p_.c_finite[k] && !attained[k]) out.push_back(k);
    }
    // Both ends inward: nearer an end first, lower degree on ties.
    std::stable_sort(out.begin(), out.end(), [n](int x, int y) {
      return std::min(x, n - x) < std::min(y, n - y);
    });
    return out;
  }

  std::vector<int> feasible_candidates(int k) {
    std::vector<int> out;
    for (int i : a_idx_) {
      const int j = k - i;
      if (j < 0) break;
      if (j > p_.right_degree || !p_.in_b[j]) continue;
      // Any solution has b_j >= b_[j] and a_i >= lb_a[i].
      if (p_.lb_a[i] + b_[j] > p_.c[k]) continue;
      ++trials_;
      const std::size_t mark = trail_.size();
      if (add_equality(i, j)) out.push_back(i);
      rollback(mark);
    }
    return out;
  }

  bool dfs(bool symmetric_open) {
    ++nodes_;
    const std::vector<int> violated = violated_degrees();
    if (violated.empty()) return true;

    int best_k = -1;
    std::vector<int> best;
    for (int k : violated) {
      std::vector<int> cands = feasible_candidates(k);
      if (best_k < 0 || cands.size() < best.size()) {
        best_k = k;
        best = std::move(cands);
      }
      if (best.size() <= 1) break;
    }
    if (best.empty()) return false;

    if (symmetric_open && best.size() > 1) {
      // Swapping the factors maps index i to k - i; keep one of each pair.
      std::erase_if(best, [best_k](int i) { return 2 * i > best_k; });
      symmetric_open = false;
    }
    for (int i : best) {
      const std::size_t mark = trail_.size();
      if (add_equality(i, best_k - i) && dfs(symmetric_open)) return true;
      rollback(mark);
    }
    return false;
  }

  SearchProblem<W> p_;
  std::vector<int> a_idx_, b_idx_;
  std::vector<W> a_, b_;
  std::vector<std::vector<int>> eq_;  // eq_[j]: indices i with a_i + b_j = c
  std::vector<TrailEntry> trail_;
  std::vector<int> queue_;
  bool symmetric_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t trials_ = 0;
};

}  // namespace tropfact::detail

#pragma once

// Sparse row-echelon engines for per-degree quotient linear algebra.
//  - SparseEchelon<F>: row space over a field; rank, pivot columns in
//    ascending column order, and normal forms of vectors modulo the row space.
//    Insertion scatters the row into a dense workspace and eliminates columns
//    left to right, so each stored pivot row is visited at most once per row.
//  - LatticeEchelon: row lattice over Z using unimodular operations only;
//    gives Z-rank and the echelon pivot entries (all pivots 1 certifies a
//    free cokernel).

#include "pearl/bigint.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

namespace pearl {

template <class F>
class SparseEchelon {
 public:
  using Elt = typename F::Elt;
  using Row = std::map<int, Elt>;

  explicit SparseEchelon(const F& K) : K_(K) {}

  // Returns true if the row increased the rank.
  bool insert(const Row& r) {
    scatter(r);
    int lead = -1;
    while (!heap_.empty()) {
      int c = pop_col();
      if (c < 0) break;
      auto it = dict_.find(c);
      if (it == dict_.end()) {
        lead = c;
        break;
      }
      eliminate(c, rows_[it->second]);
    }
    if (lead < 0) {
      clear_ws();
      return false;
    }
    // gather the surviving row; normalize the lead to 1. Zeroing each entry
    // as it is read also skips duplicate column mentions in touched_.
    SRow stored;
    std::sort(touched_.begin(), touched_.end());
    Elt inv = K_.inv(ws_[lead]);
    for (int c : touched_) {
      if (K_.is_zero(ws_[c])) continue;
      stored.emplace_back(c, K_.mul(ws_[c], inv));
      ws_[c] = K_.zero();
    }
    clear_ws();
    dict_.emplace(lead, static_cast<int>(rows_.size()));
    rows_.push_back(std::move(stored));
    return true;
  }

  int rank() const { return static_cast<int>(dict_.size()); }

  bool has_pivot(int col) const { return dict_.count(col) != 0; }

  std::vector<int> pivot_cols() const {
    std::vector<int> p;
    p.reserve(dict_.size());
    for (const auto& [c, i] : dict_) p.push_back(c);
    return p;
  }

  // Fully reduce v modulo the row space; the result is supported on
  // non-pivot columns and is the canonical normal form.
  Row normal_form(const Row& v) const {
    scatter(v);
    Row out;
    while (!heap_.empty()) {
      int c = pop_col();
      if (c < 0) break;
      auto it = dict_.find(c);
      if (it == dict_.end()) {
        out.emplace(c, ws_[c]);
        ws_[c] = K_.zero();
        continue;
      }
      eliminate(c, rows_[it->second]);
    }
    clear_ws();
    return out;
  }

 private:
  using SRow = std::vector<std::pair<int, Elt>>;  // sorted by column; lead first, value 1

  void grow(int c) const {
    if (c >= static_cast<int>(ws_.size())) {
      ws_.resize(c + 1, K_.zero());
      inheap_.resize(c + 1, 0);
    }
  }

  void scatter(const Row& r) const {
    for (const auto& [c, v] : r) {
      if (K_.is_zero(v)) continue;
      grow(c);
      ws_[c] = K_.add(ws_[c], v);
      push_col(c);
    }
  }

  void push_col(int c) const {
    touched_.push_back(c);
    if (!inheap_[c]) {
      inheap_[c] = 1;
      heap_.push(c);
    }
  }

  // Smallest touched column with a nonzero workspace entry, or -1.
  int pop_col() const {
    while (!heap_.empty()) {
      int c = heap_.top();
      heap_.pop();
      inheap_[c] = 0;
      if (!K_.is_zero(ws_[c])) return c;
    }
    return -1;
  }

  // ws -= ws[c] * row, where row has lead column c with unit value.
  void eliminate(int c, const SRow& row) const {
    Elt val = ws_[c];
    ws_[c] = K_.zero();
    for (size_t k = 1; k < row.size(); ++k) {
      int cc = row[k].first;
      grow(cc);
      bool was_zero = K_.is_zero(ws_[cc]);
      ws_[cc] = K_.sub(ws_[cc], K_.mul(val, row[k].second));
      if (was_zero && !K_.is_zero(ws_[cc])) push_col(cc);
    }
  }

  void clear_ws() const {
    for (int c : touched_) ws_[c] = K_.zero();
    touched_.clear();
    while (!heap_.empty()) {
      inheap_[heap_.top()] = 0;
      heap_.pop();
    }
  }

  F K_;
  std::map<int, int> dict_;  // lead column -> index into rows_
  std::vector<SRow> rows_;
  mutable std::vector<Elt> ws_;
  mutable std::vector<char> inheap_;
  mutable std::vector<int> touched_;
  mutable std::priority_queue<int, std::vector<int>, std::greater<int>> heap_;
};

class LatticeEchelon {
 public:
  using Row = std::map<int, BigInt>;

  // Unimodular insertion: the stored rows always span the same lattice as
  // the rows inserted so far. Returns true if the lattice rank grew.
  bool insert(Row r) {
    strip(r);
    while (!r.empty()) {
      int lead = r.begin()->first;
      auto it = dict_.find(lead);
      if (it == dict_.end()) {
        if (r.begin()->second < 0)
          for (auto& [c, v] : r) v = -v;
        dict_.emplace(lead, std::move(r));
        return true;
      }
      BigInt a = it->second.begin()->second, b = r.begin()->second;
      if (b % a == 0) {
        axpy(r, -(b / a), it->second);
      } else {
        // full gcd step: replace the pivot row and continue with the rest
        BigInt g, u, v;
        xgcd(a, b, g, u, v);
        Row pivot = combine(u, it->second, v, r);
        Row rest = combine(-(b / g), it->second, a / g, r);
        it->second = std::move(pivot);
        r = std::move(rest);
      }
    }
    return false;
  }

  int rank() const { return static_cast<int>(dict_.size()); }

  bool has_pivot(int col) const { return dict_.count(col) != 0; }

  bool all_unit_pivots() const {
    for (const auto& [c, row] : dict_)
      if (row.begin()->second != 1) return false;
    return true;
  }

  // Lattice membership. A vector lies in the span iff it reduces to zero,
  // which at each step requires exact divisibility at the lead column.
  bool contains(Row v) const {
    strip(v);
    while (!v.empty()) {
      auto it = dict_.find(v.begin()->first);
      if (it == dict_.end()) return false;
      BigInt lead = v.begin()->second;
      const BigInt& piv = it->second.begin()->second;
      if (lead % piv != 0) return false;
      axpy(v, -(lead / piv), it->second);
    }
    return true;
  }

  std::vector<BigInt> pivot_entries() const {
    std::vector<BigInt> p;
    for (const auto& [c, row] : dict_) p.push_back(row.begin()->second);
    return p;
  }

  std::vector<int> pivot_cols() const {
    std::vector<int> p;
    for (const auto& [c, row] : dict_) p.push_back(c);
    return p;
  }

  // Dense export of the echelon rows (for a fallback Smith computation).
  std::vector<Row> rows() const {
    std::vector<Row> out;
    for (const auto& [c, row] : dict_) out.push_back(row);
    return out;
  }

 private:
  static void strip(Row& r) {
    for (auto it = r.begin(); it != r.end();)
      it = (it->second == 0) ? r.erase(it) : std::next(it);
  }
  static void axpy(Row& r, const BigInt& s, const Row& row) {
    for (const auto& [c, v] : row) {
      auto it = r.find(c);
      if (it == r.end()) {
        BigInt nv = s * v;
        if (nv != 0) r.emplace(c, std::move(nv));
      } else {
        it->second += s * v;
        if (it->second == 0) r.erase(it);
      }
    }
  }
  static Row combine(const BigInt& s, const Row& a, const BigInt& t, const Row& b) {
    Row r;
    for (const auto& [c, v] : a) {
      BigInt nv = s * v;
      if (nv != 0) r.emplace(c, std::move(nv));
    }
    axpy(r, t, b);
    return r;
  }
  static void xgcd(BigInt a, BigInt b, BigInt& g, BigInt& u, BigInt& v) {
    BigInt u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
      BigInt q = a / b, r = a - q * b;
      a = b;
      b = r;
      BigInt u2 = u0 - q * u1, v2 = v0 - q * v1;
      u0 = u1;
      v0 = v1;
      u1 = u2;
      v1 = v2;
    }
    g = a;
    u = u0;
    v = v0;
    if (g < 0) { g = -g; u = -u; v = -v; }
  }

  std::map<int, Row> dict_;
};

}  // namespace pearl

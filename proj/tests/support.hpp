#pragma once

// Shared test helpers: an independent reference implementation of diagram
// concatenation (edge-list graph walk, structured differently from the
// library's slot-chasing version), exhaustive diagram enumeration, random
// diagram generators, and a tiny integer fraction for exact width-2 laws.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "streetsim/diagram.hpp"

namespace testsupport {

// Reference product: build the union multigraph of a's edges (lower layer
// relabeled to middle), b's edges (middle/upper), then peel degree-1 chains
// from boundary vertices and count leftover middle cycles.
struct RefComposeResult {
  std::vector<uint32_t> partner;
  int loops = 0;
};

inline RefComposeResult reference_compose(const streetsim::Diagram& a,
                                          const streetsim::Diagram& b) {
  const uint32_t n = static_cast<uint32_t>(a.width());
  // Vertex ids: 0..n-1 product north, n..2n-1 middle, 2n..3n-1 product south.
  const uint32_t kMid = n, kSouth = 2 * n;
  std::vector<std::vector<uint32_t>> adj(3 * n);
  auto add_edge = [&](uint32_t x, uint32_t y) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  };
  for (uint32_t s = 0; s < n; ++s) {
    const uint32_t q = a.partner(s);
    if (q < s) continue;
    add_edge(s, q < n ? q : kMid + (q - n));
  }
  for (uint32_t s = n; s < 2 * n; ++s) {
    const uint32_t q = a.partner(s);
    if (q < s) continue;
    add_edge(kMid + (s - n), kMid + (q - n));
  }
  for (uint32_t s = 0; s < n; ++s) {
    const uint32_t q = b.partner(s);
    if (q < s) continue;
    add_edge(kMid + s, q < n ? kMid + q : kSouth + (q - n));
  }
  for (uint32_t s = n; s < 2 * n; ++s) {
    const uint32_t q = b.partner(s);
    if (q < s) continue;
    add_edge(kSouth + (s - n), kSouth + (q - n));
  }

  std::vector<uint8_t> used(3 * n, 0);
  auto is_boundary = [&](uint32_t v) { return v < n || v >= kSouth; };
  auto to_slot = [&](uint32_t v) { return v < n ? v : n + (v - kSouth); };

  RefComposeResult out;
  out.partner.assign(2 * n, UINT32_MAX);
  for (uint32_t start = 0; start < 3 * n; ++start) {
    if (!is_boundary(start) || used[start]) continue;
    used[start] = 1;
    uint32_t prev = start, cur = adj[start][0];
    while (!is_boundary(cur)) {
      used[cur] = 1;
      const uint32_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    used[cur] = 1;
    out.partner[to_slot(start)] = to_slot(cur);
    out.partner[to_slot(cur)] = to_slot(start);
  }
  for (uint32_t v = kMid; v < kSouth; ++v) {
    if (used[v]) continue;
    ++out.loops;
    uint32_t prev = v, cur = adj[v][0];
    used[v] = 1;
    while (cur != v) {
      used[cur] = 1;
      const uint32_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
  }
  return out;
}

// All (2n-1)!! pairings of 2n slots, by recursive smallest-free matching.
inline void enumerate_pairings(uint32_t two_n,
                               std::vector<std::vector<uint32_t>>& out) {
  std::vector<uint32_t> partner(two_n, UINT32_MAX);
  auto rec = [&](auto&& self) -> void {
    uint32_t s = 0;
    while (s < two_n && partner[s] != UINT32_MAX) ++s;
    if (s == two_n) {
      out.push_back(partner);
      return;
    }
    for (uint32_t q = s + 1; q < two_n; ++q) {
      if (partner[q] != UINT32_MAX) continue;
      partner[s] = q;
      partner[q] = s;
      self(self);
      partner[s] = UINT32_MAX;
      partner[q] = UINT32_MAX;
    }
  };
  rec(rec);
}

inline std::vector<streetsim::Diagram> all_diagrams(int n) {
  std::vector<std::vector<uint32_t>> pairings;
  enumerate_pairings(static_cast<uint32_t>(2 * n), pairings);
  std::vector<streetsim::Diagram> out;
  out.reserve(pairings.size());
  for (auto& p : pairings) out.emplace_back(std::move(p));
  return out;
}

// Uniform random pairing: shuffle slots, pair consecutive entries.
inline streetsim::Diagram random_diagram(int n, std::mt19937_64& gen) {
  std::vector<uint32_t> order(static_cast<size_t>(2 * n));
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<uint32_t> partner(order.size());
  for (size_t i = 0; i < order.size(); i += 2) {
    partner[order[i]] = order[i + 1];
    partner[order[i + 1]] = order[i];
  }
  return streetsim::Diagram(std::move(partner));
}

// Random diagram with exactly k bars; walled variant places bars across the
// column-parity wall and through-edges along it.
inline streetsim::Diagram random_diagram_with_bars(int n, int k, bool walled,
                                                   std::mt19937_64& gen) {
  const uint32_t un = static_cast<uint32_t>(n);
  std::vector<uint32_t> partner(2 * un, UINT32_MAX);
  std::vector<uint32_t> odd_cols, even_cols, cols;
  for (uint32_t x = 0; x < un; ++x) {
    (x % 2 == 0 ? even_cols : odd_cols).push_back(x);  // 0-based; column x+1
    cols.push_back(x);
  }
  std::shuffle(odd_cols.begin(), odd_cols.end(), gen);
  std::shuffle(even_cols.begin(), even_cols.end(), gen);
  std::shuffle(cols.begin(), cols.end(), gen);

  auto place = [&](bool north) {
    std::vector<uint32_t> free_odd = odd_cols, free_even = even_cols,
                          free_any = cols;
    const uint32_t base = north ? 0 : un;
    std::set<uint32_t> taken;
    int placed = 0;
    auto take = [&](std::vector<uint32_t>& pool) -> uint32_t {
      while (true) {
        const uint32_t c = pool.back();
        pool.pop_back();
        if (!taken.count(c)) return c;
      }
    };
    while (placed < k) {
      uint32_t x, y;
      if (walled) {
        x = take(free_odd);
        y = take(free_even);
      } else {
        x = take(free_any);
        y = take(free_any);
      }
      taken.insert(x);
      taken.insert(y);
      partner[base + x] = base + y;
      partner[base + y] = base + x;
      ++placed;
    }
    std::vector<uint32_t> rest;
    for (uint32_t x = 0; x < un; ++x)
      if (!taken.count(x)) rest.push_back(x);
    return rest;
  };
  std::vector<uint32_t> north_rest = place(true);
  std::vector<uint32_t> south_rest = place(false);

  // Match leftover north to leftover south; walled: same parity only.
  if (walled) {
    std::vector<uint32_t> ne, no, se, so;
    for (uint32_t x : north_rest) (x % 2 == 0 ? ne : no).push_back(x);
    for (uint32_t x : south_rest) (x % 2 == 0 ? se : so).push_back(x);
    std::shuffle(se.begin(), se.end(), gen);
    std::shuffle(so.begin(), so.end(), gen);
    for (size_t i = 0; i < ne.size(); ++i) {
      partner[ne[i]] = un + se[i];
      partner[un + se[i]] = ne[i];
    }
    for (size_t i = 0; i < no.size(); ++i) {
      partner[no[i]] = un + so[i];
      partner[un + so[i]] = no[i];
    }
  } else {
    std::shuffle(south_rest.begin(), south_rest.end(), gen);
    for (size_t i = 0; i < north_rest.size(); ++i) {
      partner[north_rest[i]] = un + south_rest[i];
      partner[un + south_rest[i]] = north_rest[i];
    }
  }
  return streetsim::Diagram(std::move(partner));
}

// Minimal exact fraction on int64 for width-2 golden laws.
struct Fraction {
  long long num = 0;
  long long den = 1;
  Fraction() = default;
  Fraction(long long n, long long d) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Fraction operator+(Fraction a, Fraction b) {
    return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Fraction operator*(Fraction a, Fraction b) {
    return Fraction(a.num * b.num, a.den * b.den);
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
};

}  // namespace testsupport

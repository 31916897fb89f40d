#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace streetsim {

// One basis diagram of the width-n Brauer algebra: a perfect pairing of 2n
// vertex slots.  Slots 0..n-1 are the north vertices of columns 1..n, slots
// n..2n-1 the south vertices.  An edge whose endpoints are both north (or
// both south) is a "bar"; north-side and south-side bar counts always match,
// so bar_count() reports the north-side count.
//
// n must be even and positive everywhere in this project (the absorbing
// level n/2 and the wall constraint are only defined for even widths).
class Diagram {
 public:
  // Validates: length 2n with n even >= 2, a fixed-point-free involution.
  explicit Diagram(std::vector<uint32_t> partner);

  static Diagram identity(int n);
  // Columns i<j (1-based): north i joined to south j and vice versa,
  // all other columns vertical.
  static Diagram transposition(int n, int i, int j);
  // Columns i<j (1-based): north i joined to north j, south i to south j.
  static Diagram bar_pair(int n, int i, int j);

  // Replace the pairing (validated like the constructor); reuses storage,
  // for hot loops that rebuild diagrams in place.
  void assign(const std::vector<uint32_t>& partner);

  int width() const { return n_; }
  uint32_t partner(uint32_t slot) const { return partner_[slot]; }
  const std::vector<uint32_t>& partners() const { return partner_; }

  int bar_count() const { return bars_; }
  // Wall constraint: every north-south edge joins columns of equal parity,
  // every bar joins columns of opposite parity.
  bool is_walled() const;

  // Compact byte encoding of the partner array (1 byte per slot when
  // 2n <= 256, else 2 little-endian bytes).  Equal keys <=> equal diagrams.
  std::string canonical_key() const;

  // Text form "[1+>1-, 2+^3+, 2-v3-]": '>' north-to-south edge, '^' north
  // bar, 'v' south bar; edges listed by smallest slot, 1-based columns.
  std::string to_string() const;
  static Diagram from_string(std::string_view text);

  bool operator==(const Diagram& other) const { return partner_ == other.partner_; }
  std::strong_ordering operator<=>(const Diagram& other) const {
    return partner_ <=> other.partner_;
  }

 private:
  struct Unchecked {};
  Diagram(Unchecked, std::vector<uint32_t> partner);

  void recount_bars();

  friend int compose_into(const Diagram& a, const Diagram& b, Diagram& out);

  std::vector<uint32_t> partner_;
  int n_ = 0;
  int bars_ = 0;
};

struct ComposeResult {
  Diagram diagram;
  int loops;  // closed cycles removed from the middle layer
};

// Concatenation product: a stacked above b, middle vertices glued, closed
// loops counted and discarded (loop weight 1).  O(n) time.
ComposeResult compose(const Diagram& a, const Diagram& b);

// In-place variant reusing out's storage; returns the loop count.
// `out` must not alias `a` or `b`.
int compose_into(const Diagram& a, const Diagram& b, Diagram& out);

}  // namespace streetsim

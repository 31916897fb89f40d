#include "streetsim/diagram.hpp"

#include <cstring>
#include <stdexcept>

namespace streetsim {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

namespace {

void validate_pairing(const std::vector<uint32_t>& partner) {
  const size_t sz = partner.size();
  require(sz >= 4 && sz % 4 == 0, "Diagram: slot count must be 2n with n even >= 2");
  for (uint32_t s = 0; s < sz; ++s) {
    const uint32_t q = partner[s];
    require(q < sz, "Diagram: partner out of range");
    require(q != s, "Diagram: fixed point (vertex paired with itself)");
    require(partner[q] == s, "Diagram: pairing is not an involution");
  }
}

}  // namespace

Diagram::Diagram(std::vector<uint32_t> partner) : partner_(std::move(partner)) {
  validate_pairing(partner_);
  n_ = static_cast<int>(partner_.size() / 2);
  recount_bars();
}

void Diagram::assign(const std::vector<uint32_t>& partner) {
  validate_pairing(partner);
  partner_ = partner;
  n_ = static_cast<int>(partner_.size() / 2);
  recount_bars();
}

Diagram::Diagram(Unchecked, std::vector<uint32_t> partner)
    : partner_(std::move(partner)), n_(static_cast<int>(partner_.size() / 2)) {
  recount_bars();
}

void Diagram::recount_bars() {
  const uint32_t n = static_cast<uint32_t>(n_);
  int bars = 0;
  for (uint32_t s = 0; s < n; ++s)
    if (partner_[s] < n) ++bars;
  bars_ = bars / 2;
}

Diagram Diagram::identity(int n) {
  require(n >= 2 && n % 2 == 0, "identity: n must be even >= 2");
  std::vector<uint32_t> p(2 * n);
  for (int i = 0; i < n; ++i) {
    p[i] = static_cast<uint32_t>(n + i);
    p[n + i] = static_cast<uint32_t>(i);
  }
  return Diagram(Unchecked{}, std::move(p));
}

Diagram Diagram::transposition(int n, int i, int j) {
  require(1 <= i && i < j && j <= n, "transposition: need 1 <= i < j <= n");
  Diagram d = identity(n);
  const uint32_t a = static_cast<uint32_t>(i - 1), b = static_cast<uint32_t>(j - 1);
  const uint32_t un = static_cast<uint32_t>(n);
  d.partner_[a] = un + b;
  d.partner_[un + b] = a;
  d.partner_[b] = un + a;
  d.partner_[un + a] = b;
  return d;
}

Diagram Diagram::bar_pair(int n, int i, int j) {
  require(1 <= i && i < j && j <= n, "bar_pair: need 1 <= i < j <= n");
  Diagram d = identity(n);
  const uint32_t a = static_cast<uint32_t>(i - 1), b = static_cast<uint32_t>(j - 1);
  const uint32_t un = static_cast<uint32_t>(n);
  d.partner_[a] = b;
  d.partner_[b] = a;
  d.partner_[un + a] = un + b;
  d.partner_[un + b] = un + a;
  d.bars_ = 1;
  return d;
}

bool Diagram::is_walled() const {
  const uint32_t n = static_cast<uint32_t>(n_);
  for (uint32_t s = 0; s < 2 * n; ++s) {
    const uint32_t q = partner_[s];
    if (q < s) continue;
    const uint32_t col_s = s < n ? s : s - n;
    const uint32_t col_q = q < n ? q : q - n;
    const bool is_bar = (s < n) == (q < n);
    const bool opposite_parity = ((col_s ^ col_q) & 1u) != 0;
    if (is_bar != opposite_parity) return false;
  }
  return true;
}

std::string Diagram::canonical_key() const {
  const size_t sz = partner_.size();
  std::string out;
  if (sz <= 256) {
    out.resize(sz);
    for (size_t s = 0; s < sz; ++s) out[s] = static_cast<char>(partner_[s]);
  } else {
    out.resize(2 * sz);
    for (size_t s = 0; s < sz; ++s) {
      out[2 * s] = static_cast<char>(partner_[s] & 0xff);
      out[2 * s + 1] = static_cast<char>((partner_[s] >> 8) & 0xff);
    }
  }
  return out;
}

std::string Diagram::to_string() const {
  const uint32_t n = static_cast<uint32_t>(n_);
  std::string out = "[";
  bool first = true;
  for (uint32_t s = 0; s < 2 * n; ++s) {
    const uint32_t q = partner_[s];
    if (q < s) continue;
    if (!first) out += ", ";
    first = false;
    const uint32_t col_s = (s < n ? s : s - n) + 1;
    const uint32_t col_q = (q < n ? q : q - n) + 1;
    if (s < n && q >= n) {
      out += std::to_string(col_s) + "+>" + std::to_string(col_q) + "-";
    } else if (s < n) {
      out += std::to_string(col_s) + "+^" + std::to_string(col_q) + "+";
    } else {
      out += std::to_string(col_s) + "-v" + std::to_string(col_q) + "-";
    }
  }
  out += "]";
  return out;
}

Diagram Diagram::from_string(std::string_view text) {
  // Grammar: '[' edge (',' edge)* ']', edge = INT SIGN MARK INT SIGN with
  // SIGN in {+,-}, MARK in {>,^,v}; whitespace allowed around tokens.
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    require(pos < text.size() && text[pos] == c, "from_string: unexpected character");
    ++pos;
  };
  auto read_int = [&]() -> uint32_t {
    skip_ws();
    require(pos < text.size() && text[pos] >= '0' && text[pos] <= '9',
            "from_string: expected integer");
    uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
      require(v <= 1u << 20, "from_string: index too large");
      ++pos;
    }
    return static_cast<uint32_t>(v);
  };
  auto read_sign = [&]() -> bool {  // true = north ('+')
    skip_ws();
    require(pos < text.size() && (text[pos] == '+' || text[pos] == '-'),
            "from_string: expected + or -");
    return text[pos++] == '+';
  };

  struct Edge {
    uint32_t col_a;
    bool north_a;
    uint32_t col_b;
    bool north_b;
  };
  std::vector<Edge> edges;
  expect('[');
  skip_ws();
  if (pos >= text.size() || text[pos] != ']') {
    for (;;) {
      Edge e{};
      e.col_a = read_int();
      e.north_a = read_sign();
      skip_ws();
      require(pos < text.size(), "from_string: truncated edge");
      const char mark = text[pos++];
      require(mark == '>' || mark == '^' || mark == 'v',
              "from_string: expected edge mark >, ^ or v");
      e.col_b = read_int();
      e.north_b = read_sign();
      const bool want_a_north = (mark != 'v');
      const bool want_b_north = (mark == '^');
      require(e.north_a == want_a_north && e.north_b == want_b_north,
              "from_string: edge mark disagrees with vertex signs");
      edges.push_back(e);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect(']');
  skip_ws();
  require(pos == text.size(), "from_string: trailing characters");

  const size_t n = edges.size();  // each of n columns has 2 vertices, n edges total
  require(n >= 2 && n % 2 == 0, "from_string: edge count must equal an even n >= 2");
  std::vector<uint32_t> partner(2 * n, UINT32_MAX);
  auto slot_of = [&](uint32_t col, bool north) -> uint32_t {
    require(1 <= col && col <= n, "from_string: column out of range");
    return north ? col - 1 : static_cast<uint32_t>(n) + col - 1;
  };
  for (const Edge& e : edges) {
    const uint32_t a = slot_of(e.col_a, e.north_a);
    const uint32_t b = slot_of(e.col_b, e.north_b);
    require(a != b, "from_string: self-paired vertex");
    require(partner[a] == UINT32_MAX && partner[b] == UINT32_MAX,
            "from_string: vertex listed twice");
    partner[a] = b;
    partner[b] = a;
  }
  for (uint32_t v : partner) require(v != UINT32_MAX, "from_string: missing vertex");
  return Diagram(std::move(partner));
}

int compose_into(const Diagram& a, const Diagram& b, Diagram& out) {
  const uint32_t n = static_cast<uint32_t>(a.n_);
  require(a.n_ == b.n_, "compose: width mismatch");
  require(&out != &a && &out != &b, "compose_into: out must not alias an input");
  out.partner_.assign(2 * n, UINT32_MAX);
  out.n_ = a.n_;

  // Middle layer: a's south slot n+m is glued to b's north slot m.
  thread_local std::vector<uint8_t> seen;
  seen.assign(n, 0);

  auto follow_through_a = [&](uint32_t v) -> uint32_t {
    // v is a slot inside a; walk a-edge / b-edge alternately until an outer
    // boundary slot of the product is reached.
    for (;;) {
      if (v < n) return v;  // a-north = product north
      const uint32_t m = v - n;
      seen[m] = 1;
      const uint32_t w = b.partner_[m];
      if (w >= n) return w;  // b-south = product south
      seen[w] = 1;
      v = a.partner_[n + w];
    }
  };

  for (uint32_t s = 0; s < 2 * n; ++s) {
    if (out.partner_[s] != UINT32_MAX) continue;
    uint32_t end;
    if (s < n) {
      end = follow_through_a(a.partner_[s]);
    } else {
      const uint32_t w = b.partner_[s];
      if (w >= n) {
        end = w;
      } else {
        seen[w] = 1;
        end = follow_through_a(a.partner_[n + w]);
      }
    }
    out.partner_[s] = end;
    out.partner_[end] = s;
  }

  // Unvisited middle vertices lie on closed alternating cycles.
  int loops = 0;
  for (uint32_t m = 0; m < n; ++m) {
    if (seen[m]) continue;
    ++loops;
    uint32_t c = m;
    while (!seen[c]) {
      seen[c] = 1;
      const uint32_t m2 = a.partner_[n + c] - n;  // a-edge stays in the middle here
      seen[m2] = 1;
      c = b.partner_[m2];
    }
  }
  out.recount_bars();
  return loops;
}

ComposeResult compose(const Diagram& a, const Diagram& b) {
  Diagram out = Diagram::identity(a.width());
  const int loops = compose_into(a, b, out);
  return ComposeResult{std::move(out), loops};
}

}  // namespace streetsim
